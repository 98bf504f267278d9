import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from starmerge import (
    AllocationMode,
    EdgeOrder,
    GateClampWarning,
    GateModel,
    MergeConfig,
    TrialOutcome,
    apply_adaptive_loss,
    gate_failure_prob,
    run_trials,
    simulate_trial,
    trial_stream,
)
from starmerge.merge import _trial_draws

INF_C = 1e18  # effectively failure-free gate


def test_gate_failure_prob_values():
    assert gate_failure_prob(36.0) == 1.0
    assert gate_failure_prob(100.0) == pytest.approx(0.6, rel=1e-15)
    assert gate_failure_prob(160.0) == pytest.approx(0.474341649025256900, rel=1e-12)


def test_gate_failure_prob_clamps_with_warning():
    with pytest.warns(GateClampWarning):
        assert gate_failure_prob(10.0) == 1.0


def test_gate_failure_prob_rejects_nonpositive():
    with pytest.raises(ValueError):
        gate_failure_prob(0.0)
    with pytest.raises(ValueError):
        gate_failure_prob(-5.0)


def test_gate_model_invariant():
    gm = GateModel.from_cooperativity(100.0)
    assert gm.failure_probability == pytest.approx(0.6, rel=1e-15)
    with pytest.raises(ValueError):
        GateModel(100.0, 0.5)


def test_merge_config_validation():
    with pytest.raises(ValueError):
        MergeConfig(0.0, 13)
    with pytest.raises(ValueError):
        MergeConfig(100.0, 1)
    with pytest.raises(ValueError):
        MergeConfig(100.0, 13, trials=0)
    with pytest.raises(ValueError):
        MergeConfig(100.0, 13, master_seed=-1)


def test_failure_free_gate_completes_everything(lattice_d2):
    config = MergeConfig(INF_C, 9, trials=1, master_seed=5)
    outcome = simulate_trial(lattice_d2, config, 0)
    assert outcome.edge_status.all()
    # one attempt per edge, one leaf per endpoint per attempt
    assert outcome.attempts_total == lattice_d2.n_edges


def test_certain_failure_marks_everything_failed(lattice_d2):
    config = MergeConfig(36.0, 13, trials=1, master_seed=5)
    outcome = simulate_trial(lattice_d2, config, 0)
    assert not outcome.edge_status.any()
    # every attempt burns one leaf at each endpoint and never succeeds
    assert outcome.attempts_total <= lattice_d2.n_nodes * 12 // 2


# --- starved budgets: p_f = 0 with only two leaves per node -----------------
#
# A node with two leaves completes at most 2 of its 4 edges, so at least half
# of all edges fail.  The exact failure fraction depends on the processing
# order: a node can strand leftover leaves once all its partners are spent.
# Under a uniform random order the exact expectation (computed below by
# enumeration over random-sequential states) is 118/225, not 1/2.


def exact_starved_failure_fraction(lattice):
    """E[failure fraction] at p_f=0, 2 leaves/node, uniform random edge order."""
    edges = [tuple(e) for e in lattice.edges.tolist()]
    n_edges = len(edges)

    @lru_cache(maxsize=None)
    def expected_successes(budgets, mask):
        remaining = [e for e in range(n_edges) if mask >> e & 1]
        if not remaining:
            return Fraction(0)
        total = Fraction(0)
        for e in remaining:
            u, v = edges[e]
            if budgets[u] > 0 and budgets[v] > 0:
                b = list(budgets)
                b[u] -= 1
                b[v] -= 1
                total += 1 + expected_successes(tuple(b), mask & ~(1 << e))
            else:
                total += expected_successes(budgets, mask & ~(1 << e))
        return total / len(remaining)

    mean = expected_successes((2,) * lattice.n_nodes, (1 << n_edges) - 1)
    return 1 - mean / n_edges


def test_starved_budget_exact_expectation_d1(lattice_d1):
    assert exact_starved_failure_fraction(lattice_d1) == Fraction(118, 225)


def test_starved_budget_shuffled_matches_enumeration(lattice_d1):
    config = MergeConfig(INF_C, 3, trials=40_000, master_seed=11)
    stats = run_trials(lattice_d1, config)
    expected = float(Fraction(118, 225))
    assert abs(stats.mean_failure_fraction - expected) <= 3 * stats.std_error


def test_starved_budget_lexicographic_d1_is_exactly_half(lattice_d1):
    config = MergeConfig(INF_C, 3, edge_order=EdgeOrder.LEXICOGRAPHIC, trials=1, master_seed=0)
    outcome = simulate_trial(lattice_d1, config, 0)
    assert int(outcome.edge_status.sum()) == lattice_d1.n_edges // 2


def test_starved_budget_pathwise_bounds(lattice_d2):
    config = MergeConfig(INF_C, 3, trials=1, master_seed=9)
    for t in range(20):
        outcome = simulate_trial(lattice_d2, config, t)
        successes = int(outcome.edge_status.sum())
        assert successes <= lattice_d2.n_edges // 2  # per-node cap of 2
        per_node = np.zeros(lattice_d2.n_nodes, dtype=int)
        for e in np.flatnonzero(outcome.edge_status):
            per_node[lattice_d2.edges[e, 0]] += 1
            per_node[lattice_d2.edges[e, 1]] += 1
        assert per_node.max() <= 2


# --- reference path vs aggregate engine -------------------------------------


@pytest.mark.parametrize("mode", list(AllocationMode))
@pytest.mark.parametrize("edge_order", list(EdgeOrder))
def test_run_trials_matches_reference(lattice_d2, mode, edge_order):
    config = MergeConfig(90.0, 10, mode, edge_order, trials=16, master_seed=321)
    fail, loss = [], []
    for t in range(config.trials):
        outcome = simulate_trial(lattice_d2, config, t)
        stream = trial_stream(config.master_seed, t)
        # advance the stream past the merge draws, then apply the loss pass
        _trial_draws(stream, lattice_d2.n_edges, gate_failure_prob(90.0), edge_order is EdgeOrder.SHUFFLED)
        apply_adaptive_loss(outcome, lattice_d2, stream)
        fail.append(outcome.n_failed / lattice_d2.n_edges)
        loss.append(len(outcome.lost_nodes) / lattice_d2.n_nodes)
    stats = run_trials(lattice_d2, config)
    assert stats.mean_failure_fraction == np.mean(fail)
    assert stats.loss_fraction_mean == np.mean(loss)
    assert stats.trials == config.trials


def test_run_trials_deterministic(lattice_d2):
    config = MergeConfig(120.0, 13, trials=300, master_seed=77)
    assert run_trials(lattice_d2, config) == run_trials(lattice_d2, config)


def test_run_trials_worker_count_invariant(lattice_d2):
    config = MergeConfig(120.0, 13, trials=301, master_seed=77)
    expected = run_trials(lattice_d2, config, workers=1)
    for workers in (2, 3, 7):
        assert run_trials(lattice_d2, config, workers=workers) == expected


def test_partitioning_matches_analytic_rate(lattice_d2):
    # (6/sqrt(100))^((13-1)/4) = 0.6^3 = 0.216
    config = MergeConfig(100.0, 13, AllocationMode.PARTITIONING, trials=20_000, master_seed=7)
    stats = run_trials(lattice_d2, config)
    assert abs(stats.mean_failure_fraction - 0.216) <= 3 * stats.std_error


def test_redistribution_beats_partitioning_at_moderate_failure_prob(lattice_d2):
    # Pooled leaves win once 6/sqrt(C) is moderate.  Near the clamp boundary
    # (p_f ~ 0.9) the ordering reverses: a single stubborn edge can hog a
    # node's whole pool and starve its siblings, which partitioned groups
    # structurally prevent.
    for c, n in [(100.0, 13), (150.0, 17), (196.0, 21)]:
        part = run_trials(lattice_d2, MergeConfig(c, n, AllocationMode.PARTITIONING, trials=4000, master_seed=13))
        redist = run_trials(lattice_d2, MergeConfig(c, n, AllocationMode.REDISTRIBUTION, trials=4000, master_seed=13))
        band = 3 * math.hypot(part.std_error, redist.std_error)
        assert redist.mean_failure_fraction <= part.mean_failure_fraction + band
    hot = run_trials(lattice_d2, MergeConfig(50.0, 9, AllocationMode.REDISTRIBUTION, trials=4000, master_seed=13))
    cold = run_trials(lattice_d2, MergeConfig(50.0, 9, AllocationMode.PARTITIONING, trials=4000, master_seed=13))
    assert hot.mean_failure_fraction > cold.mean_failure_fraction  # the reversal is real


def test_attempt_sampler_distribution():
    # The exponential transform must reproduce the first-success geometric
    # law exactly; a tail bias here would masquerade as an analytic-rate
    # mismatch in the big partitioning runs.  (Checked offline to 4e9
    # samples; this is the regression tripwire.)
    p_f = 0.6
    stream = np.random.default_rng(424242)
    _, attempts = _trial_draws(stream, 100_000_000, p_f, shuffled=False)
    for cap in (1, 3, 5):
        expected = p_f**cap
        p_hat = float((attempts > cap).mean())
        se = math.sqrt(expected * (1 - expected) / attempts.size)
        assert abs(p_hat - expected) <= 4 * se


def test_stderr_definition(lattice_d1):
    config = MergeConfig(100.0, 9, trials=64, master_seed=3)
    fractions = [simulate_trial(lattice_d1, config, t).n_failed / lattice_d1.n_edges for t in range(64)]
    stats = run_trials(lattice_d1, config)
    assert stats.std_error == pytest.approx(np.std(fractions, ddof=1) / 8.0, rel=1e-12)


def test_single_trial_zero_stderr(lattice_d1):
    stats = run_trials(lattice_d1, MergeConfig(100.0, 9, trials=1, master_seed=3))
    assert stats.std_error == 0.0


# --- adaptive loss -----------------------------------------------------------


def test_loss_empty_when_no_failures(lattice_d2):
    outcome = TrialOutcome(np.ones(lattice_d2.n_edges, dtype=np.uint8), 0)
    apply_adaptive_loss(outcome, lattice_d2, np.random.default_rng(0))
    assert outcome.lost_nodes == set()


def test_loss_disjoint_failures(lattice_d2):
    # pick failed edges with pairwise-disjoint endpoints: no collisions possible
    status = np.ones(lattice_d2.n_edges, dtype=np.uint8)
    taken: set = set()
    chosen = []
    for e, (u, v) in enumerate(lattice_d2.edges.tolist()):
        if u not in taken and v not in taken:
            chosen.append(e)
            taken.update((u, v))
        if len(chosen) == 5:
            break
    status[chosen] = 0
    for seed in range(10):
        outcome = TrialOutcome(status.copy(), 0)
        apply_adaptive_loss(outcome, lattice_d2, np.random.default_rng(seed))
        assert len(outcome.lost_nodes) == 5


def test_loss_shared_endpoint_mean(lattice_d2):
    # two failed edges sharing one endpoint: outcomes |lost| in {1, 2} with
    # mean 7/4 over the four equally likely endpoint choices
    node = next(n for n in range(lattice_d2.n_nodes) if len(lattice_d2.adjacency[n]) >= 2)
    e1, e2 = lattice_d2.adjacency[node][:2]
    status = np.ones(lattice_d2.n_edges, dtype=np.uint8)
    status[[e1, e2]] = 0
    sizes = []
    for seed in range(10_000):
        outcome = TrialOutcome(status.copy(), 0)
        apply_adaptive_loss(outcome, lattice_d2, np.random.default_rng(seed))
        assert len(outcome.lost_nodes) in (1, 2)
        sizes.append(len(outcome.lost_nodes))
    sizes = np.asarray(sizes, dtype=float)
    stderr = sizes.std(ddof=1) / math.sqrt(sizes.size)
    assert abs(sizes.mean() - 1.75) <= 3 * stderr


def test_loss_bounded_by_failures(lattice_d2):
    rng = np.random.default_rng(17)
    for t in range(50):
        c = float(rng.uniform(40, 250))
        n = int(rng.integers(3, 18))
        config = MergeConfig(c, n, trials=1, master_seed=int(rng.integers(0, 2**32)))
        outcome = simulate_trial(lattice_d2, config, 0)
        apply_adaptive_loss(outcome, lattice_d2, rng)
        assert len(outcome.lost_nodes) <= outcome.n_failed
