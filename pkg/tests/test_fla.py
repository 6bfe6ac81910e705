import numpy as np
import pytest

import oracles
from conftest import grid_landscape, line_landscape, random_landscape
from hpland import (
    HyperparameterDecl,
    Scenario,
    SearchSpace,
    WalkConfig,
    autocorrelation,
    build_landscape,
    fla_report,
    gen_nk,
    loss_assortativity,
    mean_neutrality,
    ndc,
    neutrality_of,
    NkSpec,
)
from hpland.fla import _series_autocorrelation


def geometric_line(n=8, ratio=1.3, mirrored=False):
    """Per-step improvements ratio**i, shrinking (or growing) toward node 0."""
    losses = [0.0]
    for i in range(1, n):
        losses.append(losses[-1] + (ratio ** (n - i) if mirrored else ratio**i))
    return line_landscape(losses)


# -- autocorrelation ---------------------------------------------------------


def test_autocorrelation_constant_landscape_undefined():
    l = line_landscape([1.0] * 16)
    assert autocorrelation(l, WalkConfig(seed=0)) is None


def test_autocorrelation_smooth_ramp_high():
    l = line_landscape([float(i) for i in range(64)])
    rho = autocorrelation(l, WalkConfig(seed=0))
    assert rho >= 0.9


def test_autocorrelation_checkerboard_negative():
    l = line_landscape([float(i % 2) for i in range(64)])
    rho = autocorrelation(l, WalkConfig(seed=0))
    assert rho <= -0.9


def test_series_autocorrelation_matches_textbook_formula(rng):
    for _ in range(25):
        series = rng.uniform(0, 1, size=int(rng.integers(2, 40)))
        lag = int(rng.integers(1, 3))
        expected = oracles.series_lag_autocorr(series.tolist(), lag)
        got = _series_autocorrelation(series, lag)
        if expected is None:
            assert got is None
        else:
            assert got == pytest.approx(expected, rel=1e-12)


def test_autocorrelation_seed_reproducible_and_thread_invariant(rng):
    l = random_landscape(rng)
    w = WalkConfig(seed=99)
    a = autocorrelation(l, w)
    assert a == autocorrelation(l, w)
    assert a == autocorrelation(l, w, threads=8)
    assert a != autocorrelation(l, WalkConfig(seed=100)) or a is None


def test_walkconfig_validation():
    with pytest.raises(ValueError):
        WalkConfig(walk_length=1, lag=1)
    with pytest.raises(ValueError):
        WalkConfig(n_walks=0)


# -- assortativity -----------------------------------------------------------


def test_assortativity_two_tied_clusters_is_one():
    # two 3-cliques of equal loss, separated by an absent grid stretch
    space = SearchSpace(hps=(
        HyperparameterDecl("gap", "numerical", (0.0, 1.0, 2.0, 3.0)),
        HyperparameterDecl("member", "categorical", ("a", "b", "c")),
    ))
    evals = {(0, j): 0.0 for j in range(3)}
    evals.update({(3, j): 1.0 for j in range(3)})
    l = build_landscape(space, Scenario(loss_column="loss"), evals)
    assert l.n_linked_pairs == 6  # three neutral pairs inside each cluster
    assert loss_assortativity(l) == pytest.approx(1.0)


def test_assortativity_alternating_line_is_minus_one():
    l = line_landscape([0.0, 1.0, 0.0, 1.0, 0.0, 1.0])
    assert loss_assortativity(l) == pytest.approx(-1.0)


def test_assortativity_constant_landscape_undefined():
    l = line_landscape([0.5] * 6)
    assert loss_assortativity(l) is None


def test_assortativity_matches_mixing_matrix_form(rng):
    for _ in range(15):
        l = random_landscape(rng, tie_prone=True)
        pairs = [tuple(p) for p in np.vstack([l.edges, l.neutral]).tolist()]
        if not pairs:
            continue
        expected = oracles.mixing_matrix_assortativity(l.losses.tolist(), pairs)
        got = loss_assortativity(l)
        if expected is None:
            assert got is None
        else:
            assert got == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_assortativity_matches_networkx(rng):
    nx = pytest.importorskip("networkx")
    for _ in range(10):
        l = random_landscape(rng, tie_prone=True)
        if l.n_linked_pairs == 0 or len(np.unique(l.losses)) < 2:
            continue
        g = nx.Graph()
        g.add_nodes_from(range(l.n_nodes))
        g.add_edges_from(map(tuple, np.vstack([l.edges, l.neutral]).tolist()))
        # integer-valued attributes keep networkx's category-based form exact
        values = {i: int(round(x * 10)) for i, x in enumerate(l.losses)}
        nx.set_node_attributes(g, values, "loss")
        scaled = build_landscape(
            l.space, l.scenario, {c: float(values[i]) for i, c in enumerate(l.configs)}
        )
        expected = nx.numeric_assortativity_coefficient(g, "loss")
        got = loss_assortativity(scaled)
        if got is not None and np.isfinite(expected):
            assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_affine_invariance_of_assortativity_and_autocorrelation(rng):
    l = random_landscape(rng)
    a0 = loss_assortativity(l)
    r0 = autocorrelation(l, WalkConfig(seed=5))
    scaled = build_landscape(
        l.space, l.scenario, {c: 3.5 * float(x) + 11.0 for c, x in zip(l.configs, l.losses)}
    )
    assert loss_assortativity(scaled) == pytest.approx(a0, rel=1e-9)
    assert autocorrelation(scaled, WalkConfig(seed=5)) == pytest.approx(r0, rel=1e-9)


# -- neutrality ---------------------------------------------------------------


def test_neutrality_counts_fractions():
    # center of a plus-shape: 2 of 4 neighbors inside the tolerance band
    grid = [
        [9.0, 1.0000, 9.0],
        [1.00005, 1.0, 1.5],
        [9.0, 9.0, 9.0],
    ]
    l = grid_landscape(grid)
    center = l.id_of((1, 1))
    assert neutrality_of(l, center, epsilon=1e-3) == pytest.approx(0.5)


def test_neutrality_all_or_nothing():
    l = line_landscape([1.0, 1.0000001, 1.0000002])
    assert neutrality_of(l, 1, epsilon=1e-3) == 1.0
    l2 = line_landscape([1.0, 2.0, 3.0])
    assert neutrality_of(l2, 1, epsilon=1e-3) == 0.0


def test_neutrality_isolated_node_undefined():
    space = SearchSpace(hps=(HyperparameterDecl("x", "numerical", (0.0, 1.0, 2.0)),))
    l = build_landscape(space, Scenario(loss_column="loss"), {(0,): 0.1, (2,): 0.4})
    assert neutrality_of(l, 0) is None
    assert mean_neutrality(l) is None


def test_mean_neutrality_extremes_and_mix():
    assert mean_neutrality(line_landscape([2.0] * 8)) == 1.0
    assert mean_neutrality(line_landscape([1.0, 2.0, 4.0, 8.0])) == 0.0
    # half the nodes sit on a tied plateau, half on a steep slope
    space = SearchSpace(hps=(
        HyperparameterDecl("gap", "numerical", (0.0, 1.0, 2.0, 3.0)),
        HyperparameterDecl("m", "categorical", ("a", "b", "c")),
    ))
    evals = {(0, j): 5.0 for j in range(3)}
    evals.update({(3, j): 10.0 * (j + 1) for j in range(3)})
    l = build_landscape(space, Scenario(loss_column="loss"), evals)
    assert mean_neutrality(l) == pytest.approx(0.5)


def test_neutrality_scale_invariance(rng):
    l = random_landscape(rng)
    base = mean_neutrality(l, epsilon=1e-2)
    for factor in (1e-3, 0.5, 7.0, 1e3):
        scaled = build_landscape(
            l.space, l.scenario, {c: factor * float(x) for c, x in zip(l.configs, l.losses)}
        )
        assert mean_neutrality(scaled, epsilon=1e-2) == pytest.approx(base)


def test_neutrality_zero_loss_guard():
    l = line_landscape([0.0, 0.0, 1.0])
    assert neutrality_of(l, 0) == 1.0  # exact-zero pair is neutral via the floor


# -- ndc -----------------------------------------------------------------------


def test_ndc_constant_improvement_undefined():
    l = line_landscape([3.0, 2.0, 1.0, 0.0])
    assert ndc(l).walk is None  # zero improvement variance


def test_ndc_shrinking_improvements_positive():
    assert ndc(geometric_line()).walk >= 0.9


def test_ndc_growing_improvements_negative():
    assert ndc(geometric_line(mirrored=True)).walk <= -0.9


def test_ndc_matches_pooled_bruteforce(rng):
    import scipy.stats

    for _ in range(12):
        l = random_landscape(rng, keep_fraction=float(rng.uniform(0.8, 1.0)))
        nbrs = oracles.neighbor_lists(l.space, l.configs)
        pairs = oracles.ndc_walk_pairs(
            l.space, l.scenario.direction, l.losses, nbrs, l.configs
        )
        got = ndc(l).walk
        if len(pairs) < 2:
            assert got is None
            continue
        xs, ys = map(np.array, zip(*pairs))
        if len(np.unique(xs)) < 2 or len(np.unique(ys)) < 3:
            assert got is None
            continue
        expected = float(scipy.stats.pearsonr(xs, ys).statistic)
        assert got == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_ndc_direct_sign_on_plateau_near_optimum():
    # neutral plateau around the optimum, steep far away: direct variant
    # reports negative correlation (neutrality falls with distance)
    losses = [1.0, 1.0001, 1.0002, 1.0003, 10.0, 30.0, 70.0, 150.0]
    l = line_landscape(losses)
    assert ndc(l).direct < 0


def test_ndc_maximize_direction():
    l = geometric_line()
    flipped = build_landscape(
        l.space,
        Scenario(loss_column="loss", direction="maximize"),
        {c: -float(x) for c, x in zip(l.configs, l.losses)},
    )
    assert ndc(flipped).walk == pytest.approx(ndc(l).walk, rel=1e-12)


# -- report ------------------------------------------------------------------


def test_fla_report_constant_landscape():
    l = line_landscape([0.7] * 6)
    report = fla_report(l, WalkConfig(seed=1))
    assert report.autocorrelation is None
    assert report.assortativity is None
    assert report.mean_neutrality == 1.0
    assert report.ndc is None
    # strict-inequality optimum test: every plateau member is an optimum
    assert report.n_local_optima == 6
    assert report.parameters["seed"] == 1


def test_fla_report_deterministic():
    l = line_landscape([3.0, 1.0, 2.0, 5.0, 4.0])
    a = fla_report(l, WalkConfig(seed=7)).to_json_dict()
    b = fla_report(l, WalkConfig(seed=7)).to_json_dict()
    assert a == b


def test_fla_report_nk_k0():
    report = fla_report(gen_nk(NkSpec(n=10, k=0, seed=11)), WalkConfig(seed=0))
    assert report.n_local_optima == 1
    assert report.unimodal is True
    assert report.mean_basin_size == 0.0


def test_metric_ranges(rng):
    for _ in range(10):
        l = random_landscape(rng, tie_prone=bool(rng.integers(2)))
        report = fla_report(l, WalkConfig(seed=3))
        for value in (report.autocorrelation, report.assortativity, report.ndc,
                      report.ndc_direct):
            if value is not None:
                assert -1.0 <= value <= 1.0
        if report.mean_neutrality is not None:
            assert 0.0 <= report.mean_neutrality <= 1.0
        assert report.n_local_optima >= 1
        assert report.mean_basin_size >= 0.0
