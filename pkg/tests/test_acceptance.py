"""End-to-end acceptance gate.

Each test owns one numbered criterion, asserts every sub-condition at its
stated tolerance, and records a single verdict line

    [acceptance] criterion NN (name): PASS|FAIL

printed in the terminal summary (see conftest).  The criteria deliberately
recompute their curves through the public API rather than reusing suite
internals, so they double as an integration pass over the whole package.
"""

import functools

import numpy as np

import conftest
from beamlab import (
    MonotoneKind,
    check_concavity,
    check_convexity,
    check_data_processing,
    check_exact_identities,
    check_gconc_log_concavity,
    check_gconc_monotonicity,
    check_mirror_identity_sweep,
    check_overlap_polynomial_pairs,
    check_peak_at_half,
    check_qcs_law,
    check_separability,
    check_symmetry,
    entropy_derivative_identity,
    evaluate_monotone,
    g_concurrence_closed_form,
    make_fock,
    make_grid,
    purity_polynomial,
    run_renyi_counterexample,
    sweep,
)
from beamlab.verify import (
    COUNTEREXAMPLE_GRID_SPEC,
    DEFAULT_GRID_SPEC,
    DERIVATIVE_GRID_SPEC,
    catalog_ensembles,
    catalog_mixed_states,
    catalog_pure_states,
    check_determinant_match,
)

T_SAMPLE = [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99]


def criterion(num, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper():
            ok = False
            try:
                fn()
                ok = True
            finally:
                line = f"[acceptance] criterion {num:02d} ({name}): {'PASS' if ok else 'FAIL'}"
                conftest.ACCEPTANCE_LINES.append(line)
                print(line)
        return wrapper
    return decorate


@functools.cache
def _grid():
    return make_grid(*DEFAULT_GRID_SPEC)


@functools.cache
def _pure():
    return catalog_pure_states()


@functools.cache
def _finite():
    return [(lbl, st) for lbl, st in _pure() if st.is_finite_support()]


@functools.cache
def _gconc_curves():
    return [
        (lbl, sweep(st, MonotoneKind("g_concurrence"), _grid(), lbl))
        for lbl, st in _finite()
        if st.max_occupied > 0
    ]


@criterion(1, "renyi family counterexample")
def test_criterion_01_renyi_counterexample():
    curves, reports = run_renyi_counterexample()
    assert len(curves) == 12
    assert [c.kind.alpha for c in curves] == [float(a) for a in range(1, 13)]
    grid = curves[0].grid
    assert grid.size == COUNTEREXAMPLE_GRID_SPEC[2] and 0.5 in grid

    vn = sweep(make_fock(6), MonotoneKind("von_neumann"), grid, "fock:6")
    assert np.max(np.abs(curves[0].values - vn.values)) < 1e-12

    conc1 = check_concavity(curves[0], 1e-8)
    peak1 = check_peak_at_half(curves[0], 1e-12)
    assert conc1.passed and peak1.passed

    dominance = [r for r in reports if r.check == "renyi_order_dominance"]
    assert dominance and all(r.worst_margin >= -1e-10 for r in dominance)

    broke = [not check_concavity(c, 1e-8).passed for c in curves if c.kind.alpha > 2]
    moved = [not check_peak_at_half(c, 1e-12).passed for c in curves if c.kind.alpha > 2]
    assert any(broke) and any(moved)


@criterion(2, "single photon analytics")
def test_criterion_02_single_photon_analytics():
    state = make_fock(1)
    vn_half = evaluate_monotone(state, MonotoneKind("von_neumann"), 0.5)
    assert abs(vn_half - np.log(2.0)) <= 1e-10

    grid = _grid()
    pu = sweep(state, MonotoneKind("purity"), grid, "fock:1")
    exact = grid**2 + (1.0 - grid) ** 2
    assert np.max(np.abs(pu.values - exact)) <= 1e-12

    g_half = evaluate_monotone(state, MonotoneKind("g_concurrence"), 0.5)
    assert abs(g_half - 1.0) <= 1e-10

    for t in make_grid(*DERIVATIVE_GRID_SPEC):
        lhs, rhs = entropy_derivative_identity(state, float(t))
        assert abs(rhs - np.log((1.0 - t) / t)) <= 1e-6
        assert abs(lhs - rhs) <= 1e-6


@criterion(3, "entropy concavity")
def test_criterion_03_entropy_concavity():
    grid = _grid()
    for label, state in _pure() + catalog_mixed_states():
        curve = sweep(state, MonotoneKind("von_neumann"), grid, label)
        report = check_concavity(curve, 1e-8)
        assert report.passed, f"{label}: margin {report.worst_margin:+.3e}"


@criterion(4, "purity convexity and polynomial structure")
def test_criterion_04_purity_polynomial():
    grid = _grid()
    for label, state in _pure():
        curve = sweep(state, MonotoneKind("purity"), grid, label)
        report = check_convexity(curve, 1e-8)
        assert report.passed, f"{label}: margin {report.worst_margin:+.3e}"
        poly = purity_polynomial(state)
        coeffs = np.asarray(poly.coefficients)
        assert np.max(np.abs(coeffs[1::2]), initial=0.0) <= 1e-12, label
        assert float(np.min(coeffs)) >= -1e-12, label


@criterion(5, "g-concurrence structure")
def test_criterion_05_gconc_structure():
    for label, curve in _gconc_curves():
        mono = check_gconc_monotonicity(curve, 1e-10)
        assert mono.passed, f"{label}: margin {mono.worst_margin:+.3e}"
        logc = check_gconc_log_concavity(curve, 1e-8)
        assert logc.passed, f"{label}: margin {logc.worst_margin:+.3e}"
    finite = [(lbl, st) for lbl, st in _finite() if st.max_occupied > 0]
    for report in check_determinant_match(finite, T_SAMPLE, tolerance=1e-9):
        assert report.passed, f"{report.state}: margin {report.worst_margin:+.3e}"
    for label, state in finite:
        for t in T_SAMPLE:
            svd_route = evaluate_monotone(state, MonotoneKind("g_concurrence"), t)
            closed = g_concurrence_closed_form(state, t)
            scale = max(closed, 1e-300)
            assert abs(svd_route - closed) / scale <= 1e-9, (label, t)


@criterion(6, "channel identities")
def test_criterion_06_channel_identities():
    reports = check_exact_identities(_finite(), T_SAMPLE, tolerance=1e-12)
    for report in reports:
        assert report.passed, f"{report.check}/{report.state}: {report.worst_margin:+.3e}"
    for label, state in _pure():
        mirror = check_mirror_identity_sweep(state, DERIVATIVE_GRID_SPEC, label, 1e-8)
        assert mirror.passed, f"{label}: margin {mirror.worst_margin:+.3e}"
    dpi = check_data_processing(count=100, cutoff=6, seed=11, tolerance=1e-10)
    assert dpi.passed, f"dpi margin {dpi.worst_margin:+.3e}"


@criterion(7, "overlap polynomial positivity")
def test_criterion_07_overlap_positivity():
    floor, recon = check_overlap_polynomial_pairs(
        count=200, seed=13, grid=(0.0, 1.0, 21),
        floor_tolerance=1e-12, reconstruction_tolerance=1e-10,
    )
    assert floor.passed, f"min coefficient {floor.worst_margin:+.3e}"
    assert recon.passed, f"reconstruction residual {-recon.worst_margin:.3e}"


@criterion(8, "witness law on the left half interval")
def test_criterion_08_qcs_left_law():
    grid = _grid()
    open_grid = grid[(grid > 0.0) & (grid < 1.0)]
    for label, state in _pure() + catalog_mixed_states():
        curve = sweep(state, MonotoneKind("qcs_witness"), open_grid, label)
        report = check_qcs_law(curve, 1e-6)
        assert report.passed, f"{label}: margin {report.worst_margin:+.3e}"
        if label.startswith("coherent:"):
            assert np.max(np.abs(curve.values - 1.0)) <= 1e-6, label


@criterion(9, "ensemble averages stay symmetric and peaked")
def test_criterion_09_ensembles():
    grid = _grid()
    for label, ens in catalog_ensembles():
        for kind_name in ("von_neumann", "mixedness", "g_concurrence"):
            curve = sweep(ens, MonotoneKind(kind_name), grid, label)
            sym = check_symmetry(curve, 1e-10)
            assert sym.passed, f"{label}/{kind_name}: {sym.worst_margin:+.3e}"
            peak = check_peak_at_half(curve, 1e-12)
            assert peak.worst_margin >= -1e-12, f"{label}/{kind_name}: {peak.worst_margin:+.3e}"


@criterion(10, "classical inputs stay separable")
def test_criterion_10_coherent_separability():
    grid = _grid()
    for label, state in _pure():
        if not label.startswith("coherent:"):
            continue
        for report in check_separability(state, grid, label, 1e-8):
            assert report.passed, f"{label}/{report.check}: {report.worst_margin:+.3e}"
        for kind in (MonotoneKind("von_neumann"), MonotoneKind("mixedness"), MonotoneKind("renyi", 2.0)):
            curve = sweep(state, kind, grid, label)
            assert np.max(np.abs(curve.values)) < 1e-8, f"{label}/{kind.label}"
