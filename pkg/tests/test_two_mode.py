import numpy as np
import pytest

from gdistill import (
    CorrelationMatrix,
    StdFormParams,
    apply_symplectic,
    check_inseparable,
    check_physical,
    check_symmetric_inseparable,
    det_invariants,
    direct_sum,
    inseparability_residual,
    is_npt,
    is_symmetric,
    random_symplectic,
    rc_value,
    standard_form_params,
    standard_form_transform,
    tmss_cm,
    vacuum,
    validate_physical,
    wigner_params,
)

# a positive definite two-mode matrix already in standard form, with all four
# parameters distinct so no root of the extraction is degenerate
REF = CorrelationMatrix.from_blocks(2.0 * np.eye(2), 1.5 * np.eye(2), np.diag([0.8, -0.3]))


def scrambled(g, seed):
    S = direct_sum(
        random_symplectic(1, seed=2 * seed).entries,
        random_symplectic(1, seed=2 * seed + 1).entries,
    )
    return apply_symplectic(g, S)


def test_det_invariants_frozen():
    for r in (0.25, 0.5, 1.0):
        det_a, det_b, det_c, det_g = det_invariants(tmss_cm(r))
        ch2, sh2 = np.cosh(2 * r) ** 2, np.sinh(2 * r) ** 2
        assert det_a == pytest.approx(ch2, abs=1e-12)
        assert det_b == pytest.approx(ch2, abs=1e-12)
        assert det_c == pytest.approx(-sh2, abs=1e-12)
        assert det_g == pytest.approx(1.0, abs=1e-10)  # pure state
    with pytest.raises(ValueError):
        det_invariants(vacuum(2, 1))


def test_det_invariants_local_invariance():
    for seed in range(30):
        a = det_invariants(REF)
        b = det_invariants(scrambled(REF, seed))
        assert np.allclose(a, b, rtol=1e-10, atol=1e-10)


def test_standard_form_params_squeezed_frozen():
    for r in (0.25, 0.5, 1.0):
        p = standard_form_params(tmss_cm(r))
        assert abs(p.n_a - np.cosh(2 * r)) < 1e-12
        assert abs(p.n_b - np.cosh(2 * r)) < 1e-12
        assert abs(p.k_x - np.sinh(2 * r)) < 1e-12
        assert abs(p.k_p + np.sinh(2 * r)) < 1e-12


def test_standard_form_params_recovery_under_scrambling():
    for seed in range(40):
        p = standard_form_params(scrambled(REF, seed))
        assert abs(p.n_a - 2.0) < 1e-12
        assert abs(p.n_b - 1.5) < 1e-12
        assert abs(p.k_x - 0.8) < 1e-12
        assert abs(p.k_p + 0.3) < 1e-12


def test_standard_form_transform_congruence_and_signs():
    for seed in range(40):
        g = scrambled(REF, seed)
        s_a, s_b, g_std = standard_form_transform(g)
        S = direct_sum(s_a.entries, s_b.entries)
        assert np.abs(S.T @ g.entries @ S - g_std.entries).max() < 1e-10
        e = g_std.entries
        # diagonal blocks proportional to the identity, cross block diagonal
        assert np.abs(e[:2, :2] - e[0, 0] * np.eye(2)).max() < 1e-10
        assert np.abs(e[2:, 2:] - e[2, 2] * np.eye(2)).max() < 1e-10
        assert abs(e[0, 3]) < 1e-10 and abs(e[1, 2]) < 1e-10
        # ordering and sign conventions: k_x >= |k_p|, sign(k_p) = sign(det C)
        assert e[0, 2] >= abs(e[1, 3]) - 1e-9
        det_c = det_invariants(g)[2]
        assert e[0, 2] * e[1, 3] == pytest.approx(det_c, rel=1e-9, abs=1e-12)
        # transform output agrees with the invariant route
        p = standard_form_params(g)
        assert abs(e[0, 0] - p.n_a) < 1e-9
        assert abs(e[2, 2] - p.n_b) < 1e-9
        assert abs(e[0, 2] - p.k_x) < 1e-9
        assert abs(e[1, 3] - p.k_p) < 1e-9


def test_check_physical_frozen():
    for r in (0.0, 0.5, 1.0):
        chk = check_physical(standard_form_params(tmss_cm(r)))
        assert chk.physical
        assert chk.physicality_residual == pytest.approx(0.0, abs=1e-9)  # pure: boundary
    chk = check_physical(StdFormParams(n_a=2.0, n_b=1.5, k_x=0.8, k_p=-0.3))
    assert chk.physical and chk.physicality_residual > 1.0
    # correlations too strong for the local purities
    chk = check_physical(StdFormParams(n_a=1.2, n_b=1.2, k_x=1.3, k_p=-1.3))
    assert not chk.physical
    assert chk.correlation_residual < 0


def test_check_inseparable_frozen():
    for r in (0.25, 0.5, 1.0):
        chk = check_inseparable(standard_form_params(tmss_cm(r)))
        assert chk.inseparable
        assert chk.residual == pytest.approx(2 * np.cosh(4 * r) - 2.0, rel=1e-9)
    assert not check_inseparable(standard_form_params(vacuum(1, 1))).inseparable
    assert not check_inseparable(StdFormParams(n_a=2.0, n_b=1.5, k_x=0.8, k_p=-0.3)).inseparable


def test_inseparability_residual_matches_param_form():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        n_a, n_b = rng.uniform(1.0, 3.0, size=2)
        kmax = np.sqrt(n_a * n_b - 1.0) if n_a * n_b > 1 else 0.0
        k_x = rng.uniform(0.0, kmax) if kmax > 0 else 0.0
        k_p = rng.uniform(-k_x, k_x) if k_x > 0 else 0.0
        g = CorrelationMatrix.from_blocks(
            n_a * np.eye(2), n_b * np.eye(2), np.diag([k_x, k_p]))
        direct = inseparability_residual(scrambled(g, seed))
        via_params = check_inseparable(StdFormParams(n_a, n_b, k_x, k_p)).residual
        assert direct == pytest.approx(via_params, rel=1e-9, abs=1e-9)


def test_check_inseparable_agrees_with_npt():
    for seed in range(60):
        rng = np.random.default_rng(seed)
        n_a, n_b = rng.uniform(1.0, 2.5, size=2)
        kmax = np.sqrt(max(n_a * n_b - 1.0, 0.0))
        k_x = rng.uniform(0.0, kmax) if kmax > 0 else 0.0
        k_p = rng.uniform(-k_x, k_x) if k_x > 0 else 0.0
        p = StdFormParams(n_a, n_b, k_x, k_p)
        if not check_physical(p).physical:
            continue
        g = scrambled(CorrelationMatrix.from_blocks(
            n_a * np.eye(2), n_b * np.eye(2), np.diag([k_x, k_p])), seed)
        chk = check_inseparable(standard_form_params(g))
        if abs(chk.residual) < 1e-8:  # skip knife-edge cases
            continue
        assert chk.inseparable == is_npt(g).npt


def test_is_symmetric():
    assert is_symmetric(standard_form_params(tmss_cm(0.5)))
    assert not is_symmetric(StdFormParams(n_a=2.0, n_b=1.5, k_x=0.8, k_p=-0.3))


def test_check_symmetric_inseparable_matches_general_form():
    for seed in range(50):
        rng = np.random.default_rng(seed)
        n = rng.uniform(1.0, 3.0)
        kmax = np.sqrt(n * n - 1.0) if n > 1 else 0.0
        k_x = rng.uniform(0.0, kmax) if kmax > 0 else 0.0
        k_p = rng.uniform(-k_x, k_x) if k_x > 0 else 0.0
        p = StdFormParams(n, n, k_x, k_p)
        if not check_physical(p).physical:
            continue
        sym = check_symmetric_inseparable(n, k_x, k_p)
        gen = check_inseparable(p)
        assert sym.inseparable == gen.inseparable
        # general residual factorizes as symmetric residual * positive factor
        u = n * (k_x - k_p)
        v = abs(n * n - k_x * k_p - 1.0)
        if u + v > 1e-9:
            assert gen.residual == pytest.approx(sym.residual * (u + v), rel=1e-9, abs=1e-12)


def test_tmss_cm_validation_and_purity():
    with pytest.raises(ValueError):
        tmss_cm(-1.0)
    assert np.array_equal(tmss_cm(0.0).entries, np.eye(4))
    for r in (0.25, 1.0):
        assert validate_physical(tmss_cm(r)).physical
        assert abs(np.linalg.det(tmss_cm(r).entries) - 1.0) < 1e-10


def test_wigner_params_frozen():
    # pure states are fixed points of the companion map: same parameters
    wp = wigner_params(tmss_cm(0.5))
    assert abs(wp.n_a - np.cosh(1.0)) < 1e-12
    assert abs(wp.n_b - np.cosh(1.0)) < 1e-12
    assert abs(wp.k_x - np.sinh(1.0)) < 1e-12
    assert abs(wp.k_p + np.sinh(1.0)) < 1e-12
    assert wp.d_x == pytest.approx(1.0, abs=1e-10)
    assert wp.d_p == pytest.approx(1.0, abs=1e-10)
    # thermal product: occupations invert, correlations stay zero
    g = CorrelationMatrix(entries=np.diag([2.0, 2.0, 4.0, 4.0]), partition=(1, 1))
    wp = wigner_params(g)
    assert (wp.n_a, wp.n_b) == pytest.approx((0.5, 0.25), abs=1e-12)
    assert (wp.k_x, wp.k_p) == pytest.approx((0.0, 0.0), abs=1e-12)
    assert wp.d_x == pytest.approx(0.125, abs=1e-12)


def test_rc_value_vacuum_is_zero():
    for r in (0.5, 2.0, 8.0):
        res = rc_value(vacuum(1, 1), r)
        assert res.value == pytest.approx(0.0, abs=1e-12)
    # separable: the asymptotic limit is nonnegative
    assert rc_value(vacuum(1, 1), 8.0).asymptotic_value == pytest.approx(0.0, abs=1e-12)


def test_rc_value_squeezed_frozen():
    res = rc_value(tmss_cm(0.5), 8.0)
    # value from the factored overlap determinant, asymptotics from the params
    assert res.value == pytest.approx(-7.734679908840033e-07, rel=1e-9)
    assert res.asymptotic_value == pytest.approx(np.exp(-2.0) - 1.0, abs=1e-12)
    assert res.r == 8.0
    # negative at every probe strength for an NPT symmetric state
    for r in (0.5, 1.0, 2.0, 4.0):
        assert rc_value(tmss_cm(0.5), r).value < 0


def test_rc_value_validation():
    with pytest.raises(ValueError):
        rc_value(vacuum(1, 1), 0.0)
    with pytest.raises(ValueError):
        rc_value(vacuum(1, 1), -1.0)
    with pytest.raises(ValueError):
        rc_value(vacuum(2, 1), 1.0)  # not a two-mode state


def test_rc_sign_matches_asymptotics_for_symmetric_states():
    hits = 0
    for seed in range(80):
        rng = np.random.default_rng(seed)
        n = rng.uniform(1.0, 2.5)
        kmax = np.sqrt(max(n * n - 1.0, 0.0))
        k_x = rng.uniform(0.0, kmax) if kmax > 0 else 0.0
        k_p = rng.uniform(-k_x, k_x) if k_x > 0 else 0.0
        p = StdFormParams(n, n, k_x, k_p)
        if not check_physical(p).physical:
            continue
        asym = (n - k_x) * (n + k_p) - 1.0
        if abs(asym) < 1e-3:
            continue
        g = CorrelationMatrix.from_blocks(
            n * np.eye(2), n * np.eye(2), np.diag([k_x, k_p]))
        res = rc_value(g, 8.0)
        assert np.sign(res.value) == np.sign(asym)
        hits += 1
    assert hits > 30  # the filter must leave a meaningful sample
