"""Univariate recurrence families and adjacent-family connections."""
import pytest

from ortho2d import (
    QuasiDefinitenessError,
    RecurrenceFamily,
    Scalar,
    adjacent_down,
    adjacent_up,
    bessel,
    jacobi_shift,
    jacobi_std,
    laguerre,
)

q = Scalar.exact


# -- test-local oracles ----------------------------------------------------


def inner_product(fam, p_coeffs, q_coeffs):
    """<u, p q> computed from the family's moments alone."""
    top = len(p_coeffs) + len(q_coeffs) - 2
    mu = fam.moments(max(top, 0))
    acc = q(0)
    for i, a in enumerate(p_coeffs):
        for j, b in enumerate(q_coeffs):
            acc = acc + a * b * mu[i + j]
    return acc


def polynomial_product(u, v):
    out = [q(0)] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] = out[i + j] + a * b
    return out


def assert_orthogonal_family(fam, upto):
    """Moment-level Gram check: <p_i, p_j> = h_i [i == j]."""
    coeffs = [fam.coeffs(n) for n in range(upto + 1)]
    for i in range(upto + 1):
        for j in range(i + 1):
            got = inner_product(fam, coeffs[i], coeffs[j])
            want = fam.norms(i) if i == j else q(0)
            assert got == want, (fam.label, i, j, str(got), str(want))


# -- fixed known values ----------------------------------------------------


def test_legendre_recurrence_values():
    leg = jacobi_std(0, 0)
    assert leg.a(0) == q(1)
    assert leg.a(2) == q("3/5")
    assert leg.c(2) == q("2/5")
    for n in range(6):
        assert leg.b(n) == q(0)
    assert leg.coeffs(2) == [q("-1/2"), q(0), q("3/2")]
    assert leg.norms(1) == q("1/3")
    assert leg.moments(4) == [q(1), q(0), q("1/3"), q(0), q("1/5")]


def test_jacobi_nonsymmetric_values():
    fam = jacobi_std(1, 0)
    assert fam.b(1) == q("-1/15")
    assert fam.b(0) == q("-1/3")


def test_jacobi_shift_values():
    fam = jacobi_shift(0, 0)
    assert fam.a(0) == q("1/2")
    assert fam.b(0) == q("1/2")
    assert fam.c(1) == q("1/6")
    mu = fam.moments(5)
    for k in range(6):
        assert mu[k] == q(1) / (k + 1)


def test_laguerre_values():
    fam = laguerre(0)
    assert fam.a(0) == q(-1) and fam.a(3) == q(-4)
    assert fam.b(0) == q(1) and fam.b(2) == q(5)
    assert fam.c(3) == q(-3)
    assert laguerre("1/2").b(2) == q("11/2")
    mu = fam.moments(5)
    import math

    for k in range(6):
        assert mu[k] == q(math.factorial(k))


def test_bessel_values():
    fam = bessel(3, 1)
    assert fam.c(1) == q("-1/12")
    assert fam.a(0) == q("1/3")
    assert fam.b(0) == q("-1/3")
    # a = 2 kills the generic b numerator for n >= 1 but not at n = 0
    fam2 = bessel(2, 1)
    assert fam2.b(0) == q("-1/2")
    assert fam2.b(1) == q(0) and fam2.b(2) == q(0)
    with pytest.raises(ValueError):
        bessel(3, 0)


def test_c_at_zero_is_an_error():
    with pytest.raises(ValueError):
        jacobi_std(0, 0).c(0)


def test_leading_coefficients():
    leg = jacobi_std(0, 0)
    assert leg.leading_coeffs(1).k == q(1)
    assert leg.leading_coeffs(2).k == q("3/2")
    assert leg.leading_coeffs(2).l == q(0)
    bes = bessel(3, 1)
    # k_n = (n+a-1)_n / b^n, l_n = n (n+a-1)_{n-1} / b^{n-1} for a = 3, b = 1
    assert bes.leading_coeffs(1).k == q(3)
    assert bes.leading_coeffs(2).k == q(20)
    assert bes.leading_coeffs(1).l == q(1)
    assert bes.leading_coeffs(2).l == q(8)


def test_norm_ratios_bessel():
    a_, b_ = q(5), q("2/5")
    fam = bessel(a_, b_)
    assert fam.norms(1) / fam.norms(0) == -1 / (a_ + 1)
    for n in range(2, 7):
        want = -n * (2 * n + a_ - 3) / ((2 * n + a_ - 1) * (n + a_ - 2))
        assert fam.norms(n) / fam.norms(n - 1) == want


def test_with_h0_scales_norms_not_polynomials():
    leg = jacobi_std(0, 0)
    scaled = leg.with_h0("2/3")
    assert scaled.norms(0) == q("2/3")
    assert scaled.norms(2) == leg.norms(2) * q("2/3")
    assert scaled.coeffs(3) == leg.coeffs(3)
    assert scaled.moments(3) == [m * q("2/3") for m in leg.moments(3)]
    with pytest.raises(ValueError):
        leg.with_h0(0)


def test_eval_exact_and_float():
    leg = jacobi_std(0, 0)
    assert leg.eval(2, q("1/2")) == q("-1/8")
    assert leg.eval(3, q(1)) == q(1)
    fv = leg.eval(2, Scalar.floating(0.5))
    assert abs(float(fv) + 0.125) < 1e-15


def test_quasi_definiteness_error_paths():
    degenerate = jacobi_std(-1, -1)  # a(0) divides by alpha+beta+2 = 0
    with pytest.raises(QuasiDefinitenessError) as info:
        degenerate.coeffs(1)
    assert "a(0)" in str(info.value)
    with pytest.raises(QuasiDefinitenessError):
        degenerate.leading_coeffs(1)
    # a family whose c vanishes: norms must refuse to continue
    flat = RecurrenceFamily("flat", lambda n: 1, lambda n: 0, lambda n: 0)
    with pytest.raises(QuasiDefinitenessError):
        flat.norms(1)


# -- moment-level orthogonality (independent Gram oracle) ------------------


@pytest.mark.parametrize("fam", [
    jacobi_std(0, 0),
    jacobi_std("3/2", "1/2"),
    jacobi_shift("1/2", 2),
    laguerre("1/2"),
    bessel(5, "2/5"),
    bessel(7, -5),
])
def test_families_are_orthogonal_with_predicted_norms(fam):
    assert_orthogonal_family(fam, 7)


def test_recurrence_reconstructs_polynomials():
    # x p_n(x) = a_n p_{n+1} + b_n p_n + c_n p_{n-1}, coefficient-wise
    for fam in (jacobi_std("1/2", "3/2"), laguerre(1), bessel(4, 2)):
        for n in range(6):
            lhs = [q(0)] + fam.coeffs(n)
            rhs = [v * fam.a(n) for v in fam.coeffs(n + 1)]
            rhs = [rv + lv for rv, lv in zip(
                rhs, [v * fam.b(n) for v in fam.coeffs(n)] + [q(0), q(0)])]
            if n >= 1:
                down = [v * fam.c(n) for v in fam.coeffs(n - 1)]
                rhs = [rv + (down[i] if i < len(down) else q(0))
                       for i, rv in enumerate(rhs)]
            assert lhs == rhs, (fam.label, n)


# -- adjacent-family connections -------------------------------------------


def chained(base, companion, s2, s1, s0):
    """Companion family re-normalized by the rho^2-moment of the base."""
    mu = base.moments(2)
    h0 = s2 * mu[2] + s1 * mu[1] + s0 * mu[0]
    return companion.with_h0(h0)


CONNECTION_CASES = [
    # (base, companion bearing an extra rho^2 in its weight, s2, s1, s0)
    (jacobi_std(0, 0), jacobi_std(1, 1), -1, 0, 1),          # rho^2 = 1-x^2
    (jacobi_std("3/2", "1/2"), jacobi_std("5/2", "3/2"), -1, 0, 1),
    (jacobi_shift(1, "1/2"), jacobi_shift(1, "3/2"), 0, 1, 0),  # rho^2 = x
    (jacobi_shift("1/2", 2), jacobi_shift("5/2", 2), 1, -2, 1),  # (1-x)^2
    (laguerre("1/2"), laguerre("5/2"), 1, 0, 0),             # rho^2 = x^2
    (bessel(5, "2/5"), bessel(7, "2/5"), 1, 0, 0),
]


@pytest.mark.parametrize("base,comp,s2,s1,s0", CONNECTION_CASES)
def test_adjacent_down_identity(base, comp, s2, s1, s0):
    # p_n = delta_n pc_n + epsilon_n pc_{n-1} + zeta_n pc_{n-2},
    # verified coefficient-wise against the defining expansion
    comp = chained(base, comp, q(s2), q(s1), q(s0))
    for n in range(9):
        conn = adjacent_down(base, comp, q(s2), n)
        rhs = [v * conn.delta for v in comp.coeffs(n)]
        if n >= 1:
            assert conn.epsilon is not None
            for i, v in enumerate(comp.coeffs(n - 1)):
                rhs[i] = rhs[i] + v * conn.epsilon
        else:
            assert conn.epsilon is None
        if n >= 2:
            assert conn.zeta is not None
            for i, v in enumerate(comp.coeffs(n - 2)):
                rhs[i] = rhs[i] + v * conn.zeta
        else:
            assert conn.zeta is None
        assert rhs == base.coeffs(n), (base.label, n)


@pytest.mark.parametrize("base,comp,s2,s1,s0", CONNECTION_CASES)
def test_adjacent_up_identity(base, comp, s2, s1, s0):
    # rho^2 pc_n = eta_n p_{n+2} + theta_n p_{n+1} + vartheta_n p_n,
    # verified coefficient-wise
    rho2 = [q(s0), q(s1), q(s2)]
    comp = chained(base, comp, q(s2), q(s1), q(s0))
    for n in range(9):
        conn = adjacent_up(base, comp, q(s2), n)
        lhs = polynomial_product(rho2, comp.coeffs(n))
        width = n + 3
        lhs = lhs + [q(0)] * (width - len(lhs))
        rhs = [q(0)] * width
        for coeff, deg in ((conn.eta, n + 2), (conn.theta, n + 1),
                           (conn.vartheta, n)):
            for i, v in enumerate(base.coeffs(deg)):
                rhs[i] = rhs[i] + v * coeff
        assert lhs == rhs, (base.label, n)


@pytest.mark.parametrize("base,comp,s2,s1,s0", CONNECTION_CASES)
def test_adjacent_up_down_norm_invariant(base, comp, s2, s1, s0):
    # eta_n = zeta_{n+2} h_n(companion) / h_{n+2}(base)
    comp = chained(base, comp, q(s2), q(s1), q(s0))
    for n in range(7):
        up = adjacent_up(base, comp, q(s2), n)
        down = adjacent_down(base, comp, q(s2), n + 2)
        assert up.eta == down.zeta * comp.norms(n) / base.norms(n + 2)


def test_adjacent_linear_radical_has_no_skip_terms():
    # s2 = 0: the two-step coefficients vanish identically
    base = jacobi_shift(1, "1/2")
    comp = chained(base, jacobi_shift(1, "3/2"), q(0), q(1), q(0))
    for n in range(2, 6):
        assert adjacent_down(base, comp, q(0), n).zeta == q(0)
        assert adjacent_up(base, comp, q(0), n).eta == q(0)


def test_adjacent_known_laguerre_triple():
    # alpha -> alpha+2 with rho^2 = x^2: (delta, epsilon, zeta) = (1, -2, 1)
    base = laguerre(1)
    comp = chained(base, laguerre(3), q(1), q(0), q(0))
    for n in range(2, 8):
        conn = adjacent_down(base, comp, q(1), n)
        assert (conn.delta, conn.epsilon, conn.zeta) == (q(1), q(-2), q(1))
        up = adjacent_up(base, comp, q(1), n)
        assert up.eta == q((n + 1) * (n + 2))
        assert up.theta == q(-2 * (n + 1)) * (n + 1 + 2)
        assert up.vartheta == q((n + 1 + 1) * (n + 1 + 2))
