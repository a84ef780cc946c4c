"""Univariate orthogonal polynomial families in monic-free recurrence form.

A family is defined by the three-term recurrence

    x p_n(x) = a_n p_{n+1}(x) + b_n p_n(x) + c_n p_{n-1}(x),    p_0 = 1,

together with the squared norm h_0 of p_0.  From the recurrence alone the
module derives leading coefficients, norms, moments of the underlying
functional, dense coefficient lists and point evaluation -- all exactly.

It also computes the two connection triples between a family and the
companion family obtained by appending a factor rho(x)^2 to its weight:

    p_n       = delta_n q_n + epsilon_n q_{n-1} + zeta_n q_{n-2}
    rho^2 q_n = eta_n p_{n+2} + theta_n p_{n+1} + vartheta_n p_n

where q is the companion family normalized so that its h_0 equals the
rho^2-moment of the base family (``adjacent_down`` / ``adjacent_up``).

Division by zero anywhere in the lazy recurrence data signals that the
parameter choice does not define a quasi-definite functional; it surfaces
as a structured QuasiDefinitenessError.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .numerics import (
    EXACT,
    FLOAT,
    Scalar,
    _RAT,
    _as_raw_exact,
    _wrap,
)

_ONE = _RAT(1)
_ZERO = _RAT(0)


class QuasiDefinitenessError(ArithmeticError):
    """A family's recurrence data degenerates at some index.

    Carries the family label, its parameters, the offending index and a
    human-readable detail string.
    """

    def __init__(self, label, params, index, detail):
        self.label = label
        self.params = dict(params or {})
        self.index = index
        self.detail = detail
        ptxt = ", ".join(f"{k}={v}" for k, v in self.params.items())
        suffix = f" [params {ptxt}]" if ptxt else ""
        super().__init__(f"{label}: {detail}{suffix}")


@dataclass(frozen=True)
class LeadingPair:
    """Leading coefficient k_n and subleading coefficient l_n of p_n."""

    k: Scalar
    l: Scalar


@dataclass(frozen=True)
class AdjacentDown:
    """Coefficients expanding a base polynomial in the companion family.

    epsilon is None for n < 1 and zeta is None for n < 2 (those terms do
    not occur).  delta is always nonzero.
    """

    delta: Scalar
    epsilon: Scalar | None
    zeta: Scalar | None


@dataclass(frozen=True)
class AdjacentUp:
    """Coefficients expanding rho^2 times a companion polynomial in the base
    family.  vartheta is always nonzero; eta vanishes when rho is constant
    or linear (s2 = 0)."""

    eta: Scalar
    theta: Scalar
    vartheta: Scalar


class RecurrenceFamily:
    """One univariate family, defined by recurrence closures.

    The closures a, b, c take an index n and return a raw exact rational;
    c is only consulted for n >= 1.  All derived data (leading
    coefficients, norms, moments, dense coefficients) is computed lazily,
    cached, and shared safely across threads.
    """

    def __init__(self, label, a, b, c, h0=1, params=None):
        self.label = label
        self.params = dict(params or {})
        self._a_fn = a
        self._b_fn = b
        self._c_fn = c
        h0_raw = _as_raw_exact(h0)
        if not h0_raw:
            raise ValueError(f"{label}: h0 must be nonzero")
        self._h0 = h0_raw
        self._lock = threading.RLock()
        self._kl_cache = [(_ONE, _ZERO)]
        self._h_cache = [h0_raw]
        self._mom_cache = [[_ONE]]
        self._coeff_cache = [[_ONE]]

    def __repr__(self):
        return f"RecurrenceFamily({self.label!r})"

    def with_h0(self, h0):
        """Same recurrence, different normalization of h_0."""
        return RecurrenceFamily(self.label, self._a_fn, self._b_fn,
                                self._c_fn, h0, self.params)

    # -- guarded raw recurrence access -------------------------------------

    def _fail(self, index, detail, cause=None):
        raise QuasiDefinitenessError(self.label, self.params, index,
                                     detail) from cause

    def _raw(self, which, fn, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"index must be a nonnegative int, got {n!r}")
        try:
            return fn(n)
        except ZeroDivisionError as exc:
            self._fail(n, f"recurrence coefficient {which}({n}) is undefined "
                          f"(zero denominator)", exc)

    def _a_raw(self, n):
        return self._raw("a", self._a_fn, n)

    def _b_raw(self, n):
        return self._raw("b", self._b_fn, n)

    def _c_raw(self, n):
        if n < 1:
            raise ValueError("c(n) is only defined for n >= 1")
        return self._raw("c", self._c_fn, n)

    # -- public recurrence coefficients ------------------------------------

    def a(self, n):
        return _wrap(self._a_raw(n), EXACT)

    def b(self, n):
        return _wrap(self._b_raw(n), EXACT)

    def c(self, n):
        return _wrap(self._c_raw(n), EXACT)

    @property
    def h0(self):
        return _wrap(self._h0, EXACT)

    # -- leading coefficients ------------------------------------------------

    def _kl_raw(self, n):
        with self._lock:
            cache = self._kl_cache
            while len(cache) <= n:
                j = len(cache) - 1
                k, l = cache[j]
                a_j = self._a_raw(j)
                if not a_j:
                    self._fail(j, f"a({j}) = 0: degree cannot advance")
                cache.append((k / a_j, (l - self._b_raw(j) * k) / a_j))
            return cache[n]

    def leading_coeffs(self, n):
        """k_n (always nonzero) and l_n, the top two coefficients of p_n."""
        k, l = self._kl_raw(n)
        return LeadingPair(_wrap(k, EXACT), _wrap(l, EXACT))

    # -- norms ---------------------------------------------------------------

    def _h_raw(self, n):
        with self._lock:
            cache = self._h_cache
            while len(cache) <= n:
                j = len(cache)
                ratio = self._c_raw(j) / self._a_raw(j - 1)
                if not ratio:
                    self._fail(j, f"norm ratio h({j})/h({j - 1}) = "
                                  f"c({j})/a({j - 1}) is zero")
                cache.append(cache[j - 1] * ratio)
            return cache[n]

    def norms(self, n):
        """Squared norm h_n of p_n (relative to the chosen h_0)."""
        return _wrap(self._h_raw(n), EXACT)

    # -- moments ---------------------------------------------------------------

    def _moment_raw(self, j):
        with self._lock:
            cache = self._mom_cache
            while len(cache) <= j:
                v = cache[-1]
                top = len(v) - 1
                new = []
                for i in range(top + 2):
                    acc = _ZERO
                    if 1 <= i <= top + 1:
                        acc = acc + self._a_raw(i - 1) * v[i - 1]
                    if i <= top:
                        acc = acc + self._b_raw(i) * v[i]
                    if i + 1 <= top:
                        acc = acc + self._c_raw(i + 1) * v[i + 1]
                    new.append(acc)
                cache.append(new)
            return cache[j][0] * self._h0

    def moments(self, upto):
        """List of moments <u, x^j> for j = 0..upto (so moments(0) = [h_0])."""
        if not isinstance(upto, int) or upto < 0:
            raise ValueError("moment bound must be a nonnegative int")
        self._moment_raw(upto)
        return [_wrap(self._moment_raw(j), EXACT) for j in range(upto + 1)]

    # -- dense coefficients / evaluation ------------------------------------

    def _coeffs_raw(self, n):
        with self._lock:
            cache = self._coeff_cache
            while len(cache) <= n:
                j = len(cache) - 1
                cur = cache[j]
                a_j = self._a_raw(j)
                if not a_j:
                    self._fail(j, f"a({j}) = 0: degree cannot advance")
                b_j = self._b_raw(j)
                new = [_ZERO] + list(cur)
                for i, v in enumerate(cur):
                    new[i] = new[i] - b_j * v
                if j >= 1:
                    c_j = self._c_raw(j)
                    for i, v in enumerate(cache[j - 1]):
                        new[i] = new[i] - c_j * v
                cache.append([v / a_j for v in new])
            return cache[n]

    def coeffs(self, n):
        """Dense monomial coefficients of p_n, constant term first."""
        return [_wrap(v, EXACT) for v in self._coeffs_raw(n)]

    def eval(self, n, x):
        """Evaluate p_n at a Scalar x (exact or float, by x's mode)."""
        if not isinstance(x, Scalar):
            raise TypeError("eval takes a Scalar argument")
        if not isinstance(n, int) or n < 0:
            raise ValueError("degree must be a nonnegative int")
        as_float = x.mode == FLOAT
        conv = float if as_float else (lambda v: v)
        xv = x.value
        p_prev = None
        p_cur = 1.0 if as_float else _ONE
        for j in range(n):
            a_j = conv(self._a_raw(j))
            if not a_j:
                self._fail(j, f"a({j}) = 0: degree cannot advance")
            b_j = conv(self._b_raw(j))
            p_next = (xv - b_j) * p_cur
            if j >= 1:
                p_next = p_next - conv(self._c_raw(j)) * p_prev
            p_prev, p_cur = p_cur, p_next / a_j
        return _wrap(p_cur, FLOAT if as_float else EXACT)


# -- family constructors ----------------------------------------------------


def _jacobi_raw_closures(alpha, beta):
    al, be = alpha, beta
    s = al + be

    def a(n):
        if n == 0:
            return 2 / (s + 2)
        return 2 * (n + 1) * (n + s + 1) / ((2 * n + s + 1) * (2 * n + s + 2))

    def b(n):
        if n == 0:
            return (be - al) / (s + 2)
        return (be * be - al * al) / ((2 * n + s) * (2 * n + s + 2))

    def c(n):
        return 2 * (n + al) * (n + be) / ((2 * n + s) * (2 * n + s + 1))

    return a, b, c


def jacobi_std(alpha, beta):
    """Jacobi-type family on the symmetric interval, weight (1-x)^alpha (1+x)^beta."""
    al = _as_raw_exact(alpha)
    be = _as_raw_exact(beta)
    a, b, c = _jacobi_raw_closures(al, be)
    return RecurrenceFamily(
        f"jacobi({al},{be})", a, b, c,
        params={"alpha": _wrap(al, EXACT), "beta": _wrap(be, EXACT)})


def jacobi_shift(alpha, beta):
    """Jacobi-type family on the unit interval, weight (1-x)^alpha x^beta."""
    al = _as_raw_exact(alpha)
    be = _as_raw_exact(beta)
    a, b, c = _jacobi_raw_closures(al, be)
    return RecurrenceFamily(
        f"jacobi01({al},{be})",
        lambda n: a(n) / 2,
        lambda n: (b(n) + 1) / 2,
        lambda n: c(n) / 2,
        params={"alpha": _wrap(al, EXACT), "beta": _wrap(be, EXACT)})


def laguerre(alpha):
    """Laguerre-type family, weight x^alpha e^{-x} on the half line."""
    al = _as_raw_exact(alpha)
    return RecurrenceFamily(
        f"laguerre({al})",
        lambda n: _RAT(-(n + 1)),
        lambda n: 2 * n + al + 1,
        lambda n: -(n + al),
        params={"alpha": _wrap(al, EXACT)})


def bessel(a, b):
    """Bessel-type family (quasi-definite, never positive-definite).

    Normalized so every polynomial takes the value 1 at the origin.
    Requires b != 0; degenerate values of a surface lazily.
    """
    av = _as_raw_exact(a)
    bv = _as_raw_exact(b)
    if not bv:
        raise ValueError("bessel scale parameter b must be nonzero")

    def a_fn(n):
        if n == 0:
            return bv / av
        return (n + av - 1) * bv / ((2 * n + av - 1) * (2 * n + av))

    def b_fn(n):
        if n == 0:
            return -bv / av
        return -(av - 2) * bv / ((2 * n + av - 2) * (2 * n + av))

    def c_fn(n):
        return -n * bv / ((2 * n + av - 2) * (2 * n + av - 1))

    return RecurrenceFamily(
        f"bessel({av},{bv})", a_fn, b_fn, c_fn,
        params={"a": _wrap(av, EXACT), "b": _wrap(bv, EXACT)})


# -- adjacent-family connections ----------------------------------------------


def adjacent_down(fam_m, fam_m1, s2, n):
    """Triple (delta, epsilon, zeta) expanding fam_m's degree-n polynomial
    in fam_m1, the companion family whose weight carries an extra rho^2.

    s2 is the leading coefficient of rho^2; fam_m1 must be normalized by
    the rho^2-moment chain for the norm-dependent zeta to be meaningful.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("index must be a nonnegative int")
    s2_raw = _as_raw_exact(s2)
    k_m_n, l_m_n = fam_m._kl_raw(n)
    k_m1_n, l_m1_n = fam_m1._kl_raw(n)
    delta = k_m_n / k_m1_n
    epsilon = None
    zeta = None
    if n >= 1:
        k_m1_prev = fam_m1._kl_raw(n - 1)[0]
        epsilon = (l_m_n - delta * l_m1_n) / k_m1_prev
    if n >= 2:
        zeta = (s2_raw * fam_m1._kl_raw(n - 2)[0] / k_m_n
                * fam_m._h_raw(n) / fam_m1._h_raw(n - 2))
    return AdjacentDown(
        _wrap(delta, EXACT),
        None if epsilon is None else _wrap(epsilon, EXACT),
        None if zeta is None else _wrap(zeta, EXACT),
    )


def adjacent_up(fam_m, fam_m1, s2, n):
    """Triple (eta, theta, vartheta) expanding rho^2 times fam_m1's degree-n
    polynomial back in fam_m.  Defined for every n >= 0."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("index must be a nonnegative int")
    s2_raw = _as_raw_exact(s2)
    eta = s2_raw * fam_m1._kl_raw(n)[0] / fam_m._kl_raw(n + 2)[0]
    down_n = adjacent_down(fam_m, fam_m1, s2_raw, n)
    down_next = adjacent_down(fam_m, fam_m1, s2_raw, n + 1)
    h_m1_n = fam_m1._h_raw(n)
    theta = down_next.epsilon.value * h_m1_n / fam_m._h_raw(n + 1)
    vartheta = down_n.delta.value * h_m1_n / fam_m._h_raw(n)
    return AdjacentUp(
        _wrap(eta, EXACT),
        _wrap(theta, EXACT),
        _wrap(vartheta, EXACT),
    )
