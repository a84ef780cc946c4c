"""Assembly of bivariate orthogonal systems from univariate ingredients.

A system is determined by three pieces of data:

* a radical factor rho(x): either a degree <= 1 polynomial r1 x + r0
  (case I) or the square root of a degree <= 2 polynomial
  s2 x^2 + s1 x + s0 (case II, which requires the second-variable family
  to be symmetric);
* a ladder of first-variable families, one per second-variable degree m,
  where step m+1 carries an extra rho^2 factor in its weight;
* a second-variable family q.

The degree-(n, m) basis polynomial is

    P_{n,m}(x, y) = p_{n-m}^{(m)}(x) * rho(x)^m * q_m(y / rho(x)),

which is a genuine polynomial because q_m has the same parity as m in
case II.  The module expands these basis polynomials, computes moments of
the induced bivariate functional, and evaluates Gram blocks -- the
independent ground truth against which the recurrence-built matrix
relations are checked.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .numerics import (
    EXACT,
    Scalar,
    _RAT,
    _as_raw_exact,
    _poly,
    _wrap,
)
from .univariate import QuasiDefinitenessError, RecurrenceFamily

_ZERO = _RAT(0)
_ONE = _RAT(1)

CASE_I = "I"
CASE_II = "II"


@dataclass(frozen=True)
class RhoSpec:
    """The radical factor.  s2, s1, s0 (coefficients of rho^2) are always
    populated; r1, r0 are present only in case I."""

    case: str
    r1: Scalar | None
    r0: Scalar | None
    s2: Scalar
    s1: Scalar
    s0: Scalar

    @classmethod
    def linear(cls, r1, r0):
        """Case I: rho(x) = r1 x + r0 itself is a polynomial."""
        r1_raw = _as_raw_exact(r1)
        r0_raw = _as_raw_exact(r0)
        if not r1_raw and not r0_raw:
            raise ValueError("rho must not be identically zero")
        return cls(
            CASE_I,
            _wrap(r1_raw, EXACT),
            _wrap(r0_raw, EXACT),
            _wrap(r1_raw * r1_raw, EXACT),
            _wrap(2 * r1_raw * r0_raw, EXACT),
            _wrap(r0_raw * r0_raw, EXACT),
        )

    @classmethod
    def sqrt_quadratic(cls, s2, s1, s0):
        """Case II: only rho(x)^2 = s2 x^2 + s1 x + s0 is a polynomial."""
        s2_raw = _as_raw_exact(s2)
        s1_raw = _as_raw_exact(s1)
        s0_raw = _as_raw_exact(s0)
        if not (s2_raw or s1_raw or s0_raw):
            raise ValueError("rho^2 must not be identically zero")
        return cls(
            CASE_II,
            None,
            None,
            _wrap(s2_raw, EXACT),
            _wrap(s1_raw, EXACT),
            _wrap(s0_raw, EXACT),
        )


@dataclass(frozen=True)
class GramBlock:
    """Dense block of bivariate inner products <w, P_{n,.} P_{h,.}>.

    entries[m][mp] pairs row degree (n, m) with column degree (h, mp).
    """

    n: int
    h: int
    entries: tuple


def _list_mul(u, v):
    out = [_ZERO] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if b:
                out[i + j] = out[i + j] + a * b
    return out


class BivariateSystem:
    """One assembled bivariate orthogonal system.  Build via ``assemble``."""

    def __init__(self, rho, ladder_factory, q, max_m, label):
        self.rho = rho
        self.q = q
        self.max_m = max_m
        self.label = label
        self._factory = ladder_factory
        self._lock = threading.RLock()
        self._ladders = []
        self._P_cache = {}
        self._w_cache = {}
        self._rho_pow = {0: [_ONE]}
        self._rho2_pow = {0: [_ONE]}
        self._gram_cache = {}

    def __repr__(self):
        return f"BivariateSystem({self.label!r})"

    @property
    def case(self):
        return self.rho.case

    # -- the ladder of first-variable families -------------------------------

    def ladder(self, m):
        """First-variable family for second-variable degree m, with its
        norm normalization chained through the rho^2-moment recursion."""
        if not isinstance(m, int) or m < 0:
            raise ValueError("ladder index must be a nonnegative int")
        with self._lock:
            while len(self._ladders) <= m:
                j = len(self._ladders)
                if j == 0:
                    self._ladders.append(self._factory(0).with_h0(1))
                    continue
                prev = self._ladders[j - 1]
                mom = [prev._moment_raw(i) for i in range(3)]
                chain = (self.rho.s2.value * mom[2]
                         + self.rho.s1.value * mom[1]
                         + self.rho.s0.value * mom[0])
                fam = self._factory(j)
                if not chain:
                    raise QuasiDefinitenessError(
                        f"{self.label}:{fam.label}", fam.params, j,
                        f"weight-chain value <u, rho^2> vanished at ladder "
                        f"step {j}")
                self._ladders.append(fam.with_h0(chain))
            return self._ladders[m]

    # -- powers of rho ---------------------------------------------------------

    def _rho_pow_raw(self, e):
        """Coefficient list of rho(x)^e (case I only)."""
        if self.case != CASE_I:
            raise ValueError("direct rho powers exist only in case I")
        with self._lock:
            cache = self._rho_pow
            if e not in cache:
                base = [self.rho.r0.value, self.rho.r1.value]
                top = max(cache)
                cur = cache[top]
                for j in range(top + 1, e + 1):
                    cur = _list_mul(cur, base)
                    cache[j] = cur
            return cache[e]

    def _rho2_pow_raw(self, half):
        """Coefficient list of (rho^2)^half."""
        with self._lock:
            cache = self._rho2_pow
            if half not in cache:
                base = [self.rho.s0.value, self.rho.s1.value, self.rho.s2.value]
                top = max(cache)
                cur = cache[top]
                for j in range(top + 1, half + 1):
                    cur = _list_mul(cur, base)
                    cache[j] = cur
            return cache[half]

    def _rho_even_pow_raw(self, e):
        """Coefficient list of rho^e for even e, valid in both cases."""
        if e % 2:
            raise ValueError("even power required")
        return self._rho2_pow_raw(e // 2)

    # -- basis polynomials -------------------------------------------------------

    def expand_P(self, n, m):
        """The (n, m) basis polynomial as an exact SparsePoly2."""
        if not (isinstance(n, int) and isinstance(m, int) and 0 <= m <= n):
            raise ValueError(f"need 0 <= m <= n, got (n, m) = ({n}, {m})")
        key = (n, m)
        cached = self._P_cache.get(key)
        if cached is not None:
            return cached
        q_coeffs = self.q._coeffs_raw(m)
        p_coeffs = self.ladder(m)._coeffs_raw(n - m)
        terms = {}
        for j, qc in enumerate(q_coeffs):
            if not qc:
                continue
            e = m - j
            if self.case == CASE_I:
                rho_e = self._rho_pow_raw(e)
            else:
                if e % 2:
                    raise ValueError(
                        f"{self.label}: case II second-variable family is "
                        f"not symmetric (q_{m} has a y^{j} term)")
                rho_e = self._rho_even_pow_raw(e)
            for i, pc in enumerate(p_coeffs):
                if not pc:
                    continue
                factor = pc * qc
                for d, rc in enumerate(rho_e):
                    if not rc:
                        continue
                    key_t = (i + d, j)
                    acc = terms.get(key_t)
                    prod = factor * rc
                    acc = prod if acc is None else acc + prod
                    if acc:
                        terms[key_t] = acc
                    else:
                        terms.pop(key_t, None)
        poly = _poly(terms, EXACT)
        with self._lock:
            self._P_cache[key] = poly
        return poly

    # -- moments of the bivariate functional ----------------------------------

    def _w_moment_raw(self, h, k):
        key = (h, k)
        cached = self._w_cache.get(key)
        if cached is not None:
            return cached
        if self.case == CASE_II and k % 2:
            value = _ZERO
        else:
            if self.case == CASE_I:
                rho_k = self._rho_pow_raw(k)
            else:
                rho_k = self._rho_even_pow_raw(k)
            base = self.ladder(0)
            base._moment_raw(h + len(rho_k) - 1)
            acc = _ZERO
            for d, rc in enumerate(rho_k):
                if rc:
                    acc = acc + rc * base._moment_raw(h + d)
            value = acc * self.q._moment_raw(k)
        with self._lock:
            self._w_cache[key] = value
        return value

    def w_moment(self, h, k):
        """Moment <w, x^h y^k> of the bivariate functional."""
        if not (isinstance(h, int) and isinstance(k, int) and h >= 0 and k >= 0):
            raise ValueError("moment exponents must be nonnegative ints")
        return _wrap(self._w_moment_raw(h, k), EXACT)

    def moment_bilinear(self, p, q_poly, dx=0, dy=0):
        """<w, x^dx y^dy p(x,y) q_poly(x,y)> for two exact polynomials."""
        acc = _ZERO
        wm = self._w_moment_raw
        for (i1, j1), c1 in p._terms.items():
            for (i2, j2), c2 in q_poly._terms.items():
                m = wm(i1 + i2 + dx, j1 + j2 + dy)
                if m:
                    acc = acc + c1 * c2 * m
        return _wrap(acc, EXACT)

    # -- Gram blocks -------------------------------------------------------------

    def gram_block(self, n, h):
        """Dense Gram block pairing total degrees n and h."""
        key = (n, h)
        cached = self._gram_cache.get(key)
        if cached is not None:
            return cached
        rows = [self.expand_P(n, m) for m in range(n + 1)]
        cols = [self.expand_P(h, mp) for mp in range(h + 1)]
        entries = tuple(
            tuple(self.moment_bilinear(pr, pc) for pc in cols)
            for pr in rows
        )
        if n == h:
            for m in range(n + 1):
                if entries[m][m].is_zero:
                    raise QuasiDefinitenessError(
                        self.label, {}, (n, m),
                        f"Gram diagonal <w, P_({n},{m})^2> vanishes")
        block = GramBlock(n, h, entries)
        with self._lock:
            self._gram_cache[key] = block
        return block

    def block_norm(self, n, m):
        """Closed-form squared norm of P_{n,m}: the ladder norm times the
        second-variable norm."""
        raw = self.ladder(m)._h_raw(n - m) * self.q._h_raw(m)
        return _wrap(raw, EXACT)


def assemble(rho, ladder_factory, q, max_m=16, label="system"):
    """Build a BivariateSystem and run eager structural checks.

    Case II requires the second-variable family to be symmetric; its
    recurrence b-coefficients are checked up to max_m.
    """
    if not isinstance(rho, RhoSpec):
        raise TypeError("rho must be a RhoSpec")
    if not isinstance(q, RecurrenceFamily):
        raise TypeError("q must be a RecurrenceFamily")
    if not callable(ladder_factory):
        raise TypeError("ladder_factory must map m to a RecurrenceFamily")
    if not isinstance(max_m, int) or max_m < 0:
        raise ValueError("max_m must be a nonnegative int")
    q_norm = q.with_h0(1)
    if rho.case == CASE_II:
        for j in range(max_m + 1):
            if q_norm._b_raw(j):
                raise ValueError(
                    f"case II requires a symmetric second-variable family; "
                    f"{q_norm.label} has b({j}) != 0")
    return BivariateSystem(rho, ladder_factory, q_norm, max_m, label)
