"""Exact/float scalar arithmetic, sparse bivariate polynomials, banded matrices.

Everything downstream is built on three value types:

* ``Scalar`` -- an immutable number tagged with a mode: exact rational
  arithmetic (gmpy2.mpq when available, fractions.Fraction otherwise) or
  IEEE double.  Mixing modes in one operation is a hard error, so an exact
  pipeline cannot silently degrade to floating point.
* ``SparsePoly2`` -- a bivariate polynomial stored as a map from exponent
  pairs to nonzero coefficients.
* ``BandMatrix`` -- a rectangular matrix that only admits entries inside a
  declared band; reads outside the band are exact zeros, writes outside it
  are errors.

Plus two exact kernels: ``poly_mul`` and ``rank_exact`` (integer
fraction-free elimination, no floating point anywhere).
"""
from __future__ import annotations

import math
from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpq = None

EXACT = "exact"
FLOAT = "float"

_MODES = (EXACT, FLOAT)

if _mpq is not None:
    _RAT = _mpq
    _RAT_TYPES = (Fraction, type(_mpq(1)))
else:  # pragma: no cover
    _RAT = Fraction
    _RAT_TYPES = (Fraction,)

NEG_INF = float("-inf")


class ModeError(TypeError):
    """Raised when exact and floating values meet in one operation."""


def parse_rational(text):
    """Parse 'p', 'p/q' or a decimal literal into a raw exact rational."""
    frac = Fraction(str(text).strip())
    return _RAT(frac.numerator, frac.denominator)


def _as_raw_exact(v):
    """Coerce v to a raw exact rational; reject floats and float-mode scalars."""
    if isinstance(v, Scalar):
        if v.mode != EXACT:
            raise ModeError("expected an exact value, got float mode")
        return v.value
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, int):
        return _RAT(v)
    if isinstance(v, _RAT_TYPES):
        if isinstance(v, Fraction):
            return _RAT(v.numerator, v.denominator)
        return v
    if isinstance(v, str):
        return parse_rational(v)
    if isinstance(v, float):
        raise ModeError("float value is not allowed in exact mode")
    raise TypeError(f"cannot interpret {type(v).__name__} as an exact rational")


def _as_raw_float(v):
    """Coerce v to a Python float; reject exact-mode scalars and rationals."""
    if isinstance(v, Scalar):
        if v.mode != FLOAT:
            raise ModeError("expected a float value, got exact mode")
        return v.value
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, _RAT_TYPES):
        raise ModeError("exact rational is not allowed in float mode")
    raise TypeError(f"cannot interpret {type(v).__name__} as a float")


def _as_raw(v, mode):
    return _as_raw_exact(v) if mode == EXACT else _as_raw_float(v)


class Scalar:
    """An immutable number in one of two modes: 'exact' or 'float'.

    Exact scalars are rationals kept in lowest terms with positive
    denominator; float scalars are IEEE doubles.  Arithmetic between the two
    modes raises ModeError.  Plain ints mix with either mode; plain floats
    only with float mode; Fraction/mpq only with exact mode.
    """

    __slots__ = ("value", "mode")

    def __init__(self, value, mode=EXACT):
        if mode not in _MODES:
            raise ValueError(f"unknown mode {mode!r}")
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "value", _as_raw(value, mode))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, value):
        return cls(value, EXACT)

    @classmethod
    def floating(cls, value):
        return cls(value, FLOAT)

    @classmethod
    def zero(cls, mode=EXACT):
        return _wrap(_RAT(0) if mode == EXACT else 0.0, mode)

    @classmethod
    def one(cls, mode=EXACT):
        return _wrap(_RAT(1) if mode == EXACT else 1.0, mode)

    # -- inspection ----------------------------------------------------

    @property
    def is_zero(self):
        return not self.value

    @property
    def numerator(self):
        if self.mode != EXACT:
            raise ModeError("float scalars have no exact numerator")
        return int(self.value.numerator)

    @property
    def denominator(self):
        if self.mode != EXACT:
            raise ModeError("float scalars have no exact denominator")
        return int(self.value.denominator)

    def as_fraction(self):
        if self.mode != EXACT:
            raise ModeError("float scalars do not convert to Fraction")
        return Fraction(int(self.value.numerator), int(self.value.denominator))

    def to_float(self):
        """Return this value as a float-mode scalar (explicit conversion)."""
        return _wrap(float(self.value), FLOAT)

    def __float__(self):
        return float(self.value)

    # -- arithmetic ----------------------------------------------------

    def _coerced(self, other):
        """Return other as a raw value of self's mode, or None if foreign."""
        if isinstance(other, Scalar):
            if other.mode != self.mode:
                raise ModeError(
                    f"cannot mix {self.mode}-mode and {other.mode}-mode scalars"
                )
            return other.value
        if isinstance(other, bool):
            return None
        if isinstance(other, int):
            return _RAT(other) if self.mode == EXACT else float(other)
        if isinstance(other, float):
            if self.mode != FLOAT:
                raise ModeError("cannot mix a float with an exact scalar")
            return other
        if isinstance(other, _RAT_TYPES):
            if self.mode != EXACT:
                raise ModeError("cannot mix an exact rational with a float scalar")
            return _as_raw_exact(other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return _wrap(self.value + o, self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return _wrap(self.value - o, self.mode)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return _wrap(o - self.value, self.mode)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return _wrap(self.value * o, self.mode)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if self.mode == EXACT and not o:
            raise ZeroDivisionError("division by exact zero")
        return _wrap(self.value / o, self.mode)

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        if self.mode == EXACT and self.is_zero:
            raise ZeroDivisionError("division by exact zero")
        return _wrap(o / self.value, self.mode)

    def __pow__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeError("exponent must be an int")
        if k < 0 and self.mode == EXACT and self.is_zero:
            raise ZeroDivisionError("negative power of exact zero")
        return _wrap(self.value ** k, self.mode)

    def __neg__(self):
        return _wrap(-self.value, self.mode)

    def __abs__(self):
        return _wrap(abs(self.value), self.mode)

    # -- comparison ----------------------------------------------------

    def __eq__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.value == o

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.value < o

    def __le__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.value <= o

    def __gt__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.value > o

    def __ge__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self.value >= o

    def __hash__(self):
        return hash((self.mode, self.value))

    def __bool__(self):
        return not self.is_zero

    # -- rendering -------------------------------------------------------

    def __str__(self):
        if self.mode == EXACT:
            return str(self.value)
        return repr(self.value)

    def __repr__(self):
        return f"Scalar({self!s}, mode={self.mode!r})"


def _wrap(raw, mode):
    """Fast internal constructor: raw is already a backend value of mode."""
    s = object.__new__(Scalar)
    object.__setattr__(s, "value", raw)
    object.__setattr__(s, "mode", mode)
    return s


def pochhammer(v, k):
    """Rising factorial v (v+1) ... (v+k-1); equals 1 when k = 0."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError("pochhammer order must be a nonnegative int")
    base = v if isinstance(v, Scalar) else Scalar.exact(v)
    acc = _RAT(1) if base.mode == EXACT else 1.0
    val = base.value
    for i in range(k):
        acc *= val + i
    return _wrap(acc, base.mode)


class SparsePoly2:
    """Bivariate polynomial: map from exponent pairs (i, j) to coefficients.

    Only nonzero coefficients are stored.  The zero polynomial has degree
    -inf (``NEG_INF``).  All coefficients share one mode; operations between
    polynomials of different modes raise ModeError.
    """

    __slots__ = ("_terms", "mode")

    def __init__(self, terms=None, mode=EXACT):
        if mode not in _MODES:
            raise ValueError(f"unknown mode {mode!r}")
        clean = {}
        if terms:
            for key, coeff in terms.items():
                i, j = key
                if not isinstance(i, int) or not isinstance(j, int) or i < 0 or j < 0:
                    raise ValueError(f"bad exponent pair {key!r}")
                raw = _as_raw(coeff, mode)
                if raw:
                    clean[(i, j)] = raw
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly2 is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, mode=EXACT):
        return _poly({}, mode)

    @classmethod
    def one(cls, mode=EXACT):
        return cls({(0, 0): 1}, mode)

    @classmethod
    def monomial(cls, i, j, coeff=1, mode=EXACT):
        return cls({(i, j): coeff}, mode)

    # -- inspection ----------------------------------------------------

    @property
    def terms(self):
        """Dict {(i, j): Scalar} of the nonzero terms (a fresh copy)."""
        return {k: _wrap(v, self.mode) for k, v in self._terms.items()}

    def coeff(self, i, j):
        raw = self._terms.get((i, j))
        if raw is None:
            return Scalar.zero(self.mode)
        return _wrap(raw, self.mode)

    @property
    def degree(self):
        """Total degree, or -inf for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(i + j for i, j in self._terms)

    @property
    def x_degree(self):
        if not self._terms:
            return NEG_INF
        return max(i for i, _ in self._terms)

    @property
    def y_degree(self):
        if not self._terms:
            return NEG_INF
        return max(j for _, j in self._terms)

    @property
    def is_zero(self):
        return not self._terms

    # -- arithmetic ----------------------------------------------------

    def _check_peer(self, other):
        if other.mode != self.mode:
            raise ModeError(
                f"cannot mix {self.mode}-mode and {other.mode}-mode polynomials"
            )

    def __add__(self, other):
        if not isinstance(other, SparsePoly2):
            return NotImplemented
        self._check_peer(other)
        out = dict(self._terms)
        for key, raw in other._terms.items():
            acc = out.get(key)
            acc = raw if acc is None else acc + raw
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return _poly(out, self.mode)

    def __sub__(self, other):
        if not isinstance(other, SparsePoly2):
            return NotImplemented
        self._check_peer(other)
        out = dict(self._terms)
        for key, raw in other._terms.items():
            acc = out.get(key)
            acc = -raw if acc is None else acc - raw
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return _poly(out, self.mode)

    def __neg__(self):
        return _poly({k: -v for k, v in self._terms.items()}, self.mode)

    def __mul__(self, other):
        if isinstance(other, SparsePoly2):
            return poly_mul(self, other)
        if isinstance(other, (Scalar, int)) and not isinstance(other, bool):
            raw = Scalar(other, self.mode).value if isinstance(other, int) else None
            if raw is None:
                if other.mode != self.mode:
                    raise ModeError("scalar/polynomial mode mismatch")
                raw = other.value
            if not raw:
                return _poly({}, self.mode)
            return _poly({k: v * raw for k, v in self._terms.items()}, self.mode)
        return NotImplemented

    __rmul__ = __mul__

    def to_float(self):
        return _poly({k: float(v) for k, v in self._terms.items()}, FLOAT)

    def eval(self, x, y):
        """Evaluate at scalars x, y (their mode must match the polynomial)."""
        if not isinstance(x, Scalar) or not isinstance(y, Scalar):
            raise TypeError("eval takes Scalar arguments")
        if x.mode != self.mode or y.mode != self.mode:
            raise ModeError("evaluation point mode must match polynomial mode")
        zero = _RAT(0) if self.mode == EXACT else 0.0
        acc = zero
        xpow = {}
        ypow = {}
        for (i, j), raw in self._terms.items():
            xi = xpow.get(i)
            if xi is None:
                xi = xpow[i] = x.value ** i
            yj = ypow.get(j)
            if yj is None:
                yj = ypow[j] = y.value ** j
            acc += raw * xi * yj
        return _wrap(acc, self.mode)

    # -- comparison / rendering -----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SparsePoly2):
            return NotImplemented
        return self.mode == other.mode and self._terms == other._terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return f"SparsePoly2(0, mode={self.mode!r})"
        bits = []
        for (i, j) in sorted(self._terms, key=lambda k: (k[0] + k[1], k)):
            c = self._terms[(i, j)]
            mono = "".join(
                f"{var}^{e}" if e > 1 else var
                for var, e in (("x", i), ("y", j))
                if e
            )
            bits.append(f"{c}*{mono}" if mono else f"{c}")
        return f"SparsePoly2({' + '.join(bits)}, mode={self.mode!r})"


def _poly(raw_terms, mode):
    """Fast internal constructor: raw_terms maps (i, j) to nonzero raw values."""
    p = object.__new__(SparsePoly2)
    object.__setattr__(p, "_terms", raw_terms)
    object.__setattr__(p, "mode", mode)
    return p


def poly_mul(p, q):
    """Exact product of two SparsePoly2 of the same mode."""
    if not isinstance(p, SparsePoly2) or not isinstance(q, SparsePoly2):
        raise TypeError("poly_mul takes two SparsePoly2")
    if p.mode != q.mode:
        raise ModeError("cannot multiply polynomials of different modes")
    out = {}
    for (i1, j1), c1 in p._terms.items():
        for (i2, j2), c2 in q._terms.items():
            key = (i1 + i2, j1 + j2)
            acc = out.get(key)
            prod = c1 * c2
            acc = prod if acc is None else acc + prod
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return _poly(out, p.mode)


class BandMatrix:
    """Rectangular matrix with a declared band of admissible entries.

    An entry (r, c) is inside the band when -lower_bandwidth <= c - r <=
    upper_bandwidth.  Reading any in-shape position outside the band yields
    an exact zero; providing a nonzero entry outside the band is an error.
    Stored entries are keyed by (row, diagonal offset).
    """

    __slots__ = ("rows", "cols", "lower_bandwidth", "upper_bandwidth",
                 "mode", "_entries")

    def __init__(self, rows, cols, lower_bandwidth, upper_bandwidth,
                 entries=None, mode=EXACT):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if lower_bandwidth < 0 or upper_bandwidth < 0:
            raise ValueError("bandwidths must be nonnegative")
        if mode not in _MODES:
            raise ValueError(f"unknown mode {mode!r}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "lower_bandwidth", lower_bandwidth)
        object.__setattr__(self, "upper_bandwidth", upper_bandwidth)
        object.__setattr__(self, "mode", mode)
        stored = {}
        if entries:
            for (r, c), coeff in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
                raw = _as_raw(coeff, mode)
                if not raw:
                    continue
                off = c - r
                if not (-lower_bandwidth <= off <= upper_bandwidth):
                    raise ValueError(
                        f"entry ({r}, {c}) lies outside the declared band"
                    )
                stored[(r, off)] = raw
        object.__setattr__(self, "_entries", stored)

    def __setattr__(self, name, value):
        raise AttributeError("BandMatrix is immutable")

    @classmethod
    def from_dense(cls, values, lower_bandwidth=None, upper_bandwidth=None,
                   mode=EXACT):
        """Build from a list of rows; bandwidths default to the full shape."""
        rows = len(values)
        cols = len(values[0]) if rows else 0
        for row in values:
            if len(row) != cols:
                raise ValueError("ragged rows")
        if lower_bandwidth is None:
            lower_bandwidth = max(rows - 1, 0)
        if upper_bandwidth is None:
            upper_bandwidth = max(cols - 1, 0)
        entries = {
            (r, c): values[r][c]
            for r in range(rows) for c in range(cols)
        }
        return cls(rows, cols, lower_bandwidth, upper_bandwidth, entries, mode)

    # -- access ----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def in_band(self, r, c):
        return -self.lower_bandwidth <= c - r <= self.upper_bandwidth

    def get(self, r, c):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"({r}, {c}) outside a {self.rows}x{self.cols} matrix")
        raw = self._entries.get((r, c - r))
        if raw is None:
            return Scalar.zero(self.mode)
        return _wrap(raw, self.mode)

    def __getitem__(self, key):
        r, c = key
        return self.get(r, c)

    def items(self):
        """Yield ((row, col), Scalar) for stored nonzero entries, sorted."""
        for (r, off) in sorted(self._entries):
            yield (r, r + off), _wrap(self._entries[(r, off)], self.mode)

    def dense(self):
        return [[self.get(r, c) for c in range(self.cols)]
                for r in range(self.rows)]

    @property
    def is_zero(self):
        return not self._entries

    # -- transforms --------------------------------------------------------

    def transpose(self):
        entries = {(r + off, -off): v for (r, off), v in self._entries.items()}
        out = object.__new__(BandMatrix)
        object.__setattr__(out, "rows", self.cols)
        object.__setattr__(out, "cols", self.rows)
        object.__setattr__(out, "lower_bandwidth", self.upper_bandwidth)
        object.__setattr__(out, "upper_bandwidth", self.lower_bandwidth)
        object.__setattr__(out, "mode", self.mode)
        object.__setattr__(out, "_entries",
                           {(r, off): v for (r, off), v in entries.items()})
        return out

    def scale_rows(self, factors):
        """New matrix with row r multiplied by factors[r]."""
        if len(factors) != self.rows:
            raise ValueError("need one factor per row")
        raws = [_as_raw(f, self.mode) for f in factors]
        entries = {}
        for (r, off), v in self._entries.items():
            scaled = v * raws[r]
            if scaled:
                entries[(r, off)] = scaled
        return self._with_entries(entries)

    def scale_cols(self, factors):
        """New matrix with column c multiplied by factors[c]."""
        if len(factors) != self.cols:
            raise ValueError("need one factor per column")
        raws = [_as_raw(f, self.mode) for f in factors]
        entries = {}
        for (r, off), v in self._entries.items():
            scaled = v * raws[r + off]
            if scaled:
                entries[(r, off)] = scaled
        return self._with_entries(entries)

    def _with_entries(self, entries):
        out = object.__new__(BandMatrix)
        for slot in ("rows", "cols", "lower_bandwidth", "upper_bandwidth", "mode"):
            object.__setattr__(out, slot, getattr(self, slot))
        object.__setattr__(out, "_entries", entries)
        return out

    def to_float(self):
        out = object.__new__(BandMatrix)
        for slot in ("rows", "cols", "lower_bandwidth", "upper_bandwidth"):
            object.__setattr__(out, slot, getattr(self, slot))
        object.__setattr__(out, "mode", FLOAT)
        object.__setattr__(out, "_entries",
                           {k: float(v) for k, v in self._entries.items()})
        return out

    # -- comparison / rendering ---------------------------------------------

    def __eq__(self, other):
        """Value equality: same shape, mode and entries (bands may differ)."""
        if not isinstance(other, BandMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.mode == other.mode
                and self._entries == other._entries)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return (f"BandMatrix({self.rows}x{self.cols}, "
                f"bands=({self.lower_bandwidth}, {self.upper_bandwidth}), "
                f"{len(self._entries)} stored, mode={self.mode!r})")


def _int_rows(matrix):
    """Clear denominators row by row; returns a list of Python-int rows."""
    if isinstance(matrix, BandMatrix):
        if matrix.mode != EXACT:
            raise ModeError("rank_exact requires exact-mode input")
        dense = [[matrix.get(r, c).value for c in range(matrix.cols)]
                 for r in range(matrix.rows)]
    else:
        dense = []
        for row in matrix:
            out = []
            for v in row:
                out.append(_as_raw_exact(v))
            dense.append(out)
        if dense and any(len(r) != len(dense[0]) for r in dense):
            raise ValueError("ragged rows")
    rows = []
    for row in dense:
        denoms = [int(v.denominator) for v in row]
        scale = math.lcm(*denoms) if denoms else 1
        rows.append([int(v.numerator) * (scale // int(v.denominator))
                     for v in row])
    return rows


def rank_exact(matrix):
    """Exact rank of a matrix of rationals (fraction-free elimination).

    Accepts a BandMatrix or a list of rows of exact scalars/ints/rationals.
    Float-mode input is rejected.
    """
    m = _int_rows(matrix)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = None
        for i in range(rank, nrows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        row_r = m[rank]
        for i in range(rank + 1, nrows):
            row_i = m[i]
            head = row_i[col]
            for j in range(col + 1, ncols):
                row_i[j] = (lead * row_i[j] - head * row_r[j]) // prev
            row_i[col] = 0
        prev = lead
        rank += 1
        if rank == nrows:
            break
    return rank
