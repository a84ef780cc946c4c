"""Verification suite for assembled systems and their matrix relations.

Four independent checks, each returning a structured CheckResult:

* ``verify_relation`` -- the vector three-term relation along one axis at
  one degree: exactly (residual polynomial must vanish identically) or in
  floating point (coefficient residuals and optional random-point
  residuals within a relative tolerance).
* ``verify_orthogonality`` -- Gram blocks of unequal degrees vanish and
  diagonal blocks are diagonal with the predicted norms.
* ``verify_central_symmetry`` -- the equivalence "all odd moments vanish
  iff both B matrices vanish", checked from both sides independently.
* ``verify_orthonormal_transpose`` -- for positive-definite systems the
  norm-rescaled matrices satisfy the transpose identity
  C~_{n+1,i} = A~_{n,i}^t in floating point; non-positive-definite input
  is rejected with NotPositiveDefiniteError.

``run_suite`` bundles cross-check, relations, orthogonality, ranks and
central symmetry into one VerifyReport.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .catalog import cross_check, make_system
from .numerics import FLOAT, Scalar, SparsePoly2, poly_mul
from .ttr import first_ttr, rank_conditions, second_ttr

_TINY = 1e-300


class NotPositiveDefiniteError(ValueError):
    """The operation requires a positive-definite system."""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check.  details is JSON-ready."""

    name: str
    passed: bool
    details: dict


@dataclass(frozen=True)
class VerifyReport:
    family: str
    max_degree: int
    mode: str
    checks: tuple

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def to_obj(self):
        return {
            "family": self.family,
            "max_degree": self.max_degree,
            "mode": self.mode,
            "passed": self.ok,
            "checks": [
                {"name": c.name,
                 "status": "pass" if c.passed else "fail",
                 "details": c.details}
                for c in self.checks
            ],
        }


def _relation_matrices(sys, n, axis):
    if axis == "x":
        return first_ttr(sys, n)
    if axis == "y":
        return second_ttr(sys, n)
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def _row_terms(matrix, row, polys):
    """Scaled polynomials matrix[row, c] * polys[c] for stored columns."""
    out = []
    for c in range(matrix.cols):
        v = matrix.get(row, c)
        if not v.is_zero:
            out.append(polys[c] * v)
    return out


def _poly_sum(terms, mode):
    acc = SparsePoly2.zero(mode)
    for t in terms:
        acc = acc + t
    return acc


def _max_abs_coeff(poly):
    vals = [abs(float(v)) for v in poly._terms.values()]
    return max(vals) if vals else 0.0


def verify_relation(sys, n, axis, mode="exact", points=None, tol=1e-10):
    """Check the three-term relation along one axis at degree n.

    Exact mode requires every residual polynomial to vanish identically.
    Float mode bounds the relative coefficient residual (and, if points
    are supplied, relative residuals at those evaluation points) by tol.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("degree must be a nonnegative int")
    mat_a, mat_b, mat_c = _relation_matrices(sys, n, axis)
    mono = SparsePoly2.monomial(1, 0) if axis == "x" else SparsePoly2.monomial(0, 1)
    p_n = [sys.expand_P(n, m) for m in range(n + 1)]
    p_up = [sys.expand_P(n + 1, m) for m in range(n + 2)]
    p_dn = [sys.expand_P(n - 1, m) for m in range(n)] if n >= 1 else []
    name = f"relation-{axis}"

    if mode == "exact":
        for m in range(n + 1):
            lhs = poly_mul(p_n[m], mono)
            terms = (_row_terms(mat_a, m, p_up)
                     + _row_terms(mat_b, m, p_n)
                     + _row_terms(mat_c, m, p_dn))
            residual = lhs - _poly_sum(terms, lhs.mode)
            if not residual.is_zero:
                (i, j), coeff = next(iter(sorted(residual.terms.items())))
                return CheckResult(name, False, {
                    "n": n, "m": m, "mode": "exact",
                    "monomial": [i, j], "coefficient": str(coeff)})
        return CheckResult(name, True, {"n": n, "mode": "exact"})

    if mode != "float":
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")

    fa, fb, fc = mat_a.to_float(), mat_b.to_float(), mat_c.to_float()
    fp_n = [p.to_float() for p in p_n]
    fp_up = [p.to_float() for p in p_up]
    fp_dn = [p.to_float() for p in p_dn]
    fmono = mono.to_float()
    max_coeff = 0.0
    max_point = 0.0
    for m in range(n + 1):
        lhs = poly_mul(fp_n[m], fmono)
        terms = (_row_terms(fa, m, fp_up)
                 + _row_terms(fb, m, fp_n)
                 + _row_terms(fc, m, fp_dn))
        rhs = _poly_sum(terms, FLOAT)
        residual = lhs - rhs
        scale = max([_max_abs_coeff(lhs)] + [_max_abs_coeff(t) for t in terms])
        rel = _max_abs_coeff(residual) / max(scale, _TINY)
        max_coeff = max(max_coeff, rel)
        for (px, py) in points or ():
            sx = Scalar.floating(px)
            sy = Scalar.floating(py)
            lv = float(lhs.eval(sx, sy))
            rv = float(rhs.eval(sx, sy))
            rel_pt = abs(lv - rv) / max(1.0, abs(lv), abs(rv))
            max_point = max(max_point, rel_pt)
    passed = max_coeff <= tol and max_point <= tol
    return CheckResult(name, passed, {
        "n": n, "mode": "float",
        "max_coeff_residual": max_coeff,
        "max_point_residual": max_point if points else None,
        "tolerance": tol})


def verify_orthogonality(sys, max_degree):
    """Gram blocks up to max_degree: off-degree blocks vanish, diagonal
    blocks are diagonal with the closed-form norms on the diagonal."""
    if not isinstance(max_degree, int) or max_degree < 0:
        raise ValueError("max_degree must be a nonnegative int")
    for n in range(max_degree + 1):
        for h in range(n):
            block = sys.gram_block(n, h)
            for m in range(n + 1):
                for mp in range(h + 1):
                    v = block.entries[m][mp]
                    if not v.is_zero:
                        return CheckResult("orthogonality", False, {
                            "max_degree": max_degree,
                            "kind": "cross-degree block not zero",
                            "n": n, "h": h, "m": m, "mp": mp,
                            "value": str(v)})
        block = sys.gram_block(n, n)
        for m in range(n + 1):
            for mp in range(n + 1):
                v = block.entries[m][mp]
                if m != mp:
                    if not v.is_zero:
                        return CheckResult("orthogonality", False, {
                            "max_degree": max_degree,
                            "kind": "diagonal block not diagonal",
                            "n": n, "m": m, "mp": mp, "value": str(v)})
                else:
                    expected = sys.block_norm(n, m)
                    if v != expected:
                        return CheckResult("orthogonality", False, {
                            "max_degree": max_degree,
                            "kind": "norm mismatch",
                            "n": n, "m": m,
                            "gram": str(v), "predicted": str(expected)})
    return CheckResult("orthogonality", True, {"max_degree": max_degree})


def verify_central_symmetry(sys, max_degree, moment_bound=None):
    """Check the equivalence: all odd moments vanish iff both B matrices
    vanish at every degree.  Both sides are evaluated independently; the
    check passes when the two verdicts agree."""
    if not isinstance(max_degree, int) or max_degree < 0:
        raise ValueError("max_degree must be a nonnegative int")
    if moment_bound is None:
        moment_bound = 2 * max_degree + 1
    odd_ok = True
    first_moment = None
    for total in range(1, moment_bound + 1, 2):
        for h in range(total + 1):
            k = total - h
            if not sys.w_moment(h, k).is_zero:
                odd_ok = False
                first_moment = [h, k]
                break
        if not odd_ok:
            break
    b_ok = True
    first_b = None
    for n in range(max_degree + 1):
        _, bx, _ = first_ttr(sys, n)
        _, by, _ = second_ttr(sys, n)
        if not bx.is_zero:
            b_ok = False
            first_b = {"n": n, "axis": "x"}
            break
        if not by.is_zero:
            b_ok = False
            first_b = {"n": n, "axis": "y"}
            break
    return CheckResult("central-symmetry", odd_ok == b_ok, {
        "max_degree": max_degree,
        "moment_bound": moment_bound,
        "odd_moments_vanish": odd_ok,
        "first_nonzero_odd_moment": first_moment,
        "b_matrices_zero": b_ok,
        "first_nonzero_b": first_b})


def verify_orthonormal_transpose(sys, max_degree, tol=1e-10):
    """For a positive-definite system, check the float transpose identity
    between the norm-rescaled raising and lowering matrices."""
    if not isinstance(max_degree, int) or max_degree < 0:
        raise ValueError("max_degree must be a nonnegative int")
    norms = {}
    for n in range(max_degree + 1):
        row = []
        for m in range(n + 1):
            h = sys.block_norm(n, m)
            if h <= 0:
                raise NotPositiveDefiniteError(
                    f"{sys.label} is not positive-definite: squared norm "
                    f"of the ({n},{m}) basis polynomial is {h}")
            row.append(math.sqrt(float(h)))
        norms[n] = row
    worst = 0.0
    for n in range(max_degree):
        d_n = norms[n]
        d_up = norms[n + 1]
        for axis in ("x", "y"):
            mat_a = _relation_matrices(sys, n, axis)[0].to_float()
            mat_c = _relation_matrices(sys, n + 1, axis)[2].to_float()
            a_tilde = (mat_a.scale_rows([1.0 / v for v in d_n])
                       .scale_cols(d_up))
            c_tilde = (mat_c.scale_rows([1.0 / v for v in d_up])
                       .scale_cols(d_n))
            scale = max([1.0] + [abs(float(v)) for _, v in a_tilde.items()])
            diff = 0.0
            for r in range(c_tilde.rows):
                for c in range(c_tilde.cols):
                    delta = abs(float(c_tilde.get(r, c))
                                - float(a_tilde.get(c, r)))
                    diff = max(diff, delta)
            worst = max(worst, diff / scale)
    return CheckResult("orthonormal-transpose", worst <= tol, {
        "max_degree": max_degree, "max_residual": worst, "tolerance": tol})


def run_suite(cid, max_degree, mode="exact", points=0, seed=0, corrupt=False):
    """Full verification of one catalog family up to max_degree.

    mode='float' switches the relation checks to floating point with
    ``points`` random evaluation points per degree; all structural checks
    (cross-check, orthogonality, ranks, central symmetry) stay exact.
    """
    if mode not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
    sys = make_system(cid, max_m=max(16, max_degree + 2))
    checks = []

    cc = cross_check(cid, max_degree, corrupt=corrupt, system=sys)
    first = [
        {"n": mm.n, "matrix": mm.matrix, "row": mm.row, "col": mm.col,
         "closed_form": str(mm.closed), "builder": str(mm.built),
         "gram": str(mm.gram)}
        for mm in cc.mismatches[:5]
    ]
    checks.append(CheckResult("cross-check", cc.ok, {
        "max_degree": max_degree,
        "mismatches": len(cc.mismatches),
        "first_mismatches": first}))

    rng = random.Random(seed)
    for axis in ("x", "y"):
        failures = []
        worst_coeff = 0.0
        worst_point = 0.0
        for n in range(max_degree + 1):
            if mode == "exact":
                res = verify_relation(sys, n, axis, mode="exact")
            else:
                pts = [(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
                       for _ in range(points)]
                res = verify_relation(sys, n, axis, mode="float", points=pts)
                worst_coeff = max(worst_coeff,
                                  res.details["max_coeff_residual"])
                if res.details["max_point_residual"] is not None:
                    worst_point = max(worst_point,
                                      res.details["max_point_residual"])
            if not res.passed:
                failures.append(res.details)
        details = {"max_degree": max_degree, "mode": mode,
                   "failures": failures}
        if mode == "float":
            details["max_coeff_residual"] = worst_coeff
            details["max_point_residual"] = worst_point if points else None
        checks.append(CheckResult(f"relation-{axis}", not failures, details))

    checks.append(verify_orthogonality(sys, max_degree))

    rank_failures = []
    for n in range(max_degree + 1):
        report = rank_conditions(sys, n)
        if not report.ok:
            rank_failures.append({
                "n": n,
                "rank_a_x": report.rank_a_x, "rank_a_y": report.rank_a_y,
                "rank_c_next_x": report.rank_c_next_x,
                "rank_c_next_y": report.rank_c_next_y,
                "rank_joint_a": report.rank_joint_a,
                "rank_joint_c": report.rank_joint_c})
    checks.append(CheckResult("rank-conditions", not rank_failures, {
        "max_degree": max_degree, "failures": rank_failures}))

    checks.append(verify_central_symmetry(sys, max_degree))

    return VerifyReport(cid.describe(), max_degree, mode, tuple(checks))
