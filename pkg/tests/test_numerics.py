"""Scalar, polynomial, band-matrix and exact-rank primitives."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ortho2d import (
    EXACT,
    FLOAT,
    BandMatrix,
    ModeError,
    Scalar,
    SparsePoly2,
    parse_rational,
    pochhammer,
    poly_mul,
    rank_exact,
)
from ortho2d.numerics import NEG_INF

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=10**4
)


def q(text):
    return Scalar.exact(text)


# -- parse_rational ------------------------------------------------------


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational("0.25") == Fraction(1, 4)
    assert parse_rational(" 2 ") == 2


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("one half")


# -- Scalar ---------------------------------------------------------------


def test_scalar_constructors_and_str():
    assert str(q("3/4")) == "3/4"
    assert str(q(-2)) == "-2"
    assert str(Scalar.exact(Fraction(2, 6))) == "1/3"
    assert Scalar.zero(EXACT).is_zero
    assert not Scalar.one(EXACT).is_zero
    assert float(Scalar.floating(0.5)) == 0.5


def test_scalar_mode_discipline():
    with pytest.raises(ModeError):
        Scalar.exact(0.5)  # float literal cannot enter exact mode
    with pytest.raises(ModeError):
        Scalar.floating(Fraction(1, 2))
    with pytest.raises(TypeError):
        Scalar.exact(True)
    with pytest.raises(ModeError):
        q("1/2") + Scalar.floating(0.5)
    with pytest.raises(ModeError):
        q("1/2") < Scalar.floating(0.5)
    # ints mix with both modes
    assert q("1/2") + 1 == q("3/2")
    assert Scalar.floating(0.5) * 2 == Scalar.floating(1.0)


def test_scalar_arithmetic_basics():
    assert q("1/3") + q("1/6") == q("1/2")
    assert q("1/3") - q("1/2") == q("-1/6")
    assert q("2/3") * q("9/4") == q("3/2")
    assert q("2/3") / q("4/9") == q("3/2")
    assert -q("1/3") == q("-1/3")
    assert abs(q("-5/7")) == q("5/7")
    assert q("2/3") ** 3 == q("8/27")
    assert q("2/3") ** 0 == q(1)
    assert 1 - q("1/4") == q("3/4")
    assert 2 / q("1/3") == q(6)


def test_scalar_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        q(1) / q(0)


def test_scalar_comparisons_and_hash():
    assert q("1/3") < q("1/2") <= q("1/2") < q(1)
    assert q("1/2") == Fraction(1, 2)
    assert hash(q("1/2")) == hash(Scalar.exact(Fraction(1, 2)))
    assert q("1/2") != q("1/3")
    assert sorted([q(3), q("1/2"), q(-1)]) == [q(-1), q("1/2"), q(3)]


def test_scalar_is_immutable():
    s = q("1/2")
    with pytest.raises(AttributeError):
        s.value = 7


def test_scalar_numerator_denominator():
    s = q("-6/8")
    assert (s.numerator, s.denominator) == (-3, 4)
    assert s.as_fraction() == Fraction(-3, 4)
    with pytest.raises(ModeError):
        Scalar.floating(0.5).numerator


@given(rationals, rationals, rationals)
def test_scalar_field_arithmetic_matches_fraction(x, y, z):
    sx, sy, sz = map(Scalar.exact, (x, y, z))
    assert (sx + sy).as_fraction() == x + y
    assert (sx * sy).as_fraction() == x * y
    assert (sx - sy).as_fraction() == x - y
    assert ((sx + sy) * sz).as_fraction() == (x + y) * z == (
        sx * sz + sy * sz
    ).as_fraction()
    if y:
        assert (sx / sy).as_fraction() == x / y


def test_pochhammer():
    assert pochhammer(3, 2) == q(12)
    assert pochhammer(q("1/2"), 3) == q("15/8")
    assert pochhammer(q(5), 0) == q(1)
    assert pochhammer(0, 3) == q(0)
    with pytest.raises(ValueError):
        pochhammer(2, -1)


# -- SparsePoly2 ----------------------------------------------------------


def test_poly_constructors_and_degrees():
    zero = SparsePoly2.zero()
    assert zero.is_zero and zero.degree == NEG_INF
    assert zero.x_degree == NEG_INF and zero.y_degree == NEG_INF
    one = SparsePoly2.one()
    assert one.degree == 0 and one.coeff(0, 0) == q(1)
    xy2 = SparsePoly2.monomial(1, 2, coeff="3/2")
    assert xy2.degree == 3 and xy2.x_degree == 1 and xy2.y_degree == 2
    # zero coefficients are pruned on construction
    assert SparsePoly2({(1, 1): 0}).is_zero
    with pytest.raises(ValueError):
        SparsePoly2({(-1, 0): 1})


def test_poly_arithmetic_known_product():
    x = SparsePoly2.monomial(1, 0)
    y = SparsePoly2.monomial(0, 1)
    square = poly_mul(x + y, x + y)
    assert square.terms == (
        SparsePoly2({(2, 0): 1, (1, 1): 2, (0, 2): 1})
    ).terms
    assert square == x * x + (x * y) * 2 + y * y
    assert (square - square).is_zero
    assert (-square + square).is_zero


def test_poly_scalar_multiplication():
    p = SparsePoly2({(1, 0): "1/2", (0, 0): 3})
    assert p * q(2) == SparsePoly2({(1, 0): 1, (0, 0): 6})
    assert p * 0 == SparsePoly2.zero()


def test_poly_eval():
    # p(x, y) = x^2 + 2xy - 1/3 at (1/2, 3)
    p = SparsePoly2({(2, 0): 1, (1, 1): 2, (0, 0): "-1/3"})
    value = p.eval(q("1/2"), q(3))
    assert value == q("1/4") + q(3) - q("1/3") == q("35/12")
    fp = p.to_float()
    fv = fp.eval(Scalar.floating(0.5), Scalar.floating(3.0))
    assert abs(float(fv) - float(value)) < 1e-15


def test_poly_mode_discipline():
    p = SparsePoly2({(1, 0): 1})
    fp = p.to_float()
    with pytest.raises(ModeError):
        p + fp
    with pytest.raises(ModeError):
        poly_mul(p, fp)
    with pytest.raises(ModeError):
        p.eval(Scalar.floating(1.0), Scalar.floating(2.0))


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), rationals),
                max_size=6),
       st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), rationals),
                max_size=6),
       st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), rationals),
                max_size=6))
def test_poly_mul_distributes(ta, tb, tc):
    def build(triples):
        acc = SparsePoly2.zero()
        for i, j, v in triples:
            acc = acc + SparsePoly2.monomial(i, j, Scalar.exact(v))
        return acc

    pa, pb, pc = build(ta), build(tb), build(tc)
    assert poly_mul(pa, pb + pc) == poly_mul(pa, pb) + poly_mul(pa, pc)
    assert poly_mul(pa, pb) == poly_mul(pb, pa)


# -- BandMatrix -----------------------------------------------------------


def test_band_matrix_shape_and_band_errors():
    with pytest.raises(ValueError):
        BandMatrix(2, 2, -1, 0)
    with pytest.raises(IndexError):
        BandMatrix(2, 2, 0, 0, {(2, 0): 1})
    with pytest.raises(ValueError):
        BandMatrix(2, 2, 0, 0, {(0, 1): 1})  # nonzero outside the band
    # a zero entry outside the band is silently dropped
    m = BandMatrix(2, 2, 0, 0, {(0, 1): 0, (0, 0): 5})
    assert m.get(0, 1).is_zero and m.get(0, 0) == q(5)


def test_band_matrix_get_and_items():
    m = BandMatrix(2, 3, 0, 1, {(0, 0): 1, (0, 1): 2, (1, 2): "1/2"})
    assert m.shape == (2, 3)
    assert m.get(1, 1).is_zero  # in band, unset
    assert m.get(1, 0).is_zero  # out of band, in shape
    with pytest.raises(IndexError):
        m.get(2, 0)
    assert list(m.items()) == [
        ((0, 0), q(1)), ((0, 1), q(2)), ((1, 2), q("1/2"))]
    assert m.dense() == [[q(1), q(2), q(0)], [q(0), q(0), q("1/2")]]


def test_band_matrix_from_dense_and_equality():
    diag = BandMatrix(2, 2, 0, 0, {(0, 0): 3, (1, 1): 4})
    full = BandMatrix.from_dense([[3, 0], [0, 4]])
    # equality is by shape/mode/values; declared bands may differ
    assert diag == full
    assert diag != BandMatrix.from_dense([[3, 0], [0, 5]])
    with pytest.raises(ValueError):
        BandMatrix.from_dense([[1, 2], [3]])


def test_band_matrix_transforms():
    m = BandMatrix.from_dense([[1, 2], [3, 4]])
    assert m.transpose().dense() == [[q(1), q(3)], [q(2), q(4)]]
    assert m.scale_rows([2, "1/3"]).dense() == [
        [q(2), q(4)], [q(1), q("4/3")]]
    assert m.scale_cols([0, 1]).dense() == [[q(0), q(2)], [q(0), q(4)]]
    assert m.to_float().mode == FLOAT
    assert BandMatrix(2, 2, 0, 0).is_zero


def test_band_matrix_zero_columns():
    m = BandMatrix(1, 0, 0, 0)
    assert m.shape == (1, 0) and m.is_zero
    assert rank_exact(m) == 0


# -- rank_exact -----------------------------------------------------------


def test_rank_exact_known_values():
    assert rank_exact([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2
    assert rank_exact([[1, 0], [0, 1]]) == 2
    assert rank_exact([[0, 0], [0, 0]]) == 0
    assert rank_exact([[Fraction(1, 2), Fraction(1, 3)],
                       [Fraction(3, 2), Fraction(1, 1)]]) == 1  # singular
    assert rank_exact([[Fraction(1, 2), Fraction(1, 3)],
                       [Fraction(3, 2), Fraction(2, 1)],
                       [Fraction(2, 1), Fraction(4, 3)]]) == 2


def test_rank_exact_scalar_rows_and_band_matrix():
    rows = [[q("1/2"), q(1)], [q(1), q(2)]]
    assert rank_exact(rows) == 1
    m = BandMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    assert rank_exact(m) == 2
    assert rank_exact(m.transpose()) == 2


def test_rank_exact_rejects_float():
    with pytest.raises(ModeError):
        rank_exact(BandMatrix.from_dense([[1.0]], mode=FLOAT))
    with pytest.raises(ModeError):
        rank_exact([[0.5]])


def test_rank_exact_needs_exact_division_to_hold():
    # a matrix that exposes broken fraction-free elimination if the
    # intermediate integer divisions are not exact
    m = [[2, 1, 1, 0],
         [4, 3, 3, 1],
         [8, 7, 9, 5],
         [6, 7, 9, 8]]
    assert rank_exact(m) == 4
    singular = [[2, 1, 1], [4, 3, 3], [6, 4, 4]]
    assert rank_exact(singular) == 2
