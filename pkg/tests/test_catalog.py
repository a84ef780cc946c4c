"""Catalog families: identifiers, closed forms, and the three-way check."""
import pytest

from ortho2d import (
    Scalar,
    catalog_id,
    closed_form_first,
    closed_form_second,
    closed_form_ttr,
    cross_check,
    make_system,
    positive_definite,
)

q = Scalar.exact

PINNED = [
    ("disk", {"mu": "1/2"}),
    ("disk", {"mu": "3/2"}),
    ("biangle", {"alpha": 0, "beta": 0}),
    ("biangle", {"alpha": 1, "beta": "1/2"}),
    ("simplex", {"alpha": "1/2", "beta": "1/2", "gamma": "1/2"}),
    ("simplex", {"alpha": 0, "beta": 1, "gamma": 2}),
    ("square", {"alpha": 0, "beta": 0, "gamma": 0, "delta": 0}),
    ("square", {"alpha": 1, "beta": 2, "gamma": 0, "delta": "1/2"}),
    ("laguerre-jacobi", {"alpha": 1, "beta": "1/2"}),
    ("bessel-laguerre", {"g": 5, "gamma": "2/5"}),
]


def test_catalog_id_validation():
    with pytest.raises(ValueError, match="unknown family"):
        catalog_id("pentagon", mu=1)
    with pytest.raises(ValueError, match="missing"):
        catalog_id("disk")
    with pytest.raises(ValueError, match="extra"):
        catalog_id("disk", mu=1, alpha=2)
    cid = catalog_id("disk", mu="1/2")
    assert cid.describe() == "disk(mu=1/2)"
    assert cid.param("mu") == q("1/2")
    assert cid.params_dict == {"mu": q("1/2")}


def test_bessel_laguerre_rejects_zero_g():
    with pytest.raises(ValueError):
        make_system(catalog_id("bessel-laguerre", g=0, gamma=1))


def test_positive_definite_flags():
    assert positive_definite(catalog_id("disk", mu="1/2"))
    assert not positive_definite(catalog_id("disk", mu=-1))
    assert positive_definite(
        catalog_id("laguerre-jacobi", alpha=1, beta="1/2"))
    assert not positive_definite(
        catalog_id("laguerre-jacobi", alpha=-3, beta="1/2"))
    assert not positive_definite(
        catalog_id("bessel-laguerre", g=5, gamma="2/5"))
    assert positive_definite(
        catalog_id("square", alpha=0, beta=0, gamma=0, delta=0))


def test_closed_form_structural_markers():
    cid = catalog_id("disk", mu="1/2")
    row0 = closed_form_second(cid, 1, 0)
    assert row0["a1"] is None and row0["b1"] is None and row0["c1"] is None
    assert row0["b3"] is not None  # m = 0 < n
    row1 = closed_form_second(cid, 1, 1)
    assert row1["b3"] is None and row1["c2"] is None and row1["c3"] is None
    first_top = closed_form_first(cid, 2, 2)
    assert first_top["c"] is None  # lowering matrix has no m = n column
    assert closed_form_first(cid, 2, 1)["c"] is not None


def test_closed_form_disk_anchor_values():
    cid = catalog_id("disk", mu="1/2")
    ts = closed_form_ttr(cid, 1)
    assert ts.a_x.get(0, 0) == q("3/5")
    assert ts.a_x.get(1, 1) == q("2/5")
    assert ts.c_x.get(0, 0) == q("3/8")
    assert ts.a_y.get(1, 0) == q("-2/15")
    assert ts.a_y.get(0, 1) == q("3/5")
    assert ts.a_y.get(1, 2) == q("2/3")
    assert ts.c_y.get(1, 0) == q("1/4")
    assert ts.b_x.is_zero and ts.b_y.is_zero


def test_closed_form_bessel_laguerre_anchor_values():
    cid = catalog_id("bessel-laguerre", g=5, gamma="2/5")
    second = closed_form_second(cid, 1, 1)
    assert second["a1"] == q("-5/21")
    assert second["a2"] == q("-4/7")
    assert second["a3"] == q("-2/5")
    assert second["b1"] == q("4/7")
    assert second["b2"] == q("4/7")


@pytest.mark.parametrize("name,params", PINNED)
def test_three_way_agreement(name, params):
    cid = catalog_id(name, **params)
    report = cross_check(cid, 5)
    assert report.ok, report.mismatches[:3]
    assert report.family == cid.describe()


def test_cross_check_detects_injected_fault():
    cid = catalog_id("disk", mu="1/2")
    report = cross_check(cid, 2, corrupt=True)
    assert not report.ok
    assert len(report.mismatches) == 1
    mm = report.mismatches[0]
    assert (mm.n, mm.matrix, mm.row, mm.col) == (0, "A_x", 0, 0)
    assert mm.built == mm.gram  # the two independent routes still agree
    assert mm.closed == mm.built + 1


def test_cross_check_shares_a_prebuilt_system():
    cid = catalog_id("disk", mu="1/2")
    sys_obj = make_system(cid)
    assert cross_check(cid, 3, system=sys_obj).ok


def test_cross_check_validates_degree():
    with pytest.raises(ValueError):
        cross_check(catalog_id("disk", mu="1/2"), -1)
