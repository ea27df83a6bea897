import pytest

from frobflat import (
    LimitError, Limits, ModulePresentation, PreconditionError, QuotientRing, depth, find_sop,
    hilbert, is_cohen_macaulay, is_regular, krull_dim, loewy_length, multiplicity,
)
from frobflat.invariants import betti_pattern_regular, colength, iter_sops
from corpus import RINGS, ring


@pytest.mark.parametrize("p, names, ideal, dim, e", [
    (2, ["x"], [], 1, 1),
    (3, ["x"], [], 1, 1),
    (2, ["x", "y"], ["x*y"], 1, 2),
    (2, ["x", "y"], ["x^2", "x*y", "y^2"], 0, 3),
    (2, ["x", "y", "z"], ["x*y + z^2"], 2, 2),
    (3, ["x", "y", "z"], ["x^3 + y^3 + z^3"], 2, 3),
])
def test_dimension_and_multiplicity(p, names, ideal, dim, e):
    R = QuotientRing(p, names, ideal)
    assert krull_dim(R) == dim
    assert multiplicity(R) == e


def test_hilbert_series_of_node():
    h = hilbert(ring("F2[x,y]/(xy)"))
    assert [h.value(d) for d in range(6)] == [1, 2, 2, 2, 2, 2]


@pytest.mark.parametrize("p, names, ideal, expected", [
    (2, ["x", "y"], [], 2),
    (2, ["x", "y"], ["x*y"], 1),
    (2, ["x", "y"], ["x^2", "x*y"], 0),
    (2, ["x", "y", "z"], ["x*y", "x*z"], 1),
])
def test_depth(p, names, ideal, expected):
    assert depth(QuotientRing(p, names, ideal)) == expected


@pytest.mark.parametrize("name, cm, regular", [
    ("F2[x,y]/(xy)", True, False),
    ("F3[x,y]", True, True),
    ("F2[x,y]/(x^2,xy)", False, False),
    ("F2[x,y,z]/(xy,xz)", False, False),
    ("F2[x,y,z]/(xy+z^2)", True, False),
])
def test_cm_and_regular(name, cm, regular):
    R = ring(name)
    assert is_cohen_macaulay(R) == cm
    assert is_regular(R) == regular


@pytest.mark.parametrize("name", sorted(RINGS))
def test_regular_iff_cm_of_multiplicity_one(name):
    R = ring(name)
    assert is_regular(R) == betti_pattern_regular(R)
    assert is_regular(R) == (is_cohen_macaulay(R) and multiplicity(R) == 1)


def test_depth_of_zero_module():
    R = ring("F2[x,y]")
    with pytest.raises(PreconditionError):
        depth(ModulePresentation.cyclic(R, ["1"]))


def test_sop_search():
    R = ring("F2[x,y]/(xy)")
    cert = find_sop(R)
    assert [str(f) for f in cert.elements] == ["x + y"] and cert.colength == 2
    assert find_sop(QuotientRing(2, ["x"])).colength == 1
    A = ring("F2[x]/(x^3)")
    assert find_sop(A).elements == () and find_sop(A).colength == 3
    assert colength(R, [R.element("x")]) is None


def test_sop_search_is_deterministic():
    R = ring("F2[x,y,z]/(xy,xz)")
    a = [c.elements for _, c in zip(range(3), iter_sops(R, seed=5))]
    b = [c.elements for _, c in zip(range(3), iter_sops(R, seed=5))]
    assert a == b


def test_sop_budget():
    R = QuotientRing(2, ["x", "y"], ["x*y"], limits=Limits(sop_attempts=1))
    # the first candidate (x) is not a parameter and the budget stops the search
    with pytest.raises(LimitError):
        find_sop(R)


@pytest.mark.parametrize("p, names, ideal, rels, expected", [
    (2, ["x", "y"], [], ["x", "y"], 1),
    (2, ["x", "y"], ["x^2*y", "y^2"], ["x"], 2),
    (2, ["x"], ["x^3"], [], 3),
    (3, ["x", "y"], [], ["x^2", "y^3"], 4),
])
def test_loewy_length(p, names, ideal, rels, expected):
    R = QuotientRing(p, names, ideal)
    M = ModulePresentation.cyclic(R, rels) if rels else R
    assert loewy_length(M) == expected


def test_loewy_length_requires_finite_length():
    with pytest.raises(PreconditionError):
        loewy_length(ring("F2[x,y]/(xy)"))
