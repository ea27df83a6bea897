import pytest

from frobflat import (
    LimitError, Limits, ModulePresentation, QuotientRing, frobenius_functor, kunz_test,
    minimal_free_resolution, tor_frobenius,
)
from frobflat.frobenius import kunz_probe
from frobflat.homological import Complex, koszul_complex
from corpus import d_squared_zero, modules, ring


def entries(d):
    return sorted(str(f) for row in d.rows() for f in row if f)


def test_functor_on_koszul_resolution():
    R = ring("F2[x,y]")
    K = koszul_complex(R.gens(), R)
    F = frobenius_functor(K, 1)
    assert entries(F.d(1)) == ["x^2", "y^2"]
    assert F.shifts(2) == (4,)


def test_functor_on_periodic_resolution():
    R = ring("F2[x,y]/(xy)")
    F = minimal_free_resolution(ModulePresentation.cyclic(R, ["x"]), 3).complex
    FF = frobenius_functor(F, 1)
    assert [entries(FF.d(i)) for i in (1, 2, 3)] == [["x^2"], ["y^2"], ["x^2"]]


def test_zero_complex():
    R = ring("F2[x,y]")
    Z = Complex.free(R, 0, [[]])
    assert frobenius_functor(Z, 2).rank(0) == 0


@pytest.mark.parametrize("ring_name, label, M", list(modules()), ids=lambda v: str(v)[:24])
def test_functoriality(ring_name, label, M):
    F = minimal_free_resolution(M, 2).complex
    a = frobenius_functor(frobenius_functor(F, 1), 1)
    b = frobenius_functor(F, 2)
    assert d_squared_zero(b)
    assert all(a.d(i) == b.d(i) for i in range(F.lo + 1, F.hi + 1))
    assert all(a.shifts(i) == b.shifts(i) for i in range(F.lo, F.hi + 1))


def test_worked_tor_example():
    R = ring("F2[x,y]/(xy)")
    prof = tor_frobenius(ModulePresentation.cyclic(R, ["x"]), 1, 0, 2)
    assert not prof.is_zero(0, 1)
    cell = prof[(1, 1)]
    assert not cell.is_zero and cell.k_dimension == 1
    (rep,) = cell.representatives
    assert set(rep) == {(0, (0, 1))}  # the class of y


@pytest.mark.parametrize("e", [1, 2, 3])
def test_regular_ring_tor_vanishes(e):
    R = QuotientRing(2, ["x"])
    prof = tor_frobenius(ModulePresentation.cyclic(R, ["x"]), e, 0, 2)
    assert [prof.is_zero(i, e) for i in range(3)] == [False, True, True]


@pytest.mark.parametrize("name, regular", [
    ("F2[x,y]", True), ("F3[x,y]", True), ("F2[x,y]/(xy)", False), ("F2[x]/(x^2)", False),
])
def test_kunz(name, regular):
    R = ring(name)
    assert kunz_test(R) == regular
    probe = kunz_probe(R)
    if not regular:
        assert probe.witness.i == 1 and not probe.witness.is_zero


def test_degree_cap_marks_cells_unavailable():
    R = QuotientRing(2, ["x", "y"], ["x*y"], limits=Limits(max_degree=3))
    prof = tor_frobenius(ModulePresentation.cyclic(R, ["x"]), 2, 0, 2)
    assert all(not c.available for c in prof.sorted_cells())
    with pytest.raises(LimitError):
        kunz_probe(QuotientRing(2, ["x"], limits=Limits(max_degree=1)))
