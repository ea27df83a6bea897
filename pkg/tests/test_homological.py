from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from frobflat import (
    Complex, ModulePresentation, QuotientRing, depth, homology, koszul_complex,
    minimal_free_resolution, semifree_resolution,
)
from frobflat.groebner import Matrix
from frobflat.hilbert import hilbert_function, standard_monomial_counts
from frobflat.homological import (
    assert_minimal, k_dimension, sup_homology, tensor_free_complexes,
)
from frobflat.invariants import hilbert
from corpus import d_squared_zero, modules, ring


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_betti_of_residue_field_is_binomial(p, n):
    R = QuotientRing(p, ["x", "y", "z"][:n])
    res = minimal_free_resolution(ModulePresentation.residue_field(R), n + 1)
    assert res.betti.as_list() == [comb(n, i) for i in range(n + 1)]
    assert res.complete
    assert [s for s in res.complex.shifts(n)] == [n]


def test_periodic_resolution():
    R = ring("F2[x,y]/(xy)")
    res = minimal_free_resolution(ModulePresentation.cyclic(R, ["x"]), 4)
    assert res.betti.as_list() == [1, 1, 1, 1, 1]
    assert not res.complete
    entries = [str(res.complex.d(i).entry(0, 0)) for i in range(1, 5)]
    assert entries == ["x", "y", "x", "y"]


def test_pruning_removes_units():
    R = QuotientRing(2, ["x", "y"])
    # generators e0 (deg 0), e1 (deg 1) with relation e1 = x e0: module is S/(x*y)
    M = ModulePresentation.from_rows(R, [0, 1], [["x", "0"], ["1", "y"]])
    res = minimal_free_resolution(M, 3)
    assert res.betti.as_list() == [1, 1]
    assert res.complex.shifts(1) == (2,)


@pytest.mark.parametrize("ring_name, label, M", list(modules()), ids=lambda v: str(v)[:24])
def test_corpus_resolutions_minimal_and_complexes(ring_name, label, M):
    res = minimal_free_resolution(M, 3)
    assert_minimal(res.complex)
    assert d_squared_zero(res.complex)
    assert homology(res.complex, 0).presentation.hilbert_numerator() == M.hilbert_numerator()
    for i in range(1, res.complex.hi):
        assert homology(res.complex, i).is_zero


@pytest.mark.parametrize("ring_name, label, M", list(modules()), ids=lambda v: str(v)[:24])
def test_auslander_buchsbaum(ring_name, label, M):
    R = M.ring
    res = minimal_free_resolution(M, depth(R) + 1)
    if res.complete:
        assert res.complex.hi + depth(M) == depth(R)


def test_koszul_complex_shape_and_homology():
    R = QuotientRing(2, ["x", "y", "z"])
    K = koszul_complex(R.gens(), R)
    assert [K.rank(i) for i in range(4)] == [1, 3, 3, 1]
    assert d_squared_zero(K)
    assert [homology(K, i).is_zero for i in range(4)] == [False, True, True, True]
    assert homology(K, 0).k_dimension == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_koszul_h1_of_loewy_gap_ring(n):
    R = QuotientRing(2, ["x", "y"], [f"x^{n}*y", "y^2"])
    H = homology(koszul_complex([R.element("x")], R), 1)
    assert H.k_dimension == 1
    (rep,) = H.representatives
    assert set(rep) == {(0, (n - 1, 1))}


def test_tensor_of_koszul_complexes():
    R = QuotientRing(3, ["x", "y"])
    x, y = R.gens()
    T = tensor_free_complexes(koszul_complex([x], R), koszul_complex([y], R))
    assert [T.rank(i) for i in range(3)] == [1, 2, 1]
    assert d_squared_zero(T)
    assert [homology(T, i).is_zero for i in range(3)] == [False, True, True]


def test_semifree_resolution_of_k_plus_shifted_k():
    R = QuotientRing(2, ["x"])
    k = ModulePresentation.residue_field(R)
    C = Complex(R, 0, [k, k], {1: Matrix.zero(R.S, 1, 1)})
    F = semifree_resolution(C, 3)
    assert F.is_free and d_squared_zero(F)
    assert homology(F, 0).k_dimension == 1
    assert homology(F, 1).k_dimension == 1
    assert homology(F, 2).is_zero
    assert sup_homology(C) == 1


def test_semifree_resolution_with_nonzero_differential():
    # R/(x^2) --x--> R/(x^2) over F_2[x]: H_0 = R/(x), H_1 = (x)/(x^2)
    R = QuotientRing(2, ["x"])
    M0 = ModulePresentation.cyclic(R, ["x^2"])
    M1 = ModulePresentation.cyclic(R, ["x^2"], shift=1)
    C = Complex(R, 0, [M0, M1], {1: Matrix.from_rows(R.S, [[R.element("x")]])})
    F = semifree_resolution(C, 3)
    assert d_squared_zero(F)
    assert [homology(F, i).k_dimension for i in range(3)] == [1, 1, 0]


def test_bad_complex_rejected():
    from frobflat import ConsistencyError
    R = QuotientRing(2, ["x"])
    d = Matrix.from_rows(R.S, [[R.element("x")]])
    with pytest.raises(ConsistencyError):
        Complex.free(R, 0, [[0], [1], [2]], {1: d, 2: d})


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(["x^2", "x*y", "y^2", "x^3", "y^3", "x^2*y"]), min_size=1, max_size=3),
       st.sampled_from(["x^4", "x^5"]), st.sampled_from(["y^4", "y^5 + x^4*y"]))
def test_hilbert_matches_standard_monomials(gens, a, b):
    R = QuotientRing(2, ["x", "y"])
    M = ModulePresentation.cyclic(R, gens + [a, b])
    counts = standard_monomial_counts(M.lead_data(), 2)
    num = M.hilbert_numerator()
    for d in range(0, 10):
        assert counts.get(d, 0) == hilbert_function(num, 2, d)
    assert k_dimension(M) == sum(counts.values())


@pytest.mark.parametrize("name", ["F2[x,y]/(xy)", "F2[x,y,z]/(xy+z^2)", "F3[x,y]/(x^2)"])
def test_ring_hilbert_function_counts(name):
    from itertools import combinations_with_replacement
    R = ring(name)
    h = hilbert(R)
    for d in range(6):
        count = 0
        for combo in combinations_with_replacement(range(R.n), d):
            m = [0] * R.n
            for i in combo:
                m[i] += 1
            if not any(all(a <= b for a, b in zip(lead[1], m)) for lead in R.gb.leads()):
                count += 1
        assert h.value(d) == count
