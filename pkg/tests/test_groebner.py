import random

import pytest
from hypothesis import given, settings, strategies as st

from frobflat import PolyRing, QuotientRing, ideal_basis
from frobflat.groebner import (
    LinearSystem, Matrix, ModuleSpace, buchberger, vec_from_poly,
)
from corpus import spairs_reduce_to_zero

S = PolyRing(2, ["x", "y", "z"])
S3 = PolyRing(3, ["x", "y", "z"])


def basis_set(B):
    return {tuple(sorted(v.items())) for v in B.elements}


IDEALS = [
    ["x^2 + x*y", "x*y"],
    ["x*y + z^2", "x^2", "y^3"],
    ["x^2 + y*z", "x*y + z^2", "y^2 - x*z"],
    ["x^3 - y^2*z", "x*z - y^2"],
]


def test_small_basis():
    B = ideal_basis([S.parse("x^2 + x*y"), S.parse("x*y")])
    assert [str(f) for f in B.polys()] == ["x*y", "x^2"]


@pytest.mark.parametrize("gens", IDEALS)
@pytest.mark.parametrize("R", [S, S3])
def test_spair_criterion(gens, R):
    B = ideal_basis([R.parse(g) for g in gens])
    assert spairs_reduce_to_zero(B)
    for g in gens:
        assert B.contains(vec_from_poly(R.parse(g).dict))


@pytest.mark.parametrize("gens", IDEALS)
def test_basis_is_canonical(gens):
    polys = [S3.parse(g) for g in gens]
    ref = basis_set(ideal_basis(polys))
    rng = random.Random(len(gens))
    for _ in range(5):
        shuffled = polys[:]
        rng.shuffle(shuffled)
        scaled = [f * rng.choice([1, 2]) for f in shuffled]
        # adding a combination of generators does not change the ideal
        scaled.append(scaled[0] * S3.gen("x") + scaled[-1] * S3.gen("z"))
        assert basis_set(ideal_basis(scaled)) == ref


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["x^2", "x*y", "y*z", "z^2", "x*y + z^2", "x^2 + y^2", "y^3 + x*z^2"]),
                min_size=1, max_size=4))
def test_spair_criterion_random(gens):
    B = ideal_basis([S.parse(g) for g in gens])
    assert spairs_reduce_to_zero(B)


def test_module_basis_and_flags():
    space = ModuleSpace(S, 2, [0, 0])
    x, y = S.gens()[:2]
    gens = [
        {(0, (1, 0, 0)): 1, (1, (0, 1, 0)): 1},
        {(0, (2, 0, 0)): 1, (1, (1, 1, 0)): 1},   # x times the first
        {(1, (0, 0, 1)): 1},
    ]
    B, flags = buchberger(gens, space, return_flags=True)
    assert flags == [True, False, True]
    assert spairs_reduce_to_zero(B)


@pytest.mark.parametrize("row", [["x", "y"], ["x", "y", "z"], ["x^2", "x*y", "y^2"]])
def test_syzygies(row):
    R = QuotientRing(2, ["x", "y", "z"])
    entries = [R.element(f) for f in row]
    A = Matrix.from_rows(R.S, [entries])
    degs = [f.degree() for f in entries]
    syz = LinearSystem(R.S, A.cols, 1, [0], degs).kernel()
    assert syz
    for c in syz:
        assert not A.apply(c)
    if row == ["x", "y"]:
        assert len(syz) == 1


def test_syzygies_over_quotient():
    R = QuotientRing(2, ["x", "y"], ["x*y"])
    A = Matrix.from_rows(R.S, [[R.element("x")]])
    ker = LinearSystem(R.S, A.cols, 1, [0], [1], ideal=R.ideal_dicts()).kernel()
    assert [str(R.reduce(S2poly(R, c))) for c in ker] == ["y"]


def S2poly(R, v):
    from frobflat.algebra_core import Polynomial
    return Polynomial(R.S, {m: c for (_, m), c in v.items()})


def test_solve():
    R = QuotientRing(3, ["x", "y"])
    A = Matrix.from_rows(R.S, [[R.element("x"), R.element("y")]])
    system = LinearSystem(R.S, A.cols, 1, [0], [1, 1])
    z = vec_from_poly(R.element("x^2 + 2*x*y").dict, 0)
    c = system.solve(z)
    assert c is not None and A.apply(c) == z
    assert system.solve(vec_from_poly(R.element("1").dict, 0)) is None
