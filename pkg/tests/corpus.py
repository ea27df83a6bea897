"""Rings and modules shared by the unit tests and the acceptance suite."""
from frobflat import ModulePresentation, QuotientRing

RINGS = {
    "F2[x,y]": (2, ["x", "y"], []),
    "F3[x,y]": (3, ["x", "y"], []),
    "F2[x,y]/(xy)": (2, ["x", "y"], ["x*y"]),
    "F3[x,y]/(xy)": (3, ["x", "y"], ["x*y"]),
    "F2[x]/(x^2)": (2, ["x"], ["x^2"]),
    "F2[x]/(x^3)": (2, ["x"], ["x^3"]),
    "F3[x,y]/(x^2)": (3, ["x", "y"], ["x^2"]),
    "F2[x,y,z]/(xy+z^2)": (2, ["x", "y", "z"], ["x*y + z^2"]),
    "F2[x,y]/(x^2,xy)": (2, ["x", "y"], ["x^2", "x*y"]),
    "F2[x,y,z]/(xy,xz)": (2, ["x", "y", "z"], ["x*y", "x*z"]),
}

# (ring name, label, shifts, relation rows)
MODULES = [
    ("F2[x,y]", "k", [0], [["x", "y"]]),
    ("F2[x,y]", "R/(x^2,y)", [0], [["x^2", "y"]]),
    ("F2[x,y]", "R/(xy)", [0], [["x*y"]]),
    ("F3[x,y]", "k", [0], [["x", "y"]]),
    ("F3[x,y]", "coker[x y]^T", [0, 0], [["y"], ["-x"]]),
    ("F2[x,y]/(xy)", "R", [0], [[]]),
    ("F2[x,y]/(xy)", "R/(x)", [0], [["x"]]),
    ("F2[x,y]/(xy)", "R/(x+y)", [0], [["x + y"]]),
    ("F2[x,y]/(xy)", "k", [0], [["x", "y"]]),
    ("F2[x,y]/(xy)", "R/(x^2+y^2)", [0], [["x^2 + y^2"]]),
    ("F3[x,y]/(xy)", "R/(x-y)", [0], [["x - y"]]),
    ("F3[x,y]/(xy)", "R/(y)", [0], [["y"]]),
    ("F2[x]/(x^2)", "k", [0], [["x"]]),
    ("F2[x]/(x^2)", "R", [0], [[]]),
    ("F2[x]/(x^3)", "R/(x^2)", [0], [["x^2"]]),
    ("F3[x,y]/(x^2)", "R/(y)", [0], [["y"]]),
    ("F3[x,y]/(x^2)", "R/(x)", [0], [["x"]]),
    ("F2[x,y,z]/(xy+z^2)", "R/(x)", [0], [["x"]]),
    ("F2[x,y,z]/(xy+z^2)", "R/(x,z)", [0], [["x", "z"]]),
    ("F2[x,y,z]/(xy+z^2)", "R/(x+y,z)", [0], [["x + y", "z"]]),
    ("F2[x,y]/(x^2,xy)", "R", [0], [[]]),
    ("F2[x,y]/(x^2,xy)", "R/(y)", [0], [["y"]]),
    ("F2[x,y]/(x^2,xy)", "R/(x)", [0], [["x"]]),
    ("F2[x,y,z]/(xy,xz)", "R/(x)", [0], [["x"]]),
    ("F2[x,y,z]/(xy,xz)", "R/(y,z)", [0], [["y", "z"]]),
    ("F2[x,y,z]/(xy,xz)", "R/(x+y)", [0], [["x + y"]]),
]

_rings = {}


def ring(name):
    if name not in _rings:
        p, names, ideal = RINGS[name]
        _rings[name] = QuotientRing(p, names, ideal)
    return _rings[name]


def module(ring_name, shifts, rows):
    R = ring(ring_name)
    rows = [r for r in rows]
    if all(not r for r in rows):
        return ModulePresentation.free(R, shifts)
    return ModulePresentation.from_rows(R, shifts, rows)


def modules():
    for ring_name, label, shifts, rows in MODULES:
        yield ring_name, label, module(ring_name, shifts, rows)


def spairs_reduce_to_zero(B):
    """Buchberger's criterion: every S-pair of the basis reduces to zero."""
    from frobflat.groebner import spoly
    p = B.space.ring.p
    E = B.elements
    return all(not B.normal_form(spoly(E[i], E[j], B.space, p))
               for i in range(len(E)) for j in range(i + 1, len(E)))


def d_squared_zero(C):
    """d_{i-1} d_i = 0 modulo the relations of each term."""
    for i in range(C.lo + 2, C.hi + 1):
        target = C.term(i - 2)
        for col in (C.d(i - 1) @ C.d(i)).cols:
            if not target.contains(col):
                return False
    return True
