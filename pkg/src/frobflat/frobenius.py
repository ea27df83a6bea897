"""The Frobenius functor on free complexes and Tor against ^{f^e}R.

^{f^e}R is never built as an R-module: for a free complex F, F (x)_R ^{f^e}R
read through the target copy of R is F with every differential entry g
replaced by g^(p^e) and every generator degree multiplied by p^e.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra_core import dict_frobenius
from .errors import ConsistencyError, InputError, LimitError
from .homological import (
    Complex, ModulePresentation, homology, minimal_free_resolution, semifree_resolution,
)
from .rings import QuotientRing


def frobenius_functor(C: Complex, e: int) -> Complex:
    """Apply F^e: entries g -> g^(p^e) (reduced in R), shifts scaled by p^e."""
    if not isinstance(e, int) or e < 1:
        raise InputError("Frobenius exponent e must be a positive integer")
    if not C.is_free:
        raise InputError("the Frobenius functor is applied to complexes of free modules")
    R = C.ring
    q = R.p ** e
    cap = R.limits.max_degree
    red = R.reducer

    def power(d):
        return red.reduce_poly(dict_frobenius(d, q, cap))

    diffs = {i: d.map_entries(power) for i, d in C.diffs.items()}
    shifts = [[s * q for s in C.shifts(i)] for i in range(C.lo, C.hi + 1)]
    try:
        return Complex.free(R, C.lo, shifts, diffs, check=True)
    except ConsistencyError as exc:
        raise ConsistencyError(f"Frobenius image is not a complex: {exc}") from exc


@dataclass
class TorCell:
    i: int
    e: int
    available: bool = True
    is_zero: bool | None = None
    presentation: ModulePresentation | None = None
    representatives: list = field(default_factory=list)
    finite_length: bool | None = None
    k_dimension: int | None = None
    reason: str | None = None


@dataclass
class TorProfile:
    """(i, e) -> Tor_i^R(M, ^{f^e}R) data for a fixed M."""

    module_id: str
    cells: dict = field(default_factory=dict)

    def add(self, cell: TorCell):
        self.cells[(cell.i, cell.e)] = cell

    def merge(self, other: "TorProfile"):
        for key, cell in other.cells.items():
            self.cells[key] = cell
        return self

    def __getitem__(self, key) -> TorCell:
        return self.cells[key]

    def is_zero(self, i, e):
        return self.cells[(i, e)].is_zero

    def sorted_cells(self):
        return [self.cells[k] for k in sorted(self.cells)]


def resolve(M, top: int) -> Complex:
    """A free resolution (minimal for modules, semifree for complexes) reaching
    homological degree ``top``.  A module resolution that stops earlier is exact."""
    if isinstance(M, ModulePresentation):
        return minimal_free_resolution(M, max(top, 0), probe=False).complex
    if isinstance(M, Complex):
        return semifree_resolution(M, max(top - M.lo, 0))
    raise InputError("expected a ModulePresentation or a Complex")


def tor_frobenius(M, e: int, lo: int, hi: int, resolution: Complex | None = None,
                  module_id: str = "M") -> TorProfile:
    """Tor_i^R(M, ^{f^e}R) for lo <= i <= hi.

    Cells that hit a resource cap are marked unavailable (never zero).  A
    supplied ``resolution`` must reach degree hi + 1 or be a complete one.
    """
    if lo < 0:
        lo = 0
    profile = TorProfile(module_id)
    try:
        F = resolution if resolution is not None else resolve(M, hi + 1)
        FF = frobenius_functor(F, e)
    except LimitError as exc:
        for i in range(lo, hi + 1):
            profile.add(TorCell(i, e, available=False, reason=str(exc)))
        return profile
    for i in range(lo, hi + 1):
        if i < FF.lo or i > FF.hi:
            if i > FF.hi and F.hi < hi + 1:
                # the resolution stopped: F_i = 0
                profile.add(TorCell(i, e, True, True, None, [], True, 0))
            elif i < FF.lo:
                profile.add(TorCell(i, e, True, True, None, [], True, 0))
            else:
                profile.add(TorCell(i, e, available=False, reason="resolution too short"))
            continue
        try:
            H = homology(FF, i)
        except LimitError as exc:
            profile.add(TorCell(i, e, available=False, reason=str(exc)))
            continue
        profile.add(TorCell(i, e, True, H.is_zero, H.presentation, H.representatives,
                            H.finite_length, H.k_dimension))
    return profile


@dataclass
class KunzResult:
    regular: bool
    witness: TorCell | None
    profile: TorProfile


def kunz_probe(R: QuotientRing, e: int = 1) -> KunzResult:
    """Tor_i(k, ^{f^e}R) for 1 <= i <= n (n = number of variables)."""
    k = ModulePresentation.residue_field(R)
    n = max(R.n, 1)
    profile = tor_frobenius(k, e, 1, n, module_id="k")
    witness = None
    for cell in profile.sorted_cells():
        if not cell.available:
            raise LimitError(cell.reason or "Tor cell unavailable")
        if not cell.is_zero and witness is None:
            witness = cell
    return KunzResult(witness is None, witness, profile)


def kunz_test(R: QuotientRing) -> bool:
    """True iff Tor_i(k, ^f R) = 0 for 1 <= i <= n, i.e. R is regular."""
    return kunz_probe(R).regular
