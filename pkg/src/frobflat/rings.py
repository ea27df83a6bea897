"""Standard graded quotient rings R = F_p[x_1..x_n]/I."""
from __future__ import annotations

from .algebra_core import Limits, PolyRing, Polynomial
from .errors import ConsistencyError, InputError, RingMismatchError
from .groebner import IdealReducer, ideal_basis


class QuotientRing:
    """S/I for a homogeneous ideal I of S = F_p[vars].

    The reduced Groebner basis of I and the numerical invariants are computed
    lazily and cached; the invariant cache is write-once.
    """

    def __init__(self, p: int, variables, ideal=(), order="degrevlex",
                 limits: Limits | None = None):
        self.S = PolyRing(p, variables, order, limits)
        gens = []
        for g in ideal:
            if isinstance(g, str):
                g = self.S.parse(g)
            elif isinstance(g, Polynomial):
                if g.ring != self.S:
                    raise RingMismatchError("ideal generator from another ring")
            else:
                raise InputError(f"ideal generator must be a string or Polynomial, got {g!r}")
            if not g.is_homogeneous():
                raise InputError(f"ideal generator {g} is not homogeneous")
            if g and g.degree() == 0:
                raise InputError("the ideal contains a unit; R would be the zero ring")
            if g:
                gens.append(g)
        self.ideal = tuple(gens)
        self._gb = None
        self._reducer = None
        self._invariants = {}

    @classmethod
    def polynomial_ring(cls, p, variables, **kw):
        return cls(p, variables, (), **kw)

    @property
    def p(self):
        return self.S.p

    @property
    def n(self):
        return self.S.n

    @property
    def variables(self):
        return self.S.variables

    @property
    def limits(self):
        return self.S.limits

    @property
    def gb(self):
        if self._gb is None:
            self._gb = ideal_basis(self.ideal, self.S)
        return self._gb

    def ideal_dicts(self):
        """Reduced Groebner basis of I as raw polynomial dicts."""
        return [v_poly.dict for v_poly in self.gb.polys()]

    @property
    def reducer(self) -> IdealReducer:
        if self._reducer is None:
            self._reducer = IdealReducer(self.S, self.ideal_dicts())
        return self._reducer

    def reduce(self, f):
        if isinstance(f, str):
            f = self.S.parse(f)
        if isinstance(f, Polynomial):
            return Polynomial(self.S, self.reducer.reduce_poly(f.dict))
        return self.reducer.reduce_poly(f)

    def element(self, f) -> Polynomial:
        """Parse/coerce ``f`` and return its normal form in R."""
        return self.reduce(f)

    def gens(self):
        return self.S.gens()

    def is_polynomial_ring(self):
        return not self.gb.elements

    def cache(self, name, compute):
        """Write-once invariant cache; a recomputation must agree."""
        if name not in self._invariants:
            self._invariants[name] = compute()
        return self._invariants[name]

    def check_cache(self, name, value):
        if name in self._invariants and self._invariants[name] != value:
            raise ConsistencyError(f"cached invariant {name} disagrees with recomputation")

    def __repr__(self):
        ideal = ", ".join(str(g) for g in self.ideal)
        return f"F_{self.p}[{','.join(self.variables)}]/({ideal})"

    def __eq__(self, other):
        return (isinstance(other, QuotientRing) and self.S == other.S
                and [str(g) for g in self.gb.polys()] == [str(g) for g in other.gb.polys()])

    def __hash__(self):
        return hash((self.S, tuple(str(g) for g in self.gb.polys())))
