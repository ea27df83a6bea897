"""Numerical invariants of R = S/I at the graded maximal ideal."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

from .algebra_core import Polynomial
from .errors import ConsistencyError, InputError, LimitError, PreconditionError
from .hilbert import (
    hilbert_function, module_numerator, monomial_ideal_numerator,
    pole_order_and_multiplicity, standard_monomial_counts,
)
from .homological import (
    ModulePresentation, homology, koszul_complex, minimal_free_resolution,
)
from .rings import QuotientRing


@dataclass(frozen=True)
class HilbertData:
    """H(t) = numerator(t) / (1 - t)^n, numerator as {degree: coefficient}."""

    numerator: dict
    n: int
    dim: int
    multiplicity: int

    def coefficients(self):
        """(lowest degree, [coefficients]) of the numerator."""
        if not self.numerator:
            return 0, []
        lo, hi = min(self.numerator), max(self.numerator)
        return lo, [self.numerator.get(d, 0) for d in range(lo, hi + 1)]

    def value(self, degree):
        return hilbert_function(self.numerator, self.n, degree)


def _as_module(X):
    if isinstance(X, QuotientRing):
        return ModulePresentation.free(X, [0])
    if isinstance(X, ModulePresentation):
        return X
    raise InputError("expected a QuotientRing or a ModulePresentation")


def hilbert(X) -> HilbertData:
    if isinstance(X, QuotientRing):
        def compute():
            leads = [vec[1] for vec in X.gb.leads()]
            num = monomial_ideal_numerator(leads, X.n)
            dim, e = pole_order_and_multiplicity(num, X.n)
            return HilbertData(num, X.n, dim, e)
        return X.cache("hilbert", compute)
    M = _as_module(X)
    num = module_numerator(M.lead_data(), M.ring.n)
    dim, e = pole_order_and_multiplicity(num, M.ring.n)
    return HilbertData(num, M.ring.n, dim, e)


def krull_dim(X) -> int:
    return hilbert(X).dim


def multiplicity(X) -> int:
    return hilbert(X).multiplicity


def depth(X) -> int:
    """n - sup{i : H_i(K(x_1..x_n; M)) != 0}."""
    if isinstance(X, QuotientRing):
        return X.cache("depth", lambda: _depth(_as_module(X)))
    return _depth(_as_module(X))


def _depth(M):
    if M.is_zero():
        raise PreconditionError("depth of the zero module is not defined (infinite by convention)")
    R = M.ring
    K = koszul_complex(R.gens(), M)
    for i in range(R.n, -1, -1):
        if not homology(K, i).is_zero:
            return R.n - i
    raise ConsistencyError("Koszul homology vanished for a nonzero module")


def is_cohen_macaulay(R: QuotientRing) -> bool:
    return R.cache("cm", lambda: depth(R) == krull_dim(R))


def betti_pattern_regular(R: QuotientRing) -> bool:
    """Regular iff the Betti numbers of k are binomial(edim, i) up to edim + 1."""
    def compute():
        k = ModulePresentation.residue_field(R)
        res = minimal_free_resolution(k, R.n + 1)
        b1 = res.betti[1]
        return all(res.betti[i] == comb(b1, i) for i in range(0, b1 + 2))
    return R.cache("regular_betti", compute)


def is_regular(R: QuotientRing) -> bool:
    """Decided by the Kunz probe and by the Betti pattern of k; they must agree."""
    from .frobenius import kunz_test

    def compute():
        a = kunz_test(R)
        b = betti_pattern_regular(R)
        if a != b:
            raise ConsistencyError(f"Kunz test ({a}) and Betti pattern ({b}) disagree for {R}")
        return a
    return R.cache("regular", compute)


# ---------------------------------------------------------------------------
# systems of parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SopCertificate:
    elements: tuple
    colength: int

    def __len__(self):
        return len(self.elements)


def quotient_by(R: QuotientRing, elements) -> QuotientRing:
    return QuotientRing(R.p, R.variables, list(R.ideal) + [R.element(f) for f in elements],
                        order=R.S.order, limits=R.limits)


def colength(R: QuotientRing, elements):
    """length R/(elements), or None when infinite."""
    Q = quotient_by(R, elements)
    h = hilbert(Q)
    if h.dim > 0:
        return None
    return h.multiplicity


def _candidate_linear_forms(R):
    S = R.S
    gens = S.gens()
    out = list(gens)
    for size in range(2, R.n + 1):
        for subset in combinations(range(R.n), size):
            f = S.zero()
            for i in subset:
                f = f + gens[i]
            out.append(f)
    return out


def _random_form(R, degree, rng):
    S = R.S
    d = {}
    for combo in combinations_with_replacement(range(R.n), degree):
        m = [0] * R.n
        for i in combo:
            m[i] += 1
        c = rng.randrange(R.p)
        if c:
            d[tuple(m)] = c
    return Polynomial(S, d)


def iter_sops(R: QuotientRing, seed: int = 0):
    """Systems of parameters in search order: variables and their sums, then
    seeded-random forms of degree 1, 2, ...  Stops after ``limits.sop_attempts``
    candidate tuples."""
    d = krull_dim(R)
    if d == 0:
        yield SopCertificate((), hilbert(R).multiplicity)
        return
    budget = R.limits.sop_attempts
    tried = 0
    for ys in combinations(_candidate_linear_forms(R), d):
        if tried >= budget:
            return
        tried += 1
        ys = [R.element(y) for y in ys]
        if any(not y for y in ys):
            continue
        c = colength(R, ys)
        if c is not None:
            yield SopCertificate(tuple(ys), c)
    rng = random.Random(seed)
    degree = 1
    while tried < budget:
        for _ in range(max(4, budget // 8)):
            if tried >= budget:
                return
            tried += 1
            ys = [R.element(_random_form(R, degree, rng)) for _ in range(d)]
            if any(not y for y in ys):
                continue
            c = colength(R, ys)
            if c is not None:
                yield SopCertificate(tuple(ys), c)
        degree += 1


def find_sop(R: QuotientRing, seed: int = 0) -> SopCertificate:
    for cert in iter_sops(R, seed):
        return cert
    raise LimitError(f"no system of parameters found within {R.limits.sop_attempts} attempts")


# ---------------------------------------------------------------------------
# Loewy length
# ---------------------------------------------------------------------------

def _monomials(n, degree):
    for combo in combinations_with_replacement(range(n), degree):
        m = [0] * n
        for i in combo:
            m[i] += 1
        yield tuple(m)


def loewy_length(X) -> int:
    """Least l with m^l M = 0 for a nonzero finite-length M."""
    M = _as_module(X)
    if M.is_zero():
        raise PreconditionError("Loewy length of the zero module")
    counts = standard_monomial_counts(M.lead_data(), M.ring.n)
    top = max(d for d, c in counts.items() if c)
    n = M.ring.n
    direct = None
    ell = 1
    bound = top - min(M.shifts) + 1
    while ell <= bound:
        if all(M.contains({(j, m): 1}) for m in _monomials(n, ell) for j in range(M.rank)):
            direct = ell
            break
        ell += 1
    if direct is None:
        raise ConsistencyError("Loewy length search exceeded the top degree bound")
    if len(set(M.shifts)) == 1:
        shortcut = top - M.shifts[0] + 1
        if shortcut != direct:
            raise ConsistencyError(f"graded Loewy shortcut {shortcut} != direct test {direct}")
    return direct


def ring_invariants(R: QuotientRing) -> dict:
    h = hilbert(R)
    return {
        "dim": h.dim,
        "depth": depth(R),
        "multiplicity": h.multiplicity,
        "cohen_macaulay": is_cohen_macaulay(R),
        "regular": is_regular(R),
    }
