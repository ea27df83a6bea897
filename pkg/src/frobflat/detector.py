"""Flat-dimension decisions from Frobenius Tor vanishing, and the supporting
bounds and cross-checks.

Everything happens at the graded maximal ideal m of R = S/I.  The decision
procedure :func:`detect_flat_dimension`:

* a nonzero Tor_i(M, ^{f^e}R) with i > sup H(M) certifies infinite flat
  dimension, since finite flat dimension forces vanishing above sup H(M);
* vanishing for t <= i <= t + dim R at one e with p^e >= e(R) certifies
  finite flat dimension (at most t + dim R) when R is Cohen-Macaulay;
* anything else is reported as inconclusive, with the evidence collected.

:func:`flatdim_oracle` answers the same question independently by minimal
resolution and the Auslander-Buchsbaum bound pd M <= depth R.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .errors import InputError, LimitError, PreconditionError
from .frobenius import TorCell, TorProfile, frobenius_functor, resolve, tor_frobenius
from .algebra_core import Polynomial
from .groebner import Matrix, vec_component, vec_degree, vec_from_poly, vec_mul_poly
from .homological import (
    Complex, ModulePresentation, homology, k_dimension, kernel, koszul_complex,
    minimal_free_resolution, minimal_subset, sup_homology, tensor_free_complexes,
)
from .invariants import (
    SopCertificate, colength, depth, hilbert, is_cohen_macaulay, iter_sops, loewy_length,
)
from .rings import QuotientRing


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

CM_CRITERION = ("Tor_i(M, ^{f^e}R) = 0 for t <= i <= t + dim R at a single e with "
                "p^e >= e(R), R Cohen-Macaulay")


@dataclass
class FlatDimVerdict:
    outcome: str                      # "finite" | "infinite" | "inconclusive"
    bound: int | None = None          # upper bound on flat dimension (finite)
    certificate: dict = field(default_factory=dict)
    witness: TorCell | None = None    # (i, e) cell with nonzero Tor (infinite)
    reason: str | None = None
    route: str = "frobenius"          # "frobenius" | "oracle"
    sup_homology: float = 0
    evidence: TorProfile | None = None
    betti: list | None = None

    @property
    def is_finite(self):
        return self.outcome == "finite"

    @property
    def is_infinite(self):
        return self.outcome == "infinite"


def min_frobenius_exponent(p: int, mult: int) -> int:
    """Least e >= 1 with p^e >= mult, i.e. max(1, ceil(log_p mult))."""
    e = 1
    while p ** e < mult:
        e += 1
    return e


def _ring_of(M):
    if isinstance(M, (ModulePresentation, Complex)):
        return M.ring
    raise InputError("expected a ModulePresentation or a Complex")


def detect_flat_dimension(M, t: int | None = None, e_list=None, window: int | None = None,
                          consult_oracle: bool = False) -> FlatDimVerdict:
    """Decide finiteness of the flat dimension of M from Frobenius Tor data.

    Defaults: t = sup H(M) + 1, window width dim R, e = least e with p^e >= e(R).
    With ``consult_oracle`` an inconclusive answer for a module falls back to
    :func:`flatdim_oracle`.
    """
    R = _ring_of(M)
    s = sup_homology(M)
    if s == -math.inf:
        raise PreconditionError("M is zero (all homology vanishes)")
    d = hilbert(R).dim
    mult = hilbert(R).multiplicity
    e_min = min_frobenius_exponent(R.p, mult)
    width = d if window is None else int(window)
    if width < 0:
        raise InputError("window width must be non-negative")
    if t is None:
        t = s + 1
    if t < s:
        raise InputError(f"window start t={t} must be at least sup H(M) = {s}")
    es = [e_min] if e_list is None else sorted({int(e) for e in e_list})
    if not es or min(es) < 1:
        raise InputError("e values must be positive integers")
    cm = is_cohen_macaulay(R)
    lo, hi = t, t + width
    evidence = TorProfile("M")
    try:
        F = resolve(M, hi + 1)
    except LimitError as exc:
        return FlatDimVerdict("inconclusive", reason=f"resource cap: {exc}", sup_homology=s,
                              evidence=evidence)
    unavailable = []
    for e in es:
        prof = tor_frobenius(M, e, lo, hi, resolution=F)
        evidence.merge(prof)
        for cell in prof.sorted_cells():
            if not cell.available:
                unavailable.append(cell)
            elif not cell.is_zero and cell.i > s:
                return FlatDimVerdict(
                    "infinite", witness=cell, sup_homology=s, evidence=evidence,
                    certificate={"witness": [cell.i, cell.e], "sup_homology": s,
                                 "criterion": "finite flat dimension forces "
                                              "Tor_i(M, ^{f^e}R) = 0 for all i > sup H(M)"})
    if unavailable:
        c = unavailable[0]
        return FlatDimVerdict("inconclusive", reason=f"resource cap at Tor_{c.i}, e={c.e}: {c.reason}",
                              sup_homology=s, evidence=evidence)
    nonzero = [c for c in evidence.sorted_cells() if not c.is_zero]
    if nonzero:
        reason = (f"Tor_{nonzero[0].i} is nonzero but i = sup H(M); "
                  "the window has to start above sup H(M)")
    elif not cm:
        reason = (f"window vanished for e in {es}, but R is not Cohen-Macaulay: vanishing "
                  "for infinitely many e is required")
    elif max(es) < e_min:
        reason = f"window vanished only for e < {e_min} = least e with p^e >= e(R) = {mult}"
    elif width < d:
        reason = f"window width {width} is smaller than dim R = {d}"
    else:
        e_used = min(e for e in es if e >= e_min)
        return FlatDimVerdict(
            "finite", bound=t + d, sup_homology=s, evidence=evidence,
            certificate={"cohen_macaulay": True, "e": e_used, "e_min": e_min,
                         "multiplicity": mult, "window": [t, t + d], "criterion": CM_CRITERION})
    verdict = FlatDimVerdict("inconclusive", reason=reason, sup_homology=s, evidence=evidence,
                             certificate={"checked_e": es, "window": [lo, hi]})
    if consult_oracle and isinstance(M, ModulePresentation) and not nonzero:
        oracle = flatdim_oracle(M)
        oracle.evidence = evidence
        oracle.reason = f"oracle consulted: {reason}"
        return oracle
    return verdict


def flatdim_oracle(M: ModulePresentation) -> FlatDimVerdict:
    """pd M from a minimal resolution of length depth R + 1."""
    if not isinstance(M, ModulePresentation):
        raise InputError("the resolution oracle takes a finitely generated module")
    if M.is_zero():
        raise PreconditionError("M is zero")
    R = M.ring
    dR = depth(R)
    try:
        res = minimal_free_resolution(M, dR + 1, probe=False)
    except LimitError as exc:
        return FlatDimVerdict("inconclusive", reason=f"resource cap: {exc}", route="oracle")
    betti = res.betti.as_list()
    top = res.complex.hi
    if top <= dR:
        return FlatDimVerdict("finite", bound=top, route="oracle", betti=betti,
                              certificate={"projective_dimension": top, "depth_R": dR})
    return FlatDimVerdict("infinite", route="oracle", betti=betti,
                          certificate={"nonzero_betti": [dR + 1, res.betti[dR + 1]], "depth_R": dR},
                          reason=f"beta_{dR + 1} = {res.betti[dR + 1]} > 0 exceeds depth R = {dR}")


# ---------------------------------------------------------------------------
# Loewy-length bounds and c(R)
# ---------------------------------------------------------------------------

@dataclass
class LoewyBound:
    lower: int
    upper: int | None
    exact: int | None = None
    justification: str | None = None
    truncation_index: int | None = None
    reason: str | None = None


@dataclass
class CRBound:
    value: int
    witness: SopCertificate
    route: str                 # "regular-sequence-equality" | "truncation-bound"
    candidates: list = field(default_factory=list)


def _elements(R, y):
    if isinstance(y, SopCertificate):
        return list(y.elements)
    return [R.element(f) for f in y]


def is_regular_sequence(R: QuotientRing, y) -> bool:
    """Koszul homology H_i(K(y; R)) vanishes for every i >= 1."""
    y = _elements(R, y)
    if not y:
        return True
    K = koszul_complex(y, R)
    return all(homology(K, i).is_zero for i in range(1, len(y) + 1))


def _power_products(R, y, a):
    """Generators of (y)^a as polynomial dicts (a <= 0 gives the unit ideal)."""
    one = {R.S.one_monomial(): 1}
    if a <= 0:
        return [one]
    out = []
    for combo in combinations_with_replacement(range(len(y)), a):
        f = R.S.one()
        for i in combo:
            f = f * y[i]
        f = R.reduce(f)
        if f:
            out.append(f.dict)
    return out


def truncation_acyclic(R: QuotientRing, y, i: int) -> bool:
    """Is the subcomplex ... -> I^{i-2}K_2 -> I^{i-1}K_1 -> I^i K_0 of K(y; R) acyclic?"""
    y = _elements(R, y)
    K = koszul_complex(y, R)
    r = len(y)
    p = R.p
    gens = {}
    for j in range(r + 1):
        cols = []
        for f in _power_products(R, y, i - j):
            for b in range(K.rank(j)):
                cols.append(R.reducer.reduce_vec(vec_mul_poly({(b, R.S.one_monomial()): 1}, f, p)))
        gens[j] = [c for c in cols if c]
    for j in range(r + 1):
        G = gens[j]
        if not G:
            continue
        shifts = K.shifts(j)
        if j == 0:
            cycles = G
        else:
            dG = Matrix(R.S, K.rank(j - 1), [K.d(j).apply(c) for c in G])
            degs = [vec_degree(c, shifts) for c in G]
            coeffs = kernel(R, dG, K.shifts(j - 1), degs)
            Gm = Matrix(R.S, K.rank(j), G)
            cycles = [R.reducer.reduce_vec(Gm.apply(c)) for c in coeffs]
            cycles = [c for c in cycles if c]
        boundaries = [K.d(j + 1).apply(c) for c in gens.get(j + 1, [])] if j < r else []
        if minimal_subset(R, cycles, shifts, modulo=boundaries):
            return False
    return True


def loewy_bounds_koszul(R: QuotientRing, y) -> LoewyBound:
    """Bounds on the homotopical Loewy length of K(y; R) for (y) m-primary.

    lower = Loewy length of R/(y); upper = Loewy length of K/C^i for the least
    i >= 1 with C^i acyclic (K -> K/C^i is then a quasi-isomorphism); exact
    when y is a regular sequence, since then K(y; R) ~ R/(y).
    """
    y = _elements(R, y)
    if colength(R, y) is None:
        raise PreconditionError("R/(y) does not have finite length")
    lower = _quotient_loewy(R, y, 1)
    regular = is_regular_sequence(R, y)
    upper = None
    index = None
    for i in range(1, R.limits.truncation_search + 1):
        if truncation_acyclic(R, y, i):
            index = i
            upper = max(_quotient_loewy(R, y, i - j) for j in range(0, min(len(y), i - 1) + 1))
            break
    bound = LoewyBound(lower, upper, truncation_index=index)
    if upper is None:
        bound.reason = f"no acyclic truncation found up to i = {R.limits.truncation_search}"
    if regular:
        bound.exact = lower
        bound.justification = "regular sequence: K(y;R) is quasi-isomorphic to R/(y)"
    return bound


def _quotient_loewy(R, y, a):
    gens = _power_products(R, y, a)
    M = ModulePresentation(R, [0], [vec_from_poly(g, 0) for g in gens])
    return loewy_length(M)


def cr_upper_bound(R: QuotientRing, trials: int = 4, seed: int = 0) -> CRBound:
    """Minimum over up to ``trials`` systems of parameters of the Loewy bound of K(y; R)."""
    best = None
    seen = []
    keys = set()
    for cert in iter_sops(R, seed):
        key = frozenset(tuple(sorted(f.dict.items())) for f in cert.elements)
        if key in keys:
            continue
        keys.add(key)
        bound = loewy_bounds_koszul(R, cert)
        value = bound.exact if bound.exact is not None else bound.upper
        if value is not None:
            route = "regular-sequence-equality" if bound.exact is not None else "truncation-bound"
            seen.append((cert, value))
            if best is None or value < best.value:
                best = CRBound(value, cert, route)
        if len(seen) >= trials:
            break
    if best is None:
        raise LimitError("no system of parameters with a computable Loewy bound")
    best.candidates = [[str(f) for f in c.elements] + [v] for c, v in seen]
    return best


# ---------------------------------------------------------------------------
# cross-checks of the Tor decomposition and window collapse
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    status: str                 # "pass" | "fail" | "refused" | "hypothesis not met"
    rows: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"


def _functored_koszul_tensor(M, e, y, top):
    R = _ring_of(M)
    F = resolve(M, top + 1)
    FF = frobenius_functor(F, e)
    K = koszul_complex(y, R)
    return tensor_free_complexes(FF, K)


def verify_tor_decomposition(M: ModulePresentation, e: int, y=None, top: int = 4) -> CheckReport:
    """dim_k Tor_n(M, K(y; ^{f^e}R)) == sum_{i+j=n} beta_i(M) dim_k H_j(K(y; R)), 0 <= n <= top.

    Refused when p^e is below the Loewy bound of K(y; R) (the containment
    f^e(m) in m^c would be unverified).
    """
    R = M.ring
    if y is None:
        y = cr_upper_bound(R).witness
    y = _elements(R, y)
    lb = loewy_bounds_koszul(R, y)
    c = lb.exact if lb.exact is not None else lb.upper
    q = R.p ** e
    detail = {"y": [str(f) for f in y], "loewy_bound": c, "p^e": q}
    if c is None or q < c:
        return CheckReport("tor-decomposition", "refused", detail=detail)
    T = _functored_koszul_tensor(M, e, y, top)
    betti = minimal_free_resolution(M, top, probe=False).betti
    K = koszul_complex(y, R)
    hk = {}
    for j in range(len(y) + 1):
        H = homology(K, j)
        hk[j] = k_dimension(H) if not H.is_zero else 0
    rows = []
    ok = True
    for n in range(0, top + 1):
        H = homology(T, n) if T.lo <= n <= T.hi else None
        if H is None or H.is_zero:
            lhs = 0
        elif not H.finite_length:
            lhs = None
        else:
            lhs = H.k_dimension
        rhs = sum(betti[i] * hk.get(n - i, 0) for i in range(0, n + 1))
        rows.append({"n": n, "lhs": lhs, "rhs": rhs})
        ok = ok and lhs == rhs
    detail["koszul_homology_dims"] = [hk[j] for j in sorted(hk)]
    detail["betti"] = [betti[i] for i in range(top + 1)]
    return CheckReport("tor-decomposition", "pass" if ok else "fail", rows, detail)


def verify_window_collapse(M: ModulePresentation, e: int, t: int) -> CheckReport:
    """Window vanishing at e forces Tor_{t+d}(M, K(y; ^{f^e}R)) = 0 and, when
    p^e is at least the c(R) bound, beta_{t+d}(M) = 0."""
    R = M.ring
    d = hilbert(R).dim
    prof = tor_frobenius(M, e, t, t + d)
    cells = prof.sorted_cells()
    rows = [{"i": c.i, "e": c.e, "zero": c.is_zero} for c in cells]
    if any(not c.available for c in cells):
        return CheckReport("window-collapse", "partial", rows, {"reason": "resource cap"})
    if not all(c.is_zero for c in cells):
        return CheckReport("window-collapse", "hypothesis not met", rows,
                           {"window": [t, t + d], "e": e})
    cr = cr_upper_bound(R)
    y = list(cr.witness.elements)
    T = _functored_koszul_tensor(M, e, y, t + d)
    koszul_zero = homology(T, t + d).is_zero if T.lo <= t + d <= T.hi else True
    detail = {"window": [t, t + d], "e": e, "y": [str(f) for f in y], "cr_bound": cr.value,
              "koszul_leg": koszul_zero}
    ok = koszul_zero
    if R.p ** e >= cr.value:
        betti = minimal_free_resolution(M, t + d, probe=False).betti
        detail["betti_leg"] = betti[t + d] == 0
        detail["betti_t_plus_d"] = betti[t + d]
        ok = ok and betti[t + d] == 0
    else:
        detail["betti_leg"] = None
        detail["betti_leg_skipped"] = f"p^e = {R.p ** e} < c(R) bound {cr.value}"
    return CheckReport("window-collapse", "pass" if ok else "fail", rows, detail)


# ---------------------------------------------------------------------------
# the family F_p[x,y]/(x^n y, y^2)
# ---------------------------------------------------------------------------

def loewy_gap_ring(n: int, p: int) -> QuotientRing:
    return QuotientRing(p, ["x", "y"], [f"x^{n}*y", "y^2"])


def remark_example(n: int, p: int = 2) -> dict:
    """x is a parameter with Loewy length of R/(x) equal to 2, while K(x; R)
    needs Loewy length n + 1: H_1(K(x;R)) = (x^{n-1} y)."""
    if n < 1:
        raise InputError("n must be at least 1")
    R = loewy_gap_ring(n, p)
    x = R.element("x")
    h = hilbert(R)
    col = colength(R, [x])
    K = koszul_complex([x], R)
    H1 = homology(K, 1)
    reps = [R.reduce(_entry(R, v)) for v in H1.representatives]
    expected = R.element(f"x^{n - 1}*y")
    bound = loewy_bounds_koszul(R, [x])
    return {
        "ring": str(R),
        "n": n,
        "p": p,
        "dim": h.dim,
        "x_is_sop": h.dim == 1 and col is not None,
        "colength_x": col,
        "loewy_length_R_mod_x": bound.lower,
        "h1_k_dimension": H1.k_dimension,
        "h1_generators": [str(f) for f in reps],
        "h1_generator_degree": [f.degree() for f in reps],
        "h1_generated_by_x^(n-1)y": len(reps) == 1 and _same_up_to_unit(reps[0], expected),
        "lower": bound.lower,
        "upper": bound.upper,
        "truncation_index": bound.truncation_index,
        "upper_equals_n_plus_1": bound.upper == n + 1,
    }


def _entry(R, v):
    return Polynomial(R.S, vec_component(v, 0))


def _same_up_to_unit(a, b):
    if not a or not b or a.dict.keys() != b.dict.keys():
        return False
    p = a.ring.p
    ratios = {(a.dict[m] * pow(b.dict[m], p - 2, p)) % p for m in a.dict}
    return len(ratios) == 1
