"""Graded modules, complexes of graded modules, homology and resolutions.

Conventions: complexes are homologically indexed, ``d_i: C_i -> C_{i-1}``.
A term of a complex is a :class:`ModulePresentation` ``F/N`` with F = R^b;
differentials are matrices between the free covers that carry N into N.
Free complexes are the special case N = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .algebra_core import Polynomial
from .errors import ConsistencyError, InputError, PreconditionError, RingMismatchError
from .groebner import (
    LinearSystem, Matrix, ModuleSpace, buchberger, vec_add, vec_degree,
    vec_from_poly, vec_mul_poly, vec_scale, vec_shift_pos,
)
from .hilbert import module_numerator, pole_order_and_multiplicity, standard_monomial_counts
from .rings import QuotientRing


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

class ModulePresentation:
    """coker(R^a -> R^b): ``rank`` generators of degrees ``shifts``, relation columns."""

    def __init__(self, ring: QuotientRing, shifts, relations=None):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)
        self.rank = len(self.shifts)
        if relations is None:
            relations = Matrix.zero(ring.S, self.rank, 0)
        elif not isinstance(relations, Matrix):
            relations = Matrix(ring.S, self.rank, relations)
        if relations.nrows != self.rank:
            raise InputError("relation matrix must have one row per generator")
        self.relations = Matrix(ring.S, self.rank, [c for c in relations.cols if c])
        for col in self.relations.cols:
            vec_degree(col, self.shifts)
        self._lead_data = None
        self._gb = None

    # constructors -------------------------------------------------------
    @classmethod
    def free(cls, ring, shifts):
        return cls(ring, shifts)

    @classmethod
    def cyclic(cls, ring: QuotientRing, ideal, shift=0):
        """R/J (generator in degree ``shift``) for J given by polynomials or strings."""
        cols = []
        for g in ideal:
            g = ring.element(g)
            if not g.is_homogeneous():
                raise InputError(f"{g} is not homogeneous")
            cols.append(vec_from_poly(g.dict, 0))
        return cls(ring, [shift], cols)

    @classmethod
    def residue_field(cls, ring):
        return cls.cyclic(ring, ring.gens())

    @classmethod
    def from_rows(cls, ring, shifts, rows):
        rows = [[ring.element(f) for f in r] for r in rows]
        return cls(ring, shifts, Matrix.from_rows(ring.S, rows, len(rows[0]) if rows else 0))

    # data ---------------------------------------------------------------
    def relation_vectors(self):
        return list(self.relations.cols)

    def ambient_vectors(self):
        """Relations together with I*e_j."""
        return self.relation_vectors() + [
            vec_from_poly(g, j) for g in self.ring.ideal_dicts() for j in range(self.rank)]

    def lead_data(self):
        """(shift, leading monomials) per generator, from a Groebner basis of N + I*F."""
        if self._lead_data is None:
            gb = self.groebner_basis()
            per = {j: [] for j in range(self.rank)}
            for pos, m in gb.leads():
                per[pos].append(m)
            self._lead_data = [(self.shifts[j], per[j]) for j in range(self.rank)]
        return self._lead_data

    def hilbert_numerator(self):
        return module_numerator(self.lead_data(), self.ring.n)

    def is_zero(self):
        return all(any(sum(m) == 0 for m in gens) for _, gens in self.lead_data())

    def contains(self, v):
        """Is the vector v of the free cover zero in the module?"""
        if not self.relations.ncols:
            return not self.ring.reducer.reduce_vec(v)
        return self.groebner_basis().contains(v)

    def groebner_basis(self):
        """Groebner basis of N + I*F in the free cover (cached)."""
        if self._gb is None:
            space = ModuleSpace(self.ring.S, self.rank, self.shifts)
            self._gb = buchberger([], space, ambient=self.ambient_vectors())
        return self._gb

    def shifted(self, k):
        return ModulePresentation(self.ring, [s + k for s in self.shifts], self.relations)

    def __repr__(self):
        return f"ModulePresentation(rank={self.rank}, shifts={self.shifts}, relations={self.relations.ncols})"


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------

class Complex:
    """Bounded complex ``C_lo <- ... <- C_hi`` of presented graded modules."""

    def __init__(self, ring: QuotientRing, lo: int, terms, diffs=None, check=True):
        self.ring = ring
        self.lo = lo
        self.terms = list(terms)
        diffs = dict(diffs or {})
        for i in range(lo + 1, self.hi + 1):
            src, tgt = self.term(i), self.term(i - 1)
            d = diffs.get(i)
            if d is None:
                d = Matrix.zero(ring.S, tgt.rank, src.rank)
            if d.nrows != tgt.rank or d.ncols != src.rank:
                raise InputError(f"differential d_{i} has shape {d.nrows}x{d.ncols}, "
                                 f"expected {tgt.rank}x{src.rank}")
            diffs[i] = d
        self.diffs = {i: diffs[i] for i in range(lo + 1, self.hi + 1)}
        if check:
            self.check()

    @classmethod
    def free(cls, ring, lo, shifts, diffs=None, check=True):
        return cls(ring, lo, [ModulePresentation.free(ring, s) for s in shifts], diffs, check)

    @classmethod
    def from_module(cls, M: ModulePresentation, degree=0):
        return cls(M.ring, degree, [M])

    @property
    def hi(self):
        return self.lo + len(self.terms) - 1

    @property
    def is_free(self):
        return all(t.relations.ncols == 0 for t in self.terms)

    def term(self, i) -> ModulePresentation:
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return ModulePresentation.free(self.ring, [])

    def rank(self, i):
        return self.term(i).rank

    def shifts(self, i):
        return self.term(i).shifts

    def d(self, i) -> Matrix:
        if i in self.diffs:
            return self.diffs[i]
        return Matrix.zero(self.ring.S, self.rank(i - 1), self.rank(i))

    def check(self):
        """Homogeneity, compatibility with relations and d o d = 0 (modulo I and N)."""
        R = self.ring
        for i, d in self.diffs.items():
            src, tgt = self.term(i), self.term(i - 1)
            for j, col in enumerate(d.cols):
                deg = vec_degree(col, tgt.shifts)
                if deg is not None and deg != src.shifts[j]:
                    raise InputError(f"d_{i} column {j} has degree {deg}, generator has {src.shifts[j]}")
            for col in src.relations.cols:
                if not tgt.contains(d.apply(col)):
                    raise InputError(f"d_{i} does not respect the relations of C_{i}")
        for i in range(self.lo + 2, self.hi + 1):
            dd = self.d(i - 1) @ self.d(i)
            tgt = self.term(i - 2)
            for col in dd.cols:
                if col and not tgt.contains(R.reducer.reduce_vec(col)):
                    raise ConsistencyError(f"d_{i - 1} o d_{i} != 0")
        return True

    def __repr__(self):
        ranks = [t.rank for t in self.terms]
        return f"Complex(lo={self.lo}, ranks={ranks})"


# ---------------------------------------------------------------------------
# kernels and subquotients
# ---------------------------------------------------------------------------

def _ideal_vectors(R, rank, offset=0):
    return [vec_from_poly(g, j + offset) for g in R.ideal_dicts() for j in range(rank)]


def minimal_subset(R: QuotientRing, gens, shifts, modulo=()):
    """Indices of a minimal generating subset of span(gens) modulo span(modulo) + I."""
    if not gens:
        return []
    space = ModuleSpace(R.S, len(shifts), shifts)
    _, flags = buchberger(list(gens), space,
                          ambient=list(modulo) + _ideal_vectors(R, len(shifts)),
                          return_flags=True)
    return [i for i, f in enumerate(flags) if f]


def kernel(R: QuotientRing, A: Matrix, tgt_shifts, src_shifts, modulo=()):
    """Generators of {c in R^a : A c in span(modulo)} (not minimized)."""
    if A.ncols == 0:
        return []
    system = LinearSystem(R.S, A.cols, A.nrows, tgt_shifts, src_shifts,
                          ideal=R.ideal_dicts(), modulo=modulo)
    return system.kernel()


def subquotient(R: QuotientRing, gens, shifts, modulo=()):
    """Present span(gens)/(span(gens) cap span(modulo)) on minimal generators.

    Returns (presentation, representatives) where representatives are the
    kept generators as vectors of R^rank.
    """
    keep = minimal_subset(R, gens, shifts, modulo)
    reps = [R.reducer.reduce_vec(gens[i]) for i in keep]
    if not reps:
        return ModulePresentation.free(R, []), []
    degs = [vec_degree(v, shifts) for v in reps]
    K = Matrix(R.S, len(shifts), reps)
    rels = kernel(R, K, shifts, degs, modulo)
    keep_rels = minimal_subset(R, rels, degs)
    rel_cols = [rels[i] for i in keep_rels]
    return ModulePresentation(R, degs, rel_cols), reps


@dataclass
class HomologyModule:
    presentation: ModulePresentation
    representatives: list
    degree: int
    finite_length: bool = False
    k_dimension: int | None = None

    @property
    def is_zero(self):
        return self.presentation.rank == 0


def _finish_homology(H: ModulePresentation, reps, i):
    if H.rank == 0:
        return HomologyModule(H, reps, i, True, 0)
    dim, _ = pole_order_and_multiplicity(H.hilbert_numerator(), H.ring.n)
    if dim <= 0:
        return HomologyModule(H, reps, i, True, k_dimension(H))
    return HomologyModule(H, reps, i, False, None)


def homology(C: Complex, i: int) -> HomologyModule:
    """H_i(C) = ker(d_i) / im(d_{i+1}) as a minimal presentation."""
    R = C.ring
    if not (C.lo <= i <= C.hi):
        raise PreconditionError(f"homological degree {i} outside {C.lo}..{C.hi}")
    Ci = C.term(i)
    one = R.S.one_monomial()
    basis = [{(j, one): 1} for j in range(Ci.rank)]
    d = C.d(i)
    if i > C.lo and not d.is_zero():
        cycles = kernel(R, d, C.shifts(i - 1), Ci.shifts, C.term(i - 1).relation_vectors())
    else:
        cycles = basis
    boundaries = [c for c in C.d(i + 1).cols if c] + Ci.relation_vectors()
    H, reps = subquotient(R, cycles, Ci.shifts, boundaries)
    return _finish_homology(H, reps, i)


def sup_homology(C) -> float:
    """Largest i with H_i(C) != 0, or -inf."""
    if isinstance(C, ModulePresentation):
        return -math.inf if C.is_zero() else 0
    for i in range(C.hi, C.lo - 1, -1):
        if not homology(C, i).is_zero:
            return i
    return -math.inf


def k_dimension(M) -> int:
    """Total F_p-dimension of a finite-length module (standard monomial count)."""
    if isinstance(M, HomologyModule):
        M = M.presentation
    return sum(standard_monomial_counts(M.lead_data(), M.ring.n).values())


# ---------------------------------------------------------------------------
# Koszul complexes and tensor products
# ---------------------------------------------------------------------------

def koszul_complex(y, M) -> Complex:
    """K(y; M) for homogeneous y in R; M a ModulePresentation or the ring itself."""
    if isinstance(M, QuotientRing):
        M = ModulePresentation.free(M, [0])
    elif not isinstance(M, ModulePresentation):
        raise InputError("koszul_complex needs a ring or a ModulePresentation")
    R = M.ring
    ys = []
    for f in y:
        f = R.element(f) if not isinstance(f, Polynomial) else f
        if f.ring != R.S:
            raise RingMismatchError("sequence element from another ring")
        if not f or not f.is_homogeneous():
            raise InputError(f"Koszul sequence element {f} must be nonzero and homogeneous")
        ys.append(f)
    r = len(ys)
    degs = [f.degree() for f in ys]
    subsets = [list(combinations(range(r), i)) for i in range(r + 1)]
    b = M.rank
    p = R.p
    terms = []
    for i in range(r + 1):
        shifts = []
        rels = []
        for k, S in enumerate(subsets[i]):
            base = sum(degs[s] for s in S)
            shifts.extend(base + sh for sh in M.shifts)
            rels.extend(vec_shift_pos(col, k * b) for col in M.relation_vectors())
        terms.append(ModulePresentation(R, shifts, rels))
    diffs = {}
    for i in range(1, r + 1):
        index = {S: k for k, S in enumerate(subsets[i - 1])}
        cols = []
        for S in subsets[i]:
            for j in range(b):
                v = {}
                for idx, s in enumerate(S):
                    T = S[:idx] + S[idx + 1:]
                    sign = 1 if idx % 2 == 0 else -1
                    term = vec_scale(vec_from_poly(ys[s].dict, index[T] * b + j), sign, p)
                    v = vec_add(v, term, p)
                cols.append(v)
        diffs[i] = Matrix(R.S, terms[i - 1].rank, cols)
    return Complex(R, 0, terms, diffs)


def tensor_free_complexes(C: Complex, D: Complex) -> Complex:
    """Total complex of C (x) D for free complexes over the same ring."""
    if not (C.is_free and D.is_free):
        raise InputError("tensor product implemented for free complexes only")
    R = C.ring
    p = R.p
    lo, hi = C.lo + D.lo, C.hi + D.hi
    blocks = {}
    shifts = {}
    for n in range(lo, hi + 1):
        off = 0
        blocks[n] = {}
        sh = []
        for i in range(C.lo, C.hi + 1):
            j = n - i
            if not (D.lo <= j <= D.hi):
                continue
            blocks[n][i] = off
            for a in C.shifts(i):
                for bb in D.shifts(j):
                    sh.append(a + bb)
            off += C.rank(i) * D.rank(j)
        shifts[n] = sh
    diffs = {}
    for n in range(lo + 1, hi + 1):
        cols = []
        for i, off in blocks[n].items():
            j = n - i
            rc, rd = C.rank(i), D.rank(j)
            for a in range(rc):
                for bb in range(rd):
                    v = {}
                    if i - 1 >= C.lo and (i - 1) in blocks[n - 1]:
                        o2 = blocks[n - 1][i - 1]
                        rd2 = D.rank(j)
                        for (row, m), c in C.d(i).cols[a].items():
                            v = vec_add(v, {(o2 + row * rd2 + bb, m): c}, p)
                    if j - 1 >= D.lo and i in blocks[n - 1]:
                        o2 = blocks[n - 1][i]
                        rd2 = D.rank(j - 1)
                        sign = 1 if i % 2 == 0 else -1
                        for (row, m), c in D.d(j).cols[bb].items():
                            v = vec_add(v, {(o2 + a * rd2 + row, m): sign * c}, p)
                    cols.append(v)
        diffs[n] = Matrix(R.S, len(shifts[n - 1]), cols)
    return Complex.free(R, lo, [shifts[n] for n in range(lo, hi + 1)], diffs)


# ---------------------------------------------------------------------------
# resolutions
# ---------------------------------------------------------------------------

@dataclass
class BettiTable:
    """betti[i] = rank F_i; graded[(i, degree)] = number of generators of that degree."""

    betti: dict
    graded: dict = field(default_factory=dict)

    def __getitem__(self, i):
        return self.betti.get(i, 0)

    def as_list(self):
        if not self.betti:
            return []
        return [self.betti.get(i, 0) for i in range(max(self.betti) + 1)]

    def rows(self):
        """[[i, degree, count], ...] sorted by homological then internal degree."""
        return [[i, d, c] for (i, d), c in sorted(self.graded.items())]

    @classmethod
    def of(cls, F: Complex):
        betti, graded = {}, {}
        for i in range(F.lo, F.hi + 1):
            betti[i] = F.rank(i)
            for s in F.shifts(i):
                graded[(i, s)] = graded.get((i, s), 0) + 1
        return cls(betti, graded)


@dataclass
class Resolution:
    complex: Complex
    betti: BettiTable
    complete: bool  # True when the resolution reached 0 within the requested length

    @property
    def length(self):
        return self.complex.hi


def _is_unit_entry(col, row):
    return any(q == row and sum(m) == 0 for (q, m) in col)


def prune_presentation(M: ModulePresentation) -> ModulePresentation:
    """Eliminate generators killed by a relation with a unit entry.

    Scan order: lowest row first, then lowest column.  The result has all
    relation entries in the maximal ideal, i.e. minimal generators.
    """
    R = M.ring
    p = R.p
    shifts = list(M.shifts)
    cols = [R.reducer.reduce_vec(c) for c in M.relation_vectors()]
    cols = [c for c in cols if c]
    while True:
        hit = None
        for r in range(len(shifts)):
            for j, col in enumerate(cols):
                if _is_unit_entry(col, r):
                    hit = (r, j)
                    break
            if hit:
                break
        if hit is None:
            break
        r, j = hit
        pivot = cols[j]
        u = next(c for (q, m), c in pivot.items() if q == r and sum(m) == 0)
        uinv = pow(u, p - 2, p)
        new_cols = []
        for c_idx, col in enumerate(cols):
            if c_idx == j:
                continue
            coef = {m: c for (q, m), c in col.items() if q == r}
            if coef:
                col = vec_add(col, vec_mul_poly(pivot, {m: (c * uinv) % p for m, c in coef.items()}, p),
                              p, scale=-1)
            new_cols.append(col)
        # drop row r
        remap = [q for q in range(len(shifts)) if q != r]
        index = {q: k for k, q in enumerate(remap)}
        cols = []
        for col in new_cols:
            v = {(index[q], m): c for (q, m), c in col.items() if q != r}
            v = R.reducer.reduce_vec(v)
            if v:
                cols.append(v)
        shifts = [shifts[q] for q in remap]
    return ModulePresentation(R, shifts, cols)


def _resolve(M: ModulePresentation, length: int, prune: bool, probe: bool = True) -> Resolution:
    R = M.ring
    if prune:
        M = prune_presentation(M)
    shifts = [M.shifts]
    rels = M.relation_vectors()
    cols = [rels[i] for i in minimal_subset(R, rels, M.shifts)]
    diffs = {}
    k = 1
    while cols and k <= length:
        degs = [vec_degree(c, shifts[-1]) for c in cols]
        d = Matrix(R.S, len(shifts[-1]), cols)
        diffs[k] = d
        shifts.append(degs)
        if k == length and not probe:
            break
        ker = kernel(R, d, shifts[-2], degs)
        cols = [ker[i] for i in minimal_subset(R, ker, degs)]
        k += 1
    complete = not cols if (probe or k <= length) else False
    F = Complex.free(R, 0, shifts, diffs, check=False)
    return Resolution(F, BettiTable.of(F), complete)


def minimal_free_resolution(M: ModulePresentation, length: int, probe: bool = True) -> Resolution:
    """F_0 <- F_1 <- ... <- F_length, minimal, with H_0 = M.

    With ``probe`` one more kernel is computed so that ``complete`` tells
    whether the resolution stops within ``length``.
    """
    if length < 0:
        raise InputError("resolution length must be non-negative")
    res = _resolve(M, length, prune=True, probe=probe)
    assert_minimal(res.complex)
    return res


def assert_minimal(F: Complex):
    for i, d in F.diffs.items():
        for col in d.cols:
            for (q, m) in col:
                if sum(m) == 0:
                    raise ConsistencyError(f"unit entry in d_{i} of a minimal resolution")


def betti_numbers(M: ModulePresentation, length: int) -> BettiTable:
    return minimal_free_resolution(M, length).betti


def semifree_resolution(C, length: int) -> Complex:
    """A complex of graded free modules quasi-isomorphic to C in degrees <= lo + length.

    Each term C_j = F_j/N_j is resolved (column Q_{j,*}); the total complex
    carries the vertical differentials, lifts of the differentials of C and the
    higher correction maps Q_{j,k} -> Q_{j-l,k+l-1} needed for D o D = 0, each
    found by lifting through the exact columns.
    """
    if isinstance(C, ModulePresentation):
        return minimal_free_resolution(C, length, probe=False).complex
    if C.is_free:
        return C
    R = C.ring
    p = R.p
    lo, hi = C.lo, C.hi
    top = lo + length + 1
    cols = {}
    for j in range(lo, hi + 1):
        res = _resolve(C.term(j), max(top - j, 0), prune=False, probe=False)
        cols[j] = res.complex
    def Q(j, k):
        return cols[j].shifts(k) if (lo <= j <= hi and 0 <= k <= cols[j].hi) else ()

    systems = {}

    def lift(j, k, z):
        """Solve dv_{(j,k)} x = z with dv: Q_{j,k} -> Q_{j,k-1}."""
        if not z:
            return {}
        key = (j, k)
        if key not in systems:
            d = cols[j].d(k) if k <= cols[j].hi else Matrix.zero(R.S, len(Q(j, k - 1)), 0)
            if d.ncols == 0:
                systems[key] = None
            else:
                systems[key] = LinearSystem(R.S, d.cols, d.nrows, Q(j, k - 1), Q(j, k),
                                            ideal=R.ideal_dicts())
        sys_ = systems[key]
        x = None if sys_ is None else sys_.solve(z)
        if x is None:
            raise ConsistencyError(f"lifting obstruction in column {j}, level {k}")
        return x

    # D[(j, k)][l] : Matrix Q_{j,k} -> Q_{j-l, k+l-1}
    D = {}

    def apply(j, k, l, v):
        if not v:
            return {}
        return D[(j, k)][l].apply(v)

    for m in range(lo, top + 1):
        for j in range(lo, hi + 1):
            k = m - j
            if k < 0 or k > cols[j].hi:
                continue
            rank = len(Q(j, k))
            one = R.S.one_monomial()
            comps = {}
            if k >= 1:
                comps[0] = cols[j].d(k)
            for l in range(1, j - lo + 1):
                tj, tk = j - l, k + l - 1
                if tk > cols[tj].hi:
                    comps[l] = Matrix.zero(R.S, 0, rank)
                    continue
                if l == 1 and k == 0:
                    comps[1] = C.d(j)
                    continue
                out = []
                for g in range(rank):
                    e = {(g, one): 1}
                    rhs = {}
                    # sum over a + b = l with b < l of D^{(a)} D^{(b)} e
                    for b in range(0, l):
                        a = l - b
                        if b == 0:
                            if k < 1:
                                continue
                            v = comps[0].apply(e)
                            sj, sk = j, k - 1
                        else:
                            v = comps[b].apply(e)
                            sj, sk = j - b, k + b - 1
                        if not v:
                            continue
                        if sk > cols[sj].hi or a not in D.get((sj, sk), {}):
                            continue
                        rhs = vec_add(rhs, apply(sj, sk, a, v), p)
                    rhs = R.reducer.reduce_vec(rhs)
                    x = lift(tj, tk, vec_scale(rhs, -1, p)) if rhs else {}
                    out.append(x)
                comps[l] = Matrix(R.S, len(Q(tj, tk)), out)
            D[(j, k)] = comps
    # assemble the total complex
    blocks, shifts = {}, {}
    for m in range(lo, top + 1):
        off = 0
        blocks[m] = {}
        sh = []
        for j in range(lo, hi + 1):
            k = m - j
            if k < 0 or k > cols[j].hi:
                continue
            blocks[m][j] = off
            sh.extend(Q(j, k))
            off += len(Q(j, k))
        shifts[m] = sh
    diffs = {}
    for m in range(lo + 1, top + 1):
        cols_out = []
        for j, off in blocks[m].items():
            k = m - j
            comps = D[(j, k)]
            for g in range(len(Q(j, k))):
                v = {}
                for l, mat in comps.items():
                    tj = j - l
                    if tj not in blocks[m - 1] or mat.nrows == 0:
                        continue
                    v = vec_add(v, vec_shift_pos(mat.cols[g], blocks[m - 1][tj]), p)
                cols_out.append(R.reducer.reduce_vec(v))
        diffs[m] = Matrix(R.S, len(shifts[m - 1]), cols_out)
    last = lo + length
    return Complex.free(R, lo, [shifts[m] for m in range(lo, last + 1)],
                        {m: diffs[m] for m in range(lo + 1, last + 1)})
