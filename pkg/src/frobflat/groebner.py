"""Buchberger's algorithm for submodules of graded free modules over F_p[x].

A module element ("vector") is a dict ``{(pos, exponents): coeff}``.  Every
homological computation in the package is reduced to three engine calls:

* :func:`buchberger` - reduced Groebner basis, optionally reporting which
  input generators were minimal (homogeneous input only);
* :class:`LinearSystem` - kernels and preimages of a matrix over S/I, via one
  Groebner basis of the graph module under a block-elimination order;
* :func:`normal_form` / :func:`submodule_equal`.

Quotient rings are never handled natively: the ideal I enters as the extra
generators ``g * e_i``.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from itertools import count

from .algebra_core import (
    PolyRing, Polynomial, mono_div, mono_divides, mono_lcm, mono_mul, _inverse,
)
from .errors import InputError, LimitError, RingMismatchError


# ---------------------------------------------------------------------------
# module term orders
# ---------------------------------------------------------------------------

class ModuleSpace:
    """The free module S^rank with generator degrees ``shifts`` and a term order.

    kind ``"top"`` compares shifted degree, then the monomial, then position
    (shift-aware, Schreyer-style); ``"pot"`` compares position first.  With
    ``top_block=b`` every term in positions ``< b`` is larger than every term
    in positions ``>= b`` (block elimination).
    """

    def __init__(self, ring: PolyRing, rank: int, shifts=None, kind: str = "top",
                 top_block: int | None = None):
        if kind not in ("top", "pot"):
            raise InputError(f"unknown module order {kind!r}")
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        if len(self.shifts) != rank:
            raise InputError("shift list does not match rank")
        self.kind = kind
        self.top_block = top_block
        self._cache = {}
        degrevlex = ring.order.kind == "degrevlex"
        sh = self.shifts
        tb = top_block

        if kind == "top" and degrevlex:
            def key(t):
                pos, m = t
                blk = 1 if (tb is not None and pos < tb) else 0
                return (blk, sum(m) + sh[pos]) + tuple(-a for a in reversed(m)) + (-pos,)
        elif kind == "top":
            def key(t):
                pos, m = t
                blk = 1 if (tb is not None and pos < tb) else 0
                return (blk,) + m + (-pos,)
        else:
            rk = ring.order.key

            def key(t):
                pos, m = t
                blk = 1 if (tb is not None and pos < tb) else 0
                return (blk, -pos) + rk(m)
        self._key = key

    def key(self, t):
        return self._key(t)

    def negkey(self, t):
        """Key whose ascending order is the descending term order (for heaps)."""
        k = self._cache.get(t)
        if k is None:
            k = tuple(-x for x in self._key(t))
            self._cache[t] = k
        return k

    def degree(self, t):
        return sum(t[1]) + self.shifts[t[0]]


# ---------------------------------------------------------------------------
# vector helpers
# ---------------------------------------------------------------------------

def vec_from_poly(d, pos=0):
    return {(pos, m): c for m, c in d.items()}


def vec_component(v, pos):
    return {m: c for (q, m), c in v.items() if q == pos}


def vec_components(v):
    out = defaultdict(dict)
    for (q, m), c in v.items():
        out[q][m] = c
    return out


def vec_add(a, b, p, scale=1):
    out = dict(a)
    for t, c in b.items():
        v = (out.get(t, 0) + scale * c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale(v, c, p):
    c %= p
    if not c:
        return {}
    return {t: (x * c) % p for t, x in v.items()}


def vec_mul_poly(v, d, p):
    out = {}
    for (q, m), c in v.items():
        for m2, c2 in d.items():
            t = (q, mono_mul(m, m2))
            x = (out.get(t, 0) + c * c2) % p
            if x:
                out[t] = x
            else:
                out.pop(t, None)
    return out


def vec_shift_pos(v, offset):
    return {(q + offset, m): c for (q, m), c in v.items()}


def vec_degrees(v, shifts):
    return {sum(m) + shifts[q] for (q, m) in v}


def vec_degree(v, shifts):
    """Degree of a homogeneous vector (None for zero, InputError if inhomogeneous)."""
    ds = vec_degrees(v, shifts)
    if not ds:
        return None
    if len(ds) > 1:
        raise InputError("vector is not homogeneous")
    return ds.pop()


def _lead(v, space):
    return min(v, key=space.negkey)


def _monic(v, space, p):
    lt = _lead(v, space)
    c = v[lt]
    if c == 1:
        return v
    return vec_scale(v, _inverse(c, p), p)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

class _Reducer:
    """Monic basis elements indexed by lead position for divisor lookup."""

    def __init__(self, space):
        self.space = space
        self.elems = []
        self.by_pos = defaultdict(list)

    def add(self, v):
        lt = _lead(v, self.space)
        self.elems.append(v)
        self.by_pos[lt[0]].append((lt[1], len(self.elems) - 1))
        return lt

    def find(self, t):
        for m, i in self.by_pos.get(t[0], ()):
            if mono_divides(m, t[1]):
                return m, self.elems[i]
        return None

    def reduce(self, v, full=True):
        space = self.space
        p = space.ring.p
        nk = space.negkey
        f = dict(v)
        heap = [(nk(t), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            hit = self.find(t)
            if hit is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            lm, g = hit
            pos = t[0]
            factor = mono_div(t[1], lm)
            for (q, m), cg in g.items():
                if q == pos and m == lm:
                    continue
                nt = (q, mono_mul(m, factor))
                old = f.get(nt)
                x = ((old or 0) - c * cg) % p
                if x:
                    f[nt] = x
                    if old is None:
                        heapq.heappush(heap, (nk(nt), nt))
                elif old is not None:
                    del f[nt]
        return rem


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

class GroebnerBasis:
    """Reduced Groebner basis of a submodule of ``space``.

    ``elements`` are monic and sorted ascending by leading term.
    """

    def __init__(self, space: ModuleSpace, elements, reduced=True):
        self.space = space
        self.elements = list(elements)
        self.reduced = reduced
        self._red = _Reducer(space)
        for v in self.elements:
            self._red.add(v)

    def __len__(self):
        return len(self.elements)

    def leads(self):
        return [_lead(v, self.space) for v in self.elements]

    def normal_form(self, v):
        return self._red.reduce(v)

    def contains(self, v):
        return not self._red.reduce(v)

    def polys(self):
        """Elements as Polynomials (rank-1 bases only)."""
        ring = self.space.ring
        return [Polynomial(ring, vec_component(v, 0)) for v in self.elements]


def spoly(f, g, space, p):
    lf, lg = _lead(f, space), _lead(g, space)
    if lf[0] != lg[0]:
        return {}
    L = mono_lcm(lf[1], lg[1])
    a = vec_mul_poly(f, {mono_div(L, lf[1]): 1}, p)
    b = vec_mul_poly(g, {mono_div(L, lg[1]): 1}, p)
    return vec_add(a, b, p, scale=-1)


def _sugar(v, space):
    return max(space.degree(t) for t in v)


def buchberger(gens, space: ModuleSpace, ambient=(), max_basis: int | None = None,
               return_flags: bool = False):
    """Reduced Groebner basis of the submodule generated by ``ambient + gens``.

    Work items (input vectors and S-pairs) are processed in order of sugar
    degree; within one degree ambient vectors come first, then S-pairs
    (smallest lcm first), then ``gens`` in input order.  For homogeneous input
    this makes the basis complete up to each degree before the generators of
    that degree are examined, so ``flags[i]`` is True exactly when ``gens[i]``
    is not in the span of ``ambient``, the lower-degree generators and the
    earlier generators of its own degree; the flagged generators form a minimal
    generating set of the image of ``gens`` modulo ``ambient``.
    """
    p = space.ring.p
    if max_basis is None:
        max_basis = space.ring.limits.max_basis
    scalar = space.rank == 1
    red = _Reducer(space)
    G, leads, sugars = red.elems, [], []
    queue = []
    seq = count()
    pairs = {}
    flags = [False] * len(gens)

    for a in ambient:
        if a:
            heapq.heappush(queue, (_sugar(a, space), 0, (), next(seq), ("v", a, None)))
    for i, g in enumerate(gens):
        if g:
            heapq.heappush(queue, (_sugar(g, space), 2, (), next(seq), ("v", g, i)))

    def add(h, sug):
        k = len(G)
        if k >= max_basis:
            raise LimitError(f"Groebner basis exceeded {max_basis} elements")
        h = _monic(h, space, p)
        lt = red.add(h)
        leads.append(lt)
        sugars.append(sug)
        pos, L = lt
        # Gebauer-Moeller: drop old pairs made redundant by the new lead.
        for pid, (i, j, lij) in list(pairs.items()):
            if leads[i][0] != pos or not mono_divides(L, lij):
                continue
            if mono_lcm(leads[i][1], L) != lij and mono_lcm(leads[j][1], L) != lij:
                del pairs[pid]
        cand = []
        for i in range(k):
            if leads[i][0] != pos:
                continue
            lij = mono_lcm(leads[i][1], L)
            coprime = scalar and lij == mono_mul(leads[i][1], L)
            cand.append((i, lij, coprime))
        keep = []
        for i, lij, coprime in cand:
            dominated = False
            for j, ljk, _ in cand:
                if ljk != lij and mono_divides(ljk, lij):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, lij, coprime))
        by_lcm = {}
        for i, lij, coprime in keep:
            slot = by_lcm.setdefault(lij, [])
            slot.append((i, coprime))
        for lij, members in by_lcm.items():
            if any(c for _, c in members):
                continue
            i = members[0][0]
            sug = max(sugars[i] + sum(mono_div(lij, leads[i][1])), sug + sum(mono_div(lij, L)))
            pid = next(seq)
            pairs[pid] = (i, k, lij)
            heapq.heappush(queue, (sug, 1, space.negkey((pos, lij)), pid, ("p", pid, None)))

    while queue:
        sug, _, _, _, (what, payload, idx) = heapq.heappop(queue)
        if what == "p":
            pr = pairs.pop(payload, None)
            if pr is None:
                continue
            i, j, _ = pr
            h = red.reduce(spoly(G[i], G[j], space, p))
        else:
            h = red.reduce(payload)
            if h:
                sug = max(sug, _sugar(h, space))
        if h:
            if idx is not None:
                flags[idx] = True
            add(h, sug)

    basis = _reduce_basis(G, space, p)
    gb = GroebnerBasis(space, basis, reduced=True)
    if return_flags:
        return gb, flags
    return gb


def _reduce_basis(G, space, p):
    leads = [_lead(v, space) for v in G]
    keep = []
    for i, (pos, m) in enumerate(leads):
        redundant = False
        for j, (q, m2) in enumerate(leads):
            if j != i and q == pos and mono_divides(m2, m) and (m2 != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    out = []
    for i in keep:
        others = _Reducer(space)
        for j in keep:
            if j != i:
                others.add(G[j])
        lt = leads[i]
        tail = {t: c for t, c in G[i].items() if t != lt}
        v = vec_add(others.reduce(tail), {lt: G[i][lt]}, p)
        out.append(_monic(v, space, p))
    out.sort(key=lambda v: space.key(_lead(v, space)))
    return out


# ---------------------------------------------------------------------------
# convenience: ideals and submodules
# ---------------------------------------------------------------------------

def ideal_basis(polys, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of an ideal given as Polynomials."""
    polys = list(polys)
    if ring is None:
        if not polys:
            raise InputError("ring required for an empty generator list")
        ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise RingMismatchError("generators live in different rings")
    space = ModuleSpace(ring, 1)
    return buchberger([vec_from_poly(f.dict) for f in polys], space)


def normal_form(v, B: GroebnerBasis):
    if isinstance(v, Polynomial):
        if v.ring != B.space.ring:
            raise RingMismatchError("polynomial and basis live in different rings")
        return Polynomial(v.ring, vec_component(B.normal_form(vec_from_poly(v.dict)), 0))
    return B.normal_form(v)


class SubmoduleData:
    """A submodule of a free module S^rank (or of R^rank when ``ideal`` is given)."""

    def __init__(self, space: ModuleSpace, generators, ideal=()):
        self.space = space
        self.generators = [dict(g) for g in generators]
        self.ideal = list(ideal)
        self._basis = None

    def _ambient(self):
        return [vec_from_poly(g, i) for g in self.ideal for i in range(self.space.rank)]

    @property
    def basis(self) -> GroebnerBasis:
        if self._basis is None:
            self._basis = buchberger(self.generators, self.space, ambient=self._ambient())
        return self._basis

    def contains(self, v):
        return self.basis.contains(v)

    def is_zero(self):
        red = IdealReducer(self.space.ring, self.ideal)
        return not any(red.reduce_vec(g) for g in self.generators)


def submodule_equal(U: SubmoduleData, V: SubmoduleData) -> bool:
    if U.space.rank != V.space.rank or U.space.ring != V.space.ring:
        raise RingMismatchError("submodules live in different ambient modules")
    return (all(V.contains(g) for g in U.generators)
            and all(U.contains(g) for g in V.generators)
            and all(V.contains(g) for g in U._ambient())
            and all(U.contains(g) for g in V._ambient()))


# ---------------------------------------------------------------------------
# linear algebra over S/I
# ---------------------------------------------------------------------------

class LinearSystem:
    """Kernel and preimages of ``A: R^a -> R^b / N`` with R = S/I.

    ``cols`` are the a columns of A (vectors in positions 0..b-1), ``modulo``
    extra vectors spanning N.  One Groebner basis of the graph module
    ``{(A c, c)} + (N + I S^b) x 0 + 0 x I S^a`` inside S^b (+) S^a under the
    elimination order with S^b on top gives both answers:

    * elements whose lead lies in S^a generate ``{c : A c in N + I S^b}``;
    * ``(z, 0)`` reduces to ``(0, -c)`` exactly when ``A c = z`` modulo N.
    """

    def __init__(self, ring: PolyRing, cols, nrows, tgt_shifts, src_shifts, ideal=(),
                 modulo=(), kind="top"):
        self.ring = ring
        self.a = len(cols)
        self.b = nrows
        p = ring.p
        shifts = tuple(tgt_shifts) + tuple(src_shifts)
        self.space = ModuleSpace(ring, self.b + self.a, shifts, kind=kind, top_block=self.b)
        gens = []
        for j, col in enumerate(cols):
            v = dict(col)
            v[(self.b + j, ring.one_monomial())] = 1
            gens.append(v)
        ambient = [dict(v) for v in modulo if v]
        for g in ideal:
            for i in range(self.b + self.a):
                ambient.append(vec_from_poly(g, i))
        self.gb = buchberger(gens, self.space, ambient=ambient)
        self._p = p
        self._ideal = IdealReducer(ring, ideal)

    def kernel(self):
        """Generators (vectors in positions 0..a-1) of the kernel, trivial ones dropped."""
        out = []
        for v in self.gb.elements:
            lt = _lead(v, self.space)
            if lt[0] < self.b:
                continue
            w = self._ideal.reduce_vec(vec_shift_pos(v, -self.b))
            if w:
                out.append(w)
        return out

    def solve(self, z):
        """Some c with A c = z modulo N + I, or None."""
        r = self.gb.normal_form(z)
        if any(q < self.b for (q, _) in r):
            return None
        return self._ideal.reduce_vec(vec_scale(vec_shift_pos(r, -self.b), -1, self._p))


class IdealReducer:
    """Entrywise normal forms modulo an ideal given by its Groebner basis."""

    def __init__(self, ring: PolyRing, ideal_gb=()):
        self.ring = ring
        self._red = _Reducer(ModuleSpace(ring, 1))
        for g in ideal_gb:
            if g:
                self._red.add(vec_from_poly(g, 0))
        self._cache = {}

    def reduce_poly(self, d):
        if not self._red.elems or not d:
            return dict(d)
        return vec_component(self._red.reduce(vec_from_poly(d, 0)), 0)

    def reduce_vec(self, v):
        if not self._red.elems:
            return dict(v)
        out = {}
        for q, d in vec_components(v).items():
            for m, c in self.reduce_poly(d).items():
                out[(q, m)] = c
        return out


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Sparse matrix over S stored as a tuple of column vectors.

    Column ``j`` is a vector ``{(row, exponents): coeff}``.
    """

    __slots__ = ("ring", "nrows", "cols")

    def __init__(self, ring: PolyRing, nrows: int, cols):
        self.ring = ring
        self.nrows = nrows
        self.cols = tuple(dict(c) for c in cols)

    @property
    def ncols(self):
        return len(self.cols)

    @classmethod
    def from_rows(cls, ring, rows, ncols=None):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise InputError("ragged matrix")
            for j, f in enumerate(r):
                if isinstance(f, Polynomial):
                    if f.ring != ring:
                        raise RingMismatchError("matrix entry from another ring")
                    f = f.dict
                for m, c in f.items():
                    cols[j][(i, m)] = c
        return cls(ring, nrows, cols)

    @classmethod
    def zero(cls, ring, nrows, ncols):
        return cls(ring, nrows, [{} for _ in range(ncols)])

    @classmethod
    def identity(cls, ring, n):
        one = ring.one_monomial()
        return cls(ring, n, [{(i, one): 1} for i in range(n)])

    def entry(self, i, j) -> Polynomial:
        return Polynomial(self.ring, vec_component(self.cols[j], i))

    def rows(self):
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def apply(self, v):
        """Matrix times a vector (positions index the columns)."""
        p = self.ring.p
        out = {}
        for (j, m), c in v.items():
            out = vec_add(out, vec_mul_poly(self.cols[j], {m: c}, p), p)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise InputError("matrix shapes do not compose")
        return Matrix(self.ring, self.nrows, [self.apply(c) for c in other.cols])

    def map_entries(self, fn):
        """Apply ``fn`` to every entry's polynomial dict."""
        out = []
        for col in self.cols:
            comps = vec_components(col)
            v = {}
            for i, d in comps.items():
                for m, c in fn(d).items():
                    v[(i, m)] = c
            out.append(v)
        return Matrix(self.ring, self.nrows, out)

    def is_zero(self):
        return not any(self.cols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.cols == other.cols)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"
