"""Degree-by-degree homology over S/I by plain F_p linear algebra.

Independent of the Groebner engine: R_d is S_d modulo the span of
(generator * monomial) products, and ranks come from Gaussian elimination.
"""
from itertools import combinations_with_replacement


def monomials(n, d):
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return out


def rank_mod_p(rows, p):
    """Rank of a list of sparse rows {column: value}."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            col = min(row)
            if col not in pivots:
                inv = pow(row[col], p - 2, p)
                pivots[col] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            piv = pivots[col]
            c = row[col]
            for k, v in piv.items():
                x = (row.get(k, 0) - c * v) % p
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
    return rank


def _mul(m, a):
    return tuple(x + y for x, y in zip(m, a))


class GradedFree:
    """F = sum_j S(-shift_j) in one internal degree d, coordinates (j, monomial)."""

    def __init__(self, n, shifts, d):
        self.index = {}
        for j, s in enumerate(shifts):
            for m in monomials(n, d - s):
                self.index[(j, m)] = len(self.index)

    def __len__(self):
        return len(self.index)


def ideal_part(n, ideal, shifts, d):
    """Vectors spanning I*F in degree d (as sparse rows in F's coordinates)."""
    F = GradedFree(n, shifts, d)
    rows = []
    for j, s in enumerate(shifts):
        for g in ideal:
            deg = sum(next(iter(g)))
            for m in monomials(n, d - s - deg):
                rows.append({F.index[(j, _mul(m, a))]: c for a, c in g.items()})
    return rows


def image_rows(n, cols, src_shifts, tgt_shifts, d):
    """Images of the degree-d basis of the source under a matrix given by columns."""
    T = GradedFree(n, tgt_shifts, d)
    rows = []
    for j, s in enumerate(src_shifts):
        for m in monomials(n, d - s):
            row = {}
            for (i, a), c in cols[j].items():
                k = T.index[(i, _mul(m, a))]
                row[k] = row.get(k, 0) + c
            rows.append(row)
    return rows


def homology_dim(C, i, d):
    """dim_k H_i(C)_d for a complex of free modules over R = S/I."""
    R = C.ring
    n, p = R.n, R.p
    ideal = R.ideal_dicts()
    Fi = C.shifts(i)
    dim_Fi = len(GradedFree(n, Fi, d))
    if dim_Fi == 0:
        return 0
    # cycles: dim F_i,d - rank(F_i,d -> F_{i-1,d} / I F_{i-1,d})
    if i > C.lo:
        prev = C.shifts(i - 1)
        ip = ideal_part(n, ideal, prev, d)
        im = image_rows(n, C.d(i).cols, Fi, prev, d)
        cyc = dim_Fi - (rank_mod_p(ip + im, p) - rank_mod_p(ip, p))
    else:
        cyc = dim_Fi
    bounds = ideal_part(n, ideal, Fi, d)
    if i < C.hi:
        bounds = bounds + image_rows(n, C.d(i + 1).cols, C.shifts(i + 1), Fi, d)
    return cyc - rank_mod_p(bounds, p)


def total_homology_dim(C, i, top):
    """sum of dim_k H_i(C)_d over min shift <= d <= top."""
    lo = min(C.shifts(i), default=0)
    return sum(homology_dim(C, i, d) for d in range(lo, top + 1))
