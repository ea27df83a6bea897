"""Hilbert series of graded modules from their leading-term data.

For M = S^b / N (N including I*S^b) with generator degrees ``shifts``,
H_M(t) = sum_j t^{shift_j} * H_{S/J_j}(t) where J_j is the monomial ideal of
leading terms in position j.  Numerators are Laurent polynomials stored as
``{degree: coefficient}``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb

from .algebra_core import mono_divides
from .errors import PreconditionError


def poly_t_add(a, b, scale=1):
    out = dict(a)
    for d, c in b.items():
        v = out.get(d, 0) + scale * c
        if v:
            out[d] = v
        else:
            out.pop(d, None)
    return out


def poly_t_shift(a, k):
    return {d + k: c for d, c in a.items()}


def minimalize_monomials(gens):
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out = []
    for m in gens:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(out)


@lru_cache(maxsize=4096)
def _numerator(gens, n):
    # H_{S/J} = N(J) / (1-t)^n; N(J) = N(J') - t^deg(m) N(J' : m)
    if not gens:
        return {0: 1}
    if all(sum(1 for a in g if a) == 1 for g in gens):
        # pure powers in distinct variables: product of (1 - t^a)
        out = {0: 1}
        for g in gens:
            a = sum(g)
            nxt = {}
            for d, c in out.items():
                nxt[d] = nxt.get(d, 0) + c
                nxt[d + a] = nxt.get(d + a, 0) - c
            out = {d: c for d, c in nxt.items() if c}
        return out
    *rest, m = gens
    rest = tuple(rest)
    colon = minimalize_monomials(
        tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    left = _numerator(rest, n)
    right = _numerator(colon, n)
    return poly_t_add(left, poly_t_shift(right, sum(m)), scale=-1)


def monomial_ideal_numerator(gens, n):
    """Numerator of the Hilbert series of S/J, J generated by monomials ``gens``."""
    return dict(_numerator(minimalize_monomials(tuple(tuple(g) for g in gens)), n))


def module_numerator(lead_data, n):
    """``lead_data``: list of (shift, monomial generators) per free position."""
    out = {}
    for shift, gens in lead_data:
        out = poly_t_add(out, poly_t_shift(monomial_ideal_numerator(gens, n), shift))
    return out


def pole_order_and_multiplicity(numer, n):
    """Divide out (1-t) factors: returns (dim, multiplicity).

    The zero module gets (-1, 0).
    """
    if not numer:
        return -1, 0
    lo = min(numer)
    coeffs = [numer.get(d, 0) for d in range(lo, max(numer) + 1)]
    k = 0
    while k < n and sum(coeffs) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        coeffs = q
        k += 1
    return n - k, sum(coeffs)


def hilbert_function(numer, n, degree):
    """Coefficient of t^degree in numer / (1-t)^n."""
    total = 0
    for d, c in numer.items():
        k = degree - d
        if k >= 0:
            total += c * (comb(k + n - 1, n - 1) if n > 0 else (1 if k == 0 else 0))
    return total


def standard_monomial_counts(lead_data, n):
    """Per-degree counts of standard monomials; finite-length input only."""
    counts = {}
    for shift, gens in lead_data:
        gens = minimalize_monomials(tuple(tuple(g) for g in gens))
        if any(sum(g) == 0 for g in gens):
            continue
        bounds = []
        for i in range(n):
            pure = [g[i] for g in gens if g[i] and sum(g) == g[i]]
            if not pure:
                raise PreconditionError("module does not have finite length")
            bounds.append(min(pure))
        for m in product(*(range(b) for b in bounds)):
            if not any(mono_divides(g, m) for g in gens):
                d = sum(m) + shift
                counts[d] = counts.get(d, 0) + 1
    return counts
