"""Prime fields, monomial orders and sparse polynomials over F_p.

Polynomials are stored as ``{exponent tuple: coefficient}`` dictionaries with
coefficients in ``range(1, p)``.  The raw dictionaries are what the Groebner
engine works with; :class:`Polynomial` is the immutable user-facing wrapper.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, LimitError, RingMismatchError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not (2 <= p < 2**31) or not is_prime(p):
            raise InputError(f"characteristic must be a prime below 2^31, got {p!r}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return _inverse(a, self.p)


@lru_cache(maxsize=None)
def _inverse(a, p):
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class Limits:
    """Resource caps; hitting one raises :class:`LimitError`."""

    max_degree: int = 2**16
    max_basis: int = 20000
    sop_attempts: int = 200
    truncation_search: int = 64


class MonomialOrder:
    """degrevlex (default) or lex on exponent tuples.

    ``key(m)`` is a tuple that sorts in the same direction as the order, so
    ``max(terms, key=order.key)`` is the leading monomial.
    """

    KINDS = ("degrevlex", "lex")

    def __init__(self, kind: str = "degrevlex"):
        if kind not in self.KINDS:
            raise InputError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.key = _degrevlex_key if kind == "degrevlex" else _lex_key

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


def _degrevlex_key(m):
    return (sum(m),) + tuple(-a for a in reversed(m))


def _lex_key(m):
    return m


# ---------------------------------------------------------------------------
# raw dictionary arithmetic
# ---------------------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def dict_add(a, b, p):
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def dict_scale(a, c, p):
    c %= p
    if c == 0:
        return {}
    return {m: (v * c) % p for m, v in a.items()}


def dict_mul(a, b, p):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            v = (out.get(m, 0) + c1 * c2) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def dict_frobenius(a, q, max_degree=None):
    """Entrywise q-th power of a polynomial dict over F_p, q a power of p."""
    out = {}
    for m, c in a.items():
        mm = tuple(x * q for x in m)
        if max_degree is not None and mm and max(mm) > max_degree:
            raise LimitError(f"exponent {max(mm)} exceeds the degree cap {max_degree}")
        out[mm] = c
    return out


# ---------------------------------------------------------------------------
# rings and polynomials
# ---------------------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """F_p[x_1, ..., x_n] with a fixed monomial order and limit configuration."""

    def __init__(self, p: int, variables, order="degrevlex", limits: Limits | None = None):
        self.field = PrimeField(p)
        self.p = p
        variables = tuple(variables)
        for v in variables:
            if not isinstance(v, str) or not _NAME.match(v):
                raise InputError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise InputError("duplicate variable names")
        self.variables = variables
        self.n = len(variables)
        self.order = order if isinstance(order, MonomialOrder) else MonomialOrder(order)
        self.limits = limits or Limits()

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.p == self.p
                and other.variables == self.variables and other.order == self.order)

    def __hash__(self):
        return hash((self.p, self.variables, self.order.kind))

    def __repr__(self):
        return f"PolyRing({self.p}, {list(self.variables)}, {self.order.kind!r})"

    def one_monomial(self):
        return (0,) * self.n

    def poly(self, terms) -> Polynomial:
        clean = {}
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != self.n or any(e < 0 for e in m):
                raise InputError(f"bad exponent vector {m}")
            c %= self.p
            if c:
                clean[m] = c
        return Polynomial(self, clean)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self.one_monomial(): 1})

    def constant(self, c):
        return self.poly({self.one_monomial(): c})

    def gen(self, name_or_index) -> Polynomial:
        i = (self.variables.index(name_or_index)
             if isinstance(name_or_index, str) else int(name_or_index))
        m = [0] * self.n
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, m) -> Polynomial:
        return self.poly({tuple(m): 1})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)


class Polynomial:
    """Immutable polynomial; equality is equality of canonical term lists."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._hash = None

    # -- data access ------------------------------------------------------
    @property
    def dict(self):
        return self._d

    @property
    def terms(self):
        """(coefficient, exponent tuple) pairs, strictly descending."""
        key = self.ring.order.key
        return tuple((self._d[m], m) for m in sorted(self._d, key=key, reverse=True))

    def is_zero(self):
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def lead_monomial(self):
        if not self._d:
            return None
        return max(self._d, key=self.ring.order.key)

    def lead_coefficient(self):
        m = self.lead_monomial()
        return 0 if m is None else self._d[m]

    def degree(self):
        return max((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self._d}) <= 1

    def is_constant(self):
        return all(sum(m) == 0 for m in self._d)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("polynomials belong to different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, dict_add(self._d, other._d, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, dict_scale(self._d, -1, self.ring.p))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict_mul(self._d, other._d, self.ring.p)
        _check_cap(out, self.ring.limits.max_degree)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative exponents are not supported")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def frobenius(self, e: int = 1) -> Polynomial:
        return frobenius_power(self, e)

    def __str__(self):
        return format_polynomial(self._d, self.ring)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _check_cap(d, cap):
    for m in d:
        if m and max(m) > cap:
            raise LimitError(f"exponent {max(m)} exceeds the degree cap {cap}")


def frobenius_power(g: Polynomial, e: int) -> Polynomial:
    """f^e(g) = g^(p^e).  Over F_p this just scales every exponent by p^e."""
    if not isinstance(e, int) or e < 1:
        raise InputError("Frobenius exponent e must be a positive integer")
    q = g.ring.p ** e
    return Polynomial(g.ring, dict_frobenius(g.dict, q, g.ring.limits.max_degree))


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

def format_monomial(m, variables):
    parts = []
    for v, a in zip(variables, m):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(d, ring: PolyRing) -> str:
    if not d:
        return "0"
    out = []
    for m in sorted(d, key=ring.order.key, reverse=True):
        c = d[m]
        mono = format_monomial(m, ring.variables)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append(body)
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``x^2*y + 2*y^3 - z`` style input.

    Errors are :class:`InputError` carrying the 0-based character position.
    """
    if not isinstance(text, str):
        raise InputError(f"polynomial must be a string, got {type(text).__name__}")
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        if mt.group(0).strip() == "":
            break
        start = mt.start(mt.lastindex)
        tokens.append((mt.lastindex, mt.group(mt.lastindex), start))
        pos = mt.end()
    tokens.append((0, "", len(text)))
    i = 0
    p = ring.p
    result = {}

    def err(msg, at):
        raise InputError(f"{msg} at position {at} in {text!r}")

    def peek():
        return tokens[i]

    if peek()[0] == 0:
        err("empty polynomial", 0)
    sign = 1
    expect_term = True
    while True:
        kind, val, at = peek()
        if expect_term:
            if kind == 3 and val in "+-":
                if val == "-":
                    sign = -sign
                i += 1
                continue
            coeff = 1
            mono = [0] * ring.n
            first = True
            while True:
                kind, val, at = peek()
                if kind == 1:
                    coeff = coeff * int(val)
                    i += 1
                elif kind == 2:
                    if val not in ring.variables:
                        err(f"unknown variable {val!r}", at)
                    i += 1
                    exp = 1
                    if peek()[0] == 3 and peek()[1] == "^":
                        i += 1
                        k2, v2, a2 = peek()
                        if k2 != 1:
                            err("expected exponent", a2)
                        exp = int(v2)
                        i += 1
                    mono[ring.variables.index(val)] += exp
                else:
                    err("expected coefficient or variable" if first else "dangling '*'", at)
                first = False
                if peek()[0] == 3 and peek()[1] == "*":
                    i += 1
                    continue
                break
            m = tuple(mono)
            if m and max(m) > ring.limits.max_degree:
                err(f"exponent exceeds the degree cap {ring.limits.max_degree}", at)
            v = (result.get(m, 0) + sign * coeff) % p
            if v:
                result[m] = v
            else:
                result.pop(m, None)
            sign = 1
            expect_term = False
        else:
            if kind == 0:
                break
            if kind == 3 and val in "+-":
                sign = -1 if val == "-" else 1
                i += 1
                expect_term = True
                continue
            err(f"unexpected {val!r}", at)
    return Polynomial(ring, result)
