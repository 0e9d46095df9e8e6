"""Exact arithmetic for univariate polynomials over the integers.

A polynomial is a dense tuple of coefficients, entry ``i`` holding the
coefficient of ``x**i``.  Everything in this module is exact integer
arithmetic; there is no floating point anywhere.

Factorization follows the classical Zassenhaus route: squarefree
decomposition (Yun), factorization modulo a small odd prime
(distinct-degree then equal-degree splitting), Hensel lifting to a bound
large enough to recover true factor coefficients, then subset
recombination with trial division.  This keeps the package dependency
free and is fast at the degree range used here (tensor powers stay in
the low hundreds at most).
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import random
from typing import Iterable

from .errors import NotMonic, ZeroPolynomial

__all__ = [
    "IntPoly",
    "FactorizationZ",
    "poly_eval",
    "poly_gcd",
    "squarefree_decomposition",
    "factor_over_Z",
    "linear_root_profile",
]


@dataclasses.dataclass(frozen=True, init=False)
class IntPoly:
    """Dense integer polynomial; ``coeffs[i]`` is the coefficient of x^i.

    The zero polynomial is the empty tuple.  Trailing zero coefficients
    are trimmed on construction, so a nonzero polynomial never has a
    zero leading coefficient.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            ic = int(c)
            if ic != c:
                raise TypeError(f"non-integer coefficient {c!r}")
            cs.append(ic)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def const(c: int) -> "IntPoly":
        return IntPoly((c,))

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly((0, 1))

    @staticmethod
    def monomial(c: int, k: int) -> "IntPoly":
        return IntPoly((0,) * k + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _coerce(other)
        return IntPoly(
            a + b
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    def __sub__(self, other) -> "IntPoly":
        other = _coerce(other)
        return IntPoly(
            a - b
            for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0)
        )

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        """gcd of the absolute coefficient values (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive_positive(self) -> tuple[int, int, "IntPoly"]:
        """Split off sign and content: p = unit * content * primitive.

        The primitive part has positive leading coefficient and content 1.
        Raises ZeroPolynomial on zero input.
        """
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no primitive part")
        unit = 1 if self.coeffs[-1] > 0 else -1
        cont = self.content()
        prim = IntPoly(c // (unit * cont) for c in self.coeffs)
        return unit, cont, prim

    def shift_up(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def trailing_zeros(self) -> int:
        """Multiplicity of the root 0, i.e. the power of x dividing p."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def shift_down(self, k: int) -> "IntPoly":
        """Divide by x^k; requires the low k coefficients to vanish."""
        assert all(c == 0 for c in self.coeffs[:k])
        return IntPoly(self.coeffs[k:])

    def scale_input(self, b: int) -> "IntPoly":
        """Return p(b*x)."""
        return IntPoly(c * b**i for i, c in enumerate(self.coeffs))

    def sort_key(self) -> tuple:
        return (self.degree(), self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                var = "x" if i == 1 else f"x^{i}"
                term = var if abs(c) == 1 else f"{abs(c)}{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def _coerce(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly((p,))
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def poly_eval(p: IntPoly, x: int) -> int:
    """Evaluate p at the integer x by Horner's rule.  Exact."""
    return p.evaluate(x)


def try_exact_div(f: IntPoly, g: IntPoly) -> IntPoly | None:
    """Return q with f = g*q over the integers, or None if no such q exists."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return IntPoly()
    if f.degree() < g.degree():
        return None
    rem = list(f.coeffs)
    gl = g.leading()
    gd = g.degree()
    q = [0] * (f.degree() - gd + 1)
    for i in range(len(q) - 1, -1, -1):
        top = rem[i + gd]
        if top == 0:
            continue
        if top % gl:
            return None
        c = top // gl
        q[i] = c
        for j, gc in enumerate(g.coeffs):
            rem[i + j] -= c * gc
    if any(rem):
        return None
    return IntPoly(q)


def _pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    # prem(f, g): lc(g)^(deg f - deg g + 1) * f reduced mod g, all over Z
    d = f.degree() - g.degree()
    if d < 0:
        return f
    lg = g.leading()
    rem = f
    while not rem.is_zero() and rem.degree() >= g.degree():
        k = rem.degree() - g.degree()
        rem = rem * lg - g.shift_up(k) * rem.leading()
    return rem


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Greatest common divisor in Z[x], normalized to positive leading
    coefficient; the content gcd is included.  gcd(0, 0) = 0.
    """
    if f.is_zero() and g.is_zero():
        return IntPoly()
    if f.is_zero():
        u, c, p = g.primitive_positive()
        return p * c
    if g.is_zero():
        u, c, p = f.primitive_positive()
        return p * c
    cf = f.content()
    cg = g.content()
    ccont = math.gcd(cf, cg)
    a = f.primitive_positive()[2]
    b = g.primitive_positive()[2]
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b)
        if r.is_zero():
            a, b = b, r
        else:
            a, b = b, r.primitive_positive()[2]
    prim = a.primitive_positive()[2]
    return prim * ccont


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm over Z.

    Returns [(part, multiplicity), ...] with parts squarefree, pairwise
    coprime, primitive with positive leading coefficient, and
    prod(part^mult) equal to the primitive part of p.  Sign and integer
    content are dropped, matching the unit/content split used by
    factor_over_Z.  Raises ZeroPolynomial on zero input.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    _, _, f = p.primitive_positive()
    if f.degree() < 1:
        return []
    fp = f.derivative()
    g = poly_gcd(f, fp)
    if g.degree() == 0:
        return [(f, 1)]
    c = try_exact_div(f, g)
    d = try_exact_div(fp, g) - c.derivative()
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while c.degree() > 0:
        a = poly_gcd(c, d)
        if a.degree() > 0:
            out.append((a, i))
        c = try_exact_div(c, a)
        d = try_exact_div(d, a) - c.derivative()
        i += 1
    return out


@dataclasses.dataclass(frozen=True)
class FactorizationZ:
    """Complete factorization over Z.

    unit is +1 or -1, content a positive integer, and factors a tuple of
    (irreducible, multiplicity) pairs.  Each irreducible is primitive
    with positive leading coefficient, and the tuple is sorted by degree
    and then lexicographically by coefficients.  expand() reassembles
    the original polynomial exactly.
    """

    unit: int
    content: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        out = IntPoly.const(self.unit * self.content)
        for f, m in self.factors:
            out = out * f**m
        return out

    def __str__(self) -> str:
        head = []
        if self.unit < 0:
            head.append("-1")
        if self.content != 1:
            head.append(str(self.content))
        body = [f"({f})^{m}" if m > 1 else f"({f})" for f, m in self.factors]
        return " * ".join(head + body) if (head or body) else "1"


# ---------------------------------------------------------------------------
# arithmetic mod a prime (coefficient lists, little-endian, entries in [0, p))


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a

def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])

def _pdivmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    # b nonzero; works modulo the prime p
    inv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    _ptrim(rem)
    if len(rem) < len(b):
        return [], rem
    q = [0] * (len(rem) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        if len(rem) < len(b) + i:
            continue
        c = (rem[len(b) - 1 + i] * inv) % p
        if c == 0:
            continue
        q[i] = c
        for j, y in enumerate(b):
            rem[i + j] = (rem[i + j] - c * y) % p
        _ptrim(rem)
    return _ptrim(q), rem

def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim([c % p for c in a])
    b = _ptrim([c % p for c in b])
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a

def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = _pdivmod(_pmul(out, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _distinct_degree(h: list[int], p: int) -> list[tuple[list[int], int]]:
    # h monic squarefree mod p; returns (product of irreducibles, degree) pairs
    out = []
    v = h[:]
    w = [0, 1]
    d = 0
    while len(v) - 1 >= 2 * (d + 1):
        d += 1
        w = _ppowmod(w, p, v, p)
        g = _pgcd([(a - b) % p for a, b in itertools.zip_longest(w, [0, 1], fillvalue=0)], v, p)
        if len(g) > 1:
            out.append((g, d))
            v = _pdivmod(v, g, p)[0]
            w = _pdivmod(w, v, p)[1]
    if len(v) > 1:
        out.append((v, len(v) - 1))
    return out


def _equal_degree(g: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    # g monic, all irreducible factors of degree d; p odd
    n = len(g) - 1
    if n == d:
        return [g]
    e = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        _ptrim(a)
        if len(a) <= 1:
            continue
        c = _pgcd(a, g, p)
        if 1 < len(c) < len(g):
            split = c
        else:
            b = _ppowmod(a, e, g, p)
            b = b[:]
            b[0:1] = [(b[0] - 1) % p if b else (-1) % p]
            split = _pgcd(_ptrim(b), g, p)
            if not (1 < len(split) < len(g)):
                continue
        rest = _pdivmod(g, split, p)[0]
        return _equal_degree(split, d, p, rng) + _equal_degree(rest, d, p, rng)


def _factor_mod_p(h: IntPoly, p: int) -> list[list[int]]:
    hp = _ptrim([c % p for c in h.coeffs])
    inv = pow(hp[-1], -1, p)
    hp = [(c * inv) % p for c in hp]
    rng = random.Random(0xC0FFEE + p)
    out = []
    for g, d in _distinct_degree(hp, p):
        out.extend(_equal_degree(g, d, p, rng))
    return out


# ---------------------------------------------------------------------------
# Hensel lifting (coefficient lists, entries in [0, m))


def _mtrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a

def _mmul(a: list[int], b: list[int], m: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mtrim([c % m for c in out])

def _madd(a: list[int], b: list[int], m: int) -> list[int]:
    return _mtrim([(x + y) % m for x, y in itertools.zip_longest(a, b, fillvalue=0)])

def _msub(a: list[int], b: list[int], m: int) -> list[int]:
    return _mtrim([(x - y) % m for x, y in itertools.zip_longest(a, b, fillvalue=0)])

def _mdivmod_monic(a: list[int], b: list[int], m: int) -> tuple[list[int], list[int]]:
    # b monic; synthetic division works over Z/m without inverses
    rem = [c % m for c in a]
    _mtrim(rem)
    if len(rem) < len(b):
        return [], rem
    q = [0] * (len(rem) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        if len(rem) < len(b) + i:
            continue
        c = rem[len(b) - 1 + i] % m
        if c == 0:
            continue
        q[i] = c
        for j, y in enumerate(b):
            rem[i + j] = (rem[i + j] - c * y) % m
        _mtrim(rem)
    return _mtrim(q), rem


def _bezout_mod_p(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    # s*a + t*b = 1 mod p for coprime a, b
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _ptrim([(x - y) % p for x, y in itertools.zip_longest(s0, _pmul(q, s1, p), fillvalue=0)])
        t0, t1 = t1, _ptrim([(x - y) % p for x, y in itertools.zip_longest(t0, _pmul(q, t1, p), fillvalue=0)])
    assert len(r0) == 1, "factors not coprime mod p"
    inv = pow(r0[0], -1, p)
    s = [(c * inv) % p for c in s0]
    t = [(c * inv) % p for c in t0]
    return _ptrim(s), _ptrim(t)


def _hensel_pair(f: list[int], g: list[int], h: list[int],
                 s: list[int], t: list[int], p: int, target: int):
    """Lift f = g*h (mod p) with s*g + t*h = 1 (mod p) to modulus >= target.

    g and h monic, deg f = deg g + deg h.  Quadratic iteration.
    """
    m = p
    while m < target:
        m2 = m * m
        e = _msub(f, _mmul(g, h, m2), m2)
        q, r = _mdivmod_monic(_mmul(s, e, m2), h, m2)
        g = _madd(g, _madd(_mmul(t, e, m2), _mmul(q, g, m2), m2), m2)
        h = _madd(h, r, m2)
        b = _msub(_madd(_mmul(s, g, m2), _mmul(t, h, m2), m2), [1], m2)
        c, d = _mdivmod_monic(_mmul(s, b, m2), h, m2)
        s = _msub(s, d, m2)
        t = _msub(t, _madd(_mmul(t, b, m2), _mmul(c, g, m2), m2), m2)
        m = m2
    return g, h, m


def _hensel_tree(f: list[int], facs: list[list[int]], p: int, target: int) -> list[list[int]]:
    # f monic over Z/target, facs monic mod p with f = prod(facs) mod p
    if len(facs) == 1:
        return [[c % target for c in f]]
    half = len(facs) // 2
    left, right = facs[:half], facs[half:]
    gl = [1]
    for a in left:
        gl = _pmul(gl, a, p)
    gr = [1]
    for a in right:
        gr = _pmul(gr, a, p)
    s, t = _bezout_mod_p(gl, gr, p)
    g, h, m = _hensel_pair(f, gl, gr, s, t, p, target)
    g = [c % target for c in g]
    h = [c % target for c in h]
    return _hensel_tree(g, left, p, target) + _hensel_tree(h, right, p, target)


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _primes_from(start: int):
    n = start
    while True:
        for d in range(2, int(math.isqrt(n)) + 1):
            if n % d == 0:
                break
        else:
            yield n
        n += 2 if n > 2 else 1


def _factor_monic_squarefree(h: IntPoly) -> list[IntPoly]:
    deg = h.degree()
    if deg <= 1:
        return [h]
    # pick a prime keeping h squarefree mod p, preferring few modular factors
    best = None
    tried = 0
    for p in _primes_from(3):
        hp = _ptrim([c % p for c in h.coeffs])
        if len(hp) - 1 != deg:
            continue
        if len(_pgcd(hp, _ptrim([(i * c) % p for i, c in enumerate(h.coeffs)][1:]), p)) != 1:
            continue
        facs = _factor_mod_p(h, p)
        tried += 1
        if len(facs) == 1:
            return [h]
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if tried >= 4:
            break
    p, facs = best
    # lift far enough that true factor coefficients sit in the symmetric range
    norm = math.isqrt(sum(c * c for c in h.coeffs)) + 1
    bound = 2 * (norm << deg)
    exp = 1
    target = p
    while target <= bound:
        target *= p
        exp += 1
    lifted = _hensel_tree(list(h.coeffs), facs, p, target)
    # subset recombination with constant-term pruning
    out: list[IntPoly] = []
    pool = lifted
    rem = h
    c = 1
    while 2 * c <= len(pool):
        hit = None
        h0 = rem.constant()
        for idxs in itertools.combinations(range(len(pool)), c):
            t0 = 1
            for i in idxs:
                t0 = (t0 * pool[i][0]) % target
            t0 = _symmetric(t0, target)
            if t0 == 0 or h0 % t0:
                continue
            prod = [1]
            for i in idxs:
                prod = _mmul(prod, pool[i], target)
            cand = IntPoly(_symmetric(x, target) for x in prod)
            q = try_exact_div(rem, cand)
            if q is not None:
                hit = (idxs, cand, q)
                break
        if hit is None:
            c += 1
            continue
        idxs, cand, q = hit
        out.append(cand)
        rem = q
        keep = set(range(len(pool))) - set(idxs)
        pool = [pool[i] for i in sorted(keep)]
    if rem.degree() > 0:
        out.append(rem)
    return out


def _factor_primitive_squarefree(f: IntPoly) -> list[IntPoly]:
    # f primitive, squarefree, positive leading coefficient, f(0) != 0
    if f.degree() == 1:
        return [f]
    b = f.leading()
    if b == 1:
        return _factor_monic_squarefree(f)
    # substitute y = b*x to reach a monic polynomial, factor, map back
    n = f.degree()
    monic = IntPoly([c * b ** (n - 1 - i) for i, c in enumerate(f.coeffs[:-1])] + [1])
    out = []
    for g in _factor_monic_squarefree(monic):
        back = g.scale_input(b)
        out.append(back.primitive_positive()[2])
    prod = IntPoly((1,))
    for g in out:
        prod = prod * g
    assert prod == f, "factor back-substitution failed"
    return out


def factor_over_Z(p: IntPoly) -> FactorizationZ:
    """Complete factorization in Z[x] via the Zassenhaus method.

    Raises ZeroPolynomial on zero input.  The reassembled product
    (unit * content * prod factor^mult) equals p coefficient for
    coefficient.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit, content, f = p.primitive_positive()
    if f.degree() == 0:
        return FactorizationZ(unit, content, ())
    counts: dict[IntPoly, int] = {}
    for part, mult in squarefree_decomposition(f):
        v = part.trailing_zeros()
        if v:
            x = IntPoly.x()
            counts[x] = counts.get(x, 0) + v * mult
            part = part.shift_down(v)
        if part.degree() < 1:
            continue
        for irr in _factor_primitive_squarefree(part):
            counts[irr] = counts.get(irr, 0) + mult
    factors = tuple(sorted(counts.items(), key=lambda fm: fm[0].sort_key()))
    result = FactorizationZ(unit, content, factors)
    assert result.expand() == p, "factorization reassembly failed"
    return result


def linear_root_profile(p: IntPoly) -> tuple[int, int, IntPoly]:
    """Multiplicity of the roots 1 and -1 of a monic polynomial.

    Returns (mult of (x-1), mult of (x+1), residual cofactor).  The
    residual is monic and has neither 1 nor -1 as a root.  Raises
    NotMonic unless the leading coefficient is exactly 1.
    """
    if not p.is_monic():
        raise NotMonic(f"leading coefficient is {p.leading()}, need 1")
    m1 = 0
    while p.evaluate(1) == 0:
        p = try_exact_div(p, IntPoly((-1, 1)))
        m1 += 1
    m2 = 0
    while p.evaluate(-1) == 0:
        p = try_exact_div(p, IntPoly((1, 1)))
        m2 += 1
    return m1, m2, p
