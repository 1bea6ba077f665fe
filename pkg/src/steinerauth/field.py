"""Finite fields GF(p^n), the projective line over them and PGL(2, q).

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
polynomial. Coefficient vectors are stored lowest degree first, so the
element ``a_0 + a_1 x + ... + a_{n-1} x^{n-1}`` is ``(a_0, ..., a_{n-1})``.
Every element also has an integer index ``sum(a_i * p**i)`` which fixes the
enumeration order used by :func:`elements` and :func:`projective_line`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

__all__ = [
    "FieldSpec",
    "FieldElement",
    "Infinity",
    "INF",
    "ProjPoint",
    "FracLinearMap",
    "is_prime",
    "prime_power",
    "make_field",
    "elements",
    "add",
    "neg",
    "sub",
    "mul",
    "inv",
    "power",
    "primitive_element",
    "projective_line",
    "apply",
    "compose",
    "pgl2",
    "pgl2_generators",
    "psl2",
    "as_permutation",
]


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


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, n)`` with ``q == p**n`` and p prime; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    n, rest = 0, q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, n


# -- polynomials over GF(p), coefficient tuples lowest degree first ---------


def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_sub(a, b, p):
    m = max(len(a), len(b))
    a = tuple(a) + (0,) * (m - len(a))
    b = tuple(b) + (0,) * (m - len(b))
    return _trim((x - y) % p for x, y in zip(a, b))


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a, b = list(_trim(a)), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] * lead_inv % p
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * y) % p
        a = list(_trim(a))
    return _trim(q), _trim(a)


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    # trial division by every monic polynomial of degree 1..deg(f)//2
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_divmod(f, low + (1,), p)[1]:
                return False
    return True


# -- the field ----------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) presented as GF(p)[x] / (modulus)."""

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise ValueError("extension degree must be at least 1")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not _is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.n

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} outside GF({self.order})")
        coeffs = []
        for _ in range(self.n):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.n)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.n - 1))

    def __repr__(self):
        return f"GF({self.p}^{self.n})"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.n:
            raise ValueError("coefficient vector has wrong length")
        if any(not 0 <= c < self.spec.p for c in self.coeffs):
            raise ValueError("coefficients must lie in [0, p)")

    @property
    def index(self) -> int:
        return sum(c * self.spec.p**i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    def __truediv__(self, other):
        return mul(self, inv(other))

    def __pow__(self, e: int):
        return power(self, e)

    def __repr__(self):
        return f"<{self.index} in {self.spec!r}>"


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldSpec:
    """GF(p^n) using the smallest monic irreducible modulus.

    Monic polynomials of degree n are scanned in increasing order of
    ``sum(c_i * p**i)`` over their lower coefficients, so the choice is
    deterministic.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be at least 1")
    for idx in range(p**n):
        low = []
        for _ in range(n):
            idx, c = divmod(idx, p)
            low.append(c)
        f = tuple(low) + (1,)
        if _is_irreducible(f, p):
            return FieldSpec(p, n, f)
    raise RuntimeError(f"no irreducible polynomial of degree {n} over GF({p})")


def elements(spec: FieldSpec) -> list[FieldElement]:
    return [spec.element(i) for i in range(spec.order)]


def _check(x: FieldElement, y: FieldElement):
    if x.spec != y.spec:
        raise ValueError(f"cannot combine elements of {x.spec!r} and {y.spec!r}")


def _pad(spec: FieldSpec, c: tuple[int, ...]) -> FieldElement:
    return FieldElement(spec, tuple(c) + (0,) * (spec.n - len(c)))


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    _check(x, y)
    p = x.spec.p
    return FieldElement(x.spec, tuple((a + b) % p for a, b in zip(x.coeffs, y.coeffs)))


def neg(x: FieldElement) -> FieldElement:
    p = x.spec.p
    return FieldElement(x.spec, tuple(-a % p for a in x.coeffs))


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return add(x, neg(y))


@functools.lru_cache(maxsize=1 << 16)
def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _check(x, y)
    spec = x.spec
    prod = _poly_mul(_trim(x.coeffs), _trim(y.coeffs), spec.p)
    return _pad(spec, _poly_divmod(prod, spec.modulus, spec.p)[1])


@functools.lru_cache(maxsize=1 << 14)
def inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse by the extended Euclidean algorithm."""
    if x.is_zero():
        raise ZeroDivisionError("zero has no inverse")
    spec = x.spec
    p = spec.p
    r0, r1 = spec.modulus, _trim(x.coeffs)
    s0, s1 = (), (1,)
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
    # r0 is a nonzero constant because the modulus is irreducible
    c = pow(r0[0], p - 2, p)
    return _pad(spec, tuple(a * c % p for a in s0))


def power(x: FieldElement, e: int) -> FieldElement:
    if e < 0:
        return power(inv(x), -e)
    result, base = x.spec.one, x
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def primitive_element(spec: FieldSpec) -> FieldElement:
    """Smallest-index generator of the multiplicative group."""
    q = spec.order
    prime_factors = [f for f in range(2, q) if (q - 1) % f == 0 and is_prime(f)]
    for i in range(1, q):
        g = spec.element(i)
        if all(power(g, (q - 1) // f) != spec.one for f in prime_factors):
            return g
    raise RuntimeError("multiplicative group is not cyclic")  # unreachable


# -- projective line and PGL(2, q) -------------------------------------------


class Infinity:
    """The point at infinity of a projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ProjPoint = Union[FieldElement, Infinity]


def projective_line(spec: FieldSpec) -> list[ProjPoint]:
    """All field elements in index order, followed by infinity."""
    return [*elements(spec), INF]


@dataclass(frozen=True)
class FracLinearMap:
    """x -> (a x + b) / (c x + d), stored in canonical (normalized) form."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self):
        coeffs = (self.a, self.b, self.c, self.d)
        for other in coeffs[1:]:
            _check(self.a, other)
        if (self.a * self.d - self.b * self.c).is_zero():
            raise ValueError("degenerate map: ad - bc = 0")
        lead = next(x for x in coeffs if not x.is_zero())
        if lead != self.a.spec.one:
            s = inv(lead)
            for name, x in zip("abcd", coeffs):
                object.__setattr__(self, name, x * s)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        return apply(self, pt)


def apply(m: FracLinearMap, pt: ProjPoint) -> ProjPoint:
    if pt is INF:
        return INF if m.c.is_zero() else m.a / m.c
    den = m.c * pt + m.d
    if den.is_zero():
        return INF
    return (m.a * pt + m.b) / den


def compose(f: FracLinearMap, g: FracLinearMap) -> FracLinearMap:
    """The map x -> f(g(x)), i.e. the matrix product F G."""
    return FracLinearMap(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )


def _canonical_tuples(spec: FieldSpec) -> Iterator[tuple[FieldElement, ...]]:
    els = elements(spec)
    zero, one = spec.zero, spec.one
    # first nonzero coefficient is 1; a=0 forces b!=0 and c!=0 (det = -bc)
    for lead in range(4):
        for rest in itertools.product(els, repeat=3 - lead):
            yield (zero,) * lead + (one,) + rest


def pgl2(spec: FieldSpec) -> list[FracLinearMap]:
    """Every element of PGL(2, q), each once, in lexicographic tuple order."""
    maps = []
    for a, b, c, d in _canonical_tuples(spec):
        if not (a * d - b * c).is_zero():
            maps.append(FracLinearMap(a, b, c, d))
    return maps


def psl2(spec: FieldSpec) -> list[FracLinearMap]:
    """The index-2 (for odd q) subgroup of maps whose determinant is a square.

    Rescaling (a, b, c, d) by s multiplies the determinant by s**2, so the
    square class of the determinant is well defined on canonical maps.
    """
    squares = {x * x for x in elements(spec) if not x.is_zero()}
    return [m for m in pgl2(spec) if m.a * m.d - m.b * m.c in squares]


def pgl2_generators(spec: FieldSpec) -> list[FracLinearMap]:
    """A small generating set of PGL(2, q): x+1, w*x (w primitive), 1/x."""
    zero, one = spec.zero, spec.one
    gens = [FracLinearMap(one, one, zero, one)]
    if spec.order > 2:
        gens.append(FracLinearMap(primitive_element(spec), zero, zero, one))
    gens.append(FracLinearMap(zero, one, one, zero))
    return gens


def as_permutation(m: FracLinearMap, points: Sequence[ProjPoint] | None = None) -> tuple[int, ...]:
    """The action of ``m`` on ``points`` (default: the projective line) as a tuple of indices."""
    if points is None:
        points = projective_line(m.spec)
    where = {pt: i for i, pt in enumerate(points)}
    return tuple(where[apply(m, pt)] for pt in points)
