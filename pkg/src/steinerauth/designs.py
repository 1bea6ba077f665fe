"""t-(v,k,lambda) designs: construction, exhaustive verification and JSON I/O.

Points are always the integers ``0..v-1``. Geometric constructions keep the
original objects (field elements, projective points) in ``Design.labels``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, deque
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from . import field as gf

__all__ = [
    "DEFAULT_WORK_LIMIT",
    "DesignError",
    "InadmissibleParameters",
    "WorkLimitExceeded",
    "Design",
    "DesignStats",
    "Divisibility",
    "lambda_s",
    "lambda_s_for",
    "verify_design",
    "is_trivial",
    "reduce_strength",
    "derived_design",
    "develop",
    "orbit_design",
    "pg_lines",
    "spherical_design",
    "sts_cyclic",
    "cyclic_difference_family",
    "witt_search",
    "divisibility_check",
    "to_json",
    "from_json",
    "emit",
    "ingest",
]

DEFAULT_WORK_LIMIT = 10**7


class DesignError(ValueError):
    """A candidate fails the design axioms or is structurally malformed."""


class InadmissibleParameters(DesignError):
    """Counting formulas give a non-integral value, so no such design exists."""


class WorkLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Design:
    t: int
    v: int
    k: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not (1 <= self.t <= self.k <= self.v) or self.lam < 1:
            raise DesignError(
                f"parameters need 1 <= t <= k <= v and lambda >= 1, got "
                f"t={self.t} v={self.v} k={self.k} lambda={self.lam}"
            )
        blocks = tuple(sorted(tuple(sorted(int(x) for x in B)) for B in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        if self.labels is not None and len(self.labels) != self.v:
            raise DesignError("label map must have one entry per point")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def params(self) -> tuple[int, int, int, int]:
        return self.t, self.v, self.k, self.lam

    def __str__(self):
        return f"{self.t}-({self.v},{self.k},{self.lam}) design with {self.b} blocks"


@dataclass(frozen=True)
class DesignStats:
    b: int
    r: int
    lambdas: tuple[int, ...]  # lambda_0 .. lambda_t
    trivial: bool = False


class Divisibility(NamedTuple):
    b: int | None
    v_divides_b: bool


def lambda_s_for(t: int, v: int, k: int, lam: int, s: int) -> int:
    """Number of blocks through a fixed s-set: lam * C(v-s, t-s) / C(k-s, t-s)."""
    if not 0 <= s <= t:
        raise ValueError(f"s must lie in 0..{t}, got {s}")
    num = lam * math.comb(v - s, t - s)
    den = math.comb(k - s, t - s)
    if num % den:
        raise InadmissibleParameters(
            f"lambda_{s} = {num}/{den} is not an integer for {t}-({v},{k},{lam})"
        )
    return num // den


def lambda_s(d: Design, s: int) -> int:
    return lambda_s_for(d.t, d.v, d.k, d.lam, s)


def is_trivial(d: Design) -> bool:
    return not (d.t < d.k < d.v)


def verify_design(d: Design, work_limit: int = DEFAULT_WORK_LIMIT) -> DesignStats:
    """Exhaustively check that every t-subset lies in exactly lambda blocks.

    Raises DesignError naming the first (lexicographically) offending t-subset.
    """
    for B in d.blocks:
        if len(B) != d.k or len(set(B)) != d.k:
            raise DesignError(f"block {B} does not have {d.k} distinct points")
        if B[0] < 0 or B[-1] >= d.v:
            raise DesignError(f"block {B} has a point outside 0..{d.v - 1}")
    for B, n in Counter(d.blocks).items():
        if n > 1:
            raise DesignError(f"block {B} is repeated {n} times")

    lambdas = tuple(lambda_s(d, s) for s in range(d.t + 1))
    if lambdas[0] != d.b:
        raise DesignError(f"expected {lambdas[0]} blocks, found {d.b}")
    work = math.comb(d.v, d.t) + d.b * math.comb(d.k, d.t)
    if work > work_limit:
        raise WorkLimitExceeded(f"verification needs {work} steps, limit is {work_limit}")

    counts = Counter()
    for B in d.blocks:
        counts.update(itertools.combinations(B, d.t))
    for T in itertools.combinations(range(d.v), d.t):
        if counts[T] != d.lam:
            raise DesignError(f"{d.t}-subset {T} lies in {counts[T]} blocks, expected {d.lam}")

    r = lambdas[1]
    # identities that must follow from the counts above
    assert d.b * d.k == d.v * r
    if d.t >= 2:
        assert r * (d.k - 1) == lambdas[2] * (d.v - 1)
    return DesignStats(b=d.b, r=r, lambdas=lambdas, trivial=is_trivial(d))


def reduce_strength(d: Design, s: int) -> Design:
    """The same blocks viewed as an s-(v, k, lambda_s) design (s <= t)."""
    return replace(d, t=s, lam=lambda_s(d, s))


def derived_design(d: Design, point: int) -> Design:
    """Blocks through ``point`` with that point deleted: a (t-1)-(v-1, k-1, lambda) design."""
    blocks = [
        tuple(x - (x > point) for x in B if x != point) for B in d.blocks if point in B
    ]
    labels = None
    if d.labels is not None:
        labels = d.labels[:point] + d.labels[point + 1 :]
    return Design(d.t - 1, d.v - 1, d.k - 1, d.lam, tuple(blocks), labels)


# -- constructions ------------------------------------------------------------


def _closure(generators: Sequence[Sequence[int]], base: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen = {base}
    queue = deque([base])
    while queue:
        B = queue.popleft()
        for g in generators:
            img = tuple(sorted(g[x] for x in B))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return sorted(seen)


def orbit_design(
    generators: Sequence[Sequence[int]],
    base_block: Iterable[int],
    declared: tuple[int, int, int, int],
    labels: tuple | None = None,
) -> Design:
    """Close ``base_block`` under the group generated by ``generators`` and verify.

    Generators are permutations of ``0..v-1`` given as image tuples.
    """
    t, v, k, lam = declared
    base = tuple(sorted(base_block))
    if len(base) != k or len(set(base)) != k:
        raise DesignError(f"base block {base} does not have {k} distinct points")
    for g in generators:
        if sorted(g) != list(range(v)):
            raise DesignError("generator is not a permutation of 0..v-1")
    d = Design(t, v, k, lam, tuple(_closure(generators, base)), labels)
    verify_design(d)
    return d


def develop(base_blocks: Iterable[Iterable[int]], v: int) -> list[tuple[int, ...]]:
    """All translates mod v of the base blocks, deduplicated and sorted."""
    out = set()
    for B in base_blocks:
        for s in range(v):
            out.add(tuple(sorted((x + s) % v for x in B)))
    return sorted(out)


def _subspace_points(spec: gf.FieldSpec, dim: int) -> list[tuple[gf.FieldElement, ...]]:
    # projective points of GF(q)^dim: vectors whose first nonzero entry is 1
    els = gf.elements(spec)
    pts = []
    for lead in range(dim):
        for rest in itertools.product(els, repeat=dim - lead - 1):
            pts.append((spec.zero,) * lead + (spec.one,) + rest)
    return pts


def _normalize(vec):
    lead = next(x for x in vec if not x.is_zero())
    s = gf.inv(lead)
    return tuple(x * s for x in vec)


def pg_lines(d: int, q: int) -> Design:
    """Points and lines of PG(d, q) as a 2-((q^(d+1)-1)/(q-1), q+1, 1) design."""
    if d < 2:
        raise ValueError("projective dimension must be at least 2")
    p, n = gf.prime_power(q)
    spec = gf.make_field(p, n)
    pts = _subspace_points(spec, d + 1)
    where = {P: i for i, P in enumerate(pts)}
    els = gf.elements(spec)
    lines = set()
    for i, P in enumerate(pts):
        for j in range(i + 1, len(pts)):
            Q = pts[j]
            # points of the line PQ: P itself and P*c + Q for each scalar c
            line = {i, j}
            for c in els:
                line.add(where[_normalize(tuple(x * c + y for x, y in zip(P, Q)))])
            lines.add(tuple(sorted(line)))
    v = len(pts)
    design = Design(2, v, q + 1, 1, tuple(lines), tuple(pts))
    verify_design(design)
    return design


def spherical_design(q: int, d: int) -> Design:
    """Orbit of the subline GF(q) + {inf} under PGL(2, q^d): a 3-(q^d+1, q+1, 1) design."""
    if d < 2:
        raise ValueError("extension degree d must be at least 2")
    p, n = gf.prime_power(q)
    spec = gf.make_field(p, n * d)
    line = gf.projective_line(spec)
    base = [i for i, x in enumerate(line) if x is gf.INF or x**q == x]
    gens = [gf.as_permutation(m, line) for m in gf.pgl2_generators(spec)]
    return orbit_design(gens, base, (3, q**d + 1, q + 1, 1), labels=tuple(line))


def cyclic_difference_family(v: int) -> list[tuple[int, int, int]]:
    """Base triples {0, a, b} whose differences cover 1..(v-1)/2 exactly once.

    Depth-first search: always place the smallest uncovered difference d as
    the pair {0, d}, then try third points in increasing order.
    """
    if v % 6 != 1 or v < 7:
        raise ValueError(f"cyclic Steiner triple systems here need v = 1 (mod 6), got {v}")
    half = (v - 1) // 2

    def cls(x):
        x %= v
        return min(x, v - x)

    covered = [False] * (half + 1)
    chosen: list[tuple[int, int, int]] = []

    def search() -> bool:
        try:
            d = next(i for i in range(1, half + 1) if not covered[i])
        except StopIteration:
            return True
        covered[d] = True
        for x in range(1, v):
            if x == d:
                continue
            e1, e2 = cls(x), cls(x - d)
            if e1 == e2 or e1 == d or e2 == d or covered[e1] or covered[e2]:
                continue
            covered[e1] = covered[e2] = True
            chosen.append(tuple(sorted((0, d, x))))
            if search():
                return True
            chosen.pop()
            covered[e1] = covered[e2] = False
        covered[d] = False
        return False

    if not search():
        raise RuntimeError(f"no cyclic difference family found for v={v}")
    return chosen


def sts_cyclic(v: int) -> Design:
    """Cyclic Steiner triple system developed from a difference family mod v."""
    base = cyclic_difference_family(v)
    design = Design(2, v, 3, 1, tuple(develop(base, v)))
    verify_design(design)
    return design


def witt_search() -> tuple[Design, Design]:
    """Find S(5,6,12) as a hexad orbit on the projective line over GF(11).

    Hexads are tried in lexicographic order; the group is PSL(2, 11), since
    no hexad orbit of the full PGL(2, 11) has the required 132 blocks. Also
    returns the derived 4-(11,5,1) design at the point at infinity.
    """
    spec = gf.make_field(11, 1)
    line = gf.projective_line(spec)
    group = [gf.as_permutation(m, line) for m in gf.psl2(spec)]
    target = math.comb(12, 5) // math.comb(6, 5)
    examined = set()
    for hexad in itertools.combinations(range(12), 6):
        if hexad in examined:
            continue
        orbit = {tuple(sorted(g[x] for x in hexad)) for g in group}
        examined |= orbit
        if len(orbit) != target:
            continue
        candidate = Design(5, 12, 6, 1, tuple(orbit), tuple(line))
        try:
            verify_design(candidate)
        except DesignError:
            continue
        derived = derived_design(candidate, 11)
        verify_design(derived)
        return candidate, derived
    raise RuntimeError("no S(5,6,12) hexad orbit found")


def divisibility_check(t: int, v: int, k: int) -> Divisibility:
    """Block count of a Steiner t-(v,k,1) design and whether v divides it.

    ``b`` is None when C(v,t)/C(k,t) is not an integer.
    """
    if not 1 <= t <= k <= v:
        raise ValueError("need 1 <= t <= k <= v")
    num, den = math.comb(v, t), math.comb(k, t)
    if num % den:
        return Divisibility(None, False)
    b = num // den
    return Divisibility(b, b % v == 0)


# -- JSON files ---------------------------------------------------------------


def to_json(d: Design) -> dict:
    return {"t": d.t, "v": d.v, "k": d.k, "lambda": d.lam, "blocks": [list(B) for B in d.blocks]}


def from_json(obj: dict, verify: bool = True) -> Design:
    keys = {"t", "v", "k", "lambda", "blocks"}
    if not isinstance(obj, dict) or set(obj) != keys:
        raise DesignError(f"design JSON must have exactly the keys {sorted(keys)}")
    for key in ("t", "v", "k", "lambda"):
        if type(obj[key]) is not int:
            raise DesignError(f"'{key}' must be an integer")
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or not all(
        isinstance(B, list) and all(type(x) is int for x in B) for B in blocks
    ):
        raise DesignError("'blocks' must be a list of integer lists")
    d = Design(obj["t"], obj["v"], obj["k"], obj["lambda"], tuple(tuple(B) for B in blocks))
    if verify:
        verify_design(d)
    return d


def emit(d: Design, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_json(d)) + "\n", encoding="utf-8")


def ingest(path: str | Path) -> Design:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DesignError(f"{path}: not valid JSON ({exc})") from None
    return from_json(obj)
