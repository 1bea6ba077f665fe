"""Authentication codes with uniform keys and equiprobable source states.

All probabilities are ``fractions.Fraction``; comparisons are exact.

Observation model for a spoofing attack of order i: a key e is drawn
uniformly, then an unordered i-subset of the k source states uniformly, and
the opponent sees the corresponding i messages. Given what it saw, the
opponent sends the fresh message most likely to be valid.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .designs import lambda_s_for
from .ordering import EncodingMatrix

__all__ = [
    "DEFAULT_COST_LIMIT",
    "CostLimitExceeded",
    "AuthCode",
    "SecrecyReport",
    "SecurityReport",
    "build_code",
    "massey_floor",
    "deception_probability",
    "deception_closed_form",
    "is_tfold_secure",
    "check_perfect_secrecy",
    "posterior",
    "massey_schobi_bound",
    "is_optimal",
    "check_higher_secrecy",
    "security_report",
    "fraction_json",
]

DEFAULT_COST_LIMIT = 10**7


class CostLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class AuthCode:
    matrix: EncodingMatrix
    p_E: tuple[Fraction, ...]
    p_S: tuple[Fraction, ...]

    def __post_init__(self):
        m = self.matrix
        for e, row in enumerate(m.rows):
            if len(set(row)) != len(row):
                raise ValueError(f"encoding rule e{e + 1} = {row} is not injective")
        if len(self.p_E) != m.b or len(self.p_S) != m.k:
            raise ValueError("distribution lengths must match the matrix shape")
        if sum(self.p_E) != 1 or sum(self.p_S) != 1:
            raise ValueError("p_E and p_S must each sum to exactly 1")
        if set(self.p_E) != {Fraction(1, m.b)} or set(self.p_S) != {Fraction(1, m.k)}:
            raise ValueError(
                "only uniform keys and equiprobable source states are supported"
            )

    @property
    def b(self) -> int:
        return self.matrix.b

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def v(self) -> int:
        return self.matrix.v

    def valid_messages(self, e: int) -> frozenset[int]:
        return frozenset(self.matrix.rows[e])

    def decode(self, e: int, m: int) -> int:
        return self.matrix.rows[e].index(m)


def build_code(m: EncodingMatrix) -> AuthCode:
    return AuthCode(m, (Fraction(1, m.b),) * m.b, (Fraction(1, m.k),) * m.k)


def massey_floor(k: int, v: int, i: int) -> Fraction:
    return Fraction(k - i, v - i)


def _subset_counts(c: AuthCode, size: int) -> Counter:
    counts = Counter()
    for row in c.matrix.rows:
        counts.update(itertools.combinations(sorted(row), size))
    return counts


def deception_probability(c: AuthCode, i: int, cost_limit: int = DEFAULT_COST_LIMIT) -> Fraction:
    """Exact P_d_i: the opponent's best success probability at order i.

    P_d_i = sum over observable i-sets O of max_{m not in O} cnt(O + {m})
    divided by b * C(k, i), where cnt(X) counts the rules whose valid
    messages contain X.
    """
    if not 0 <= i < c.k:
        raise ValueError(f"spoofing order must lie in 0..{c.k - 1}, got {i}")
    cost = c.b * math.comb(c.k, i + 1) + c.b * math.comb(c.k, i)
    if cost > cost_limit:
        raise CostLimitExceeded(f"order {i} needs {cost} subset tests, limit is {cost_limit}")
    best: dict[tuple[int, ...], int] = defaultdict(int)
    for sup, n in _subset_counts(c, i + 1).items():
        for drop in range(i + 1):
            obs = sup[:drop] + sup[drop + 1 :]
            if n > best[obs]:
                best[obs] = n
    total = sum(best.values())
    return Fraction(total, c.b * math.comb(c.k, i))


def deception_closed_form(t: int, v: int, k: int, lam: int, i: int) -> Fraction:
    """P_d_i of a design-derived code: C(v,i) lambda_{i+1} / (b C(k,i)), for i < t."""
    b = lambda_s_for(t, v, k, lam, 0)
    return Fraction(math.comb(v, i) * lambda_s_for(t, v, k, lam, i + 1), b * math.comb(k, i))


def is_tfold_secure(c: AuthCode, t: int) -> bool:
    if not 0 <= t < c.k:
        raise ValueError(f"t must lie in 0..{c.k - 1}")
    return all(deception_probability(c, i) == massey_floor(c.k, c.v, i) for i in range(t + 1))


@dataclass
class SecrecyReport:
    ok: bool
    counts: dict[tuple[int, int], int]  # (message, column) -> occurrences
    violations: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _emitting(c: AuthCode, m: int) -> Fraction:
    # denominator of the posterior: sum over rules with m valid of p_E(e) p_S(e^-1(m))
    return sum(
        (c.p_E[e] * c.p_S[row.index(m)] for e, row in enumerate(c.matrix.rows) if m in row),
        Fraction(0),
    )


def posterior(c: AuthCode, s: int, m: int) -> Fraction:
    """p_S(s | m) evaluated from the key and source distributions."""
    den = _emitting(c, m)
    if den == 0:
        raise ValueError(f"message {m} is never valid, its posterior is undefined")
    num = sum((c.p_E[e] for e, row in enumerate(c.matrix.rows) if row[s] == m), Fraction(0))
    return num * c.p_S[s] / den


def check_perfect_secrecy(c: AuthCode) -> SecrecyReport:
    """Check sum_{e(s)=m} p_E(e) == sum_{m in M(e)} p_E(e) p_S(e^-1(m)) for all (s, m).

    Also confirms p_S(s|m) == p_S(s) for every message that can occur.
    """
    counts = {(m, s): 0 for m in c.matrix.messages for s in range(c.k)}
    for row in c.matrix.rows:
        for s, m in enumerate(row):
            counts[(m, s)] += 1
    violations = []
    for m in c.matrix.messages:
        rhs = _emitting(c, m)
        for s in range(c.k):
            lhs = counts[(m, s)] * Fraction(1, c.b)
            if lhs != rhs or (rhs and posterior(c, s, m) != c.p_S[s]):
                violations.append((m, s))
    return SecrecyReport(not violations, counts, violations)


def massey_schobi_bound(v: int, k: int, t: int) -> Fraction:
    """Minimum number of keys for a (t-1)-fold secure code: C(v,t)/C(k,t)."""
    if not 1 <= t <= k:
        raise ValueError("need 1 <= t <= k")
    return Fraction(math.comb(v, t), math.comb(k, t))


def is_optimal(c: AuthCode, t: int) -> bool:
    if c.b != massey_schobi_bound(c.v, c.k, t):
        return False
    if len(set(map(frozenset, c.matrix.rows))) != c.b:
        return False
    return is_tfold_secure(c, t - 1)


def check_higher_secrecy(c: AuthCode, t_star: int) -> SecrecyReport:
    """Whether p(S*|M*) == 1/C(k, t*) for all t*-sets of sources and messages.

    Uses the same observation model as the spoofing attack: a uniform key and
    a uniform unordered t*-subset of source states. ``counts`` maps each
    (message-set, source-set) pair that occurs to the number of keys
    producing it; ``violations`` lists the pairs whose posterior differs
    from the prior, including impossible pairs for observable message sets.
    """
    if not 1 <= t_star < c.k:
        raise ValueError(f"t_star must lie in 1..{c.k - 1}")
    joint: Counter = Counter()
    seen: Counter = Counter()
    for row in c.matrix.rows:
        for S in itertools.combinations(range(c.k), t_star):
            M = tuple(sorted(row[s] for s in S))
            joint[(M, S)] += 1
            seen[M] += 1
    prior = Fraction(1, math.comb(c.k, t_star))
    violations = []
    for M, total in sorted(seen.items()):
        for S in itertools.combinations(range(c.k), t_star):
            if Fraction(joint[(M, S)], total) != prior:
                violations.append((M, S))
    return SecrecyReport(not violations, dict(joint), violations)


@dataclass
class SecurityReport:
    deception: list[Fraction]
    massey_floor: list[Fraction]
    secrecy_ok: bool
    secrecy_counts: dict[tuple[int, int], int]
    bound: Fraction
    optimal: bool
    notes: list[str] = field(default_factory=list)

    @property
    def tfold_secure(self) -> bool:
        return self.deception == self.massey_floor

    @property
    def passed(self) -> bool:
        return self.tfold_secure and self.secrecy_ok and self.optimal

    def to_json(self) -> dict:
        return {
            "deception": [fraction_json(x) for x in self.deception],
            "massey_floor": [fraction_json(x) for x in self.massey_floor],
            "tfold_secure": self.tfold_secure,
            "secrecy_ok": self.secrecy_ok,
            "secrecy_counts": [
                {"message": m, "column": s, "count": n}
                for (m, s), n in sorted(self.secrecy_counts.items())
            ],
            "bound": fraction_json(self.bound),
            "optimal": self.optimal,
            "notes": self.notes,
        }


def fraction_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator, "decimal": f"{float(x):.6f}"}


def security_report(c: AuthCode, order: int, cost_limit: int = DEFAULT_COST_LIMIT) -> SecurityReport:
    """Deception probabilities up to ``order``, secrecy, and optimality against
    the bound for strength ``order + 1``."""
    deception = [deception_probability(c, i, cost_limit) for i in range(order + 1)]
    floor = [massey_floor(c.k, c.v, i) for i in range(order + 1)]
    notes = []
    n_distinct = len(set(map(frozenset, c.matrix.rows)))
    if n_distinct != c.b:
        notes.append(f"{c.b - n_distinct} encoding rule(s) duplicate the message set of another")
    bound = massey_schobi_bound(c.v, c.k, order + 1)
    optimal = c.b == bound and n_distinct == c.b and deception == floor
    if c.b != bound:
        notes.append(f"b={c.b} differs from the key-count bound {bound}")
    secrecy = check_perfect_secrecy(c)
    return SecurityReport(deception, floor, secrecy.ok, secrecy.counts, bound, optimal, notes)
