"""Published encoding matrices and Steiner-design parameter rows.

``TABLE_I`` and ``TABLE_II`` are copied exactly as printed (Table I uses
messages 1..7, Table II uses 0..9). ``TABLE_III`` keeps the printed block
counts as strings; they use '.' as a thousands separator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .designs import divisibility_check
from .field import prime_power
from .ordering import EncodingMatrix

TABLE_I = EncodingMatrix(
    (
        (1, 2, 4),
        (2, 3, 5),
        (3, 4, 6),
        (4, 5, 7),
        (5, 6, 1),
        (6, 7, 2),
        (7, 1, 3),
    )
)

TABLE_II = EncodingMatrix(
    (
        (1, 2, 4, 5),
        (2, 3, 5, 6),
        (3, 4, 6, 7),
        (4, 5, 7, 8),
        (5, 6, 8, 9),
        (6, 7, 9, 0),
        (7, 8, 0, 1),
        (8, 9, 1, 2),
        (9, 0, 2, 3),
        (0, 1, 3, 4),
        (1, 2, 3, 7),
        (2, 3, 4, 8),
        (3, 4, 5, 9),
        (4, 5, 6, 0),
        (5, 6, 7, 1),
        (6, 7, 8, 2),
        (7, 8, 9, 3),
        (8, 9, 0, 4),
        (9, 0, 1, 5),
        (0, 1, 2, 6),
        (1, 3, 5, 8),
        (2, 4, 6, 9),
        (3, 5, 7, 0),
        (4, 6, 8, 1),
        (5, 7, 9, 2),
        (6, 8, 0, 3),
        (7, 9, 1, 4),
        (8, 0, 2, 5),
        (9, 1, 3, 6),
        (0, 2, 4, 7),
    )
)

# Fano plane exactly as listed with the Table I example, points 1..7
FANO_BLOCKS = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (1, 5, 6), (2, 6, 7), (1, 3, 7))

# (t, k, v, printed b, source of the design)
TABLE_III = (
    (3, 5, 26, "260", "Denniston design"),
    (4, 5, 11, "66", "Witt design"),
    (4, 7, 23, "253", "Witt design"),
    (4, 5, 23, "1.771", "Denniston design"),
    (4, 5, 47, "35.673", "Denniston design"),
    (4, 5, 83, "367.524", "Denniston design"),
    (4, 5, 71, "194.327", "Mills design"),
    (4, 5, 107, "1.032.122", "CRC handbook"),
    (4, 5, 131, "2.343.328", "CRC handbook"),
    (4, 5, 167, "6.251.311", "CRC handbook"),
    (4, 5, 243, "28.344.492", "CRC handbook"),
    (5, 6, 12, "132", "Witt design"),
    (5, 6, 84, "5.145.336", "Denniston design"),
    (5, 6, 244, "1.152.676.008", "CRC handbook"),
)

# parameter sets this package can construct itself
_CONSTRUCTIBLE = {(4, 5, 11): "witt", (5, 6, 12): "witt"}


def parse_count(text: str) -> int:
    """'1.032.122' -> 1032122"""
    groups = text.split(".")
    if not all(g.isdigit() for g in groups) or any(len(g) != 3 for g in groups[1:]):
        raise ValueError(f"malformed count {text!r}")
    return int("".join(groups))


@dataclass(frozen=True)
class TableRow:
    t: int
    k: int
    v: int
    b: int
    family: str
    v_divides_b: bool
    construction_available: bool
    printed_b: int | None = None
    reference: str = ""

    @property
    def matches_print(self) -> bool | None:
        return None if self.printed_b is None else self.printed_b == self.b

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "v": self.v,
            "b": self.b,
            "family": self.family,
            "v_divides_b": self.v_divides_b,
            "construction_available": self.construction_available,
            "printed_b": self.printed_b,
            "reference": self.reference,
        }


def _row(t, k, v, family, available, printed=None, reference="") -> TableRow:
    b, divides = divisibility_check(t, v, k)
    if b is None:
        raise ValueError(f"C({v},{t})/C({k},{t}) is not an integer")
    return TableRow(t, k, v, b, family, divides, available, printed, reference)


def table_three() -> list[TableRow]:
    rows = []
    for t, k, v, printed, ref in TABLE_III:
        family = _CONSTRUCTIBLE.get((t, k, v), "ingested")
        rows.append(_row(t, k, v, family, family != "ingested", parse_count(printed), ref))
    return rows


def _prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(max(lo, 2), hi + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def family_rows(family: str, lo: int, hi: int, d_max: int = 4) -> list[TableRow]:
    """Admissible parameter rows of an infinite family.

    For ``pg`` and ``spherical`` the range bounds the prime power q and every
    even d in 2..d_max is listed; for ``sts`` the range bounds v.
    """
    rows = []
    if family == "pg":
        for q in _prime_powers(lo, hi):
            for d in range(2, d_max + 1, 2):
                v = (q ** (d + 1) - 1) // (q - 1)
                rows.append(_row(2, q + 1, v, "projective", True, reference=f"PG({d},{q})"))
    elif family == "spherical":
        for q in _prime_powers(lo, hi):
            for d in range(2, d_max + 1, 2):
                rows.append(_row(3, q + 1, q**d + 1, "spherical", True, reference=f"q={q}, d={d}"))
    elif family == "sts":
        for v in range(max(lo, 7), hi + 1):
            if v % 6 == 1:
                rows.append(_row(2, 3, v, "sts", True, reference="cyclic"))
    else:
        raise ValueError(f"unknown family {family!r}")
    assert all(r.b == math.comb(r.v, r.t) // math.comb(r.k, r.t) for r in rows)
    return rows
