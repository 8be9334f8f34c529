"""The Q = 3 two-letter comparison table: gapped vs. contiguous digits."""

from __future__ import annotations

import csv
import io
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .complexity import complexity_profile
from .core import GappedSubstitution, binary_digit_substitution
from .errors import GapSubError

log = logging.getLogger(__name__)

GAPPED_DIGITS = (-1, 0, 4)
CONTIGUOUS_DIGITS = (-1, 0, 1)

# The printed table lists these 18 rule pairs in this order.  Its selection
# criterion, read literally, also admits b -> aaa for each a-rule (21 pairs).
TABLE_ROWS: tuple[tuple[str, str], ...] = (
    ("aab", "aab"), ("aab", "aba"), ("aab", "abb"), ("aab", "baa"), ("aab", "bab"), ("aab", "bba"),
    ("baa", "aab"), ("baa", "aba"), ("baa", "abb"), ("baa", "baa"), ("baa", "bab"), ("baa", "bba"),
    ("bab", "aab"), ("bab", "aba"), ("bab", "abb"), ("bab", "baa"), ("bab", "bab"), ("bab", "bba"),
)

CSV_HEADER = ["a1", "a2", "a3", "b1", "b2", "b3", "digits"] + [f"p{n}" for n in range(2, 11)]


def filter_candidates() -> list[tuple[str, str]]:
    """Rule pairs with a kept at digit 0, some b in S(a) and some a in S(b)."""
    out = []
    for a1, a3 in itertools.product("ab", repeat=2):
        a_rule = a1 + "a" + a3
        if "b" not in a_rule:
            continue
        for b_rule in map("".join, itertools.product("ab", repeat=3)):
            if "a" in b_rule:
                out.append((a_rule, b_rule))
    return out


@dataclass(frozen=True)
class TableRow:
    a_rule: str
    b_rule: str
    p: tuple[int, ...] | None
    p_prime: tuple[int, ...] | None
    diagnostic: str | None = None


def row_substitutions(a_rule: str, b_rule: str) -> tuple[GappedSubstitution, GappedSubstitution]:
    return (
        binary_digit_substitution(a_rule, b_rule, GAPPED_DIGITS),
        binary_digit_substitution(a_rule, b_rule, CONTIGUOUS_DIGITS),
    )


def compute_row(rule: tuple[str, str]) -> TableRow:
    a_rule, b_rule = rule
    try:
        vectors = [complexity_profile(sub, "a", 10).p[1:] for sub in row_substitutions(*rule)]
    except GapSubError as exc:
        log.warning("row %s|%s failed: %s", a_rule, b_rule, exc)
        return TableRow(a_rule, b_rule, None, None, str(exc))
    return TableRow(a_rule, b_rule, *vectors)


def run_table(rows=TABLE_ROWS, workers: int = 1) -> list[TableRow]:
    """p(2..10) for every row under both digit sets, in row order."""
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(compute_row, rows))
    return [compute_row(r) for r in rows]


def digits_field(digits) -> str:
    return " ".join(str(d) for d in digits)


def csv_record(letters, digits, p) -> list:
    return [*letters, digits_field(digits), *p]


def table_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        if row.p is None:
            continue
        writer.writerow(csv_record(row.a_rule + row.b_rule, GAPPED_DIGITS, row.p))
        writer.writerow(csv_record(row.a_rule + row.b_rule, CONTIGUOUS_DIGITS, row.p_prime))
    return buf.getvalue()
