"""Higher-block recodings and the constant-length substitution they induce.

A width-``N`` recoding replaces each letter of a sequence by the length-``N``
window around it.  For a digit substitution and an odd ``N`` wide enough for
the digit set, the image of a window pins down the ``Q`` windows centred at
``Q*n, ..., Q*n + Q - 1``, which gives a constant-length substitution on the
window alphabet whose fixed point is the recoded sequence.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType

from .complexity import (
    ComplexityProfile,
    Word,
    as_word,
    complexity_profile,
    stabilized_prefix,
    stabilized_profile,
)
from .core import (
    MAX_CELLS,
    Configuration,
    GappedSubstitution,
    Letter,
    make_substitution,
    substitute_config,
)
from .errors import CoverageError, ValidationError
from .fixedpoint import PositionedWord, iter_central_patches

# Label strings read each window right to left (top of the column vector is
# the rightmost letter), so window (b, a, a) has label string "aab" -> 5.
_CANONICAL_COLUMNS = ("aaa", "baa", "aba", "bba", "aab", "bab", "abb", "bbb")


def canonical_binary_labels() -> dict[Word, Letter]:
    """Fixed numbering 1..8 of the width-3 windows over ``{a, b}``."""
    return {tuple(reversed(col)): str(i) for i, col in enumerate(_CANONICAL_COLUMNS, 1)}


@dataclass(frozen=True)
class BlockRecoding:
    window: int
    symbol_table: Mapping[Word, Letter]

    def __post_init__(self):
        if self.window < 1:
            raise ValidationError(f"window: must be >= 1, got {self.window}")
        table = dict(self.symbol_table)
        if len(set(table.values())) != len(table):
            raise ValidationError("symbol table: two windows share a label")
        object.__setattr__(self, "symbol_table", MappingProxyType(table))

    @property
    def half(self) -> int:
        return (self.window - 1) // 2

    def label(self, w: Word) -> Letter:
        try:
            return self.symbol_table[w]
        except KeyError:
            raise ValidationError(f"unknown window {''.join(w)!r}") from None

    def windows(self) -> dict[Letter, Word]:
        return {lab: w for w, lab in self.symbol_table.items()}

    def recode(self, w) -> Word:
        w = as_word(w)
        n = self.window
        if len(w) < n:
            raise ValidationError(f"word of length {len(w)} is shorter than the window {n}")
        return tuple(self.label(w[i : i + n]) for i in range(len(w) - n + 1))

    def recode_positioned(self, pw: PositionedWord) -> PositionedWord:
        """Recode keeping positions: each symbol sits at its window's centre."""
        return PositionedWord(pw.start + self.half, self.recode(pw.letters))


def windows_in_order(w, n: int) -> list[Word]:
    """Distinct length-``n`` windows of ``w`` by first occurrence."""
    w = as_word(w)
    seen: dict[Word, None] = {}
    for i in range(len(w) - n + 1):
        seen.setdefault(w[i : i + n], None)
    return list(seen)


def default_labels(windows: Sequence[Word], n: int) -> dict[Word, Letter]:
    """Canonical numbers for width 3 over ``{a, b}``, letters for width 1,
    otherwise ``"1", "2", ...`` in the order given."""
    letters = {c for w in windows for c in w}
    if n == 3 and letters <= {"a", "b"}:
        canon = canonical_binary_labels()
        present = set(windows)
        return {w: lab for w, lab in canon.items() if w in present}
    if n == 1:
        return {w: w[0] for w in windows}
    return {w: str(i) for i, w in enumerate(windows, 1)}


def higher_block_word(
    w, n: int, symbol_table: Mapping[Word, Letter] | None = None
) -> tuple[Word, BlockRecoding]:
    """Slide a width-``n`` window over ``w``; symbol i encodes ``w[i:i+n]``."""
    w = as_word(w)
    if n < 1:
        raise ValidationError(f"window: must be >= 1, got {n}")
    if len(w) < n:
        raise ValidationError(f"word of length {len(w)} is shorter than the window {n}")
    if symbol_table is None:
        symbol_table = default_labels(windows_in_order(w, n), n)
    recoding = BlockRecoding(n, symbol_table)
    return recoding.recode(w), recoding


@dataclass(frozen=True)
class BlockSubstitution:
    """Constant-length substitution on window labels, digits ``0..Q-1``."""

    substitution: GappedSubstitution
    recoding: BlockRecoding
    seed: Letter | None

    @property
    def rules(self) -> Mapping[Letter, tuple[Letter, ...]]:
        return self.substitution.rules

    def image(self, label: Letter) -> str:
        return "".join(self.rules[label])

    def is_overlap_consistent(self, pairs: Sequence[tuple[Letter, Letter]] = ()) -> bool:
        """Adjacent symbols in each image, and across ``T(x)T(y)`` for the
        given pairs ``x y``, must overlap in ``N - 1`` letters."""
        win = self.recoding.windows()

        def fits(x: Letter, y: Letter) -> bool:
            return win[x][1:] == win[y][:-1]

        for image in self.rules.values():
            if not all(fits(x, y) for x, y in zip(image, image[1:])):
                return False
        return all(fits(self.rules[x][-1], self.rules[y][0]) for x, y in pairs)

    def to_dict(self) -> dict:
        sub = self.substitution
        return {
            "modulus": sub.modulus,
            "digits": list(sub.digits),
            "alphabet": list(sub.alphabet),
            "rules": {c: list(sub.rules[c]) for c in sub.alphabet},
            "seed": self.seed,
            "window": self.recoding.window,
            "symbols": {
                lab: "".join(w) for lab, w in self.recoding.windows().items()
            },
        }


def window_image(
    sub: GappedSubstitution, window: Word, recoding: BlockRecoding
) -> tuple[Letter, ...]:
    """The ``Q`` recoded symbols produced by one window centred at 0."""
    n = len(window)
    h = (n - 1) // 2
    q = sub.modulus
    image = substitute_config(sub, Configuration({i - h: c for i, c in enumerate(window)}))
    needed = range(-h, q + h)
    missing = [p for p in needed if p not in image]
    if missing:
        raise CoverageError(
            f"window {n} too small for this digit set: image of {''.join(window)!r} "
            f"leaves positions {missing} undefined; retry with window {n + 2}",
            missing,
        )
    letters = tuple(image[p] for p in needed)
    return tuple(recoding.label(letters[j : j + n]) for j in range(q))


def derive_block_substitution(
    sub: GappedSubstitution,
    n: int = 3,
    seed: Letter | None = None,
    *,
    symbol_table: Mapping[Word, Letter] | None = None,
    max_cells: int = MAX_CELLS,
) -> BlockSubstitution:
    if n < 1 or n % 2 == 0:
        raise ValidationError(f"window: must be a positive odd integer, got {n}")
    seed = _pick_seed(sub, seed)
    _, prefix = stabilized_prefix(sub, seed, n, max_cells=max_cells)
    windows = windows_in_order(prefix, n)
    if symbol_table is None:
        symbol_table = default_labels(windows, n)
    recoding = BlockRecoding(n, symbol_table)
    occurring = set(windows)
    labels = [lab for w, lab in recoding.symbol_table.items() if w in occurring]
    rules = {recoding.label(w): window_image(sub, w, recoding) for w in windows}
    q = sub.modulus
    block = make_substitution(q, list(range(q)), rules, alphabet=labels)

    h = recoding.half
    origin = None
    if prefix.start <= -h and prefix.end >= h:
        origin = recoding.label(tuple(prefix.at(p) for p in range(-h, h + 1)))
    return BlockSubstitution(block, recoding, origin)


def _pick_seed(sub: GappedSubstitution, seed: Letter | None) -> Letter:
    seeds = sub.seeds()
    if seed is None:
        if not seeds:
            raise ValidationError("seed: the substitution has no fixed seed")
        return seeds[0]
    if seed not in seeds:
        raise ValidationError(f"seed: {seed!r} is not a fixed seed")
    return seed


# -- complexity shift -------------------------------------------------------------

def _recoded_patches(
    sub: GappedSubstitution, seed: Letter, n: int, max_cells: int
) -> Iterator[tuple[int, Word]]:
    for k, patch in iter_central_patches(sub, seed, max_cells=max_cells):
        w = patch.letters
        if len(w) >= n:
            # window tuples serve as symbols; counts do not depend on labels
            yield k, tuple(w[i : i + n] for i in range(len(w) - n + 1))


def recoded_profile(
    sub: GappedSubstitution,
    n: int,
    n_max: int,
    seed: Letter | None = None,
    *,
    max_cells: int = MAX_CELLS,
) -> ComplexityProfile:
    """Certified complexity of the width-``n`` recoding of the fixed point."""
    seed = _pick_seed(sub, seed)
    return stabilized_profile(_recoded_patches(sub, seed, n, max_cells), n_max)[0]


@dataclass(frozen=True)
class ShiftReport:
    window: int
    original: tuple[int, ...]
    recoded: tuple[int, ...]

    @property
    def holds(self) -> bool:
        k = self.window - 1
        return all(self.recoded[i] == self.original[i + k] for i in range(len(self.recoded)))


def complexity_shift(
    sub: GappedSubstitution,
    n: int,
    n_max: int,
    seed: Letter | None = None,
    *,
    max_cells: int = MAX_CELLS,
) -> ShiftReport:
    if n < 1:
        raise ValidationError(f"window: must be >= 1, got {n}")
    seed = _pick_seed(sub, seed)
    original = complexity_profile(sub, seed, n_max + n - 1, max_cells=max_cells)
    recoded = recoded_profile(sub, n, n_max, seed, max_cells=max_cells)
    return ShiftReport(n, original.p, recoded.p)


def verify_complexity_shift(
    sub: GappedSubstitution, n: int, n_max: int, seed: Letter | None = None, **kwargs
) -> bool:
    return complexity_shift(sub, n, n_max, seed, **kwargs).holds
