"""Subword complexity, right special words and right special trees.

Counts are taken over the one-sided fixed point grown from a seed.  A finite
patch only gives lower bounds, so :func:`complexity_profile` keeps growing
central patches until the counts for every length up to ``n_max + 1`` agree
across two consecutive levels and the patch is at least ``4 * n_max`` long.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .core import MAX_CELLS, GappedSubstitution, Letter
from .errors import OverflowCapError, StabilizationError, ValidationError
from .fixedpoint import PositionedWord, iter_central_patches

Word = tuple[Letter, ...]

#: Patch length must reach this multiple of ``n_max`` before counts are trusted.
LENGTH_MARGIN = 4
#: Supertile levels tried before reporting a stabilization failure.
MAX_LEVEL = 60


def as_word(w) -> Word:
    if isinstance(w, PositionedWord):
        return w.letters
    return tuple(w)


@dataclass(frozen=True)
class WordSet:
    length: int
    words: frozenset[Word]

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words))

    def __contains__(self, w) -> bool:
        return as_word(w) in self.words

    def strings(self, sep: str = "") -> set[str]:
        return {sep.join(w) for w in self.words}


def words_of_length(w, n: int) -> WordSet:
    """All distinct length-``n`` factors of ``w``."""
    w = as_word(w)
    if n < 1 or n > len(w):
        raise ValidationError(f"n: must be in 1..{len(w)}, got {n}")
    return WordSet(n, frozenset(w[i : i + n] for i in range(len(w) - n + 1)))


def extension_counts(words_n_plus_1: WordSet) -> Counter:
    """Number of distinct right extensions of each length-n prefix."""
    return Counter(w[:-1] for w in words_n_plus_1.words)


def right_special_words(words_n_plus_1: WordSet) -> WordSet:
    n = words_n_plus_1.length - 1
    if n < 0:
        raise ValidationError("right special words need a set of words of length >= 1")
    ext = extension_counts(words_n_plus_1)
    return WordSet(n, frozenset(u for u, k in ext.items() if k >= 2))


@dataclass(frozen=True)
class ComplexityProfile:
    """``p`` and ``s`` for lengths ``1..n_max`` (index 0 holds n = 1)."""

    p: tuple[int, ...]
    s: tuple[int, ...]
    stabilized_at_level: int | None = None
    prefix_length: int = 0
    excess: tuple[int, ...] = ()
    max_branching: int = 0
    word_sets: dict[int, WordSet] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_max(self) -> int:
        return len(self.p)

    def p_at(self, n: int) -> int:
        return self.p[n - 1]

    def s_at(self, n: int) -> int:
        return self.s[n - 1]


def _word_sets(w: Word, top: int) -> dict[int, WordSet]:
    return {n: words_of_length(w, n) for n in range(1, top + 1)}


def _profile_from_sets(
    sets: dict[int, WordSet], n_max: int, level: int | None, length: int
) -> ComplexityProfile:
    s, excess, branching = [], [], 0
    for n in range(1, n_max + 1):
        ext = extension_counts(sets[n + 1])
        s.append(sum(1 for k in ext.values() if k >= 2))
        excess.append(sum(k - 1 for k in ext.values()))
        branching = max(branching, max(ext.values(), default=0))
    return ComplexityProfile(
        p=tuple(len(sets[n]) for n in range(1, n_max + 1)),
        s=tuple(s),
        stabilized_at_level=level,
        prefix_length=length,
        excess=tuple(excess),
        max_branching=branching,
        word_sets=sets,
    )


def profile_of_word(w, n_max: int) -> ComplexityProfile:
    """Counts over a single finite word; no stabilization certificate."""
    w = as_word(w)
    if n_max + 1 > len(w):
        raise ValidationError(f"word of length {len(w)} is too short for n_max = {n_max}")
    return _profile_from_sets(_word_sets(w, n_max + 1), n_max, None, len(w))


def stabilized_profile(
    words: Iterable[tuple[int, Sequence[Letter]]],
    n_max: int,
    *,
    max_level: int = MAX_LEVEL,
) -> tuple[ComplexityProfile, Word]:
    """Feed growing ``(level, word)`` pairs until the counts settle.

    Returns the certified profile and the word it was read from.
    """
    if n_max < 1:
        raise ValidationError(f"n_max: must be >= 1, got {n_max}")
    top = n_max + 1
    prev: tuple[int, ...] | None = None
    best: tuple[int, ...] = ()
    try:
        for level, w in words:
            if level > max_level:
                break
            w = as_word(w)
            if len(w) < top:
                continue
            sets = _word_sets(w, top)
            counts = tuple(len(sets[n]) for n in range(1, top + 1))
            best = counts
            if counts == prev and len(w) >= LENGTH_MARGIN * n_max:
                return _profile_from_sets(sets, n_max, level, len(w)), w
            prev = counts
    except OverflowCapError as exc:
        raise StabilizationError(
            f"complexity not stabilized before the size cap ({exc})", lower_bound=best[:n_max]
        ) from None
    raise StabilizationError(
        f"complexity not stabilized by level {max_level}", lower_bound=best[:n_max]
    )


def stabilized_prefix(
    sub: GappedSubstitution,
    seed: Letter,
    n_max: int,
    *,
    max_level: int = MAX_LEVEL,
    max_cells: int = MAX_CELLS,
) -> tuple[ComplexityProfile, PositionedWord]:
    """Certified profile together with the central patch it came from."""
    patches: dict[int, PositionedWord] = {}

    def feed() -> Iterator[tuple[int, Word]]:
        for k, patch in iter_central_patches(sub, seed, max_cells=max_cells):
            patches[k] = patch
            yield k, patch.letters

    profile, _ = stabilized_profile(feed(), n_max, max_level=max_level)
    return profile, patches[profile.stabilized_at_level]


def complexity_profile(
    sub: GappedSubstitution,
    seed: Letter,
    n_max: int,
    *,
    max_level: int = MAX_LEVEL,
    max_cells: int = MAX_CELLS,
) -> ComplexityProfile:
    return stabilized_prefix(sub, seed, n_max, max_level=max_level, max_cells=max_cells)[0]


def check_special_identity(profile: ComplexityProfile, max_branching: int = 2) -> bool:
    """Check ``p(n+1) = p(n) + s(n)`` (or the branching-weighted version).

    With ``max_branching <= 2`` the plain right-special count is used, which
    is only correct when no word has three or more extensions.  Otherwise the
    increment is the sum of ``extensions - 1`` over all words of length n.
    """
    inc = profile.s if max_branching <= 2 else profile.excess
    return all(
        profile.p[i + 1] == profile.p[i] + inc[i] for i in range(profile.n_max - 1)
    )


# -- right special trees --------------------------------------------------------

@dataclass(frozen=True)
class RightSpecialTree:
    """Right special words by length; each word links to its proper suffix."""

    levels: dict[int, frozenset[Word]]

    @property
    def depth(self) -> int:
        return max(self.levels, default=0)

    def nodes(self) -> list[Word]:
        return [w for n in sorted(self.levels) for w in sorted(self.levels[n])]

    def depth_counts(self) -> tuple[int, ...]:
        return tuple(len(self.levels[n]) for n in sorted(self.levels))

    def edges(self) -> list[tuple[Word, Word]]:
        return [(w, w[1:]) for w in self.nodes() if len(w) >= 2]

    def is_empty(self) -> bool:
        return not any(self.levels.values())

    def is_suffix_closed(self) -> bool:
        return all(w[1:] in self.levels.get(len(w) - 1, ()) for w, _ in self.edges())

    def to_dot(self, name: str = "right_special") -> str:
        """Graphviz text; node id is the word, label its first letter, rank its length."""
        sep = "" if all(len(c) == 1 for w in self.nodes() for c in w) else " "
        ident = lambda w: '"' + sep.join(w).replace('"', r"\"") + '"'  # noqa: E731
        lines = [f"graph {name} {{", "  rankdir=RL;"]
        for n in sorted(self.levels):
            members = sorted(self.levels[n])
            if not members:
                continue
            lines.append(f"  {{ rank=same; // length {n}")
            for w in members:
                lines.append(f'    {ident(w)} [label="{w[0]}"];')
            lines.append("  }")
        for w, u in self.edges():
            lines.append(f"  {ident(w)} -- {ident(u)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def tree_from_word_sets(sets: dict[int, WordSet], depth: int) -> RightSpecialTree:
    levels = {}
    for n in range(1, depth + 1):
        levels[n] = right_special_words(sets[n + 1]).words
    return RightSpecialTree(levels)


def right_special_tree_of_profile(profile: ComplexityProfile, depth: int) -> RightSpecialTree:
    if depth > profile.n_max:
        raise ValidationError(f"profile only covers lengths up to {profile.n_max}")
    return tree_from_word_sets(profile.word_sets, depth)


def right_special_tree(
    sub: GappedSubstitution, seed: Letter, depth: int, **kwargs
) -> RightSpecialTree:
    profile = complexity_profile(sub, seed, depth, **kwargs)
    return right_special_tree_of_profile(profile, depth)


# -- Thue-Morse reference formulas -----------------------------------------------

def _tm_block(n: int) -> tuple[int, bool]:
    """``(2**m, lower)`` with n in (2*2**m, 4*2**m]; ``lower`` if n <= 3*2**m."""
    scale = 1
    while n > 4 * scale:
        scale *= 2
    return scale, n <= 3 * scale


def tm_complexity_closed_form(n: int) -> int:
    if n < 0:
        raise ValidationError(f"n: must be >= 0, got {n}")
    if n <= 2:
        return (1, 2, 4)[n]
    scale, lower = _tm_block(n)
    return 4 * n - 2 * scale - 4 if lower else 2 * n + 4 * scale - 2


def tm_special_closed_form(n: int) -> int:
    if n < 0:
        raise ValidationError(f"n: must be >= 0, got {n}")
    if n == 0:
        return 1
    if n <= 2:
        return 2
    return 4 if _tm_block(n)[1] else 2
