"""Central patches and fixed-point prefixes of digit substitutions."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .core import (
    MAX_CELLS,
    Configuration,
    GappedSubstitution,
    Letter,
    iter_supertiles,
    supertile,
)
from .errors import OverflowCapError, StallError, ValidationError

#: Levels without strict growth before ``fixed_prefix`` gives up.
STALL_LEVELS = 3


@dataclass(frozen=True)
class PositionedWord:
    start: int
    letters: tuple[Letter, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a positioned word needs at least one letter")
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def end(self) -> int:
        """Last occupied position (inclusive)."""
        return self.start + len(self.letters) - 1

    def at(self, pos: int) -> Letter:
        return self.letters[pos - self.start]

    def text(self, sep: str = "") -> str:
        return sep.join(self.letters)

    def agrees_with(self, other: PositionedWord) -> bool:
        """True if both words carry the same letters wherever both are defined."""
        lo = max(self.start, other.start)
        hi = min(self.end, other.end)
        return all(self.at(p) == other.at(p) for p in range(lo, hi + 1))


def _require_seed(sub: GappedSubstitution, seed: Letter) -> None:
    if seed not in sub.rules:
        raise ValidationError(f"seed: {seed!r} is not in the alphabet")
    if seed not in sub.seeds():
        raise ValidationError(
            f"seed: {seed!r} is not a fixed seed (its image does not keep it at digit 0)"
        )


def patch_through_origin(config: Configuration) -> PositionedWord:
    """Maximal run of consecutive occupied positions containing 0."""
    cells = config.cells
    if 0 not in cells:
        raise ValidationError("position 0 is empty; the seed is not fixed by the substitution")
    lo = 0
    while lo - 1 in cells:
        lo -= 1
    hi = 0
    while hi + 1 in cells:
        hi += 1
    return PositionedWord(lo, tuple(cells[p] for p in range(lo, hi + 1)))


def central_patch(
    sub: GappedSubstitution, seed: Letter, k: int, *, max_cells: int = MAX_CELLS
) -> PositionedWord:
    if k < 1:
        raise ValidationError(f"level: must be >= 1, got {k}")
    _require_seed(sub, seed)
    return patch_through_origin(supertile(sub, seed, k, max_cells=max_cells))


def iter_central_patches(
    sub: GappedSubstitution, seed: Letter, *, max_cells: int = MAX_CELLS
) -> Iterator[tuple[int, PositionedWord]]:
    """Yield ``(k, central patch of level k)`` for k >= 1, until the cell cap."""
    _require_seed(sub, seed)
    for k, config in iter_supertiles(sub, seed, max_cells=max_cells):
        if k >= 1:
            yield k, patch_through_origin(config)


def predicted_patch_length(k: int) -> int:
    """Central patch length for Q = 3, D = {-1, 0, 4}.

    Closed form ``2*3**(k-1) - (3**k - 3)/2``, equivalently ``d_1 = 2`` and
    ``d_{k+1} = 3*(d_k - 1)``.  Only valid for that one digit system.
    """
    if k < 1:
        raise ValidationError(f"level: must be >= 1, got {k}")
    return 2 * 3 ** (k - 1) - (3**k - 3) // 2


def predicted_patch_length_for(sub: GappedSubstitution, k: int) -> int:
    if sub.system.modulus != 3 or sorted(sub.system.digits) != [-1, 0, 4]:
        raise ValidationError(
            "the closed-form patch length is only known for Q = 3, D = {-1, 0, 4}"
        )
    return predicted_patch_length(k)


def fixed_prefix(
    sub: GappedSubstitution,
    seed: Letter,
    min_length: int,
    *,
    stall_levels: int = STALL_LEVELS,
    max_cells: int = MAX_CELLS,
) -> PositionedWord:
    """Central patch of the first level whose length reaches ``min_length``.

    Patches of successive levels agree wherever they overlap, so results for
    different ``min_length`` are nested.
    """
    if min_length < 1:
        raise ValidationError(f"min_length: must be >= 1, got {min_length}")
    best = 0
    flat = 0
    try:
        for k, patch in iter_central_patches(sub, seed, max_cells=max_cells):
            if len(patch) >= min_length:
                return patch
            if len(patch) > best:
                best, flat = len(patch), 0
            else:
                flat += 1
                if flat >= stall_levels:
                    raise StallError(
                        f"central patch does not grow (length {best} for {stall_levels} "
                        f"levels up to level {k})"
                    )
    except OverflowCapError as exc:
        raise OverflowCapError(
            f"{exc}; longest central patch so far has length {best} < {min_length}"
        ) from None
    raise AssertionError("unreachable")
