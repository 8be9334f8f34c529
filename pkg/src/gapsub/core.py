"""Digit systems, gapped substitutions and sparse configurations.

A digit substitution with expansion constant ``Q`` and digit set ``D`` maps
the cell ``(l, c)`` to the cells ``(Q*l + d_i, rules[c][i])``.  Because the
digits form a complete residue system mod ``Q`` the images of distinct cells
never overlap, so a configuration (a finite map position -> letter) can be
substituted by taking the union of the images of its cells.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

from .errors import ConflictError, OverflowCapError, ValidationError

Letter = str

#: Largest configuration ``supertile`` will build before giving up.
MAX_CELLS = 4_000_000


@dataclass(frozen=True)
class DigitSystem:
    modulus: int
    digits: tuple[int, ...]

    @property
    def is_contiguous(self) -> bool:
        return sorted(self.digits) == list(range(min(self.digits), min(self.digits) + self.modulus))

    def index_of_zero(self) -> int:
        """Rule index of the digit 0, or -1 if 0 is not a digit."""
        try:
            return self.digits.index(0)
        except ValueError:
            return -1

    def expand(self, m: int) -> tuple[int, int]:
        """Return the unique ``(j, d)`` with ``m == Q*j + d`` and ``d`` a digit."""
        r = m % self.modulus
        for d in self.digits:
            if d % self.modulus == r:
                return (m - d) // self.modulus, d
        raise AssertionError("digit set is not a complete residue system")


def validate_digit_system(modulus: int, digits: Sequence[int]) -> DigitSystem:
    if isinstance(modulus, bool) or not isinstance(modulus, int):
        raise ValidationError(f"modulus: expected an integer, got {modulus!r}")
    if modulus < 2:
        raise ValidationError(f"modulus: must be at least 2, got {modulus}")
    digits = list(digits)
    if any(isinstance(d, bool) or not isinstance(d, int) for d in digits):
        raise ValidationError(f"digits: expected integers, got {digits!r}")
    if len(digits) != modulus:
        raise ValidationError(f"digits: cardinality {len(digits)} != modulus {modulus}")
    seen: dict[int, int] = {}
    for d in digits:
        r = d % modulus
        if r in seen:
            raise ValidationError(
                f"digits: {seen[r]} and {d} share residue {r} mod {modulus}"
            )
        seen[r] = d
    return DigitSystem(modulus, tuple(digits))


@dataclass(frozen=True)
class GappedSubstitution:
    """A digit substitution; ``rules[c][i]`` sits at digit ``system.digits[i]``."""

    alphabet: tuple[Letter, ...]
    system: DigitSystem
    rules: Mapping[Letter, tuple[Letter, ...]]

    def __post_init__(self):
        object.__setattr__(
            self, "rules", MappingProxyType({c: tuple(img) for c, img in self.rules.items()})
        )

    def __hash__(self):
        return hash((self.alphabet, self.system, tuple(self.rules[c] for c in self.alphabet)))

    def __eq__(self, other):
        if not isinstance(other, GappedSubstitution):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.system == other.system
            and dict(self.rules) == dict(other.rules)
        )

    @property
    def modulus(self) -> int:
        return self.system.modulus

    @property
    def digits(self) -> tuple[int, ...]:
        return self.system.digits

    def seeds(self) -> tuple[Letter, ...]:
        """Letters whose image keeps the letter itself at digit 0."""
        i = self.system.index_of_zero()
        if i < 0:
            return ()
        return tuple(c for c in self.alphabet if self.rules[c][i] == c)


@dataclass(frozen=True)
class ValidationReport:
    substitution: GappedSubstitution
    seeds: tuple[Letter, ...]
    contiguous: bool


def make_substitution(
    modulus: int,
    digits: Sequence[int],
    rules: Mapping[Letter, Sequence[Letter]],
    alphabet: Sequence[Letter] | None = None,
) -> GappedSubstitution:
    """Build and validate a substitution in one step."""
    system = validate_digit_system(modulus, digits)
    if alphabet is None:
        alphabet = list(rules)
    sub = GappedSubstitution(tuple(alphabet), system, {c: tuple(r) for c, r in rules.items()})
    validate_substitution(sub)
    return sub


def validate_substitution(sub: GappedSubstitution) -> ValidationReport:
    alphabet = sub.alphabet
    if not alphabet:
        raise ValidationError("alphabet: must not be empty")
    if len(set(alphabet)) != len(alphabet):
        raise ValidationError(f"alphabet: duplicate letters in {list(alphabet)!r}")
    q = sub.system.modulus
    for c in alphabet:
        if c not in sub.rules:
            raise ValidationError(f"rules: no rule for letter {c!r}")
    for c, image in sub.rules.items():
        if c not in alphabet:
            raise ValidationError(f"rules: rule given for unknown letter {c!r}")
        if len(image) != q:
            raise ValidationError(f"rules[{c!r}]: length {len(image)} != modulus {q}")
        for x in image:
            if x not in alphabet:
                raise ValidationError(f"rules[{c!r}]: unknown letter {x!r}")
    return ValidationReport(sub, sub.seeds(), sub.system.is_contiguous)


@dataclass(frozen=True)
class Cell:
    position: int
    letter: Letter


@dataclass(frozen=True)
class Configuration:
    """Finite map from integer positions to letters.

    Build with :meth:`from_cells` to get conflict checking; the plain
    constructor trusts its mapping.
    """

    cells: Mapping[int, Letter] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.cells, MappingProxyType):
            object.__setattr__(self, "cells", MappingProxyType(dict(self.cells)))

    @classmethod
    def from_cells(cls, cells: Iterable[Cell | tuple[int, Letter]]) -> Configuration:
        out: dict[int, Letter] = {}
        for cell in cells:
            pos, letter = (cell.position, cell.letter) if isinstance(cell, Cell) else cell
            if pos in out:
                raise ConflictError(f"position {pos} holds both {out[pos]!r} and {letter!r}")
            out[pos] = letter
        return cls(out)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, pos) -> bool:
        return pos in self.cells

    def __getitem__(self, pos: int) -> Letter:
        return self.cells[pos]

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return dict(self.cells) == dict(other.cells)

    def __hash__(self):
        return hash(frozenset(self.cells.items()))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.cells)

    def sorted_cells(self) -> list[Cell]:
        return [Cell(p, self.cells[p]) for p in sorted(self.cells)]

    def restrict(self, lo: int, hi: int) -> list[Letter | None]:
        """Letters at positions ``lo..hi`` inclusive, ``None`` for holes."""
        return [self.cells.get(p) for p in range(lo, hi + 1)]


def substitute_cell(sub: GappedSubstitution, cell: Cell | tuple[int, Letter]) -> Configuration:
    pos, letter = (cell.position, cell.letter) if isinstance(cell, Cell) else cell
    if letter not in sub.rules:
        raise ValidationError(f"letter {letter!r} is not in the alphabet")
    q = sub.system.modulus
    return Configuration(
        {q * pos + d: x for d, x in zip(sub.system.digits, sub.rules[letter])}
    )


def substitute_config(sub: GappedSubstitution, config: Configuration) -> Configuration:
    q = sub.system.modulus
    digits = sub.system.digits
    rules = sub.rules
    out: dict[int, Letter] = {}
    for pos, letter in config.cells.items():
        try:
            image = rules[letter]
        except KeyError:
            raise ValidationError(f"letter {letter!r} is not in the alphabet") from None
        base = q * pos
        for d, x in zip(digits, image):
            out[base + d] = x
    # dict keys collapse on collision, so a short result means two images overlapped
    if len(out) != q * len(config.cells):
        raise ConflictError(
            "substituted images overlap; the digit set is not a complete residue system"
        )
    return Configuration(out)


def supertile(
    sub: GappedSubstitution, seed: Letter, k: int, *, max_cells: int = MAX_CELLS
) -> Configuration:
    """The level-``k`` supertile ``S^k`` of ``seed`` placed at the origin."""
    if k < 0:
        raise ValidationError(f"level: must be >= 0, got {k}")
    if seed not in sub.rules:
        raise ValidationError(f"seed: {seed!r} is not in the alphabet")
    if sub.system.modulus ** k > max_cells:
        raise OverflowCapError(
            f"level {k} supertile has {sub.system.modulus ** k} cells, cap is {max_cells}"
        )
    config = Configuration({0: seed})
    for _ in range(k):
        config = substitute_config(sub, config)
    return config


def iter_supertiles(sub: GappedSubstitution, seed: Letter, *, max_cells: int = MAX_CELLS):
    """Yield ``(k, S^k(seed))`` for k = 0, 1, 2, ... until the cell cap."""
    if seed not in sub.rules:
        raise ValidationError(f"seed: {seed!r} is not in the alphabet")
    config = Configuration({0: seed})
    k = 0
    while True:
        yield k, config
        if len(config) * sub.system.modulus > max_cells:
            raise OverflowCapError(
                f"level {k + 1} supertile would exceed the cap of {max_cells} cells"
            )
        config = substitute_config(sub, config)
        k += 1


# -- spec files ---------------------------------------------------------------

def substitution_from_dict(data: Mapping) -> GappedSubstitution:
    if not isinstance(data, Mapping):
        raise ValidationError("spec: top level must be a JSON object")
    for key in ("modulus", "digits", "rules"):
        if key not in data:
            raise ValidationError(f"{key}: missing")
    if not isinstance(data["digits"], list):
        raise ValidationError("digits: must be a list of integers")
    system = validate_digit_system(data["modulus"], data["digits"])
    rules = data["rules"]
    if not isinstance(rules, Mapping):
        raise ValidationError("rules: must be an object mapping letters to lists")
    alphabet = data.get("alphabet", list(rules))
    if not isinstance(alphabet, list) or not all(isinstance(c, str) for c in alphabet):
        raise ValidationError("alphabet: must be a list of strings")
    parsed = {}
    for c, image in rules.items():
        if not isinstance(image, list) or not all(isinstance(x, str) for x in image):
            raise ValidationError(f"rules[{c!r}]: must be a list of strings")
        parsed[c] = tuple(image)
    sub = GappedSubstitution(tuple(alphabet), system, parsed)
    validate_substitution(sub)
    return sub


def substitution_to_dict(sub: GappedSubstitution) -> dict:
    return {
        "modulus": sub.system.modulus,
        "digits": list(sub.system.digits),
        "alphabet": list(sub.alphabet),
        "rules": {c: list(sub.rules[c]) for c in sub.alphabet},
    }


def load_substitution(path: str | Path) -> GappedSubstitution:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"spec: cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"spec: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return substitution_from_dict(data)


def dump_substitution(sub: GappedSubstitution) -> str:
    return json.dumps(substitution_to_dict(sub), indent=2)


# -- substitutions used throughout the package ---------------------------------

def thue_morse() -> GappedSubstitution:
    return make_substitution(2, [0, 1], {"0": "01", "1": "10"})


def binary_digit_substitution(
    a_rule: Sequence[Letter], b_rule: Sequence[Letter], digits: Sequence[int] = (-1, 0, 4)
) -> GappedSubstitution:
    """Two-letter substitution with ``Q = len(digits)`` on the alphabet ``a, b``."""
    return make_substitution(len(digits), digits, {"a": tuple(a_rule), "b": tuple(b_rule)})


def gapped_example() -> GappedSubstitution:
    """a -> {(-1,b),(0,a),(4,b)}, b -> {(-1,a),(0,b),(4,a)}."""
    return binary_digit_substitution("bab", "aba")
