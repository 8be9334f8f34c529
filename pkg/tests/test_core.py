import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapsub.core import (
    Cell,
    Configuration,
    DigitSystem,
    GappedSubstitution,
    dump_substitution,
    gapped_example,
    iter_supertiles,
    load_substitution,
    make_substitution,
    substitute_cell,
    substitute_config,
    substitution_from_dict,
    supertile,
    thue_morse,
    validate_digit_system,
    validate_substitution,
)
from gapsub.errors import ConflictError, OverflowCapError, ValidationError

S = gapped_example()
TM = thue_morse()

S2_CELLS = {-4: "a", -3: "b", -1: "b", 0: "a", 1: "a", 4: "b", 11: "a", 12: "b", 16: "a"}


# -- digit systems --------------------------------------------------------------

@pytest.mark.parametrize("q, digits", [(3, [-1, 0, 4]), (2, [0, 1]), (3, [-1, 0, 1]), (5, [0, 6, 12, -2, 4])])
def test_valid_digit_systems(q, digits):
    ds = validate_digit_system(q, digits)
    assert ds.modulus == q
    assert ds.digits == tuple(digits)


@pytest.mark.parametrize(
    "q, digits, fragment",
    [
        (2, [0, 2], "0 and 2 share residue 0"),
        (3, [0, 1], "cardinality 2 != modulus 3"),
        (1, [0], "at least 2"),
        (3, [0, 1, 1], "share residue 1"),
        (3, [0, 1, 2.0], "integers"),
    ],
)
def test_invalid_digit_systems(q, digits, fragment):
    with pytest.raises(ValidationError, match=fragment):
        validate_digit_system(q, digits)


def test_digit_order_is_kept():
    assert validate_digit_system(3, [4, -1, 0]).digits == (4, -1, 0)


def test_contiguity():
    assert validate_digit_system(3, [-1, 0, 1]).is_contiguous
    assert validate_digit_system(2, [1, 0]).is_contiguous
    assert not validate_digit_system(3, [-1, 0, 4]).is_contiguous


@st.composite
def digit_systems(draw, max_q=12):
    q = draw(st.integers(2, max_q))
    shifts = draw(st.lists(st.integers(-5, 5), min_size=q, max_size=q))
    digits = [r + q * k for r, k in enumerate(shifts)]
    order = draw(st.permutations(range(q)))
    return validate_digit_system(q, [digits[i] for i in order])


@settings(max_examples=1000, deadline=None)
@given(digit_systems(), st.integers(-10_000, 10_000))
def test_unique_expansion(ds, m):
    hits = [(m - d) // ds.modulus for d in ds.digits if (m - d) % ds.modulus == 0]
    assert len(hits) == 1
    assert ds.expand(m) == (hits[0], m - ds.modulus * hits[0])


def test_unique_expansion_window_for_paper_system():
    ds = S.system
    for m in range(-10_000, 10_001):
        pairs = [(j, d) for d in ds.digits for j in [(m - d) // 3] if 3 * j + d == m]
        assert len(pairs) == 1


# -- substitutions -------------------------------------------------------------

def test_validate_paper_substitution():
    report = validate_substitution(S)
    assert report.seeds == ("a", "b")
    assert not report.contiguous


def test_validate_thue_morse():
    report = validate_substitution(TM)
    assert report.seeds == ("0", "1")
    assert report.contiguous


def test_rule_length_mismatch():
    with pytest.raises(ValidationError, match=r"rules\['a'\]: length 2 != modulus 3"):
        make_substitution(3, [-1, 0, 4], {"a": "ba", "b": "aba"})


def test_unknown_letter_in_rule():
    with pytest.raises(ValidationError, match="unknown letter 'c'"):
        make_substitution(3, [-1, 0, 4], {"a": "bac", "b": "aba"})


def test_missing_rule():
    sub = GappedSubstitution(("a", "b"), DigitSystem(2, (0, 1)), {"a": ("a", "b")})
    with pytest.raises(ValidationError, match="no rule for letter 'b'"):
        validate_substitution(sub)


def test_seeds_need_zero_digit():
    sub = make_substitution(3, [1, 2, 3], {"a": "aaa"})
    assert validate_substitution(sub).seeds == ()


def test_larger_alphabet():
    sub = make_substitution(2, [0, 1], {"x": ["x", "y"], "y": ["z", "x"], "z": ["y", "y"]})
    assert sub.seeds() == ("x",)
    assert len(supertile(sub, "x", 5)) == 32


# -- applying the substitution ----------------------------------------------------

@pytest.mark.parametrize(
    "cell, expected",
    [
        ((0, "a"), {-1: "b", 0: "a", 4: "b"}),
        ((1, "a"), {2: "b", 3: "a", 7: "b"}),
        ((0, "b"), {-1: "a", 0: "b", 4: "a"}),
    ],
)
def test_substitute_cell(cell, expected):
    assert dict(substitute_cell(S, Cell(*cell)).cells) == expected


def test_substitute_cell_unknown_letter():
    with pytest.raises(ValidationError):
        substitute_cell(S, (0, "c"))


def test_single_cell_config_matches_cell():
    assert substitute_config(S, Configuration({0: "a"})) == substitute_cell(S, (0, "a"))


def test_second_iterate():
    s1 = substitute_config(S, Configuration({0: "a"}))
    assert dict(substitute_config(S, s1).cells) == S2_CELLS


def test_five_letter_word():
    word = Configuration({-2: "a", -1: "b", 0: "a", 1: "b", 2: "a"})
    image = substitute_config(S, word)
    expected_positions = {3 * l + d for l in range(-2, 3) for d in (-1, 0, 4)}
    assert set(image.cells) == expected_positions
    assert len(image) == 15
    assert min(image.cells) == -7 and max(image.cells) == 10
    # the run through the origin covers S(0, c) = {-1, 0, 4}; -5 is a hole
    assert all(p in image for p in range(-4, 8))
    assert -5 not in image and 8 not in image


def test_configuration_conflict():
    with pytest.raises(ConflictError, match="position 3"):
        Configuration.from_cells([(3, "a"), (3, "b")])


def test_conflict_guard_fires_on_broken_system():
    broken = GappedSubstitution(("a",), DigitSystem(2, (0, 2)), {"a": ("a", "a")})
    with pytest.raises(ConflictError):
        substitute_config(broken, Configuration({0: "a", 1: "a"}))


@st.composite
def substitutions_and_configs(draw):
    ds = draw(digit_systems(max_q=6))
    letters = ["a", "b", "c"][: draw(st.integers(1, 3))]
    rules = {c: draw(st.lists(st.sampled_from(letters), min_size=ds.modulus, max_size=ds.modulus)) for c in letters}
    sub = make_substitution(ds.modulus, ds.digits, rules, alphabet=letters)
    positions = draw(st.sets(st.integers(-500, 500), min_size=1, max_size=1000))
    config = Configuration({p: draw(st.sampled_from(letters)) for p in positions})
    return sub, config


@settings(max_examples=150, deadline=None)
@given(substitutions_and_configs())
def test_conflict_freeness(case):
    sub, config = case
    out = substitute_config(sub, config)
    assert len(out) == sub.modulus * len(config)


# -- supertiles -----------------------------------------------------------------

def test_supertile_level_zero():
    assert dict(supertile(S, "a", 0).cells) == {0: "a"}


def test_supertile_level_two():
    assert dict(supertile(S, "a", 2).cells) == S2_CELLS


def test_supertile_level_three():
    tile = supertile(S, "a", 3)
    assert len(tile) == 27
    assert "".join(tile.restrict(-1, 4)) == "baabab"


def _support_oracle(digits, q, k):
    support = {0}
    for _ in range(k):
        support = {q * x + d for x in support for d in digits}
    return support


@pytest.mark.parametrize("k", range(0, 9))
def test_support_recursion(k):
    tile = supertile(S, "b", k)
    nxt = supertile(S, "b", k + 1)
    assert set(nxt.cells) == {3 * x + d for x in tile.cells for d in (-1, 0, 4)}
    assert set(tile.cells) == _support_oracle((-1, 0, 4), 3, k)
    assert len(tile) == 3**k


@pytest.mark.parametrize("q", [2, 3, 5])
def test_constant_length_supertile_is_an_interval(q):
    sub = make_substitution(q, list(range(q)), {"x": ["x"] * q})
    for k in range(5):
        assert set(supertile(sub, "x", k).cells) == set(range(q**k))


def test_thue_morse_level_four():
    assert "".join(supertile(TM, "0", 4).restrict(0, 15)) == "0110100110010110"


def test_supertile_cap():
    with pytest.raises(OverflowCapError):
        supertile(S, "a", 20, max_cells=10_000)
    with pytest.raises(OverflowCapError):
        for _ in iter_supertiles(S, "a", max_cells=100):
            pass


def test_supertile_bad_level():
    with pytest.raises(ValidationError):
        supertile(S, "a", -1)


# -- spec files -----------------------------------------------------------------

PAPER_SPEC = {
    "modulus": 3,
    "digits": [-1, 0, 4],
    "alphabet": ["a", "b"],
    "rules": {"a": ["b", "a", "b"], "b": ["a", "b", "a"]},
}


def test_spec_round_trip(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(PAPER_SPEC))
    sub = load_substitution(path)
    assert sub == S
    assert json.loads(dump_substitution(sub)) == PAPER_SPEC


@pytest.mark.parametrize(
    "patch, field",
    [
        ({"modulus": 2}, "digits"),
        ({"digits": [0, 3, 6]}, "digits"),
        ({"digits": "0,1,2"}, "digits"),
        ({"rules": {"a": ["b", "a"], "b": ["a", "b", "a"]}}, r"rules\['a'\]"),
        ({"rules": {"a": ["b", "a", "c"], "b": ["a", "b", "a"]}}, r"rules\['a'\]"),
        ({"alphabet": "ab"}, "alphabet"),
        ({"modulus": "3"}, "modulus"),
    ],
)
def test_spec_errors_name_the_field(patch, field):
    with pytest.raises(ValidationError, match=field):
        substitution_from_dict({**PAPER_SPEC, **patch})


def test_spec_missing_key():
    data = dict(PAPER_SPEC)
    del data["rules"]
    with pytest.raises(ValidationError, match="rules: missing"):
        substitution_from_dict(data)


def test_spec_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    with pytest.raises(ValidationError, match="invalid JSON"):
        load_substitution(path)
