"""Brute-force reference implementations used only by the tests.

Nothing here imports from the package, so each oracle is an independent
route to the values it checks.
"""


def parity_thue_morse(length):
    """Thue-Morse by the parity of the binary digit sum."""
    return "".join(str(bin(i).count("1") % 2) for i in range(length))


def gapped_fixed_prefix(a_rule, b_rule, digits, levels):
    """Iterate a two-letter digit substitution on a plain dict and return
    (start, word) for the run of defined positions through 0."""
    rules = {"a": a_rule, "b": b_rule}
    q = len(digits)
    cells = {0: "a"}
    for _ in range(levels):
        new = {}
        for pos, c in cells.items():
            for d, x in zip(digits, rules[c]):
                assert q * pos + d not in new
                new[q * pos + d] = x
        cells = new
    lo = hi = 0
    while lo - 1 in cells:
        lo -= 1
    while hi + 1 in cells:
        hi += 1
    return lo, "".join(cells[p] for p in range(lo, hi + 1))


def count_factors(word, n):
    return len({word[i : i + n] for i in range(len(word) - n + 1)})


def brute_right_special(word, n):
    """Length-n factors followed by at least two different letters."""
    followers = {}
    for i in range(len(word) - n):
        followers.setdefault(word[i : i + n], set()).add(word[i + n])
    return {u for u, f in followers.items() if len(f) >= 2}
