"""``gapsub`` command line.

Every option can also be set through an environment variable named
``GAPSUB_<OPTION>`` (for example ``GAPSUB_MAX_N=10``).  Exit status is 0 on
success, 1 when a requested check fails, 2 for invalid input, 3 when counts
do not stabilize and 4 when a size cap is hit.  Errors are reported on one
stderr line as ``error: <kind>: <message>``.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import complexity as cx
from .core import load_substitution, supertile, validate_substitution
from .errors import (
    CoverageError,
    GapSubError,
    OverflowCapError,
    StabilizationError,
    ValidationError,
)
from .fixedpoint import central_patch, fixed_prefix
from .recoding import complexity_shift, derive_block_substitution
from .table import csv_record, run_table, table_csv

ERROR_KINDS = (
    (CoverageError, "coverage"),
    (ValidationError, "validation"),
    (StabilizationError, "stabilization"),
    (OverflowCapError, "overflow"),
    (GapSubError, "error"),
)


def _kind(exc: GapSubError) -> str:
    return next(name for cls, name in ERROR_KINDS if isinstance(exc, cls))


def _one_line(text: str) -> str:
    return " ".join(str(text).split())


def _sep(word) -> str:
    return "" if all(len(c) == 1 for c in word) else " "


def _join(word) -> str:
    return _sep(word).join(word)


def _seed_for(sub, seed):
    if seed is not None:
        return seed
    seeds = validate_substitution(sub).seeds
    if not seeds:
        raise ValidationError("seed: the substitution has no fixed seed")
    return seeds[0]


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


spec_argument = click.argument("spec", type=click.Path(dir_okay=False))
seed_option = click.option(
    "--seed", envvar="GAPSUB_SEED", default=None, help="Seed letter (default: first fixed seed)."
)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Gapped digit substitutions: supertiles, complexity, recoding."""


@main.command()
@spec_argument
def validate(spec):
    """Check a substitution spec file and list its fixed seeds."""
    sub = load_substitution(spec)
    report = validate_substitution(sub)
    click.echo("valid")
    click.echo(f"modulus: {sub.modulus}")
    click.echo(f"digits: {' '.join(map(str, sub.digits))}")
    click.echo(f"contiguous: {'yes' if report.contiguous else 'no'}")
    click.echo(f"seeds: {' '.join(report.seeds)}")


@main.command("supertile")
@spec_argument
@seed_option
@click.option("--level", envvar="GAPSUB_LEVEL", type=int, required=True)
@click.option("--json", "as_json", envvar="GAPSUB_JSON", is_flag=True)
def supertile_cmd(spec, seed, level, as_json):
    """Print the cells of a level-k supertile."""
    sub = load_substitution(spec)
    seed = _seed_for(sub, seed)
    config = supertile(sub, seed, level)
    cells = config.sorted_cells()
    if as_json:
        payload = {"seed": seed, "level": level, "cells": [[c.position, c.letter] for c in cells]}
        click.echo(json.dumps(payload))
    else:
        for c in cells:
            click.echo(f"{c.position}\t{c.letter}")


def _echo_patch(patch) -> None:
    click.echo(f"start: {patch.start}")
    click.echo(f"length: {len(patch)}")
    click.echo(f"word: {_join(patch.letters)}")


@main.command()
@spec_argument
@seed_option
@click.option("--level", envvar="GAPSUB_LEVEL", type=int, required=True)
def patch(spec, seed, level):
    """Print the central patch of a supertile."""
    sub = load_substitution(spec)
    _echo_patch(central_patch(sub, _seed_for(sub, seed), level))


@main.command()
@spec_argument
@seed_option
@click.option("--min-len", envvar="GAPSUB_MIN_LEN", type=int, required=True)
def prefix(spec, seed, min_len):
    """Print a fixed-point prefix of at least the given length."""
    sub = load_substitution(spec)
    _echo_patch(fixed_prefix(sub, _seed_for(sub, seed), min_len))


@main.command("complexity")
@spec_argument
@seed_option
@click.option("--max-n", envvar="GAPSUB_MAX_N", type=int, required=True)
@click.option("--csv", "csv_path", envvar="GAPSUB_CSV", default=None, help="Write a table-style CSV row.")
def complexity_cmd(spec, seed, max_n, csv_path):
    """Print p(n) and s(n) of the fixed point."""
    sub = load_substitution(spec)
    seed = _seed_for(sub, seed)
    profile = cx.complexity_profile(sub, seed, max_n)
    click.echo(f"# stabilized at level {profile.stabilized_at_level}, prefix length {profile.prefix_length}")
    click.echo("n\tp\ts")
    for n in range(1, max_n + 1):
        click.echo(f"{n}\t{profile.p_at(n)}\t{profile.s_at(n)}")
    if csv_path:
        header = [f"{c}{i}" for c in sub.alphabet for i in range(1, sub.modulus + 1)]
        header += ["digits"] + [f"p{n}" for n in range(2, max_n + 1)]
        letters = [x for c in sub.alphabet for x in sub.rules[c]]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerow(csv_record(letters, sub.digits, profile.p[1:]))
        _write(csv_path, buf.getvalue())


@main.command()
@spec_argument
@seed_option
@click.option("--max-n", envvar="GAPSUB_MAX_N", type=int, required=True)
@click.option("--tree", "tree_path", envvar="GAPSUB_TREE", default=None, help="Write the tree as DOT.")
def special(spec, seed, max_n, tree_path):
    """List right special words up to the given length."""
    sub = load_substitution(spec)
    seed = _seed_for(sub, seed)
    tree = cx.right_special_tree(sub, seed, max_n)
    for n in sorted(tree.levels):
        words = sorted(tree.levels[n])
        click.echo(f"{n}\t{len(words)}\t{' '.join(_join(w) for w in words)}")
    if tree_path:
        _write(tree_path, tree.to_dot())


@main.command()
@spec_argument
@seed_option
@click.option("--window", envvar="GAPSUB_WINDOW", type=int, default=3, show_default=True)
@click.option("--emit-rules", envvar="GAPSUB_EMIT_RULES", default=None, help="Write the derived rules as JSON.")
@click.option("--length", envvar="GAPSUB_LENGTH", type=int, default=60, show_default=True)
def recode(spec, seed, window, emit_rules, length):
    """Derive the constant-length substitution on width-N windows."""
    sub = load_substitution(spec)
    seed = _seed_for(sub, seed)
    block = derive_block_substitution(sub, window, seed)
    recoding = block.recoding
    pre = fixed_prefix(sub, seed, length + window - 1)
    recoded = recoding.recode_positioned(pre)
    click.echo(f"recoded prefix (start {recoded.start}): {_join(recoded.letters[:length])}")
    click.echo(f"seed: {block.seed}")
    for label in block.substitution.alphabet:
        window_text = "".join(recoding.windows()[label])
        click.echo(f"T({label}) = {_join(block.rules[label])}\t[{window_text}]")
    if emit_rules:
        _write(emit_rules, json.dumps(block.to_dict(), indent=2) + "\n")


@main.command("shift-check")
@spec_argument
@seed_option
@click.option("--window", envvar="GAPSUB_WINDOW", type=int, required=True)
@click.option("--max-n", envvar="GAPSUB_MAX_N", type=int, required=True)
def shift_check(spec, seed, window, max_n):
    """Check p_recoded(n) = p(n + N - 1) for n <= max-n."""
    sub = load_substitution(spec)
    report = complexity_shift(sub, window, max_n, _seed_for(sub, seed))
    k = window - 1
    click.echo("n\tp_recoded\tp_original(n+N-1)")
    for n in range(1, max_n + 1):
        click.echo(f"{n}\t{report.recoded[n - 1]}\t{report.original[n - 1 + k]}")
    click.echo(f"holds: {'true' if report.holds else 'false'}")
    if not report.holds:
        sys.exit(1)


@main.command()
@click.option("--out", envvar="GAPSUB_OUT", default=None, help="CSV destination (default stdout).")
@click.option("--workers", envvar="GAPSUB_WORKERS", type=int, default=1, show_default=True)
def table(out, workers):
    """Recompute the 18-row Q = 3 comparison table."""
    rows = run_table(workers=workers)
    text = table_csv(rows)
    if out:
        _write(out, text)
    else:
        click.echo(text, nl=False)
    failed = [r for r in rows if r.diagnostic]
    for r in failed:
        click.echo(f"warning: row {r.a_rule}|{r.b_rule}: {_one_line(r.diagnostic)}", err=True)
    if failed:
        sys.exit(StabilizationError.exit_code)


@main.command("tm-reference")
@click.option("--max-n", envvar="GAPSUB_MAX_N", type=int, required=True)
def tm_reference(max_n):
    """Thue-Morse p(n) and s(n) from the closed forms."""
    click.echo("n\tp\ts")
    for n in range(0, max_n + 1):
        click.echo(f"{n}\t{cx.tm_complexity_closed_form(n)}\t{cx.tm_special_closed_form(n)}")


def run(argv=None) -> int:
    """Entry point returning the exit status instead of raising SystemExit."""
    try:
        main.main(args=argv, prog_name="gapsub", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except GapSubError as exc:
        click.echo(f"error: {_kind(exc)}: {_one_line(exc)}", err=True)
        return exc.exit_code
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
