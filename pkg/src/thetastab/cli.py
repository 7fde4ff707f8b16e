"""Command-line front end.

Subcommands: check, hn, canonical, nu, polytope, pair-check,
pair-canonical, sweep, oracle.  Exit status 0 on success, 1 on domain
errors (printing the owning module's error name), 2 on parse errors.
Structured output (--format structured) is a single JSON document that is
a pure function of the input file and flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import canonical as canonical_mod
from . import invariant, oracle, pairs
from .errors import ParseError, StabilityError
from .latfile import (
    format_rational,
    load_lattice,
    nu_json,
    nu_text,
    parse_delta,
    parse_rational,
)
from .lattice import PairObject, WeightedFiltration, make_chain, make_filtration
from .ratpoly import NuValue, RatPoly

APPROX_POINT = 10**6  # evaluation point for CSV audit values


def _filtration_json(f: WeightedFiltration) -> dict:
    return {
        "chain": list(f.chain),
        "weights": list(f.weights),
        "graded": [
            {"weight": w, "poly": str(g.poly), "rank": format_rational(g.rank)}
            for w, g in zip(f.weights, f.gradeds)
        ],
    }


def _filtration_text(f: WeightedFiltration) -> list[str]:
    lines = [f"chain (top first): {' > '.join(f.chain)}", f"weights: {list(f.weights)}"]
    for w, g in reversed(list(zip(f.weights, f.gradeds))):
        lines.append(f"  graded piece at weight {w}: {g.poly} (rank {format_rational(g.rank)})")
    return lines


def _parse_chain_arg(text: str) -> tuple[str, ...]:
    items = tuple(part.strip() for part in text.split(",") if part.strip())
    if not items:
        raise ParseError(f"empty chain literal {text!r}")
    return items


def _parse_weights_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad weights literal {text!r}") from exc


def _emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "structured":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


# -- subcommand handlers ----------------------------------------------------

def _cmd_check(args) -> dict:
    lat, _ = load_lattice(args.input)
    verdict, witness = canonical_mod.is_semistable(lat)
    payload = {
        "command": "check",
        "semistable": verdict,
        "witness": None if witness is None else witness.id,
    }
    lines = ["semistable" if verdict else f"unstable (witness: {witness.id})"]
    _emit(payload, lines, args.format)
    return payload


def _cmd_hn(args) -> dict:
    lat, _ = load_lattice(args.input)
    hn = canonical_mod.hn_filtration(lat)
    payload = {"command": "hn", "chain": list(hn.chain.chain)}
    lines = [f"HN chain (top first): {' > '.join(hn.chain.chain)}"]
    _emit(payload, lines, args.format)
    return payload


def _cmd_canonical(args) -> dict:
    lat, _ = load_lattice(args.input)
    filt = canonical_mod.canonical_filtration(lat)
    value = invariant.nu(filt)
    payload = {
        "command": "canonical",
        "filtration": _filtration_json(filt),
        "nu": nu_json(value),
    }
    lines = _filtration_text(filt) + [f"nu: {nu_text(value)}"]
    _emit(payload, lines, args.format)
    return payload


def _cmd_nu(args) -> dict:
    lat, pair = load_lattice(args.input)
    if args.chain is None or args.weights is None:
        raise ParseError("nu requires --chain and --weights")
    delta = parse_delta(args.delta) if args.delta is not None else None
    filt = make_filtration(lat, _parse_chain_arg(args.chain), _parse_weights_arg(args.weights), pair)
    value = invariant.nu_delta(filt, delta)
    payload = {"command": "nu", "nu": nu_json(value), "delta": args.delta}
    lines = [f"nu: {nu_text(value)}"]
    _emit(payload, lines, args.format)
    return payload


def _cmd_polytope(args) -> dict:
    lat, _ = load_lattice(args.input)
    if args.chain is not None:
        chain = make_chain(lat, _parse_chain_arg(args.chain))
    else:
        chain = canonical_mod.leading_term(canonical_mod.hn_filtration(lat)).chain
    index = args.index if args.index is not None else lat.dim - 1
    hull = invariant.polytope(chain, index)
    vertices = [[format_rational(x), format_rational(y)] for x, y in hull.vertices]
    payload = {"command": "polytope", "index": index, "chain": list(chain.chain), "vertices": vertices}
    lines = [f"slope index: {index}", f"hull vertices (ccw): {vertices}"]
    _emit(payload, lines, args.format)
    return payload


def _require_pair(pair: PairObject | None) -> PairObject:
    if pair is None:
        raise ParseError("this command needs a lattice file with a pair section")
    return pair


def _cmd_pair_check(args) -> dict:
    lat, pair = load_lattice(args.input)
    delta = parse_delta(args.delta)
    verdict, witness = pairs.pair_semistable(_require_pair(pair), delta)
    payload = {
        "command": "pair-check",
        "delta": args.delta,
        "semistable": verdict,
        "witness": None if witness is None else witness.id,
    }
    lines = [
        ("semistable" if verdict else "unstable")
        + (f" (witness: {witness.id})" if witness is not None else "")
    ]
    _emit(payload, lines, args.format)
    return payload


def _cmd_pair_canonical(args) -> dict:
    lat, pair = load_lattice(args.input)
    pair = _require_pair(pair)
    delta = parse_delta(args.delta)
    result = pairs.pair_canonical(pair, delta, bound=args.bound)
    payload = {
        "command": "pair-canonical",
        "delta": args.delta,
        "source": result.source,
        "filtration": _filtration_json(result.filtration),
        "nu_delta": nu_json(result.value),
    }
    lines = _filtration_text(result.filtration) + [
        f"nu_delta: {nu_text(result.value)}",
        f"found via: {result.source}",
    ]
    if result.source == "closed-form":
        check = oracle.brute_force_max(lat, pair=pair, delta=delta, bound=args.bound)
        agrees = (
            check.best is not None
            and check.best.chain == result.filtration.chain
            and check.best.weights == result.filtration.weights
        )
        payload["oracle_agrees"] = agrees
        lines.append(f"oracle (bound {args.bound}) agrees: {agrees}")
    _emit(payload, lines, args.format)
    return payload


def _cmd_sweep(args) -> dict:
    lat, pair = load_lattice(args.input)
    pair = _require_pair(pair)
    if not args.sweep_deltas:
        raise ParseError("sweep requires --sweep-deltas v1,v2,...")
    values = [parse_rational(part) for part in args.sweep_deltas.split(",")]
    rows = []
    previous = None
    for val in values:
        verdict, witness = pairs.pair_semistable(pair, RatPoly.const(val))
        wall = previous is not None and verdict != previous
        rows.append(
            {
                "delta": format_rational(val),
                "semistable": verdict,
                "witness": None if witness is None else witness.id,
                "wall": wall,
            }
        )
        previous = verdict
    payload = {"command": "sweep", "rows": rows}
    lines = []
    for row in rows:
        marker = "  <-- wall" if row["wall"] else ""
        state = "semistable" if row["semistable"] else f"unstable ({row['witness']})"
        lines.append(f"delta = {row['delta']}: {state}{marker}")
    _emit(payload, lines, args.format)
    return payload


def _cmd_oracle(args) -> dict:
    lat, pair = load_lattice(args.input)
    delta = parse_delta(args.delta) if args.delta is not None else None
    result = oracle.brute_force_max(lat, pair=pair, delta=delta, bound=args.bound)
    payload = {
        "command": "oracle",
        "bound": args.bound,
        "explored": result.explored,
        "value": nu_json(result.value),
        "best": None if result.best is None else _filtration_json(result.best),
    }
    lines = [f"candidates explored: {result.explored}"]
    if result.best is None:
        lines.append(f"semistable: max value {nu_text(result.value)}")
    else:
        lines.extend(_filtration_text(result.best))
        lines.append(f"max nu: {nu_text(result.value)}")
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["chain", "weights", "L", "b", f"value_at_{APPROX_POINT}"])
            for chain, weights, value in oracle.iter_candidates(lat, pair, delta, args.bound):
                writer.writerow(
                    [
                        "|".join(chain),
                        "|".join(str(w) for w in weights),
                        str(value.L),
                        format_rational(value.b),
                        f"{value.approx(APPROX_POINT):.6g}",
                    ]
                )
        lines.append(f"candidate dump written to {args.csv}")
    _emit(payload, lines, args.format)
    return payload


_HANDLERS = {
    "check": _cmd_check,
    "hn": _cmd_hn,
    "canonical": _cmd_canonical,
    "nu": _cmd_nu,
    "polytope": _cmd_polytope,
    "pair-check": _cmd_pair_check,
    "pair-canonical": _cmd_pair_canonical,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetastab",
        description="Exact stability computations on Hilbert-polynomial lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, *, delta=False, bound=False, index=False,
            chain=False, sweep=False, csv_flag=False):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("input", help="path to a lattice file")
        if delta:
            cmd.add_argument("--delta", default=None if name in ("nu", "oracle") else "0",
                             help="Laurent polynomial literal, e.g. '1/2', 'n', '-n^2'")
        if bound:
            cmd.add_argument("--bound", type=int, default=6, help="oracle weight bound W")
        if index:
            cmd.add_argument("--index", type=int, default=None, help="slope index i")
        if chain:
            cmd.add_argument("--chain", default=None, help="comma-separated member ids, top first")
            cmd.add_argument("--weights", default=None, help="comma-separated integers")
        if sweep:
            cmd.add_argument("--sweep-deltas", default=None,
                             help="comma-separated constant delta values")
        if csv_flag:
            cmd.add_argument("--csv", default=None, help="dump all candidates to this CSV file")
        cmd.add_argument("--format", choices=("text", "structured"), default="text")
        return cmd

    add("check", "Gieseker semistability verdict plus witness")
    add("hn", "greedy Harder-Narasimhan chain")
    add("canonical", "weighted leading-term filtration and its nu")
    add("nu", "invariant of a user-supplied filtration", delta=True, chain=True)
    add("polytope", "slope polytope of a chain (default: leading-term chain)",
        index=True, chain=True)
    add("pair-check", "pair semistability at a given delta", delta=True)
    add("pair-canonical", "canonical destabilizing pair filtration", delta=True, bound=True)
    add("sweep", "per-delta verdict table with wall markers", sweep=True)
    add("oracle", "brute-force maximum over bounded weights", delta=True, bound=True,
        csv_flag=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        handler(args)
    except ParseError as exc:
        print(f"error: ParseError: {exc}", file=sys.stderr)
        return 2
    except StabilityError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    entry()
