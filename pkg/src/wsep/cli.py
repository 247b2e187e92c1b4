"""Command-line interface: ``solve``, ``check``, ``convert`` and ``gen``.

Exit status is 0 for YES (or a valid witness), 1 for NO (or an invalid
witness) and 2 for any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracles
from .check import check_witness, resolve_witness, witness_names
from .dsfes import solve_dsfes, solve_skew_multicut, skew_to_dsfes
from .gdpc import exact_solve
from .generate import generate
from .gfvs import solve_gfvs, solve_sfvs, subset_labels
from .graph import InputError
from .instances import DSFESInstance, GroupFVSInstance, MulticutInstance, SolveOutcome
from .io import TAGS, format_weight, parse, serialize
from .multicut import solve_multicut, solve_multiway_cut
from .symcut import (brute_sym_multicut, maxsat_prime_to_dsfes, maxsat_to_symcut,
                     solve_maxsat_pa, symcut_to_maxsat)
from .transforms import edge_subdivide_undirected, vertex_split_directed


def _gdpc_outcome(out) -> SolveOutcome:
    return SolveOutcome(out.yes, tuple(sorted(out.cut)), 0,
                        stats=dict(out.stats, violated=tuple(sorted(out.violated))))


FPT = {
    "multicut": solve_multicut, "multicut-edge": solve_multicut,
    "mwc": solve_multiway_cut, "mwc-edge": solve_multiway_cut,
    "gfvs": solve_gfvs, "gfes": solve_gfvs,
    "sfvs": solve_sfvs, "sfes": solve_sfvs,
    "dsfes": solve_dsfes, "dsfvs": solve_dsfes,
    "skew": solve_skew_multicut, "skew-vertex": solve_skew_multicut,
    "symcut": brute_sym_multicut,
    "maxsat-pa": solve_maxsat_pa,
    "gdpc": lambda inst: _gdpc_outcome(exact_solve(inst)),
}

ORACLE = {
    "multicut": oracles.oracle_multicut, "multicut-edge": oracles.oracle_multicut,
    "mwc": oracles.oracle_multiway_cut, "mwc-edge": oracles.oracle_multiway_cut,
    "gfvs": oracles.oracle_gfvs, "gfes": oracles.oracle_gfvs,
    "sfvs": oracles.oracle_sfvs, "sfes": oracles.oracle_sfvs,
    "dsfes": oracles.oracle_dsfes, "dsfvs": oracles.oracle_dsfvs,
    "skew": oracles.oracle_skew, "skew-vertex": oracles.oracle_skew,
    "symcut": oracles.oracle_symcut,
    "maxsat-pa": oracles.oracle_maxsat_pa,
    "gdpc": oracles.oracle_gdpc_naive,
}


def load(problem: str, path) -> object:
    inst = parse(path)
    if inst.problem != problem:
        raise InputError(f"{path}: file holds a {inst.problem} instance, not {problem}")
    return inst


def solve(problem: str, inst, engine: str = "fpt", max_n: int | None = None) -> SolveOutcome:
    if engine == "fpt":
        return FPT[problem](inst)
    if max_n is None:
        return ORACLE[problem](inst)
    return ORACLE[problem](inst, cap=max_n)


def _cost(inst, out: SolveOutcome) -> tuple[int, int]:
    """Cardinality and weight as bounded by the budgets."""
    if inst.problem == "gdpc":
        violated = out.stats["violated"]
        return len(violated), sum(inst.bundles[b].weight for b in violated)
    return out.cardinality, out.weight


def report(inst, out: SolveOutcome, emit_witness: bool, stats: bool = False) -> str:
    if not out.yes:
        lines = ["NO"]
    else:
        count, weight = _cost(inst, out)
        lines = ["YES"]
        if emit_witness:
            lines.append(" ".join(["cut:"] + witness_names(inst, out.cut)))
        lines += [f"cardinality: {count}", f"weight: {format_weight(weight)}"]
    if stats:
        lines.append(" ".join(["stats:"] + [f"{key}={out.stats[key]}" for key in sorted(out.stats)]))
    return "\n".join(lines) + "\n"


def read_witness(path) -> list[str]:
    """Names from a ``cut:`` line, or every token when there is none."""
    text = Path(path).read_text()
    for line in text.splitlines():
        if line.startswith("cut:"):
            return line.split()[1:]
    tokens = []
    for line in text.splitlines():
        line = line.strip()
        if line in ("YES", "NO") or line.startswith(("#", "cardinality:", "weight:", "stats:")):
            continue
        tokens += line.split()
    return tokens


# each converter returns a list of derived instances
def _convert_direct(src: str, dst: str, inst) -> list:
    if (src, dst) == ("multicut-edge", "multicut"):
        sub, _ = edge_subdivide_undirected(inst.graph)
        return [MulticutInstance(sub, inst.pairs, inst.k, inst.W, "vertex")]
    if (src, dst) in (("mwc", "multicut"), ("mwc-edge", "multicut-edge")):
        return [inst.as_multicut()]
    if (src, dst) in (("sfvs", "gfvs"), ("sfes", "gfes")):
        return [GroupFVSInstance(subset_labels(inst.graph), inst.k, inst.W, inst.deletion)]
    if (src, dst) == ("dsfvs", "dsfes"):
        split, _ = vertex_split_directed(inst.graph)
        return [DSFESInstance(split, inst.k, inst.W, "edge")]
    if (src, dst) in (("skew", "dsfes"), ("skew-vertex", "dsfvs")):
        return [skew_to_dsfes(inst)]
    if (src, dst) == ("maxsat-pa", "symcut"):
        return [maxsat_to_symcut(inst).instance]
    if (src, dst) == ("maxsat-pa", "dsfes"):
        return [maxsat_prime_to_dsfes(inst).instance]
    if (src, dst) == ("symcut", "maxsat-pa"):
        return [symcut_to_maxsat(inst).instance]
    return None


def _convert_dump(src: str, dst: str, inst) -> list:
    """Intermediate instances met while solving ``inst``."""
    seen: list = []
    if dst == "gdpc" and src in ("multicut", "multicut-edge", "mwc", "mwc-edge"):
        FPT[src](inst, on_gdpc=lambda g, *_: seen.append(g))
    elif dst == "gdpc" and src in ("dsfes", "dsfvs", "skew", "skew-vertex"):
        FPT[src](inst, on_gdpc=lambda g, *_: seen.append(g))
    elif dst == "mwc" and src in ("gfvs", "gfes", "sfvs", "sfes"):
        FPT[src](inst, on_mwc=lambda st, phi0, prob, out: seen.append(prob.instance))
    else:
        return None
    return seen


def convert(src: str, dst: str, inst) -> list:
    out = _convert_direct(src, dst, inst)
    if out is None:
        out = _convert_dump(src, dst, inst)
    if out is None:
        raise InputError(f"no conversion from {src} to {dst}")
    return out


def _parse_param(text: str) -> tuple[str, object]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise InputError(f"size parameter must look like key=value, got {text!r}")
    try:
        return key, int(value)
    except ValueError:
        try:
            return key, float(value)
        except ValueError:
            return key, value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wsep", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("problem", choices=TAGS)
    p.add_argument("file")
    p.add_argument("--engine", choices=("fpt", "oracle"), default="fpt")
    p.add_argument("--emit-witness", action="store_true", help="print the cut line")
    p.add_argument("--max-n", type=int, default=None, help="oracle size cap")
    p.add_argument("--stats", action="store_true", help="print solver counters")

    p = sub.add_parser("check", help="validate a witness")
    p.add_argument("problem", choices=TAGS)
    p.add_argument("file")
    p.add_argument("--witness", required=True)

    p = sub.add_parser("convert", help="print reduced or intermediate instances")
    p.add_argument("source", choices=TAGS)
    p.add_argument("target", choices=TAGS)
    p.add_argument("file")

    p = sub.add_parser("gen", help="print a seeded random instance")
    p.add_argument("problem", choices=TAGS)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("params", nargs="*", metavar="key=value", help="size parameters, e.g. n=6 k=2")
    return ap


def run(argv=None, out=sys.stdout) -> int:
    parser = build_parser()
    # key=value pairs after --seed are left over by argparse; only gen takes them
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "gen":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if args.command == "solve":
        inst = load(args.problem, args.file)
        res = solve(args.problem, inst, args.engine, args.max_n)
        out.write(report(inst, res, args.emit_witness, args.stats))
        return 0 if res.yes else 1
    if args.command == "check":
        inst = load(args.problem, args.file)
        ids = resolve_witness(inst, read_witness(args.witness))
        rep = check_witness(inst, ids)
        out.write("VALID\n" if rep.ok else "INVALID\n")
        out.writelines(f"violation: {v}\n" for v in rep.violations)
        return 0 if rep.ok else 1
    if args.command == "convert":
        inst = load(args.source, args.file)
        derived = convert(args.source, args.target, inst)
        for i, d in enumerate(derived):
            if len(derived) > 1:
                out.write(f"# instance {i + 1} of {len(derived)}\n")
            out.write(serialize(d))
        return 0
    params = dict(_parse_param(p) for p in args.params + extra)
    out.write(serialize(generate(args.problem, args.seed, **params)))
    return 0


def main(argv=None) -> int:
    try:
        code = run(argv)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = 2
    except SystemExit as exc:
        code = 2 if exc.code not in (0, None) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
