"""Command-line entry point: ``gtpt <subcommand> ...``.

Exit codes: 0 success, 1 negative verdict (``iso``, ``cospectral``, and
``witness`` when no witness was found), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .conditions import (
    blocks_commuting_normal,
    certify_cospectral_by_blocks,
    commuting_condition,
    normality_condition,
    DEFAULT_BUDGET,
)
from .constructions import (
    ConstructionError,
    alternate_clustering,
    build_nonnormal_model,
    pad_bipartite,
    pad_bipartite_graph,
    parse_block_choice,
    procedure_1,
    procedure_2,
)
from .enumeration import CountingMode, EnumerationError, ModelSpec, enumerate_kappa, verify_pair
from .graph import GraphError, block_matrix, loads, to_dot
from .iso import are_isomorphic
from .spectral import approx_eigenvalues, are_cospectral, char_poly
from .transpose import partial_transpose

log = logging.getLogger("gtpt")

CSV_FIELDS = ["model", "m", "n", "mode", "kappa", "scanned", "seconds"]


class UsageError(Exception):
    pass


def _read_graph(path):
    if path is None:
        raise UsageError("missing --in")
    text = sys.stdin.read() if path == "-" else _read_text(path)
    return loads(text)


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_config(path) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed config JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config JSON must be an object")
    return data


def _dumps(obj, indent: int = 0) -> str:
    # one key per line, but lists and scalars stay on one line
    if isinstance(obj, dict) and obj:
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(str(k))}: {_dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    return json.dumps(obj, separators=(", ", ": "))


def _print_json(obj) -> None:
    sys.stdout.write(_dumps(obj) + "\n")


def _emit_graph(G, args) -> None:
    text = to_dot(G) if getattr(args, "dot", False) else G.to_json()
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _pair_key(key) -> tuple[int, int]:
    if isinstance(key, str):
        parts = key.replace("(", " ").replace(")", " ").replace(",", " ").split()
    else:
        parts = list(key)
    if len(parts) != 2:
        raise UsageError(f"bad block key {key!r}; expected \"i,j\"")
    return int(parts[0]), int(parts[1])


# --- subcommands ----------------------------------------------------------


def cmd_transpose(args) -> int:
    _emit_graph(partial_transpose(_read_graph(args.inp)), args)
    return 0


def cmd_spectrum(args) -> int:
    G = _read_graph(args.inp)
    out = {}
    if args.exact or not args.approx:
        cp = char_poly(G)
        out["charpoly"] = list(cp.coefficients)
        out["charpoly_text"] = str(cp)
    if args.approx or not args.exact:
        out["eigenvalues"] = [round(x, 12) + 0.0 for x in approx_eigenvalues(G)]
    _print_json(out)
    return 0


def cmd_cospectral(args) -> int:
    G, H = _read_graph(args.a), _read_graph(args.b)
    if G.order != H.order:
        _print_json({"cospectral": False, "reason": "vertex counts differ"})
        return 1
    verdict = are_cospectral(G, H)
    _print_json({"cospectral": verdict})
    return 0 if verdict else 1


def cmd_iso(args) -> int:
    verdict = are_isomorphic(_read_graph(args.a), _read_graph(args.b))
    _print_json({"isomorphic": verdict})
    return 0 if verdict else 1


def cmd_conditions(args) -> int:
    G = _read_graph(args.inp)
    com, nor = commuting_condition(G), normality_condition(G)
    _print_json(
        {
            "commuting": {"holds": com.holds, "violation": com.violation},
            "normality": {"holds": nor.holds, "violation": nor.violation},
            "blocks_commuting_normal": blocks_commuting_normal(block_matrix(G)),
        }
    )
    return 0


def cmd_witness(args) -> int:
    G = _read_graph(args.inp)
    cert = certify_cospectral_by_blocks(G, seed=args.seed, budget=args.budget)
    if cert is None:
        _print_json({"witness": None, "cospectral": are_cospectral(G, partial_transpose(G))})
        return 1
    W = cert.witness
    _print_json(
        {
            "witness": W.to_strings(),
            "determinant": str(W.determinant()),
            "blocks": [list(b) for b in W.verified_blocks],
            "trials": W.trials,
            "verified": cert.verify(),
        }
    )
    return 0


def _construct(args):
    cfg = _read_config(args.config)
    proc = args.procedure
    check = bool(cfg.get("check", True))
    if proc == "1":
        G = _read_graph(args.inp)
        if "clusters" not in cfg:
            raise UsageError("procedure 1 config needs \"clusters\"")
        blocks = {_pair_key(k): parse_block_choice(v) for k, v in cfg.get("blocks", {}).items()}
        return procedure_1(G, [int(c) for c in cfg["clusters"]], blocks, check_conditions=check)
    if proc == "2":
        G = _read_graph(args.inp)
        return procedure_2(G, check_conditions=check, mirror_intra=bool(cfg.get("mirror_intra", False)))
    if proc == "altcluster":
        return alternate_clustering(_read_graph(args.inp))
    if proc == "pad":
        if args.inp is not None:
            return pad_bipartite_graph(_read_graph(args.inp))
        try:
            return pad_bipartite(int(cfg["m1"]), int(cfg["m2"]), [tuple(e) for e in cfg.get("edges", [])])
        except KeyError as exc:
            raise UsageError(f"pad config needs {exc}") from None
    if proc == "thm7":
        try:
            A, n = cfg["A"], int(cfg["n"])
        except KeyError as exc:
            raise UsageError(f"thm7 config needs {exc}") from None
        return build_nonnormal_model(A, n, {_pair_key(k): v for k, v in cfg.get("blocks", {}).items()})
    raise UsageError(f"unknown procedure {proc!r}")


def cmd_construct(args) -> int:
    H = _construct(args)
    _emit_graph(H, args)
    if args.out:
        # the graph went to a file; report its verdicts on stdout
        _print_json(verify_pair(H))
    return 0


def cmd_verify(args) -> int:
    _print_json(verify_pair(_read_graph(args.inp)))
    return 0


def cmd_enumerate(args) -> int:
    spec = ModelSpec(args.model, args.m, args.n, CountingMode.parse(args.mode), not args.inter_only)
    report = enumerate_kappa(spec, jobs=args.jobs, use_symmetry=not args.no_symmetry)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
            w.writeheader()
            w.writerow(report.csv_row())
    if args.pairs:
        d = Path(args.pairs)
        d.mkdir(parents=True, exist_ok=True)
        for k, (G, T) in enumerate(report.pairs, start=1):
            (d / f"pair_{k:04d}_G.json").write_text(G.to_json())
            (d / f"pair_{k:04d}_Gtau.json").write_text(T.to_json())
    _print_json(report.to_dict(with_pairs=False))
    return 0


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gtpt", description="Cospectral graphs from the graph-theoretical partial transpose.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=0, help="seed for witness searches (default 0)")
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_in(sp):
        sp.add_argument("--in", dest="inp", metavar="FILE", help="graph JSON ('-' for stdin)")

    s = sub.add_parser("transpose", help="partial transpose of a graph")
    graph_in(s)
    s.add_argument("--out")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_transpose)

    s = sub.add_parser("spectrum", help="characteristic polynomial and eigenvalues")
    graph_in(s)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--approx", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    for name, func, text in (
        ("cospectral", cmd_cospectral, "exact cospectrality of two graphs"),
        ("iso", cmd_iso, "isomorphism of two graphs"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("--a", required=True)
        s.add_argument("--b", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("conditions", help="commuting and normality checks")
    graph_in(s)
    s.set_defaults(func=cmd_conditions)

    s = sub.add_parser("witness", help="common similarity witness for all blocks")
    graph_in(s)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("construct", help="build a graph with a procedure")
    s.add_argument("--procedure", required=True, choices=["1", "2", "altcluster", "pad", "thm7"])
    graph_in(s)
    s.add_argument("--config")
    s.add_argument("--out")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="verdicts for G and its partial transpose")
    graph_in(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="count cospectral mates of a model family")
    s.add_argument("--model", required=True)
    s.add_argument("--m", type=int, required=True, help="cluster size of the final graph")
    s.add_argument("--n", type=int, help="cluster count of the final graph")
    s.add_argument("--mode", default="dedup-graph", help="labeled, dedup-graph or dedup-pair")
    s.add_argument("--report", help="CSV output path")
    s.add_argument("--pairs", help="directory for pair JSON files")
    s.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    s.add_argument("--no-symmetry", action="store_true", help="skip orbit reduction")
    s.add_argument("--inter-only", action="store_true", help="mirror only inter-cluster edges")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphError, ConstructionError, EnumerationError) as exc:
        print(f"gtpt: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
