"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import generators
from .construct import ConstructionError, construct_general
from .exact import (
    SizeGuardError,
    domination_number,
    gamma_p_exact,
    spider_number,
    strong_support_count,
    zero_forcing_number,
)
from .graph import GraphError, Multigraph
from .io import read_graph, to_dot, write_graph
from .observe import PdsCertificate, TraceError, make_certificate, verify_certificate
from .products import flaw_witness_search, pd_bounds
from .structure import cartesian_product, classify, triangle_expansion

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

SEEDED = {"random_tree", "random_cubic_multigraph", "bridged_cubic"}


class UsageError(Exception):
    pass


def _parse_param(p: str):
    try:
        return int(p)
    except ValueError:
        try:
            return float(p)
        except ValueError:
            return p


def build_family(family: str, params: list[str], seed: int, base: Path | None = None) -> Multigraph:
    if family == "triangle_expansion":
        if len(params) != 1:
            raise UsageError("triangle_expansion takes one graph file")
        src = Path(params[0])
        if base is not None and not src.is_absolute():
            src = base / src
        return triangle_expansion(read_graph(src))
    values = [_parse_param(p) for p in params]
    if family in SEEDED:
        return generators.generate(family, *values, seed) if len(values) == 1 \
            else generators.generate(family, *values)
    return generators.generate(family, *values)


def _load(path: str) -> Multigraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    g = build_family(args.family, args.params, args.seed)
    write_graph(g, args.output)
    print(f"wrote {args.family} n={g.n} m={g.m} to {args.output}")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _load(args.file)
    what = args.what
    if what == "pd":
        k, w = gamma_p_exact(g, args.model)
    elif what == "dom":
        k, w = domination_number(g)
    elif what == "zf":
        k, w = zero_forcing_number(g)
    elif what == "vs":
        k, w = strong_support_count(g), ()
    else:
        k, parts = spider_number(g)
        print(k)
        print("partition:", parts)
        return EXIT_OK
    print(k)
    if w:
        print("witness:", list(w))
    return EXIT_OK


def cmd_construct(args) -> int:
    g = _load(args.file)
    comps = g.components()
    if len(comps) == 1:
        cert = construct_general(g)
        logs = [cert.log]
    else:
        chosen, bound, logs = [], Fraction(0), []
        for c in comps:
            sub, labels = g.induced(c)
            sc = construct_general(sub)
            chosen += [labels[v] for v in sc.seed]
            bound += sc.bound
            logs.append(sc.log)
        cert = make_certificate(g, chosen, "vertex", bound)
    ok, reason = verify_certificate(cert, g)
    print(f"size {cert.size} bound {cert.bound} set {list(cert.seed)}")
    if args.cert:
        Path(args.cert).write_text(json.dumps(cert.to_json(), indent=1) + "\n")
    if args.log:
        Path(args.log).write_text("\n".join(lg.describe() for lg in logs) + "\n")
    if args.dot:
        Path(args.dot).write_text(to_dot(g, cert.seed))
    if not ok:
        print(f"verification failed: {reason}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.file)
    try:
        doc = json.loads(Path(args.cert).read_text())
        cert = PdsCertificate.from_json(doc)
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc}") from None
    except (json.JSONDecodeError, TraceError) as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ok, reason = verify_certificate(cert, g)
    print("valid" if ok else f"invalid: {reason}")
    return EXIT_OK if ok else EXIT_FAIL


def _report_row(report) -> dict:
    return {
        "lower_factor": report.lower_factor,
        "lower_vs": report.lower_vs,
        "upper_order": report.upper_order,
        "upper_gamma_z": report.upper_gamma_z,
        "exact": "-" if report.exact is None else report.exact,
        "equality_flags": ";".join(f"{k}={v}" for k, v in sorted(report.equality_flags.items())) or "-",
    }


def cmd_bounds(args) -> int:
    g, h = _load(args.g), _load(args.h)
    report = pd_bounds(g, h, compute_exact=args.exact, compute_zf=args.zf)
    for k, v in _report_row(report).items():
        print(f"{k}: {v}")
    if report.zf_exact is not None:
        print(f"zero_forcing_exact: {report.zf_exact}")
    if not report.consistent():
        print("bounds inconsistent with exact values", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_product(args) -> int:
    g, h = _load(args.g), _load(args.h)
    gh = cartesian_product(g, h)
    write_graph(gh, args.output)
    print(f"wrote product n={gh.n} m={gh.m} to {args.output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# batch mode


def read_manifest(path: str | Path, seed: int) -> list[tuple[str, Multigraph]]:
    """Manifest lines: ``<id> <graph file>`` or ``<id> gen:<family> [params...]``."""
    p = Path(path)
    out = []
    for raw in p.read_text().splitlines():
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) < 2:
            raise UsageError(f"manifest line needs an id and a source: {raw!r}")
        gid, src, params = line[0], line[1], line[2:]
        if src.startswith("gen:"):
            g = build_family(src[4:], params, seed, base=p.parent)
        else:
            f = Path(src)
            g = _load(str(f if f.is_absolute() else p.parent / f))
        out.append((gid, g))
    return out


def _guarded(fn):
    try:
        return fn()
    except (SizeGuardError, GraphError, ConstructionError):
        return None


CORPUS_FIELDS = ["id", "n", "m", "gamma_p", "gamma", "zf", "vs", "witness", "construct"]


def corpus_row(item: tuple[str, Multigraph]) -> dict:
    gid, g = item
    pd = _guarded(lambda: gamma_p_exact(g))
    gamma = _guarded(lambda: domination_number(g))
    zf = _guarded(lambda: zero_forcing_number(g))
    construct = "-"
    flags = classify(g)
    if flags.cubic and flags.claw_free and flags.diamond_free and flags.simple and flags.connected:
        cert = _guarded(lambda: construct_general(g))
        construct = "-" if cert is None else cert.size
    return {
        "id": gid,
        "n": g.n,
        "m": g.m,
        "gamma_p": "-" if pd is None else pd[0],
        "gamma": "-" if gamma is None else gamma[0],
        "zf": "-" if zf is None else zf[0],
        "vs": strong_support_count(g),
        "witness": "-" if pd is None else " ".join(map(str, pd[1])),
        "construct": construct,
    }


def _write_csv(rows: list[dict], fields: list[str], path: str) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    Path(path).write_text(buf.getvalue())


def _map(fn, items, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def cmd_corpus(args) -> int:
    items = read_manifest(args.manifest, args.seed)
    rows = _map(corpus_row, items, args.workers)
    _write_csv(rows, CORPUS_FIELDS, args.csv)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


PAIR_FIELDS = ["g_id", "h_id", "lower_factor", "lower_vs", "upper_order", "upper_gamma_z",
               "exact", "equality_flags", "witness_file"]


def cmd_bounds_corpus(args) -> int:
    """Manifest lines: ``<g id> <g source> <h id> <h source>`` (sources as in ``corpus``)."""
    p = Path(args.manifest)
    rows, bad = [], 0
    for raw in p.read_text().splitlines():
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) != 4:
            raise UsageError(f"pair manifest needs 4 fields: {raw!r}")
        gid, gsrc, hid, hsrc = line
        graphs = []
        for src in (gsrc, hsrc):
            if src.startswith("gen:"):
                fam, *params = src[4:].split(",")
                graphs.append(build_family(fam, params, args.seed, base=p.parent))
            else:
                graphs.append(_load(str(p.parent / src)))
        g, h = graphs
        report = pd_bounds(g, h, compute_exact=args.exact and g.n * h.n <= 40)
        bad += not report.consistent()
        row = {"g_id": gid, "h_id": hid, **_report_row(report), "witness_file": "-"}
        if args.flaw_dir and classify(h).tree and g.n * h.n <= 40:
            fw = flaw_witness_search(g, h)
            if fw is not None:
                out = Path(args.flaw_dir) / f"flaw_{gid}_{hid}.json"
                out.parent.mkdir(parents=True, exist_ok=True)
                out.write_text(json.dumps({"pds": list(fw.pds), "partition": [list(b) for b in fw.partition],
                                           "block": fw.block}) + "\n")
                row["witness_file"] = str(out)
        rows.append(row)
    _write_csv(rows, PAIR_FIELDS, args.csv)
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_FAIL if bad else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="powerdom", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="seed for every random family (default 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named graph family")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("solve", help="exact gamma_P / gamma / Z / v_s / sp")
    p.add_argument("file")
    p.add_argument("--model", choices=["vertex", "edge"], default=None)
    p.add_argument("--what", choices=["pd", "dom", "zf", "vs", "sp"], default="pd")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("construct", help="certified n/6 power dominating set")
    p.add_argument("file")
    p.add_argument("--cert")
    p.add_argument("--log", help="write the human-readable construction log here")
    p.add_argument("--dot", help="write a DOT drawing with the set highlighted")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify", help="replay a certificate against a graph")
    p.add_argument("cert")
    p.add_argument("file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bounds", help="Cartesian product bounds")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--zf", action="store_true", help="also compute Z of the product")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("product", help="write G □ H")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("corpus", help="batch exact values over a manifest")
    p.add_argument("manifest")
    p.add_argument("--csv", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("bounds-corpus", help="batch product bounds over a pair manifest")
    p.add_argument("manifest")
    p.add_argument("--csv", required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--flaw-dir", help="search flaw witnesses and write them here")
    p.set_defaults(fn=cmd_bounds_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SizeGuardError as exc:
        print(f"size guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv: list[str]) -> int:
    """Entry point for programmatic use; never raises ``SystemExit`` on bad arguments."""
    try:
        return main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
