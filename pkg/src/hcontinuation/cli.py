"""Command-line front end.

Exit codes: 0 when every asserted property holds, 1 when a certified
property fails (the report says which), 2 for usage or configuration
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import linalg
from .continuum import ContinuumConfig, refinement_study
from .dtn import dtn_map, dtn_spectrum_probe
from .errors import HContinuationError, InvalidArgument, WrongBackend
from .marching import CauchyData, march, oracle_march
from .network import StripNetwork, build_random, build_uniform
from .spectral import certify_spectrum
from .textio import Document, format_number
from .tncheck import all_minors_nonneg, is_elementary_nonneg
from .transfer import modified_h, oracle_modified_h, product

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

SPECTRUM_CSV_COLUMNS = ["network", "rows", "shift", "min_root_lower_bound", "verdict"]
CONTINUUM_CSV_COLUMNS = ["level", "h", "rows", "shift", "min_eigenvalue", "max_imag", "verdict"]


class UsageError(Exception):
    pass


def _network_args(p: argparse.ArgumentParser, shift: bool = True) -> None:
    p.add_argument("--rows", type=int, help="number of rows R (>= 2)")
    p.add_argument("--cols", type=int, help="number of columns C (>= 2)")
    if shift:
        p.add_argument("--shift", type=int, default=1, help="continuation shift s in columns")
    p.add_argument("--gamma", default="uniform:1",
                   help="uniform:G or random[:LO:HI] (random needs --seed)")
    p.add_argument("--seed", type=int, help="seed for random conductivities")
    p.add_argument("--network", type=Path, help="read the network from a file instead")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--output", "-o", type=Path, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "csv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcontinuation",
        description="Harmonic continuation on conductivity strips: exact certificates.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("spectrum", "certify the spectrum of the transfer operator"),
        ("certify-tn", "exhaustive-minor total nonnegativity certificate"),
        ("factor", "emit the elementary step factorization and check step shapes"),
        ("oracle-check", "compare marching and the transfer operator with dense-solve oracles"),
    ]:
        _network_args(sub.add_parser(name, help=help_))
    d = sub.add_parser("dtn", help="Dirichlet-to-Neumann map of the strip")
    _network_args(d)
    d.add_argument("--probe", action="store_true",
                   help="also report the continuation spectrum for --shift")
    c = sub.add_parser("continuum-study", help="grid refinement study from a config file")
    c.add_argument("--config", type=Path, required=True)
    c.add_argument("--output", "-o", type=Path)
    c.add_argument("--format", choices=("text", "csv"), default="text")
    return parser


def load_network(args) -> tuple[StripNetwork, str]:
    exact = args.backend == "exact"
    if args.network is not None:
        try:
            net = StripNetwork.from_text(args.network.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read network: {exc}") from None
        return (net if exact else net.to_float()), f"file:{args.network.name}"
    if args.rows is None or args.cols is None:
        raise UsageError("--rows and --cols are required without --network")
    kind, _, rest = args.gamma.partition(":")
    try:
        if kind == "uniform":
            g = Fraction(rest or "1")
            return build_uniform(args.rows, args.cols, g, exact), f"uniform:{g}"
        if kind == "random":
            if args.seed is None:
                raise UsageError("random conductivities require --seed")
            lo, hi = (Fraction(x) for x in rest.split(":")) if rest else (Fraction(1, 8), Fraction(8))
            net = build_random(args.rows, args.cols, args.seed, lo, hi, exact)
            return net, f"random:{lo}:{hi}:seed={args.seed}"
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --gamma {args.gamma!r}: {exc}") from None
    raise UsageError(f"unknown --gamma {args.gamma!r}")


def _require_exact(args, what: str) -> None:
    if args.backend != "exact":
        raise UsageError(f"{what} requires the exact backend")


def _header(doc: Document, command: str, descriptor: str, net: StripNetwork, shift=None):
    sec = doc.section("run")
    sec.set("command", command).set("network", descriptor)
    sec.set("rows", net.rows).set("cols", net.cols)
    if shift is not None:
        sec.set("shift", shift)
    sec.set("backend", "exact" if net.exact else "float")
    return sec


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_spectrum(args) -> tuple[str, int]:
    _require_exact(args, "spectrum certification")
    net, desc = load_network(args)
    rep = certify_spectrum(modified_h(net, args.shift).matrix)
    code = EXIT_OK if rep.all_positive else EXIT_FAILED
    if args.format == "csv":
        lb = rep.min_root_lower_bound
        return _csv(SPECTRUM_CSV_COLUMNS, [[desc, net.rows, args.shift,
                                            "none" if lb is None else format_number(lb),
                                            rep.verdict]]), code
    doc = Document("continuation spectrum certificate")
    sec = _header(doc, "spectrum", desc, net, args.shift)
    sec.set("result", "pass" if code == EXIT_OK else "FAILED: spectrum not all positive")
    rep.to_document(doc)
    return doc.render(), code


def cmd_certify_tn(args) -> tuple[str, int]:
    _require_exact(args, "total nonnegativity certification")
    net, desc = load_network(args)
    H = modified_h(net, args.shift)
    cert = all_minors_nonneg(H.matrix)
    ok = cert.is_tnn and cert.determinant > 0
    code = EXIT_OK if ok else EXIT_FAILED
    if args.format == "csv":
        return _csv(["network", "rows", "shift", "minors_checked", "min_minor", "determinant", "verdict"],
                    [[desc, net.rows, args.shift, cert.minors_checked, format_number(cert.min_minor),
                      format_number(cert.determinant), cert.verdict]]), code
    doc = Document("total nonnegativity certificate")
    sec = _header(doc, "certify-tn", desc, net, args.shift)
    if ok:
        sec.set("result", "pass")
    elif not cert.is_tnn:
        sec.set("result", "FAILED: negative minor")
    else:
        sec.set("result", "FAILED: singular operator")
    doc.section("matrix").table("values", H.matrix)
    cert.to_document(doc)
    return doc.render(), code


def cmd_factor(args) -> tuple[str, int]:
    net, desc = load_network(args)
    H = modified_h(net, args.shift)
    bad = [i for i, st in enumerate(H.steps) if not is_elementary_nonneg(st)]
    product_ok = product(H.steps, H.dim, net.exact) == H.matrix
    code = EXIT_OK if not bad and product_ok else EXIT_FAILED
    doc = Document("transfer operator factorization")
    sec = _header(doc, "factor", desc, net, args.shift)
    sec.set("steps", len(H.steps))
    sec.set("step_shapes", "ok" if not bad else "FAILED at steps " + " ".join(str(i + 1) for i in bad))
    sec.set("product_matches", "yes" if product_ok else "FAILED")
    H.to_document(doc)
    if args.format == "csv":
        rows = [[i + 1, st.row + 1, " ".join(f"{j + 1}:{format_number(e)}" for j, e in st.entries.items()),
                 "ok" if i not in bad else "FAILED"] for i, st in enumerate(H.steps)]
        return _csv(["step", "row", "entries", "shape"], rows), code
    return doc.render(), code


def cmd_oracle_check(args) -> tuple[str, int]:
    _require_exact(args, "oracle comparison")
    net, desc = load_network(args)
    rng = random.Random(0 if args.seed is None else args.seed)
    data = CauchyData(tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(net.rows)),
                      tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(net.rows)))
    march_ok = march(net, data) == oracle_march(net, data)
    H = modified_h(net, args.shift)
    h_ok = H.matrix == oracle_modified_h(net, args.shift)
    code = EXIT_OK if march_ok and h_ok else EXIT_FAILED
    if args.format == "csv":
        return _csv(["network", "rows", "cols", "shift", "march", "modified_h"],
                    [[desc, net.rows, net.cols, args.shift, "equal" if march_ok else "DIFFER",
                      "equal" if h_ok else "DIFFER"]]), code
    doc = Document("oracle comparison")
    sec = _header(doc, "oracle-check", desc, net, args.shift)
    sec.set("march_vs_oracle", "equal" if march_ok else "FAILED: differ")
    sec.set("modified_h_vs_oracle", "equal" if h_ok else "FAILED: differ")
    return doc.render(), code


def cmd_dtn(args) -> tuple[str, int]:
    _require_exact(args, "DtN map")
    net, desc = load_network(args)
    if args.probe:
        probe = dtn_spectrum_probe(net, args.shift)
        D = probe.dtn
    else:
        D = dtn_map(net)
    M = D.matrix
    n = len(M)
    symmetric = all(M[i][j] == M[j][i] for i in range(n) for j in range(i))
    zero_rows = all(sum(row) == 0 for row in M)
    rank_ok = linalg.rank(M) == n - 1
    code = EXIT_OK if symmetric and zero_rows and rank_ok else EXIT_FAILED
    if args.format == "csv":
        return _csv(["row"] + [f"{c},{r}" for c, r in D.boundary],
                    [[f"{c},{r}"] + [format_number(x) for x in row]
                     for (c, r), row in zip(D.boundary, M)]), code
    if args.probe:
        doc = probe.to_document()
    else:
        doc = Document("Dirichlet-to-Neumann map")
        D.to_document(doc)
    sec = _header(doc, "dtn", desc, net, args.shift if args.probe else None)
    sec.set("symmetric", "yes" if symmetric else "FAILED")
    sec.set("zero_row_sums", "yes" if zero_rows else "FAILED")
    sec.set("rank_is_boundary_minus_one", "yes" if rank_ok else "FAILED")
    doc.sections.insert(0, doc.sections.pop())
    return doc.render(), code


def cmd_continuum(args) -> tuple[str, int]:
    try:
        cfg = ContinuumConfig.from_text(args.config.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    study = refinement_study(cfg)
    ok = study.positive and (study.exact_certificate is None or (
        study.exact_certificate.all_positive and study.exact_consistent))
    code = EXIT_OK if ok else EXIT_FAILED
    if args.format == "csv":
        return _csv(CONTINUUM_CSV_COLUMNS, study.csv_rows()), code
    return study.to_document().render(), code


COMMANDS = {
    "spectrum": cmd_spectrum,
    "certify-tn": cmd_certify_tn,
    "factor": cmd_factor,
    "oracle-check": cmd_oracle_check,
    "dtn": cmd_dtn,
    "continuum-study": cmd_continuum,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        text, code = COMMANDS[args.command](args)
    except (UsageError, InvalidArgument, WrongBackend) as exc:
        print(f"hcontinuation {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HContinuationError as exc:
        print(f"hcontinuation {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    if args.output is not None:
        try:
            args.output.write_text(text)
        except OSError as exc:
            print(f"hcontinuation: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
