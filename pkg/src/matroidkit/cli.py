"""Command-line interface.

Every subcommand loads one or two matroids (a catalog name or a spec file),
runs one library operation and prints ``key: value`` lines, or
``key<TAB>value`` lines with ``--format machine``.  Sets are printed as
comma-joined labels in ground order; families of sets as ``{...}`` groups.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 internal invariant
breach (including a failed verification suite).
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from typing import Iterable, Sequence, TextIO

from . import __version__, catalog
from .build import MatroidSpec, build
from .config import max_size, size_cap
from .connectivity import lambda_, lambda_dual, lambda_set, multi_local_conn, nullity
from .core import Matroid, bases
from .errors import InvariantBreach, MatroidError, NotInGround
from .extensions import (
    CutViolation,
    enumerate_modular_cuts,
    extend_by,
    fresh_label,
    guts_cut,
    guts_project_iterate,
    project_by,
    require_cut,
)
from .flats import circuits, flats
from .io import ResultDocument, digest, parse_spec, serialize_spec
from .modularity import (
    PartitionFamily,
    is_modular_flat,
    is_modular_matroid,
    is_modular_pair,
    is_skew_family,
    mutual_basis,
)
from .quotients import discrepancy, is_quotient, quotient_routes, quotient_to_projection, splice
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument helpers -------------------------------------------------------------


class Session:
    """Per-invocation state: loaded inputs and the result document."""

    def __init__(self, argv: Sequence[str]):
        self.doc = ResultDocument(list(argv))

    def load(self, ref: str) -> Matroid:
        if os.path.isfile(ref):
            with open(ref, encoding="utf-8") as fh:
                text = fh.read()
            self.doc.inputs[ref] = digest(text)
            return build(parse_spec(text))
        m = catalog.get(ref)
        self.doc.inputs[ref] = digest(serialize_spec(catalog.spec_of(ref)))
        return m


def _label_map(m: Matroid) -> dict[str, object]:
    return {str(label): label for label in m.ground}


def parse_set(m: Matroid, text: str) -> frozenset:
    lookup = _label_map(m)
    out = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token not in lookup:
            raise NotInGround(f"{token!r} is not in the ground set of {m.name}")
        out.add(lookup[token])
    return frozenset(out)


def parse_family(m: Matroid, text: str) -> list[frozenset]:
    return [parse_set(m, part) for part in text.split("|")]


def fmt_set(m: Matroid, labels: Iterable) -> str:
    return ",".join(str(x) for x in m.sort(labels))


def fmt_family(m: Matroid, sets: Iterable) -> str:
    return " ".join("{" + fmt_set(m, s) + "}" for s in sets)


def fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def explicit_spec(m: Matroid, name: str | None = None) -> MatroidSpec:
    labels = tuple(str(x) for x in m.ground)
    sets = tuple(tuple(str(x) for x in b) for b in bases(m))
    return MatroidSpec(name or m.name, "explicit_bases", sets=sets, labels=labels)


def summarize(s: Session, m: Matroid, prefix: str = "") -> None:
    s.doc.add(f"{prefix}name", m.name)
    s.doc.add(f"{prefix}size", str(m.n))
    s.doc.add(f"{prefix}rank", str(m.r))
    s.doc.add(f"{prefix}ground", fmt_set(m, m.ground))


def export(s: Session, args, spec: MatroidSpec) -> None:
    if getattr(args, "export", None):
        text = serialize_spec(spec)
        with open(args.export, "w", encoding="utf-8") as fh:
            fh.write(text)
        s.doc.add("exported", args.export)


def _cut_from_args(m: Matroid, args):
    if args.cut_index is not None:
        cuts = enumerate_modular_cuts(m)
        if not 0 <= args.cut_index < len(cuts):
            raise UsageError(f"--cut-index must be in [0, {len(cuts)})")
        return cuts[args.cut_index]
    if args.cut is None:
        raise UsageError("give --cut or --cut-index")
    fam = [] if args.cut.strip() in ("", "-") else parse_family(m, args.cut)
    return require_cut(m, fam)


# -- commands ------------------------------------------------------------------------


def cmd_build(s: Session, args) -> int:
    m = s.load(args.matroid)
    summarize(s, m)
    if os.path.isfile(args.matroid):
        export(s, args, parse_spec(open(args.matroid, encoding="utf-8").read()))
    else:
        export(s, args, catalog.spec_of(args.matroid))
    return 0


def cmd_rank(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("rank", str(m.rank(parse_set(m, args.set))))
    return 0


def cmd_closure(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("closure", fmt_set(m, m.closure(parse_set(m, args.set))))
    return 0


def cmd_flats(s: Session, args) -> int:
    m = s.load(args.matroid)
    fam = flats(m)
    s.doc.add("count", str(len(fam)))
    for mask, r in zip(fam.masks, fam.ranks):
        s.doc.add(f"flat{r}", fmt_set(m, m.labels(mask)))
    return 0


def cmd_circuits(s: Session, args) -> int:
    m = s.load(args.matroid)
    found = circuits(m)
    s.doc.add("count", str(len(found)))
    for c in found:
        s.doc.add("circuit", fmt_set(m, c))
    return 0


def cmd_modular_pair(s: Session, args) -> int:
    m = s.load(args.matroid)
    fam = parse_family(m, args.family)
    if len(fam) != 2:
        raise UsageError("modular-pair needs exactly two sets")
    s.doc.add("modular", fmt_bool(is_modular_pair(m, *fam)))
    witness = mutual_basis(m, fam)
    if witness is not None:
        s.doc.add("mutual_basis", fmt_set(m, witness.basis))
    return 0


def cmd_skew(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("skew", fmt_bool(is_skew_family(m, parse_family(m, args.family))))
    return 0


def cmd_modular_flat(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("modular", fmt_bool(is_modular_flat(m, parse_set(m, args.set))))
    return 0


def cmd_modular_matroid(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("modular", fmt_bool(is_modular_matroid(m)))
    return 0


def cmd_nullity(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("nullity", str(nullity(m, parse_set(m, args.set))))
    return 0


def cmd_local_conn(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("local_conn", str(multi_local_conn(m, parse_family(m, args.family))))
    return 0


def cmd_lambda(s: Session, args) -> int:
    m = s.load(args.matroid)
    if args.set is not None:
        s.doc.add("lambda", str(lambda_set(m, parse_set(m, args.set))))
    elif args.partition is not None:
        s.doc.add("lambda", str(lambda_(m, parse_family(m, args.partition))))
    else:
        raise UsageError("give --partition or --set")
    return 0


def cmd_lambda_dual(s: Session, args) -> int:
    m = s.load(args.matroid)
    s.doc.add("lambda_dual", str(lambda_dual(m, parse_family(m, args.partition))))
    return 0


def cmd_cuts(s: Session, args) -> int:
    m = s.load(args.matroid)
    cuts = enumerate_modular_cuts(m)
    s.doc.add("count", str(len(cuts)))
    for cut in cuts:
        s.doc.add("cut", fmt_family(m, cut.flats()))
    return 0


def cmd_extend(s: Session, args) -> int:
    m = s.load(args.matroid)
    cut = _cut_from_args(m, args)
    label = args.label or fresh_label(m)
    ext = extend_by(m, label, cut)
    summarize(s, ext)
    s.doc.add("new_element", str(label))
    export(s, args, explicit_spec(ext))
    return 0


def cmd_project_by(s: Session, args) -> int:
    m = s.load(args.matroid)
    p = project_by(m, _cut_from_args(m, args))
    summarize(s, p)
    export(s, args, explicit_spec(p))
    return 0


def cmd_guts_cut(s: Session, args) -> int:
    m = s.load(args.matroid)
    fam = parse_family(m, args.family)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = guts_cut(m, fam, allow_partial=args.allow_partial)
    if isinstance(result, CutViolation):
        s.doc.add("valid", "false")
        s.doc.add("members", fmt_family(m, result.members))
        for clause, witness in result.violations:
            s.doc.add(f"violation:{clause}", fmt_family(m, witness))
    else:
        s.doc.add("valid", "true")
        s.doc.add("members", fmt_family(m, result.flats()))
    return 0


def cmd_guts_iterate(s: Session, args) -> int:
    m = s.load(args.matroid)
    fam = PartitionFamily.of(m, parse_family(m, args.partition))
    p = guts_project_iterate(m, fam, args.k)
    summarize(s, p)
    s.doc.add("lambda", str(lambda_(p, fam)))
    s.doc.add("skew", fmt_bool(is_skew_family(p, fam)))
    export(s, args, explicit_spec(p))
    return 0


def cmd_quotient(s: Session, args) -> int:
    n = s.load(args.matroid)
    m = s.load(args.other)
    s.doc.add("quotient", fmt_bool(is_quotient(n, m)))
    for route, value in quotient_routes(n, m).items():
        s.doc.add(f"route:{route}", fmt_bool(value))
    return 0


def cmd_discrepancy(s: Session, args) -> int:
    n = s.load(args.matroid)
    m = s.load(args.other)
    x = None if args.set is None else parse_set(m, args.set)
    s.doc.add("discrepancy", str(discrepancy(n, m, x)))
    return 0


def cmd_reconstruct(s: Session, args) -> int:
    n = s.load(args.matroid)
    m = s.load(args.other)
    w = quotient_to_projection(n, m)
    summarize(s, w.p, "p.")
    s.doc.add("k", fmt_set(w.p, w.k))
    s.doc.add("k_size", str(len(w.k)))
    export(s, args, explicit_spec(w.p))
    return 0


def cmd_splice(s: Session, args) -> int:
    m = s.load(args.matroid)
    n = s.load(args.other)
    c = parse_set(m, args.contract or "")
    d = parse_set(n, args.delete or "")
    p = splice(m, n, c, d)
    summarize(s, p)
    export(s, args, explicit_spec(p))
    return 0


def cmd_verify(s: Session, args) -> int:
    ids = list(SUITES) if args.suite == "all" else [args.suite]
    corpus_size = args.max_size if args.max_size is not None else 6
    status = 0
    for suite_id in ids:
        report = run_suite(suite_id, corpus_size, args.seed)
        s.doc.add(report.suite, f"{report.instances}\t{report.status}")
        if report.status == "fail":
            status = 3
    return status


def cmd_catalog(s: Session, args) -> int:
    if args.name:
        entry = catalog.entry(args.name)
        m = catalog.get(args.name)
        summarize(s, m)
        for key, value in sorted(entry.expected.items()):
            s.doc.add(f"expected:{key}", str(value).lower() if isinstance(value, bool) else str(value))
    else:
        for name in catalog.names():
            s.doc.add("name", name)
    return 0


# -- parser -----------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--max-size", type=int, default=None, help="size cap for enumeration (overrides MATROID_MAX_SIZE)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--document", help="write a JSON result document to this path")

    parser = _Parser(prog="matroidkit", description="Matroid computations at desk scale.")
    parser.add_argument("--version", action="version", version=f"matroidkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, *opts):
        p = sub.add_parser(name, parents=[common], help=help_)
        for opt in opts:
            opt(p)
        p.set_defaults(func=func)
        return p

    def matroid(p):
        p.add_argument("--matroid", required=True, help="catalog name or spec file")

    def other(p):
        p.add_argument("--other", required=True, help="second matroid: catalog name or spec file")

    def set_(p, required=True):
        p.add_argument("--set", required=required, help="comma-separated labels")

    def family(p):
        p.add_argument("--family", required=True, help="sets separated by '|', labels by ','")

    def partition(p, required=True):
        p.add_argument("--partition", required=required, help="parts separated by '|', labels by ','")

    def cut(p):
        p.add_argument("--cut", help="flats separated by '|' ('-' for the empty cut)")
        p.add_argument("--cut-index", type=int, help="index into the enumerated modular cuts")

    def export_(p):
        p.add_argument("--export", help="write the resulting matroid as a spec file")

    add("build", cmd_build, "build a matroid and report its size and rank", matroid, export_)
    add("rank", cmd_rank, "rank of a set", matroid, set_)
    add("closure", cmd_closure, "closure of a set", matroid, set_)
    add("flats", cmd_flats, "all flats, by rank", matroid)
    add("circuits", cmd_circuits, "all circuits", matroid)
    add("modular-pair", cmd_modular_pair, "is a pair of sets modular", matroid, family)
    add("skew", cmd_skew, "is a family of sets skew", matroid, family)
    add("modular-flat", cmd_modular_flat, "is a flat modular", matroid, set_)
    add("modular-matroid", cmd_modular_matroid, "is every flat modular", matroid)
    add("nullity", cmd_nullity, "nullity of a set", matroid, set_)
    add("local-conn", cmd_local_conn, "local connectivity of a family", matroid, family)
    add(
        "lambda",
        cmd_lambda,
        "connectivity of a partition or of a set",
        matroid,
        lambda p: partition(p, required=False),
        lambda p: set_(p, required=False),
    )
    add("lambda-dual", cmd_lambda_dual, "connectivity of a partition in the dual", matroid, partition)
    add("cuts", cmd_cuts, "enumerate modular cuts", matroid)
    extend = add("extend", cmd_extend, "single-element extension by a modular cut", matroid, cut, export_)
    extend.add_argument("--label", help="label of the new element (default: _e0, _e1, ...)")
    add("project-by", cmd_project_by, "single-element projection by a modular cut", matroid, cut, export_)
    guts = add("guts-cut", cmd_guts_cut, "guts modular cut of a family", matroid, family)
    guts.add_argument("--allow-partial", action="store_true", help="report instead of refusing when the parts miss elements")
    iterate = add("guts-iterate", cmd_guts_iterate, "iterate guts projections", matroid, partition, export_)
    iterate.add_argument("-k", type=int, required=True)
    add("quotient", cmd_quotient, "is --matroid a quotient of --other", matroid, other)
    add("discrepancy", cmd_discrepancy, "discrepancy of --matroid under --other", matroid, other, lambda p: set_(p, False))
    add(
        "reconstruct-projection",
        cmd_reconstruct,
        "P and K with P \\ K = --other and P / K = --matroid",
        matroid,
        other,
        export_,
    )
    splice_ = add("splice", cmd_splice, "P with P \\ D = --matroid and P / C = --other", matroid, other, export_)
    splice_.add_argument("--contract", default="", help="the set C")
    splice_.add_argument("--delete", default="", help="the set D")
    verify = add("verify", cmd_verify, "run verification suites")
    verify.add_argument("--suite", required=True, help=f"'all' or one of: {', '.join(SUITES)}")
    cat = add("catalog", cmd_catalog, "list catalog names or show one entry")
    cat.add_argument("--name")
    return parser


def _render(doc: ResultDocument, fmt: str, out: TextIO) -> None:
    sep = "\t" if fmt == "machine" else ": "
    for key, value in doc.outputs:
        out.write(f"{key}{sep}{value}\n")


def run_cli(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> tuple[int, ResultDocument | None]:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 1, None
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0), None
    session = Session(argv)
    is_verify = args.command == "verify"
    cap = args.max_size if args.max_size is not None and not is_verify else max_size()
    session.doc.provenance = {"seed": args.seed, "max_size": cap}
    try:
        with size_cap(cap):
            code = args.func(session, args)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 1, None
    except InvariantBreach as exc:
        err.write(f"internal invariant breach: {exc}\n")
        return 3, None
    except MatroidError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2, None
    _render(session.doc, args.format, out)
    if args.document:
        with open(args.document, "w", encoding="utf-8") as fh:
            fh.write(session.doc.to_json())
    return code, session.doc


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run_cli(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
