"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 guard,
4 disagreement between the direct and spectral Ext routes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys

from .algebra import (
    LeibnizAlgebra,
    LieAlgebra,
    is_simple_leibniz,
    killing_form,
    leibniz_kernel,
    lie_quotient,
    validate_leibniz,
)
from .bimodule import (
    Bimodule,
    LieModule,
    adjoint_bimodule,
    check_bimodule,
    check_module,
    trivial_bimodule,
    trivial_module,
)
from .catalog import MAX_WEIGHT, CatalogError, GuardError, sl2, sl2_irrep
from .cohomology import DEFAULT_DEGREE, CECohomology, InducedActionError, LeibnizCohomology
from .exactlin import InvariantSubspaceError, rank
from .extcalc import EquivarianceError, ExtEngine, ExtTable, simple_specs
from .formats import (
    FormatError,
    load_bimodule,
    load_lie_module,
    read_algebra,
    simple_bimodule,
    vector_to_json,
)

log = logging.getLogger("leibext")

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_GUARD, EXIT_DISAGREE = 0, 1, 2, 3, 4
MAX_EXT_DEGREE = 3


class ValidationFailure(Exception):
    def __init__(self, message: str, details=()):
        super().__init__(message)
        self.details = list(details)


# -- input resolution ----------------------------------------------------------


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def resolve_bimodule(h: LeibnizAlgebra, spec: str) -> Bimodule:
    """``k``, ``adjoint``, ``[simple:]V:m:s|a`` or a bimodule file."""
    s = spec.strip()
    if s in ("k", "trivial"):
        return trivial_bimodule(h)
    if s == "adjoint":
        return adjoint_bimodule(h)
    body = s[len("simple:"):] if s.startswith("simple:") else s
    parts = body.split(":")
    if len(parts) == 3 and parts[0] == "V":
        return simple_bimodule(h, f"V:{parts[1]}", parts[2])
    if os.path.exists(s):
        return load_bimodule(_read_text(s), h, base_dir=os.path.dirname(os.path.abspath(s)))
    raise CatalogError(f"unknown bimodule spec {spec!r}")


def resolve_lie_module(g: LieAlgebra, spec: str) -> LieModule:
    """``k``, ``adjoint``, ``V:m`` or a module file ``{dim, rho}``."""
    s = spec.strip()
    if s in ("k", "trivial"):
        return trivial_module(g)
    if s == "adjoint":
        return LieModule(g, g.dim, g.left_mults, name="adjoint")
    body = s[len("simple:"):] if s.startswith("simple:") else s
    parts = body.split(":")
    if len(parts) == 2 and parts[0] == "V" and parts[1].isdigit():
        if int(parts[1]) == 0:
            return trivial_module(g)
        if not g.same_structure(sl2()):
            raise CatalogError("V:m modules need sl2 in the basis (e, h, f)")
        return sl2_irrep(int(parts[1]), g)
    if os.path.exists(s):
        return load_lie_module(_read_text(s), g)
    raise CatalogError(f"unknown module spec {spec!r}")


def _as_lie(h: LeibnizAlgebra) -> LieAlgebra:
    if isinstance(h, LieAlgebra):
        return h
    if not h.is_antisymmetric():
        raise ValidationFailure("ce needs a Lie algebra; this bracket is not antisymmetric")
    return LieAlgebra(h.dim, h.labels, h.brackets, name=h.name)


def _require_valid(h: LeibnizAlgebra) -> None:
    rep = validate_leibniz(h)
    if not rep.ok:
        raise ValidationFailure("algebra violates the left Leibniz identity", _triples(h, rep.violations))


def _require_bimodule(b: Bimodule, what: str) -> None:
    rep = check_bimodule(b)
    if not rep.ok:
        lab = b.algebra.labels
        raise ValidationFailure(
            f"{what} is not a bimodule",
            [f"{ax} fails at ({lab[i]}, {lab[j]})" for ax, i, j in rep.violations],
        )


def _triples(h: LeibnizAlgebra, bad) -> list[str]:
    lab = h.labels
    return [f"({i}, {j}, {k})  [{lab[i]}, [{lab[j]}, {lab[k]}]]" for i, j, k in bad]


# -- commands ------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    h = read_algebra(args.algebra)
    rep = validate_leibniz(h)
    if not rep.ok:
        print(f"invalid: {len(rep.violations)} of {rep.checked} basis triples violate the Leibniz identity", file=out)
        for line in _triples(h, rep.violations):
            print(f"  {line}", file=out)
        return EXIT_INVALID
    print(f"valid ({rep.checked} basis triples checked)", file=out)
    if args.coeff:
        b = resolve_bimodule(h, args.coeff)
        brep = check_bimodule(b)
        if not brep.ok:
            print(f"coefficient invalid: {len(brep.violations)} violations", file=out)
            for ax, i, j in brep.violations:
                print(f"  {ax} at ({h.labels[i]}, {h.labels[j]})", file=out)
            return EXIT_INVALID
        print(f"coefficient valid ({brep.checked} relations checked, {b.parity()})", file=out)
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    h = read_algebra(args.algebra)
    _require_valid(h)
    qd = lie_quotient(h)
    kf, _ = killing_form(qd.quotient)
    verdict = is_simple_leibniz(h)
    info = {
        "dim": h.dim,
        "leib": leibniz_kernel(h).dim,
        "h_lie": qd.quotient.dim,
        "killing_rank": rank(kf),
        "simplicity": verdict.status,
    }
    if args.json:
        print(json.dumps(info, indent=2), file=out)
        return EXIT_OK
    print(f"dim {info['dim']}", file=out)
    print(f"Leib {info['leib']}", file=out)
    print(f"h_Lie {info['h_lie']}", file=out)
    print(f"Killing rank {info['killing_rank']}", file=out)
    print(str(verdict), file=out)
    return EXIT_OK


def _emit_dims(args, out, dims, spaces) -> None:
    if not args.reps:
        print(" ".join(map(str, dims)), file=out)
        return
    doc = {
        "algebra": args.algebra,
        "coeff": args.coeff,
        "dims": dims,
        "representatives": [
            [vector_to_json(sp.representatives, j) for j in range(sp.dim)] for sp in spaces
        ],
    }
    print(json.dumps(doc, indent=2), file=out)


def cmd_hl(args, out) -> int:
    h = read_algebra(args.algebra)
    _require_valid(h)
    b = resolve_bimodule(h, args.coeff)
    _require_bimodule(b, args.coeff)
    lc = LeibnizCohomology(h, b, max_degree=args.max_degree)
    if args.reps:
        spaces = [lc.space(q) for q in range(args.max_degree + 1)]
        dims = [sp.dim for sp in spaces]
    else:
        spaces, dims = [], [lc.dim(q) for q in range(args.max_degree + 1)]
    _emit_dims(args, out, dims, spaces)
    return EXIT_OK


def cmd_ce(args, out) -> int:
    g = _as_lie(read_algebra(args.algebra))
    _require_valid(g)
    v = resolve_lie_module(g, args.coeff)
    rep = check_module(v)
    if not rep.ok:
        raise ValidationFailure(f"{args.coeff} is not a module", [f"fails at {p}" for p in rep.violations])
    cc = CECohomology(g, v)
    if args.reps:
        spaces = [cc.space(p) for p in range(args.max_degree + 1)]
        dims = [sp.dim for sp in spaces]
    else:
        spaces, dims = [], [cc.dim(p) for p in range(args.max_degree + 1)]
    _emit_dims(args, out, dims, spaces)
    return EXIT_OK


def _check_ext_degree(n: int) -> None:
    if n > MAX_EXT_DEGREE:
        raise GuardError(f"max degree {n} exceeds the certified range 0..{MAX_EXT_DEGREE}")


def cmd_ext(args, out) -> int:
    _check_ext_degree(args.max_degree)
    h = read_algebra(args.algebra)
    _require_valid(h)
    engine = ExtEngine(h)
    left = resolve_bimodule(h, args.left)
    right = resolve_bimodule(h, args.right)
    _require_bimodule(left, args.left)
    _require_bimodule(right, args.right)
    verdicts = engine.ext_certified(left, right, args.max_degree, args.method)
    for v in verdicts:
        print(str(v), file=out)
    if any(v.flagged for v in verdicts):
        print("error: direct and spectral routes disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_table(args, out) -> int:
    _check_ext_degree(args.max_degree)
    if args.max_weight > MAX_WEIGHT:
        raise GuardError(f"max weight {args.max_weight} exceeds the guard {MAX_WEIGHT}")
    h = read_algebra(args.algebra)
    _require_valid(h)
    engine = ExtEngine(h)
    specs = simple_specs(args.max_weight)
    for s in specs:
        engine.simple(s)  # fail early on algebras without an sl2 quotient
    verdict = is_simple_leibniz(h)
    warning = ""
    if verdict.status != "simple-certified":
        warning = (
            f"warning: algebra is {verdict.status}; the table entries are computed, "
            "but the simple-bimodule list and the vanishing pattern assume a simple Leibniz algebra"
        )
        log.warning(warning)
    table = engine.ext_table(specs, args.max_degree, args.method)
    table = ExtTable(args.algebra, table.labels, table.max_degree, table.cells, warning)
    out.write(render_table(table, args.format))
    if table.flags:
        print(f"error: {table.flags} cells flagged", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


# -- table rendering -----------------------------------------------------------


def _cell_rows(table: ExtTable):
    for a, b, v in table.cells:
        yield {
            "left": a,
            "right": b,
            "degree": v.degree,
            "dim": v.dim,
            "status": v.status,
            "method": v.method,
        }


def render_table(table: ExtTable, fmt: str) -> str:
    if fmt == "json":
        doc = {"algebra": table.algebra, "labels": list(table.labels), "max_degree": table.max_degree}
        if table.warning:
            doc["warning"] = table.warning
        doc["cells"] = list(_cell_rows(table))
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if table.warning:
            buf.write(f"# {table.warning}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["left", "right", "degree", "dim", "status", "method"])
        for r in _cell_rows(table):
            w.writerow([r["left"], r["right"], r["degree"], "" if r["dim"] is None else r["dim"], r["status"], r["method"]])
        return buf.getvalue()
    if fmt == "latex":
        return _latex(table)
    raise ValueError(f"unknown format {fmt!r}")


def _tex_label(label: str) -> str:
    return "$k$" if label == "k" else f"${label}$"


def _latex(table: ExtTable) -> str:
    labels = list(table.labels)
    rows = [l for l in labels if l.endswith("^s")] + [l for l in labels if l == "k"] + [l for l in labels if l.endswith("^a")]
    lookup = {(a, b, v.degree): v for a, b, v in table.cells}
    lines = []
    if table.warning:
        lines.append(f"% {table.warning}")
    for n in range(table.max_degree + 1):
        lines.append(f"% Ext^{n}(row, column) over {table.algebra}")
        lines.append("\\begin{tabular}{l" + "c" * len(labels) + "}")
        lines.append(f"$\\mathrm{{Ext}}^{{{n}}}$ & " + " & ".join(_tex_label(l) for l in labels) + " \\\\")
        lines.append("\\hline")
        for a in rows:
            vals = []
            for b in labels:
                v = lookup[(a, b, n)]
                vals.append(str(v.dim) if v.exact else "?")
            lines.append(f"{_tex_label(a)} & " + " & ".join(vals) + " \\\\")
        lines.append("\\end{tabular}")
        lines.append("")
    return "\n".join(lines)


# -- entry point ---------------------------------------------------------------


def _configure_logging(verbose: bool) -> None:
    for hd in list(log.handlers):
        log.removeHandler(hd)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibext", description="Exact Leibniz cohomology and Ext calculator.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the left Leibniz identity on all basis triples")
    v.add_argument("algebra")
    v.add_argument("--coeff", help="also check a bimodule")
    v.set_defaults(func=cmd_validate)

    i = sub.add_parser("invariants", help="Leibniz kernel, Lie quotient, Killing rank, simplicity")
    i.add_argument("algebra")
    i.add_argument("--json", action="store_true")
    i.set_defaults(func=cmd_invariants)

    for name, helptext, func in (
        ("hl", "Leibniz cohomology HL^q(h, M)", cmd_hl),
        ("ce", "Chevalley-Eilenberg cohomology H^p(g, V)", cmd_ce),
    ):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("algebra")
        c.add_argument("--coeff", required=True)
        c.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE)
        c.add_argument("--reps", action="store_true", help="emit representative cocycles as JSON")
        c.set_defaults(func=func)

    e = sub.add_parser("ext", help="Ext^n(M, N) between two bimodules")
    e.add_argument("algebra")
    e.add_argument("--left", required=True)
    e.add_argument("--right", required=True)
    e.add_argument("--max-degree", type=int, default=2)
    e.add_argument("--method", choices=("direct", "spectral", "both"), default="both")
    e.set_defaults(func=cmd_ext)

    t = sub.add_parser("table", help="Ext table over the simple bimodules up to a weight")
    t.add_argument("algebra")
    t.add_argument("--max-weight", type=int, default=3)
    t.add_argument("--max-degree", type=int, default=2)
    t.add_argument("--method", choices=("direct", "spectral", "both"), default="both")
    t.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    if getattr(args, "max_degree", 0) < 0:
        print("error: max degree must be nonnegative", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, out)
    except ValidationFailure as exc:
        print(f"invalid: {exc}", file=out)
        for d in exc.details:
            print(f"  {d}", file=out)
        return EXIT_INVALID
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (EquivarianceError, InducedActionError, InvariantSubspaceError) as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FormatError, CatalogError, ValueError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
