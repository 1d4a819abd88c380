"""Batch command line front end.

    mpk diagonalize|spectrum|jordan|solve-ode|represent|verify <file.json>
        [--latex] [--verify] [--allow-numeric-roots]

stdout carries exactly one JSON document per run; diagnostics go to
stderr.  Exit codes: 0 success, 1 input/parse error, 2 verification
failure or non-invertible input, 3 not Hermitian, 4 divergence at
infinity (minor-degree condition), 5 non-exact or non-real spectrum.
The environment variable MPK_NUMERIC_TOL overrides the numeric root
fallback tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import documents, latexout
from .errors import InputFormatError, MpkError, SpectrumError
from .kreinlanger import represent, verify_representation
from .odesolve import general_solution, verify_solution
from .polyalg import NUMERIC_TOL
from .smith import diagonalize, verify_diag
from .spectral import canonical_system, eigen_table, pole_cancellation, verify_chain
from .matpoly import MatPoly


def _tolerance() -> float:
    raw = os.environ.get("MPK_NUMERIC_TOL")
    if raw is None:
        return NUMERIC_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputFormatError(f"MPK_NUMERIC_TOL is not a number: {raw!r}") from None
    if tol <= 0:
        raise InputFormatError("MPK_NUMERIC_TOL must be positive")
    return tol


def _require_exact(table_or_flag: bool, allow_numeric: bool):
    if not table_or_flag and not allow_numeric:
        raise SpectrumError(
            "spectrum has eigenvalues with no exact Gaussian-rational form; "
            "pass --allow-numeric-roots to emit approximate values"
        )


def _emit(doc: dict):
    print(json.dumps(doc, indent=2))


def cmd_diagonalize(args) -> int:
    inp = documents.InputDocument.load(args.file)
    l = inp.matrix()
    form = diagonalize(l)
    check = verify_diag(l, form)
    doc = documents.diagonalization_doc(inp, form, check)
    if args.latex:
        doc["latex"] = {
            "s": latexout.latex_matpoly(form.s),
            "d": latexout.latex_matpoly(form.d),
            "t": latexout.latex_matpoly(form.t),
        }
    _emit(doc)
    if not check.ok:
        print(f"diagonalization verifier failed: {check.message}", file=sys.stderr)
        return 2
    return 0


def cmd_spectrum(args) -> int:
    inp = documents.InputDocument.load(args.file)
    form = diagonalize(inp.matrix())
    table = eigen_table(form, tol=_tolerance())
    _require_exact(table.all_exact, args.allow_numeric_roots)
    _emit(documents.spectrum_doc(inp, table))
    return 0


def cmd_jordan(args) -> int:
    inp = documents.InputDocument.load(args.file)
    l = inp.matrix()
    system = canonical_system(l, tol=_tolerance())
    _require_exact(system.all_exact, args.allow_numeric_roots)
    psi = [pole_cancellation(l, rec) for rec in system.records if rec.exact]
    doc = documents.jordan_doc(inp, system, psi)
    _emit(doc)
    return 0


def cmd_solve_ode(args) -> int:
    inp = documents.InputDocument.load(args.file)
    l = inp.matrix()
    solution = general_solution(l, tol=_tolerance())
    _require_exact(solution.all_exact, args.allow_numeric_roots)
    checks = None
    if args.verify:
        checks = [verify_solution(l, term) for term in solution.terms]
    doc = documents.solution_doc(inp, solution, checks)
    if args.latex:
        doc["latex"] = {"terms": [latexout.latex_solution_term(t) for t in solution.terms]}
    _emit(doc)
    if checks is not None and not all(c.ok for c in checks):
        print("solution verification failed", file=sys.stderr)
        return 2
    return 0


def cmd_represent(args) -> int:
    inp = documents.InputDocument.load(args.file)
    rep = represent(inp.matrix())
    doc = documents.representation_doc(inp, rep)
    if args.latex:
        doc["latex"] = {
            "a": latexout.latex_const_matrix(rep.a_matrix),
            "j": latexout.latex_const_matrix(rep.j_matrix),
            "s_infinity": latexout.latex_const_matrix(rep.s_infinity),
        }
    _emit(doc)
    return 0


def cmd_verify(args) -> int:
    doc = documents.load_document(args.file)
    kind = doc.get("kind")
    if kind == "diagonalization":
        l, form = documents.diagonalization_from_doc(doc)
        check = verify_diag(l, form)
        ok, detail = check.ok, check.message or check.failed
    elif kind == "representation":
        l, rep = documents.representation_from_doc(doc)
        check = verify_representation(l.inverse_hat(), rep)
        ok = check.ok
        detail = None if ok else f"entry {check.entry}"
    elif kind == "general_solution":
        l, solution = documents.solution_from_doc(doc)
        results = [verify_solution(l, term) for term in solution.terms]
        ok = all(r.ok for r in results) and len(solution.terms) == solution.dimension
        detail = None if ok else "a term failed substitution"
    elif kind == "canonical_system":
        inp = documents.InputDocument.from_dict(doc["input"])
        l = inp.matrix()
        ok, detail = _verify_jordan_records(l, doc)
    elif kind == "spectrum":
        inp = documents.InputDocument.from_dict(doc["input"])
        table = eigen_table(diagonalize(inp.matrix()), tol=_tolerance())
        fresh = documents.spectrum_doc(inp, table)
        ok = fresh["entries"] == doc["entries"]
        detail = None if ok else "recomputed spectrum differs"
    else:
        raise InputFormatError(f"cannot verify documents of kind {kind!r}")
    _emit({"kind": "verification", "target": kind, "ok": ok, "detail": detail})
    return 0 if ok else 2


def _verify_jordan_records(l: MatPoly, doc) -> tuple[bool, str | None]:
    from .polyalg import GaussianRational

    for entry in doc["records"]:
        if not entry["exact"]:
            continue
        alpha = documents.scalar_from_doc(entry["alpha"]["value"])
        chain = tuple(
            tuple(documents.scalar_from_doc(x) for x in vec) for vec in entry["chain"]
        )
        check = verify_chain(l, alpha, chain)
        if check.valid_length != len(chain) or not check.maximal:
            return False, f"chain at {alpha!r} invalid or extendable"
    return True, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpk",
        description="Exact diagonalization, Jordan chains, ODE solutions and "
        "operator representations for square matrix polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, latex=False, verify=False, numeric=False):
        p = sub.add_parser(name)
        p.add_argument("file", help="input JSON document")
        if latex:
            p.add_argument("--latex", action="store_true", help="attach LaTeX renderings")
        if verify:
            p.add_argument("--verify", action="store_true", help="re-verify each emitted item")
        if numeric:
            p.add_argument(
                "--allow-numeric-roots",
                action="store_true",
                help="emit approximate eigenvalues instead of failing",
            )
        p.set_defaults(func=func)
        return p

    add("diagonalize", cmd_diagonalize, latex=True)
    add("spectrum", cmd_spectrum, numeric=True)
    add("jordan", cmd_jordan, numeric=True)
    add("solve-ode", cmd_solve_ode, latex=True, verify=True, numeric=True)
    add("represent", cmd_represent, latex=True)
    add("verify", cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MpkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
