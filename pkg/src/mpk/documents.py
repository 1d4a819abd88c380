"""JSON documents: the input format and serializers for every pipeline output.

Input files describe a square matrix polynomial entrywise, each entry a
coefficient list in ascending powers; a coefficient is an exact rational
string "p/q", an integer, or an object {"re": ..., "im": ...}.  The schema
below is enforced by the loader (and shipped under docs/).

All emitted numbers are exact rational strings unless a value went through
the numeric fallback, in which case it serializes as floats carrying an
``"approx": true`` marker.  Every output document embeds the canonicalized
input under ``"input"`` so it can be re-verified later without the
original file.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from . import linalg
from .errors import InputFormatError
from .kreinlanger import BlockSpec, GammaBlock, Representation
from .matpoly import MatPoly, MatRatFun
from .odesolve import GeneralSolution, SolutionTerm
from .polyalg import GaussianRational, Poly, RootSpec
from .smith import DiagForm, ElementaryMove
from .spectral import CanonicalSystem, EigenTable

_COEFF_SCHEMA = {
    "oneOf": [
        {"type": "string"},
        {"type": "integer"},
        {
            "type": "object",
            "properties": {
                "re": {"type": ["string", "integer"]},
                "im": {"type": ["string", "integer"]},
            },
            "additionalProperties": False,
        },
    ]
}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "matpolkit matrix polynomial input",
    "type": "object",
    "required": ["n", "entries"],
    "properties": {
        "name": {"type": "string"},
        "notes": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "array", "items": _COEFF_SCHEMA},
            },
        },
    },
    "additionalProperties": False,
}


def parse_rational(text) -> Fraction:
    try:
        value = Fraction(text)
    except ValueError:
        raise InputFormatError(f"not an exact rational: {text!r}") from None
    except ZeroDivisionError:
        raise InputFormatError(f"rational with zero denominator: {text!r}") from None
    return value


def scalar_from_doc(doc) -> GaussianRational:
    if isinstance(doc, bool):
        raise InputFormatError(f"not a coefficient: {doc!r}")
    if isinstance(doc, (str, int)):
        return GaussianRational(parse_rational(doc))
    if isinstance(doc, dict):
        if doc.get("approx"):
            raise InputFormatError("approximate values are not accepted as input")
        re = parse_rational(doc.get("re", 0))
        im = parse_rational(doc.get("im", 0))
        return GaussianRational(re, im)
    raise InputFormatError(f"not a coefficient: {doc!r}")


def scalar_doc(value: GaussianRational) -> dict:
    out = {"re": str(value.re)}
    if value.im:
        out["im"] = str(value.im)
    return out


def approx_doc(value: complex) -> dict:
    return {"re": value.real, "im": value.imag, "approx": True}


def number_doc(value) -> dict:
    if isinstance(value, GaussianRational):
        return scalar_doc(value)
    return approx_doc(complex(value))


def number_from_doc(doc):
    if isinstance(doc, dict) and doc.get("approx"):
        return complex(doc["re"], doc.get("im", 0.0))
    return scalar_from_doc(doc)


def poly_doc(p: Poly) -> list:
    return [scalar_doc(c) for c in p.coeffs]


def poly_from_doc(doc) -> Poly:
    if not isinstance(doc, list):
        raise InputFormatError(f"polynomial must be a coefficient list, got {doc!r}")
    return Poly([scalar_from_doc(c) for c in doc])


def const_matrix_doc(mat: linalg.Matrix) -> list:
    return [[scalar_doc(x) for x in row] for row in mat]


def const_matrix_from_doc(doc) -> linalg.Matrix:
    return [[scalar_from_doc(x) for x in row] for row in doc]


def matpoly_doc(m: MatPoly) -> list:
    return [[poly_doc(e) for e in row] for row in m.rows]


def matpoly_from_doc(doc) -> MatPoly:
    return MatPoly([[poly_from_doc(e) for e in row] for row in doc])


def vector_doc(vec, exact: bool) -> list:
    if exact:
        return [scalar_doc(x) for x in vec]
    return [approx_doc(complex(x)) for x in vec]


def rootspec_doc(spec: RootSpec) -> dict:
    out = {
        "value": scalar_doc(spec.value) if spec.exact else approx_doc(spec.value),
        "multiplicity": spec.multiplicity,
        "exact": spec.exact,
    }
    if spec.tol is not None:
        out["tol"] = spec.tol
    return out


class InputDocument:
    """Parsed, validated input: a matrix polynomial plus metadata."""

    def __init__(self, n: int, grid: list[list[Poly]], name=None, notes=None):
        self.n = n
        self.grid = grid
        self.name = name
        self.notes = notes

    @staticmethod
    def from_dict(doc: dict) -> "InputDocument":
        try:
            jsonschema.validate(doc, INPUT_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise InputFormatError(f"input document rejected by schema: {exc.message}") from None
        n = doc["n"]
        entries = doc["entries"]
        if len(entries) != n or any(len(row) != n for row in entries):
            raise InputFormatError(f"entries must form an {n}x{n} grid")
        grid = [[poly_from_doc(e) for e in row] for row in entries]
        return InputDocument(n, grid, doc.get("name"), doc.get("notes"))

    @staticmethod
    def load(path: str) -> "InputDocument":
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise InputFormatError(f"cannot read {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"{path} is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise InputFormatError("input document must be a JSON object")
        return InputDocument.from_dict(doc)

    def matrix(self) -> MatPoly:
        return MatPoly(self.grid)

    def coefficient_matrices(self) -> list[linalg.Matrix]:
        return self.matrix().coefficient_matrices()

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "entries": [[poly_doc(e) for e in row] for row in self.grid],
        }
        if self.name:
            out["name"] = self.name
        if self.notes:
            out["notes"] = self.notes
        return out


# -- elementary moves -------------------------------------------------------


def move_doc(move: ElementaryMove) -> dict:
    out = {"side": move.side, "kind": move.kind, "i": move.i}
    if move.j is not None:
        out["j"] = move.j
    if move.c is not None:
        out["c"] = scalar_doc(move.c)
    if move.q is not None:
        out["q"] = poly_doc(move.q)
    return out


def move_from_doc(doc) -> ElementaryMove:
    try:
        return ElementaryMove(
            side=doc["side"],
            kind=doc["kind"],
            i=doc["i"],
            j=doc.get("j"),
            c=scalar_from_doc(doc["c"]) if "c" in doc else None,
            q=poly_from_doc(doc["q"]) if "q" in doc else None,
        )
    except KeyError as exc:
        raise InputFormatError(f"elementary move is missing field {exc}") from None


def transcript_to_json(transcript) -> list:
    return [move_doc(m) for m in transcript]


def transcript_from_json(doc) -> tuple[ElementaryMove, ...]:
    return tuple(move_from_doc(m) for m in doc)


# -- output documents ---------------------------------------------------------


def diagonalization_doc(inp: InputDocument, form: DiagForm, check) -> dict:
    return {
        "kind": "diagonalization",
        "input": inp.to_dict(),
        "s": matpoly_doc(form.s),
        "d": matpoly_doc(form.d),
        "t": matpoly_doc(form.t),
        "diagonal": [poly_doc(p) for p in form.diagonal()],
        "det_s": scalar_doc(form.det_s),
        "det_t": scalar_doc(form.det_t),
        "transcript": transcript_to_json(form.transcript),
        "verification": {"ok": check.ok, "failed": check.failed, "message": check.message},
    }


def diagonalization_from_doc(doc) -> tuple[MatPoly, DiagForm]:
    inp = InputDocument.from_dict(doc["input"])
    form = DiagForm(
        s=matpoly_from_doc(doc["s"]),
        d=matpoly_from_doc(doc["d"]),
        t=matpoly_from_doc(doc["t"]),
        det_s=scalar_from_doc(doc["det_s"]),
        det_t=scalar_from_doc(doc["det_t"]),
        transcript=transcript_from_json(doc.get("transcript", [])),
    )
    return inp.matrix(), form


def spectrum_doc(inp: InputDocument, table: EigenTable) -> dict:
    return {
        "kind": "spectrum",
        "input": inp.to_dict(),
        "deg_det": table.deg_det,
        "all_exact": table.all_exact,
        "entries": [
            {
                "alpha": rootspec_doc(e.alpha),
                "column": e.column,
                "order": e.order,
            }
            for e in table.entries
        ],
    }


def jordan_doc(inp: InputDocument, system: CanonicalSystem, psi_records=None) -> dict:
    psi_by_key = {}
    for rec in psi_records or []:
        psi_by_key[(rec.alpha.value, rec.column)] = rec
    records = []
    for rec in system.records:
        entry = {
            "alpha": rootspec_doc(rec.alpha),
            "column": rec.column,
            "order": rec.order,
            "exact": rec.exact,
            "root_function": [poly_doc(p) for p in rec.phi],
            "chain": [vector_doc(v, rec.exact) for v in rec.chain],
        }
        if rec.tail is not None:
            entry["tail"] = [poly_doc(p) for p in rec.tail]
        psi = psi_by_key.get((rec.alpha.value, rec.column))
        if psi is not None:
            entry["pole_cancellation"] = [poly_doc(p) for p in psi.psi]
        records.append(entry)
    return {
        "kind": "canonical_system",
        "input": inp.to_dict(),
        "total_order": system.total_order,
        "records": records,
    }


def solution_doc(inp: InputDocument, solution: GeneralSolution, checks=None) -> dict:
    terms = []
    for term in solution.terms:
        entry = {
            "alpha": number_doc(term.alpha.value),
            "exact": term.exact,
            "column": term.source_column,
            "coefficients": [vector_doc(v, term.exact) for v in term.coeffs],
        }
        if term.exact:
            entry["t_polynomial"] = [poly_doc(p) for p in term.vector_polynomial()]
        terms.append(entry)
    out = {
        "kind": "general_solution",
        "input": inp.to_dict(),
        "dimension": solution.dimension,
        "terms": terms,
    }
    if checks is not None:
        out["verification"] = {"ok": all(c.ok for c in checks)}
    return out


def solution_from_doc(doc) -> tuple[MatPoly, GeneralSolution]:
    inp = InputDocument.from_dict(doc["input"])
    terms = []
    for entry in doc["terms"]:
        alpha = number_from_doc(entry["alpha"])
        exact = entry["exact"]
        coeffs = tuple(
            tuple(number_from_doc(x) for x in vec) for vec in entry["coefficients"]
        )
        spec = RootSpec(alpha, 1, exact=exact) if exact else RootSpec(alpha, 1, exact=False)
        terms.append(SolutionTerm(spec, coeffs, exact, entry.get("column", -1)))
    return inp.matrix(), GeneralSolution(tuple(terms), doc["dimension"])


def block_doc(block: BlockSpec) -> dict:
    return {
        "alpha": scalar_doc(block.alpha),
        "order": block.order,
        "sign": block.sign,
        "column": block.column,
        "limit": scalar_doc(block.limit),
    }


def block_from_doc(doc) -> BlockSpec:
    return BlockSpec(
        alpha=scalar_from_doc(doc["alpha"]),
        order=doc["order"],
        sign=doc["sign"],
        column=doc["column"],
        limit=scalar_from_doc(doc["limit"]),
    )


def gamma_block_doc(block: GammaBlock) -> dict:
    return {
        "scale_sq": str(block.scale_sq),
        "rows": [[scalar_doc(x) for x in row] for row in block.rows],
    }


def gamma_block_from_doc(doc) -> GammaBlock:
    scale = parse_rational(doc["scale_sq"])
    if scale <= 0:
        raise InputFormatError("gamma block scale_sq must be positive")
    rows = tuple(tuple(scalar_from_doc(x) for x in row) for row in doc["rows"])
    return GammaBlock(scale, rows)


def representation_doc(inp: InputDocument, rep: Representation) -> dict:
    return {
        "kind": "representation",
        "input": inp.to_dict(),
        "n": rep.n,
        "dimension": rep.dimension,
        "kappa": rep.kappa,
        "s_infinity": const_matrix_doc(rep.s_infinity),
        "a": const_matrix_doc(rep.a_matrix),
        "j": const_matrix_doc(rep.j_matrix),
        "blocks": [block_doc(b) for b in rep.blocks],
        "gamma_blocks": [gamma_block_doc(g) for g in rep.gamma],
        "verified": rep.verified,
    }


def representation_from_doc(doc) -> tuple[MatPoly, Representation]:
    inp = InputDocument.from_dict(doc["input"])
    rep = Representation(
        n=doc["n"],
        s_infinity=const_matrix_from_doc(doc["s_infinity"]),
        a_matrix=const_matrix_from_doc(doc["a"]),
        j_matrix=const_matrix_from_doc(doc["j"]),
        gamma=tuple(gamma_block_from_doc(g) for g in doc["gamma_blocks"]),
        kappa=doc["kappa"],
        blocks=tuple(block_from_doc(b) for b in doc["blocks"]),
        verified=doc.get("verified", False),
    )
    return inp.matrix(), rep


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputFormatError("document must be a JSON object")
    return doc
