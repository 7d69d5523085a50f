"""Batch command-line frontend.

Reads one JSON problem document per invocation, runs the requested operation,
and writes a JSON output document containing the result, every verification
residual, and the tolerances used.  All numbers are serialized as decimals
with 17 significant digits; complex scalars are two-element arrays [re, im]
and quaternions four-element arrays [a, b, c, d]; matrices are row-major
nested arrays.

Exit codes: 0 success, 1 input error, 2 verification failure,
3 orbit without a Moore-Penrose inverse.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classical, complexes, forms, graded, homform, jordan
from .errors import LiepinvError, NotMoorePenroseOrbit
from .numcore import QuaternionMatrix, Tolerance, frob

__all__ = ["JobSpec", "run_job", "main", "COMMANDS"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_NO_INVERSE = 3


class InputError(ValueError):
    """Problem document failed to parse or validate."""


# ---------------------------------------------------------------------------
# JSON with 17-significant-digit floats
# ---------------------------------------------------------------------------


def _format_float(x) -> str:
    x = float(x)
    if not np.isfinite(x):
        raise ValueError("cannot serialize non-finite number")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    text = format(x, ".17g")
    return text


def to_json(value, indent: int = 0) -> str:
    """Deterministic JSON writer (insertion-ordered keys, 17-digit floats)."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f'{inner}{json.dumps(str(k))}: {to_json(v, indent + 1)}'
            for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            return "[]"
        flat = all(isinstance(v, (int, float, bool)) or v is None for v in seq)
        if flat:
            return "[" + ", ".join(to_json(v) for v in seq) + "]"
        items = [f"{inner}{to_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value)!r}")


# ---------------------------------------------------------------------------
# field decoding / encoding
# ---------------------------------------------------------------------------


def _field(doc: dict, name: str, kind=None, default=None, required: bool = False):
    if name not in doc:
        if required:
            raise InputError(f"missing required field {name!r}")
        return default
    value = doc[name]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"field {name!r} has wrong type {type(value).__name__}")
    return value


def _decode_scalar(entry, where: str) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, list) and len(entry) == 2 and all(
        isinstance(v, (int, float)) for v in entry
    ):
        return complex(entry[0], entry[1])
    raise InputError(f"{where}: expected a number or [re, im] pair, got {entry!r}")


def decode_complex_matrix(data, where: str) -> np.ndarray:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputError(f"{where}: expected a nested array of rows")
    width = len(data[0])
    rows = []
    for i, row in enumerate(data):
        if len(row) != width:
            raise InputError(f"{where}: row {i} has length {len(row)}, expected {width}")
        rows.append([_decode_scalar(v, f"{where}[{i}]") for v in row])
    return np.array(rows, dtype=complex)


def decode_complex_vector(data, where: str) -> np.ndarray:
    if not isinstance(data, list):
        raise InputError(f"{where}: expected an array")
    return np.array([_decode_scalar(v, where) for v in data], dtype=complex)


def decode_real_vector(data, where: str) -> np.ndarray:
    if not isinstance(data, list) or not all(isinstance(v, (int, float)) for v in data):
        raise InputError(f"{where}: expected an array of real numbers")
    return np.array(data, dtype=float)


def decode_quaternion_matrix(data, where: str) -> QuaternionMatrix:
    if not isinstance(data, list) or not data:
        raise InputError(f"{where}: expected a nested array of rows")
    rows = []
    for i, row in enumerate(data):
        out_row = []
        for j, q in enumerate(row):
            if not (isinstance(q, list) and len(q) == 4):
                raise InputError(f"{where}[{i}][{j}]: expected [a, b, c, d]")
            out_row.append(q)
        rows.append(out_row)
    return QuaternionMatrix.from_entries(rows)


def encode_complex(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_complex_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[encode_complex(v) for v in row] for row in m]


def encode_complex_vector(v) -> list:
    return [encode_complex(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def encode_real_matrix(m) -> list:
    return [[float(v) for v in row] for row in np.asarray(m, dtype=float)]


def encode_quaternion_matrix(q: QuaternionMatrix) -> list:
    return [
        [[float(c) for c in q.data[i, j]] for j in range(q.shape[1])]
        for i in range(q.shape[0])
    ]


# ---------------------------------------------------------------------------
# job handling
# ---------------------------------------------------------------------------


@dataclass
class JobSpec:
    """One CLI invocation: command, input document, and options."""

    command: str
    input_path: str | None = None
    tol: Tolerance = field(default_factory=Tolerance)
    seed: int = 0
    algebra: str | None = None
    blocks: tuple[int, ...] | None = None
    form_symmetry: str | None = None


def _load_document(job: JobSpec) -> dict:
    if job.input_path is None:
        return {}
    try:
        text = Path(job.input_path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {job.input_path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{job.input_path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise InputError(f"{job.input_path}: top level must be an object")
    return doc


def _tolerance_doc(tol: Tolerance) -> dict:
    return {"rank_rtol": tol.rank_rtol, "residual_tol": tol.residual_tol}


def _algebra_from(doc: dict, job: JobSpec) -> graded.GradedAlgebra:
    kind = _field(doc, "algebra", str, default=job.algebra)
    blocks = _field(doc, "blocks", list, default=list(job.blocks) if job.blocks else None)
    if kind is None or blocks is None:
        raise InputError("fields 'algebra' and 'blocks' are required (or pass --algebra/--blocks)")
    try:
        return graded.GradedAlgebra(kind, blocks, job.tol)
    except (ValueError, LiepinvError) as exc:
        raise InputError(f"invalid algebra: {exc}") from exc


def _cmd_pinv(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    kind = _field(doc, "field", str, default="complex")
    tol = job.tol
    if kind == "quaternion":
        q = decode_quaternion_matrix(_field(doc, "matrix", list, required=True), "matrix")
        x = classical.pinv_quaternion(q, tol)
        report = classical.verify_penrose(q.embed(), x.embed(), tol)
        result = {"pinv": encode_quaternion_matrix(x)}
    elif kind == "real":
        a = decode_complex_matrix(_field(doc, "matrix", list, required=True), "matrix")
        if frob(a.imag) > 0.0:
            raise InputError("field 'real' requires a real matrix")
        x = classical.pinv_real(a.real, tol)
        report = classical.verify_penrose(a, x.astype(complex), tol)
        result = {"pinv": encode_real_matrix(x)}
    elif kind == "complex":
        a = decode_complex_matrix(_field(doc, "matrix", list, required=True), "matrix")
        x = classical.pinv(a, tol)
        report = classical.verify_penrose(a, x, tol)
        result = {"pinv": encode_complex_matrix(x)}
    else:
        raise InputError(f"unknown field kind {kind!r}")
    verification = {
        "recover_a": report.recover_a,
        "recover_x": report.recover_x,
        "hermitian_ax": report.hermitian_ax,
        "hermitian_xa": report.hermitian_xa,
    }
    return {"result": result, "verification": verification}, report.passed


def _cmd_form_pinv(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    symmetry = _field(doc, "symmetry", str, default=job.form_symmetry)
    if symmetry is None:
        raise InputError("field 'symmetry' is required (or pass --form)")
    gram = decode_complex_matrix(_field(doc, "gram", list, required=True), "gram")
    form = forms.BilinearForm(symmetry, gram)
    out = forms.form_pinv(form, job.tol)
    report = forms.verify_form_pinv(form, out, job.tol)
    verification = {
        "recover_w": report.recover_a,
        "recover_w_plus": report.recover_x,
        "hermitian_w_wplus": report.hermitian_ax,
        "hermitian_wplus_w": report.hermitian_xa,
    }
    result = {"symmetry": out.symmetry, "gram": encode_complex_matrix(out.gram)}
    return {"result": result, "verification": verification}, report.passed


def _cmd_vector_pinv(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    v = decode_complex_vector(_field(doc, "vector", list, required=True), "vector")
    w = forms.vector_pinv(v, job.tol)
    report = forms.verify_vector_pinv(v, w, job.tol)
    verification = {
        "triple_residual": report.triple_residual,
        "characteristic_defect": report.characteristic_defect,
    }
    return (
        {"result": {"pinv": encode_complex_vector(w)}, "verification": verification},
        report.passed,
    )


def _cmd_pseudo_pinv(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    signature = _field(doc, "signature", list, required=True)
    if len(signature) != 2 or not all(isinstance(s, int) for s in signature):
        raise InputError("field 'signature' must be [n, m]")
    space = forms.PseudoEuclideanSpace(*signature)
    v = decode_real_vector(_field(doc, "vector", list, required=True), "vector")
    w = forms.pseudo_euclidean_pinv(space, v, job.tol)
    report = forms.verify_pseudo_euclidean_pinv(space, v, w, job.tol)
    verification = {
        "triple_residual": report.triple_residual,
        "characteristic_defect": report.characteristic_defect,
    }
    return (
        {"result": {"pinv": [float(x) for x in w]}, "verification": verification},
        report.passed,
    )


def _cmd_hermitian_pinv(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    kind = _field(doc, "field", str, default="complex")
    if kind == "quaternion":
        a = decode_quaternion_matrix(_field(doc, "matrix", list, required=True), "matrix")
        x = forms.hermitian_pinv(a, job.tol)
        report = forms.verify_hermitian_pinv(a, x, job.tol)
        result = {"pinv": encode_quaternion_matrix(x)}
    else:
        a = decode_complex_matrix(_field(doc, "matrix", list, required=True), "matrix")
        x = forms.hermitian_pinv(a, job.tol)
        report = forms.verify_hermitian_pinv(a, x, job.tol)
        if kind == "real":
            if frob(a.imag) > 0.0:
                raise InputError("field 'real' requires a real matrix")
            result = {"pinv": encode_real_matrix(x.real)}
        else:
            result = {"pinv": encode_complex_matrix(x)}
    verification = {
        "recover_a": report.recover_a,
        "recover_x": report.recover_x,
        "commutator": report.commutator,
        "class_defect": report.class_defect,
    }
    return {"result": result, "verification": verification}, report.passed


def _minimality_margin(
    alg: graded.GradedAlgebra, res: graded.CharacteristicResult, degree, seed: int
) -> float | None:
    """Smallest relative energy increase over random feasible perturbations."""
    directions = graded.characteristic_direction_space(alg, res.e, degree)
    if directions.shape[0] == 0:
        return None
    rng = np.random.default_rng(seed)
    base = frob(res.h) ** 2
    margin = np.inf
    for _ in range(20):
        coef = rng.standard_normal(directions.shape[0]) + 1j * rng.standard_normal(
            directions.shape[0]
        )
        delta = np.einsum("k,kab->ab", coef, directions)
        margin = min(margin, (frob(res.h + delta) ** 2 - base) / frob(delta) ** 2)
    return float(margin)


def _sl2_payload(alg, res: graded.CharacteristicResult, degree, seed) -> dict:
    margin = _minimality_margin(alg, res, degree, seed)
    verification = {
        "triple_residuals": list(res.triple.residuals),
        "hermitian_defect": res.hermitian_defect,
    }
    if margin is not None:
        verification["minimality_margin"] = margin
    return verification


def _cmd_sl2_complete(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    alg = _algebra_from(doc, job)
    e = decode_complex_matrix(_field(doc, "element", list, required=True), "element")
    degree = _field(doc, "degree", int)
    res = graded.minimal_characteristic(alg, e, degree, job.tol)
    verification = _sl2_payload(alg, res, degree, job.seed)
    result = {
        "e": encode_complex_matrix(res.e),
        "h": encode_complex_matrix(res.h),
        "f": encode_complex_matrix(res.f),
        "is_hermitian": res.is_hermitian,
    }
    passed = res.triple.max_residual() <= job.tol.residual_tol
    return {"result": result, "verification": verification}, passed


def _cmd_mp_element(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    alg = _algebra_from(doc, job)
    e = decode_complex_matrix(_field(doc, "element", list, required=True), "element")
    degree = _field(doc, "degree", int)
    res = graded.minimal_characteristic(alg, e, degree, job.tol)
    criterion = (
        graded.annihilates_positive_part(alg, e, res.h, job.tol)
        if frob(res.e) > 0.0
        else True
    )
    verification = _sl2_payload(alg, res, degree, job.seed)
    verification["orbit_criterion"] = criterion
    result = {
        "is_mp_element": res.is_hermitian,
        "hermitian_defect": res.hermitian_defect,
    }
    passed = res.triple.max_residual() <= job.tol.residual_tol
    return {"result": result, "verification": verification}, passed


def _cmd_orbit_height(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    alg = _algebra_from(doc, job)
    e = decode_complex_matrix(_field(doc, "element", list, required=True), "element")
    height = graded.orbit_height(alg, e, job.tol)
    return {"result": {"height": height}, "verification": {}}, True


def _cmd_mp_orbit(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    alg = _algebra_from(doc, job)
    e = decode_complex_matrix(_field(doc, "element", list, required=True), "element")
    height = graded.orbit_height(alg, e, job.tol)
    result = graded.is_mp_orbit(alg, e, job.tol)
    return {"result": {"is_mp_orbit": result, "height": height}, "verification": {}}, True


def _cmd_homform(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    form_doc = _field(doc, "form", dict, required=True)
    symmetry = _field(form_doc, "symmetry", str, default=job.form_symmetry)
    gram = decode_complex_matrix(_field(form_doc, "gram", list, required=True), "form.gram")
    form = forms.BilinearForm(symmetry, gram)
    f_mat = decode_complex_matrix(_field(doc, "map", list, required=True), "map")
    label = homform.classify_orbit(form, f_mat, job.tol)
    g_mat = homform.mp_inverse_homform(form, f_mat, job.tol)
    report = homform.verify_homform(form, f_mat, g_mat, job.tol)
    verification = {
        "residual_gf_hermitian": report.residual_gf_hermitian,
        "residual_fg_diff_hermitian": report.residual_fg_diff_hermitian,
        "residual_star1": report.residual_star1,
        "residual_star2": report.residual_star2,
    }
    result = {
        "orbit": {"a": label.a, "b": label.b},
        "inverse": encode_complex_matrix(g_mat),
    }
    return {"result": result, "verification": verification}, report.passed


def _cmd_complex_pinv(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    sizes = _field(doc, "sizes", list, required=True)
    maps_doc = _field(doc, "maps", list, required=True)
    maps = [
        decode_complex_matrix(m, f"maps[{i}]") for i, m in enumerate(maps_doc)
    ]
    try:
        tup = complexes.ChainTuple(tuple(sizes), tuple(maps))
    except (ValueError, LiepinvError) as exc:
        raise InputError(str(exc)) from exc
    out = complexes.complex_pinv(tup, job.tol)
    cert_in = complexes.certify_complex(tup, job.tol)
    cert_out = complexes.certify_complex(out, job.tol)
    e = complexes.assemble_raising(tup)
    f = complexes.assemble_lowering(tup, list(out.maps)[::-1])
    h = graded.bracket(e, f)
    triple = graded.Sl2Triple.from_elements(e, h, f)
    defect = frob(h - h.conj().T) / (1.0 + frob(h))
    verification = {
        "composition_residuals": list(cert_in.composition_residuals),
        "inverse_composition_residuals": list(cert_out.composition_residuals),
        "triple_residuals": list(triple.residuals),
        "characteristic_defect": defect,
    }
    result = {
        "sizes": [int(d) for d in out.sizes],
        "maps": [encode_complex_matrix(m) for m in out.maps],
        "ranks": [int(r) for r in cert_in.ranks],
    }
    passed = (
        cert_out.is_complex
        and triple.max_residual() <= job.tol.residual_tol
        and defect <= job.tol.residual_tol
    )
    return {"result": result, "verification": verification}, passed


def _cmd_jordan_mp(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    alg = _algebra_from(doc, job)
    try:
        pair = jordan.JordanPair(alg)
    except LiepinvError as exc:
        raise InputError(str(exc)) from exc
    a = decode_complex_matrix(_field(doc, "element", list, required=True), "element")
    inv = jordan.standard_cartan_involution(pair)
    x = jordan.mp_inverse_jordan(pair, inv, a, job.tol)
    report = jordan.verify_jordan_mp(pair, inv, a, x, job.tol)
    verification = {
        "recover_a": report.recover_a,
        "recover_x": report.recover_x,
        "hermitian_ax": report.hermitian_ax,
        "hermitian_xa": report.hermitian_xa,
    }
    return (
        {"result": {"inverse": encode_complex_matrix(x)}, "verification": verification},
        report.passed,
    )


def _cmd_report_table(doc: dict, job: JobSpec) -> tuple[dict, bool]:
    rows = [dict(row) for row in homform.CLASSICAL_MAXIMAL_PARABOLIC_TABLE]
    for row in rows:
        row["moore_penrose_roots"] = list(row["moore_penrose_roots"])
        row["abelian_radical_roots"] = list(row["abelian_radical_roots"])
    return {"result": {"maximal_parabolic_table": rows}, "verification": {}}, True


COMMANDS = {
    "pinv": _cmd_pinv,
    "form-pinv": _cmd_form_pinv,
    "vector-pinv": _cmd_vector_pinv,
    "pseudo-pinv": _cmd_pseudo_pinv,
    "hermitian-pinv": _cmd_hermitian_pinv,
    "sl2-complete": _cmd_sl2_complete,
    "mp-element": _cmd_mp_element,
    "orbit-height": _cmd_orbit_height,
    "mp-orbit": _cmd_mp_orbit,
    "homform": _cmd_homform,
    "complex-pinv": _cmd_complex_pinv,
    "jordan-mp": _cmd_jordan_mp,
    "report-table": _cmd_report_table,
}


def run_job(job: JobSpec) -> tuple[int, dict]:
    """Execute one job; returns (exit code, output document)."""
    envelope = {
        "command": job.command,
        "tolerance": _tolerance_doc(job.tol),
        "seed": job.seed,
    }
    try:
        doc = _load_document(job)
        payload, passed = COMMANDS[job.command](doc, job)
    except InputError as exc:
        envelope["error"] = str(exc)
        return EXIT_INPUT, envelope
    except NotMoorePenroseOrbit as exc:
        envelope["error"] = str(exc)
        envelope["orbit"] = {"a": exc.a, "b": exc.b}
        envelope["certificate"] = exc.certificate
        return EXIT_NO_INVERSE, envelope
    except (LiepinvError, ValueError) as exc:
        envelope["error"] = str(exc)
        return EXIT_INPUT, envelope
    except ArithmeticError as exc:
        # internal verification failed even though the input was valid
        envelope["error"] = str(exc)
        return EXIT_VERIFY, envelope
    envelope.update(payload)
    envelope["passed"] = passed
    return EXIT_OK if passed else EXIT_VERIFY, envelope


def _parse_blocks(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid block list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liepinv",
        description="Generalized Moore-Penrose inverses in graded classical Lie algebras",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("inputs", nargs="*", help="input JSON document(s)")
    parser.add_argument("--tol-rank", type=float, default=Tolerance().rank_rtol,
                        help="relative singular value cutoff (default 1e-10)")
    parser.add_argument("--tol-residual", type=float, default=Tolerance().residual_tol,
                        help="relative residual acceptance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for auxiliary randomized verification checks")
    parser.add_argument("--algebra", choices=["sl", "so", "sp"],
                        help="default algebra kind when the document omits it")
    parser.add_argument("--blocks", type=_parse_blocks,
                        help="default block sizes, comma separated (e.g. 2,3,2)")
    parser.add_argument("--form", choices=[forms.SYMMETRIC, forms.SKEW],
                        dest="form_symmetry",
                        help="default form symmetry when the document omits it")
    parser.add_argument("--output", "-o",
                        help="output file (single input) or directory (batch)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="run this many inputs concurrently in batch mode")
    return parser


def _job_from_args(args, input_path: str | None) -> JobSpec:
    try:
        tol = Tolerance(args.tol_rank, args.tol_residual)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return JobSpec(
        command=args.command,
        input_path=input_path,
        tol=tol,
        seed=args.seed,
        algebra=args.algebra,
        blocks=args.blocks,
        form_symmetry=args.form_symmetry,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs: list[str | None] = list(args.inputs) or [None]
    if inputs == [None] and args.command != "report-table":
        print(f"{args.command}: an input document is required", file=sys.stderr)
        return EXIT_INPUT

    try:
        jobs = [_job_from_args(args, path) for path in inputs]
    except InputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT

    if len(jobs) == 1:
        code, document = run_job(jobs[0])
        text = to_json(document) + "\n"
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        if code != EXIT_OK and "error" in document:
            print(document["error"], file=sys.stderr)
        return code

    # batch mode: each input gets <stem>.out.json
    out_dir = Path(args.output) if args.output else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(run_job, jobs))
    worst = EXIT_OK
    for job, (code, document) in zip(jobs, results):
        stem = Path(job.input_path).stem if job.input_path else job.command
        target = (out_dir or Path(job.input_path).parent) / f"{stem}.out.json"
        target.write_text(to_json(document) + "\n")
        worst = max(worst, code)
        if code != EXIT_OK and "error" in document:
            print(f"{job.input_path}: {document['error']}", file=sys.stderr)
    return worst


if __name__ == "__main__":
    sys.exit(main())
