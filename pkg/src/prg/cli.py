"""The ``prg`` command line.

Exit codes: 0 everything verified, 1 something falsified, 2 inconclusive,
3 bad input.  JSON output is the contract; text output is a rendering of it.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from .errors import BudgetExceeded
from .exactlinalg import Matrix, SingularMatrixError, format_scalar, matrix_from_json, tensor_to_json
from .ncalg.membership import FALSIFIED, INCONCLUSIVE, VERIFIED

EXIT_OK, EXIT_FALSIFIED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
_EXIT = {VERIFIED: EXIT_OK, FALSIFIED: EXIT_FALSIFIED, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class InputError(Exception):
    """Bad files, malformed JSON or arguments the operations reject."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2, which is reserved for inconclusive runs
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- input ----------------------------------------------------------------

def load_json(path: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno} (char {exc.pos}): {exc.msg}"
        ) from None


def load_form(path: str):
    from .forms import form_from_json

    try:
        return form_from_json(load_json(path))
    except (ValueError, TypeError, KeyError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from None


def load_matrix(path: str) -> Matrix:
    obj = load_json(path)
    try:
        if isinstance(obj, list):
            return Matrix.from_rows(obj)
        return matrix_from_json(obj)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from None


def matrix_rows(M: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in M.to_rows()]


def matrix_label(M: Matrix) -> str:
    """``I``, ``-I``, ``cI`` for scalar matrices, else the rows."""
    n = M.rows
    if M.is_square:
        c = M[0, 0]
        if M == Matrix.identity(n) * c:
            if c == 1:
                return "I"
            if c == -1:
                return "-I"
            return f"{format_scalar(c)}I"
    return json.dumps(matrix_rows(M))


# -- commands ---------------------------------------------------------------
# Each returns (report, status).

def cmd_form_check(args):
    from .forms import check_preregular

    f = load_form(args.form)
    rep = check_preregular(f)
    out = {
        "m": f.m,
        "dim": f.dim,
        "nondegenerate": rep.nondegenerate,
        "preregular": rep.passed,
        "twist": matrix_label(rep.twist) if rep.twist is not None else None,
        "twist_invertible": rep.twist_invertible,
    }
    if rep.twist is not None:
        out["twist_matrix"] = matrix_rows(rep.twist)
    if rep.witness is not None:
        out["witness"] = [format_scalar(x) for row in rep.witness.to_rows() for x in row]
    return out, VERIFIED if rep.passed else FALSIFIED


def cmd_form_dual(args):
    from .forms import dual_form, form_to_json

    f = load_form(args.form)
    try:
        g = dual_form(f)
    except ValueError as exc:
        return {"error": str(exc)}, FALSIFIED
    return {"dual": form_to_json(g)}, VERIFIED


def cmd_form_aut(args):
    from .forms import aut_membership

    f = load_form(args.form)
    phi = load_matrix(args.phi)
    try:
        mem = aut_membership(f, phi)
    except (SingularMatrixError, ValueError) as exc:
        raise InputError(str(exc)) from None
    out = {"member": mem.member, "lambda": format_scalar(mem.lam) if mem.member else None}
    return out, VERIFIED if mem.member else FALSIFIED


def cmd_algebra_relations(args):
    from .superpotential import derive_relations, relation_to_text

    f = load_form(args.form)
    try:
        rs = derive_relations(f, args.N)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {
        "N": rs.N,
        "dim": rs.dim,
        "rank": rs.rank,
        "relations": [relation_to_text(r) for r in rs.basis],
        "tensors": [tensor_to_json(r) for r in rs.basis],
    }
    return out, VERIFIED


def cmd_algebra_dims(args):
    from .superpotential import graded_dimension

    f = load_form(args.form)
    try:
        gd = graded_dimension(f, args.N, args.max_deg)
    except BudgetExceeded as exc:
        return {"N": args.N, "max_deg": args.max_deg, "error": str(exc)}, INCONCLUSIVE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return {"N": args.N, "max_deg": gd.maxdeg, "dims": list(gd.dims)}, VERIFIED


def _pair(args):
    e = load_form(args.e)
    f = load_form(args.f) if getattr(args, "f", None) else e
    if e.m != f.m:
        raise InputError(f"arity mismatch: {e.m} vs {f.m}")
    return e, f


def _uqg(e, f):
    from .cogroupoid import build_presentation

    try:
        return build_presentation(e, f)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_uqg_present(args):
    from .cogroupoid import relation_count

    e, f = _pair(args)
    H = _uqg(e, f)
    out = {
        "m": H.m,
        "k": H.k,
        "l": H.l,
        "generators": len(H.pres.alphabet),
        "relation_count": relation_count(H.k, H.l, H.m),
        "P": matrix_rows(H.P),
        "Q": matrix_rows(H.Q),
        "presentation": H.pres.to_json(),
    }
    return out, VERIFIED


def cmd_uqg_verify_axioms(args):
    from .cogroupoid import verify_antipode, verify_cocategory
    from .ncalg.membership import combine_status

    e, f = _pair(args)
    extra = [load_form(p) for p in (args.g, args.h) if p]
    if len(extra) == 1:
        raise InputError("give either two or four forms")
    g, h = extra if extra else (f, e)
    for x in (g, h):
        if x.m != e.m:
            raise InputError("all forms must have the same arity")
    for x, y in ((e, f), (f, e), (e, g), (g, h), (f, g), (e, h), (f, h)):
        _uqg(x, y)
    coc = verify_cocategory(e, f, g, h, args.len_bound)
    ant = verify_antipode(e, f, args.len_bound)
    status = combine_status([coc.status, ant.status])
    return {"status": status, "cocategory": coc.to_json(), "antipode": ant.to_json()}, status


def cmd_uqg_lemma(args):
    from .cogroupoid import verify_lemma_identities

    e, f = _pair(args)
    _uqg(e, f)
    rep = verify_lemma_identities(e, f, args.len_bound)
    return rep.to_json(), rep.status


def _form_and_phi(args):
    from .forms import aut_membership

    e = load_form(args.e)
    _uqg(e, e)
    phi = load_matrix(args.phi)
    try:
        mem = aut_membership(e, phi)
    except (SingularMatrixError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if not mem.member:
        raise InputError("phi is not in Aut(e)")
    return e, phi


def cmd_twist_pair(args):
    from .cogroupoid import build_twisting_pair

    e, phi = _form_and_phi(args)
    rep = build_twisting_pair(e, phi, args.len_bound)
    return rep.to_json(), rep.status


def cmd_twist_cocycle(args):
    from .cogroupoid import verify_cocycle_connectivity

    e, phi = _form_and_phi(args)
    rep = verify_cocycle_connectivity(e, phi, args.len_bound)
    return rep.to_json(), rep.status


def cmd_twist_conditions(args):
    from .cogroupoid import verify_twisting_conditions

    e = load_form(args.e)
    _uqg(e, e)
    rep = verify_twisting_conditions(e)
    return rep.to_json(), rep.status


def _bilinear(args):
    e, f = _pair(args)
    if e.m != 2:
        raise InputError("module families exist only for bilinear forms (m = 2)")
    if e.dim != f.dim:
        raise InputError("module families need forms on spaces of equal dimension")
    _uqg(e, f)
    return e, f


def cmd_module_family(args):
    import random

    from .representations import extend_module, family_to_json, random_seed_matrix, verify_module

    e, f = _bilinear(args)
    E, F = e.matrix(), f.matrix()
    if args.seed:
        A0, rng_seed = load_matrix(args.seed), None
    else:
        rng_seed = args.rng_seed
        A0 = random_seed_matrix(E.rows, random.Random(rng_seed))
    try:
        fam = extend_module(E, F, A0, tuple(args.window))
    except (SingularMatrixError, ValueError) as exc:
        raise InputError(str(exc)) from None
    rep = verify_module(fam)
    out = {"rng_seed": rng_seed, "family": family_to_json(fam), "verify": rep.to_json()}
    return out, VERIFIED if rep.passed else FALSIFIED


def cmd_nonvanishing(args):
    from .representations import nonvanishing_certificate, validate_certificate

    e, f = _bilinear(args)
    seed = load_matrix(args.seed) if args.seed else None
    try:
        cert = nonvanishing_certificate(e, f, seed, rng_seed=args.rng_seed, window=tuple(args.window))
    except (SingularMatrixError, ValueError) as exc:
        raise InputError(str(exc)) from None
    obj = cert.to_json()
    ok, problems = validate_certificate(obj)
    if args.cert_out:
        Path(args.cert_out).write_text(dumps(obj))
    out = {"certificate": obj, "validates": ok, "problems": problems}
    if args.cert_out:
        out["written"] = args.cert_out
    return out, VERIFIED if ok and cert.verdict == "nonzero" else FALSIFIED


def cmd_certify_verify(args):
    from .representations import validate_certificate

    obj = load_json(args.cert)
    if not isinstance(obj, dict):
        raise InputError(f"{args.cert}: a certificate must be a JSON object")
    try:
        ok, problems = validate_certificate(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{args.cert}: {exc}") from None
    return {"valid": ok, "problems": problems}, VERIFIED if ok else FALSIFIED


# -- parser -----------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    bounded = argparse.ArgumentParser(add_help=False)
    bounded.add_argument("--len-bound", type=_positive, default=None, help="word-length bound for ideal searches")

    windowed = argparse.ArgumentParser(add_help=False)
    windowed.add_argument("--window", type=int, nargs=2, default=[-5, 5], metavar=("LO", "HI"))
    windowed.add_argument("--rng-seed", type=int, default=0, help="seed for a random A0 when --seed is absent")

    parser = _Parser(prog="prg", description="Exact checks for preregular forms and the cogroupoids H(e,f).")
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(sub, name, func: Callable, parents=(), help=None):
        p = sub.add_parser(name, parents=[common, *parents], help=help)
        p.set_defaults(func=func)
        return p

    form = top.add_parser("form", help="preregular forms").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    leaf(form, "check", cmd_form_check, help="nondegeneracy and cyclic twist").add_argument("form")
    leaf(form, "dual", cmd_form_dual, help="the dual form").add_argument("form")
    p = leaf(form, "aut", cmd_form_aut, help="membership of phi in Aut(e)")
    p.add_argument("form")
    p.add_argument("phi")

    alg = top.add_parser("algebra", help="superpotential algebras").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = leaf(alg, "relations", cmd_algebra_relations)
    p.add_argument("form")
    p.add_argument("--N", type=int, default=2)
    p = leaf(alg, "dims", cmd_algebra_dims)
    p.add_argument("form")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--max-deg", type=int, default=6)

    uqg = top.add_parser("uqg", help="the algebras H(e,f)").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    p = leaf(uqg, "present", cmd_uqg_present)
    p.add_argument("e")
    p.add_argument("f", nargs="?")
    p = leaf(uqg, "verify-axioms", cmd_uqg_verify_axioms, (bounded,))
    for name in ("e", "f"):
        p.add_argument(name)
    p.add_argument("g", nargs="?")
    p.add_argument("h", nargs="?")
    p = leaf(uqg, "lemma", cmd_uqg_lemma, (bounded,))
    p.add_argument("e")
    p.add_argument("f", nargs="?")

    tw = top.add_parser("twist", help="twisting pairs and connectivity").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, func in (("pair", cmd_twist_pair), ("cocycle", cmd_twist_cocycle)):
        p = leaf(tw, name, func, (bounded,))
        p.add_argument("e")
        p.add_argument("phi")
    leaf(tw, "conditions", cmd_twist_conditions).add_argument("e")

    p = leaf(top, "module-family", cmd_module_family, (windowed,), help="graded module family over H_2(e,f)")
    p.add_argument("e")
    p.add_argument("f")
    p.add_argument("--seed", help="JSON matrix A0")
    p = leaf(top, "nonvanishing", cmd_nonvanishing, (windowed,), help="certificate that H_2(e,f) is nonzero")
    p.add_argument("e")
    p.add_argument("f")
    p.add_argument("--seed", help="JSON matrix A0")
    p.add_argument("--cert-out", help="also write the certificate to this file")

    cert = top.add_parser("certify", help="certificates").add_subparsers(dest="sub", required=True, parser_class=_Parser)
    leaf(cert, "verify", cmd_certify_verify).add_argument("cert")
    return parser


# -- output -----------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def render_text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_atom(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_atom(v)}")
    else:
        lines.append(f"{pad}{_atom(obj)}")
    return "\n".join(lines)


def _atom(v: Any) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def _emit(report: dict, fmt: str, output: str | None) -> None:
    text = dumps(report) if fmt == "json" else render_text(report) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = " ".join(x for x in (args.command, getattr(args, "sub", None)) if x)
    try:
        body, status = args.func(args)
    except InputError as exc:
        report = {"command": command, "status": "input-error", "error": str(exc)}
        _emit(report, args.format, None)
        print(f"prg: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": command, "status": status, "report": body}
    _emit(report, args.format, args.output)
    return _EXIT[status]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
