"""Command-line front end.

Commands: analyze, examples, fundamental-unit, check-standard-form, bound.
Exit codes: 0 success, 2 parse error, 3 invalid parameters, 4 not in standard
form, 5 internal consistency failure (always a bug).  stdout carries reports,
stderr carries diagnostics.

Parameter files are flat UTF-8 "key = value" lines with '#' comments:

    surface_type = +
    theta = 6
    r = 6
    x1 = 1
    x2 = -1/2 + 1/2*u
    e = 0
    t = 0          # optional; "p/q + r/s*sqrtD + (p/q + r/s*sqrtD)i"
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .components import (
    AutReport,
    ComponentGroup,
    GroupStructure,
    InternalConsistencyError,
    automorphism_report,
    order_bound,
)
from .exactnum import QuadComplex, QuadReal
from .quadfield import FieldDescriptor, FieldElement, parse_field_element
from .surfacegroup import (
    ParameterError,
    StandardFormError,
    SurfaceParams,
    is_standard_form_direct,
)
from .units import fundamental_unit


class ParamFileError(ValueError):
    """A parameter file failed to parse; the message is line-anchored."""


_KEYS = ("surface_type", "theta", "r", "x1", "x2", "e", "t")
_REQUIRED = ("surface_type", "theta", "r", "x1", "x2", "e")
_TERM_RE = re.compile(r"[+-]?[^+-]+")
_COMPLEX_RE = re.compile(r"^(?P<re>[^()]*?)(?:\+?\((?P<im>[^()]+)\)i)?$")


def _parse_surd(text: str, delta: int, where: str) -> QuadReal:
    """Parse "p/q + r/s*sqrtD" (either term omissible, empty means 0)."""
    compact = text.replace(" ", "")
    if not compact:
        return QuadReal.zero(delta)
    terms = _TERM_RE.findall(compact)
    if "".join(terms) != compact:
        raise ParamFileError(f"{where}: bad value {text!r}")
    rat = Fraction(0)
    irr = Fraction(0)
    for term in terms:
        sign = Fraction(1)
        body = term
        if body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        try:
            if body.endswith("sqrtD"):
                coeff = body[:-5].rstrip("*")
                irr += sign * (Fraction(coeff) if coeff else Fraction(1))
            else:
                rat += sign * Fraction(body)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParamFileError(f"{where}: bad term {term!r}") from exc
    return QuadReal(rat, irr, delta)


def parse_quad_complex(text: str, delta: int, where: str = "t") -> QuadComplex:
    compact = text.replace(" ", "")
    match = _COMPLEX_RE.match(compact)
    if match is None:
        raise ParamFileError(f"{where}: bad complex value {text!r}")
    re_part = _parse_surd(match.group("re") or "", delta, where)
    im_text = match.group("im")
    if im_text is None:
        return QuadComplex.from_real(re_part)
    return QuadComplex(re_part, _parse_surd(im_text, delta, where))


def format_surd_param(value: QuadReal) -> str:
    if value.irr == 0:
        return str(value.rat)
    if value.irr == 1:
        irr = "sqrtD"
    elif value.irr == -1:
        irr = "-sqrtD"
    else:
        irr = f"{value.irr}*sqrtD"
    if value.rat == 0:
        return irr
    joiner = "-" if value.irr < 0 else "+"
    return f"{value.rat} {joiner} {irr.lstrip('-')}"


def format_quad_complex(value: QuadComplex) -> str:
    if not value.im:
        return format_surd_param(value.re)
    im = f"({format_surd_param(value.im)})i"
    if not value.re:
        return im
    return f"{format_surd_param(value.re)} + {im}"


def load_param_file(path: str) -> SurfaceParams:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParamFileError(f"{path}: {exc}") from exc
    raw: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, eq, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        where = f"{path}:{lineno}"
        if not eq:
            raise ParamFileError(f"{where}: expected 'key = value'")
        if key not in _KEYS:
            raise ParamFileError(f"{where}: unknown key {key!r}")
        if key in raw:
            raise ParamFileError(f"{where}: duplicate key {key!r}")
        if not value:
            raise ParamFileError(f"{where}: empty value for {key!r}")
        raw[key] = (lineno, value)
    missing = [k for k in _REQUIRED if k not in raw]
    if missing:
        raise ParamFileError(f"{path}: missing keys: {', '.join(missing)}")

    def value_of(key: str) -> str:
        return raw[key][1]

    def where_of(key: str) -> str:
        return f"{path}:{raw[key][0]}"

    if value_of("surface_type") not in ("+", "-"):
        raise ParamFileError(
            f"{where_of('surface_type')}: surface_type must be '+' or '-'"
        )
    try:
        theta = int(value_of("theta"))
        r = int(value_of("r"))
    except ValueError as exc:
        raise ParamFileError(f"{path}: theta and r must be integers") from exc
    try:
        field = FieldDescriptor.from_type(value_of("surface_type"), theta)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    elements: dict[str, FieldElement] = {}
    for key in ("x1", "x2", "e"):
        try:
            elements[key] = parse_field_element(value_of(key), field)
        except ValueError as exc:
            raise ParamFileError(f"{where_of(key)}: {exc}") from exc
    if "t" in raw:
        t = parse_quad_complex(value_of("t"), field.delta, where_of("t"))
    else:
        t = QuadComplex.zero(field.delta)
    return SurfaceParams(field, r, elements["x1"], elements["x2"], elements["e"], t)


# -- built-in example parameter sets ------------------------------------------


@dataclass(frozen=True)
class BuiltinExample:
    name: str
    expected: str
    build: Callable[[], SurfaceParams]
    matches: Callable[[GroupStructure], bool]


def _theta6_params() -> SurfaceParams:
    field = FieldDescriptor(6, 1)
    return SurfaceParams.create(field, 6, field.one(), fundamental_unit(field))


def _theta4_shifted_params() -> SurfaceParams:
    field = FieldDescriptor(4, 1)
    e = field.one() / (6 * (field.one() - field.u()))
    return SurfaceParams.create(field, 6, field.one(), field.u(), e)


def _theta4_zero_params() -> SurfaceParams:
    field = FieldDescriptor(4, 1)
    return SurfaceParams.create(field, 6, field.one(), field.u())


def _theta7_params() -> SurfaceParams:
    field = FieldDescriptor(7, 1)
    return SurfaceParams.create(field, 10, field.one(), fundamental_unit(field))


BUILTIN_EXAMPLES: tuple[BuiltinExample, ...] = (
    BuiltinExample(
        "theta=6 r=6 I=Z<1,eta> e=0",
        "Z/2 x Z/2 (order 4)",
        _theta6_params,
        lambda s: s.abelian and s.invariant_factors == (2, 2),
    ),
    BuiltinExample(
        "theta=4 r=6 I=Z[u] e=1/(6(1-u))",
        "Z/2 (order 2)",
        _theta4_shifted_params,
        lambda s: s.abelian and s.invariant_factors == (2,),
    ),
    BuiltinExample(
        "theta=4 r=6 I=Z[u] e=0",
        "trivial (order 1)",
        _theta4_zero_params,
        lambda s: s.abelian and s.invariant_factors == (),
    ),
    BuiltinExample(
        "theta=7 r=10 I=Z<1,eta> e=0",
        "(Z/4) ⋉ (Z/5), action = multiplication by 3 (order 20)",
        _theta7_params,
        lambda s: (
            not s.abelian
            and s.quotient_order == 4
            and s.kernel_factors == (5,)
            and s.action == ((3,),)
            and s.split is True
        ),
    ),
)


# -- report rendering ----------------------------------------------------------


def _structure_payload(structure: GroupStructure) -> dict:
    return {
        "order": structure.order,
        "abelian": structure.abelian,
        "description": structure.describe(),
        "invariant_factors": (
            list(structure.invariant_factors)
            if structure.invariant_factors is not None
            else None
        ),
        "quotient_order": structure.quotient_order,
        "kernel_factors": (
            list(structure.kernel_factors)
            if structure.kernel_factors is not None
            else None
        ),
        "action": (
            [list(row) for row in structure.action]
            if structure.action is not None
            else None
        ),
        "split": structure.split,
        "twist": list(structure.twist) if structure.twist is not None else None,
    }


def _q_payload(q: ComponentGroup) -> dict:
    payload = _structure_payload(q.structure)
    payload["elements"] = [[el.unit_exp, el.coset] for el in q.elements]
    payload["table"] = [list(row) for row in q.table]
    return payload


def machine_payload(report: AutReport) -> dict:
    params = report.params
    inoue = report.inoue
    rows = inoue.matrix.int_rows()
    payload = {
        "params": {
            "surface_type": params.field.surface_type,
            "theta": params.field.theta,
            "r": params.r,
            "x1": str(params.x1),
            "x2": str(params.x2),
            "e": str(params.e),
            "t": format_quad_complex(params.t),
        },
        "standard_form": report.standard_form,
        "validation": {
            "fractional_ideal": True,
            "standard_form": report.standard_form,
        },
        "units": {
            "eta": str(report.eta),
            "eta_sigma1": report.eta.sigma1().reduced_str(),
            "j": report.j,
            "u_gen": str(report.u_gen),
            "n": report.n,
        },
        "ambient": {
            "order": report.ambient.order,
            "unit_order": report.n,
            "coset_count": report.ambient.quotient.order,
            "invariant_factors": list(report.ambient.invariant_factors),
            "coset_reps": [str(rep) for rep in report.ambient.coset_reps],
        },
        "q_group": _q_payload(report.q),
        "bound": report.bound,
        "kernel": "C*" if report.kernel_kind == "complex-torus-star" else "Z/2",
        "inoue": {
            "N": [list(rows[0]), list(rows[1])],
            "p": inoue.p,
            "q": inoue.q,
            "alpha": str(inoue.alpha),
            "a": [str(inoue.a1), str(inoue.a2)],
            "b": [str(inoue.b1), str(inoue.b2)],
            "c": [str(inoue.c1), str(inoue.c2)],
            "d": str(inoue.d),
        },
        "oracle": {
            "checked": report.oracle_checked,
            "elements": report.oracle_elements,
        },
        "double_r": (
            {
                "r": 2 * params.r,
                "q_group": _q_payload(report.double_r),
                "bound": report.double_r.ambient.order,
            }
            if report.double_r is not None
            else None
        ),
    }
    return payload


def dump_machine(report: AutReport) -> str:
    return json.dumps(machine_payload(report), sort_keys=True, separators=(",", ":"))


def render_report(report: AutReport) -> str:
    params = report.params
    inoue = report.inoue
    lines = []
    kind = "S(+)" if params.field.c0 == 1 else "S(-)"
    lines.append(
        f"surface {kind}: theta = {params.field.theta}, r = {params.r}, "
        f"delta = {params.field.delta}"
    )
    lines.append(f"  x1 = {params.x1}")
    lines.append(f"  x2 = {params.x2}")
    lines.append(f"  e  = {params.e}")
    lines.append(f"  t  = {format_quad_complex(params.t)}")
    lines.append("validation: fractional ideal: yes; standard form: yes")
    lines.append(
        f"units: eta = {report.eta} (sigma1 = {report.eta.sigma1().reduced_str()}), "
        f"u_gen = eta^{report.j}, u = u_gen^{report.n}"
    )
    lines.append(
        f"ambient group: order {report.ambient.order} = {report.n} x "
        f"{report.ambient.quotient.order}, coset factors "
        f"{report.ambient.invariant_factors}"
    )
    lines.append(
        "  coset reps: " + ", ".join(str(rep) for rep in report.ambient.coset_reps)
    )
    lines.append(
        f"component group Q: order {report.q.order}, {report.q.structure.describe()}"
    )
    lines.append(
        "  elements: "
        + " ".join(f"[{el.unit_exp},{el.coset}]" for el in report.q.elements)
    )
    lines.append(f"bound: |Q| = {report.q.order} <= {report.bound}")
    kernel = "C*" if report.kernel_kind == "complex-torus-star" else "Z/2"
    lines.append(f"kernel of Aut(X) -> Q: {kernel}")
    rows = inoue.matrix.int_rows()
    lines.append(
        f"Inoue data: N = [{list(rows[0])}, {list(rows[1])}], "
        f"(p, q) = ({inoue.p}, {inoue.q}), alpha = {inoue.alpha.reduced_str()}"
        f" ~ {float(inoue.alpha):.6f}"
    )
    if report.oracle_checked:
        lines.append(
            f"oracle: membership conditions agree with the normalizer test on "
            f"all {report.oracle_elements} ambient elements"
        )
    else:
        lines.append("oracle: skipped (--no-oracle)")
    if report.double_r is not None:
        lines.append(
            f"double-r cross-check (r = {2 * params.r}): order "
            f"{report.double_r.order}, {report.double_r.structure.describe()}"
        )
    return "\n".join(lines)


# -- commands -------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    params = load_param_file(args.file)
    report = automorphism_report(
        params, run_oracle=not args.no_oracle, with_double_r=args.double_r
    )
    if args.machine:
        print(dump_machine(report))
    else:
        print(render_report(report))
    return 0


def cmd_examples(args: argparse.Namespace) -> int:
    all_ok = True
    for example in BUILTIN_EXAMPLES:
        params = example.build()
        report = automorphism_report(params)
        structure = report.q.structure
        ok = example.matches(structure)
        all_ok = all_ok and ok
        verdict = "ok" if ok else "MISMATCH"
        print(
            f"{example.name}: expected {example.expected}; computed "
            f"{structure.describe()} (order {structure.order}) ... {verdict}"
        )
    return 0 if all_ok else 1


def cmd_fundamental_unit(args: argparse.Namespace) -> int:
    try:
        field = FieldDescriptor.from_type(args.type, args.theta)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    eta = fundamental_unit(field)
    print(f"fundamental unit: {eta.sigma1().reduced_str()}")
    print(f"coordinates: {eta}")
    print(f"norm: {eta.norm()}")
    return 0


def cmd_check_standard_form(args: argparse.Namespace) -> int:
    params = load_param_file(args.file)
    if is_standard_form_direct(params):
        print("standard form: yes")
        return 0
    print("standard form: no")
    if params.field.c0 == 1:
        print(
            "(1-u)/u e + (n21 n22/2) x1 - (n11 n12/2) x2 is not in I/r",
            file=sys.stderr,
        )
    return 4


def cmd_bound(args: argparse.Namespace) -> int:
    params = load_param_file(args.file)
    print(order_bound(params))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inoueaut",
        description=(
            "Exact computation of the automorphism component group of Inoue "
            "surfaces from quadratic-field data."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="full analysis of a parameter file")
    analyze.add_argument("file")
    analyze.add_argument(
        "--machine", action="store_true", help="emit a canonical JSON report"
    )
    analyze.add_argument(
        "--no-oracle", action="store_true", help="skip the normalizer cross-check"
    )
    analyze.add_argument(
        "--double-r",
        action="store_true",
        help="also compute Q for the doubled-r surface (odd-r cross-check)",
    )
    analyze.set_defaults(func=cmd_analyze)

    examples = sub.add_parser(
        "examples", help="run the built-in example parameter sets"
    )
    examples.set_defaults(func=cmd_examples)

    funit = sub.add_parser("fundamental-unit", help="fundamental unit of the field")
    funit.add_argument("theta", type=int)
    funit.add_argument("type", choices=["+", "-"])
    funit.set_defaults(func=cmd_fundamental_unit)

    check = sub.add_parser(
        "check-standard-form", help="standard-form test for a parameter file"
    )
    check.add_argument("file")
    check.set_defaults(func=cmd_check_standard_form)

    bound = sub.add_parser(
        "bound", help="cardinality bound n * |Norm(1 - u)| for a parameter file"
    )
    bound.add_argument("file")
    bound.set_defaults(func=cmd_bound)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParamFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ParameterError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 3
    except StandardFormError as exc:
        print(f"not in standard form: {exc}", file=sys.stderr)
        return 4
    except InternalConsistencyError as exc:
        print(f"internal consistency failure (bug): {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
