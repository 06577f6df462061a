"""Command line interface.

    logres <command> <problem-file> [--method polar|jacobi] [--json] [--t-value p/q]

A problem file holds ``key: value`` lines::

    vars: z,x,y
    weights: 3,4,4
    param: t
    f: x^3+y^3+z^4+t*x*y*z^2

The first variable is the distinguished one.  Lines starting with ``#`` are
comments.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .coeffield import RatFunc, _peval, collect_poles, render_pole, render_scalar, squarefree_part
from .errors import LogresError, NonGenericCoordinateError, ParseError, SpecializationError
from .gaussmanin import connection_report, integral_dependence_f2, saturation_step
from .localstd import (
    hyperplane_milnor,
    is_quasi_homogeneous,
    jacobi_basis,
    require_singular_germ,
    tjurina_basis,
)
from .logvf import VectorField, logvf_basis
from .poly import LocalFraction, Polynomial, Ring, render_monomial
from .residues import Form, regular_meromorphic_basis, torsion_basis

COMMANDS = ("invariants", "logvf", "torsion", "residues", "gauss-manin", "integral")
_KEYS = ("vars", "weights", "param", "f")


@dataclass
class ProblemSpec:
    vars: List[str]
    weights: Optional[List[int]]
    param: Optional[str]
    f_text: str
    f: Polynomial

    @property
    def ring(self) -> Ring:
        return self.f.ring


def parse_problem_file(text: str) -> ProblemSpec:
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno, column=1)
        key, _, value = raw.partition(":")
        key = key.strip()
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", line=lineno, column=raw.index(key) + 1)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", line=lineno, column=raw.index(key) + 1)
        values[key] = value
        lines[key] = (lineno, raw.index(":") + 1 + (len(value) - len(value.lstrip())))
    for key in ("vars", "f"):
        if key not in values:
            raise ParseError(f"missing '{key}:' line")
    names = [v.strip() for v in values["vars"].split(",")]
    if any(not v.isidentifier() for v in names):
        raise ParseError("variable names must be identifiers", line=lines["vars"][0])
    if len(names) < 2:
        raise ParseError(f"at least 2 variables are required, got {len(names)}", line=lines["vars"][0])
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", line=lines["vars"][0])
    weights = None
    if "weights" in values:
        try:
            weights = [int(w) for w in values["weights"].split(",")]
        except ValueError:
            raise ParseError("weights must be positive integers", line=lines["weights"][0]) from None
        if len(weights) != len(names):
            raise ParseError(
                f"{len(weights)} weights given for {len(names)} variables", line=lines["weights"][0]
            )
        if any(w < 1 for w in weights):
            raise ParseError("weights must be positive integers", line=lines["weights"][0])
    param = values["param"].strip() if "param" in values else None
    if param is not None and (not param.isidentifier() or param in names):
        raise ParseError(f"invalid parameter name {param!r}", line=lines["param"][0])
    ring = Ring(tuple(names), tuple(weights or ()), param)
    f_text = values["f"].strip()
    try:
        f = ring.parse(f_text)
    except ParseError as exc:
        lineno, offset = lines["f"]
        column = offset + (exc.pos or 1)
        raise ParseError(str(exc.args[0]).split(" (")[0], line=lineno, column=column) from None
    return ProblemSpec(names, weights, param, f_text, f)


# ---------------------------------------------------------------------------
# rendering, with optional post hoc specialization of the parameter

class _Renderer:
    def __init__(self, ring: Ring, value: Optional[Fraction]):
        self.ring = ring
        self.value = value

    def scalar(self, c) -> str:
        if self.value is not None and isinstance(c, RatFunc):
            c = c.substitute(self.value)
        return render_scalar(c, self.ring.param or "t")

    def poly(self, p: Polynomial) -> str:
        if self.value is not None and p.ring.parametric:
            p = p.subs_param(self.value)
        return p.render()

    def frac(self, fr: LocalFraction) -> dict:
        if self.value is not None and fr.ring.parametric:
            fr = fr.subs_param(self.value)
        return {"numerator": fr.num.render(), "denominator": fr.den.render()}

    def monomial(self, m) -> str:
        return render_monomial(m, self.ring.names)

    def coords(self, vec: dict, basis) -> dict:
        return {self.monomial(basis[k]): self.scalar(c) for k, c in sorted(vec.items())}

    def coords_poly(self, vec: dict, basis) -> str:
        p = Polynomial(self.ring, {basis[k]: c for k, c in vec.items()})
        return self.poly(p)

    def field(self, v: VectorField) -> dict:
        if self.value is not None and v.ring.parametric:
            v = v.subs_param(self.value)
        nums, den, cof = v.presentation()
        return {
            "witness": v.witness.render() if v.witness is not None else None,
            "coefficients": [
                {"var": name, "numerator": a.num.render(), "denominator": a.den.render()}
                for name, a in zip(v.ring.names, v.coefficients)
            ],
            "numerators": [p.render() for p in nums],
            "common_denominator": den.render(),
            "cofactor": {"numerator": cof.num.render(), "denominator": cof.den.render()},
        }

    def form(self, w: Form) -> dict:
        if self.value is not None and w.ring.parametric:
            w = w.subs_param(self.value)
        nums, den = w.presentation()
        names = w.ring.names
        return {
            "degree": str(w.degree),
            "denominator": den.render(),
            "terms": [
                {"basis": "^".join(f"d{names[i]}" for i in k) or "1", "numerator": nums[k].render()}
                for k in sorted(nums)
            ],
        }


def _invariants(problem: ProblemSpec):
    f = problem.f
    require_singular_germ(f)
    jsb = jacobi_basis(f)
    tsb = tjurina_basis(f)
    try:
        mu_h = hyperplane_milnor(f)
    except NonGenericCoordinateError:
        mu_h = None
    return jsb, tsb, mu_h


def run_command(problem: ProblemSpec, command: str, method: str = "polar",
                t_value: Optional[Fraction] = None) -> dict:
    """Run one command; returns the report as a JSON-ready dict."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    if t_value is not None and problem.param is None:
        raise ParseError("--t-value given but the problem has no parameter")
    f = problem.f
    ring = f.ring
    warnings: List[str] = []
    with collect_poles() as poles:
        jsb, tsb, mu_h = _invariants(problem)
        mu, tau = jsb.dimension, tsb.dimension
        qh = is_quasi_homogeneous(f, jsb)
        payload = _payload(problem, command, method, jsb, t_value)
    if mu_h is None:
        warnings.append(f"hyperplane section {{{ring.names[ring.distinguished]} = 0}} is not isolated")
    param = ring.param or "t"
    poles = {squarefree_part(p) for p in poles}
    pole_texts = sorted(render_pole(p, param) for p in poles)
    if t_value is not None:
        _check_specialized_invariants(problem, t_value, mu, tau, mu_h)
        hit = sorted(render_pole(p, param) for p in poles if _peval(p, t_value) == 0)
        if hit:
            warnings.append(
                f"{param} = {t_value} is a root of an inverted factor ({', '.join(hit)}); "
                "the specialized output is the limit of the generic one"
            )
    elif pole_texts:
        warnings.append(
            f"computed for generic {param}; results may change where any of these vanish: "
            + ", ".join(pole_texts)
        )
    if t_value is not None:
        payload["t_value"] = str(t_value)
        ring_out = ring.without_param()
        f_out = f.subs_param(t_value)
    else:
        ring_out = ring
        f_out = f
    return {
        "command": command,
        "vars": list(ring.names),
        "weights": [str(w) for w in ring_out.weights],
        "f": f_out.render(),
        "mu": str(mu),
        "tau": str(tau),
        "mu_hyperplane": None if mu_h is None else str(mu_h),
        "quasi_homogeneous": qh,
        "payload": payload,
        "warnings": warnings,
    }


def _check_specialized_invariants(problem, value, mu, tau, mu_h):
    g = problem.f.subs_param(value)
    require_singular_germ(g)
    try:
        got = (jacobi_basis(g).dimension, tjurina_basis(g).dimension)
    except LogresError as exc:
        raise SpecializationError(f"specialization at {value} changes the singularity: {exc}") from None
    if got != (mu, tau):
        raise SpecializationError(
            f"non-generic value {problem.param} = {value}: (mu, tau) = {got} instead of {(mu, tau)}"
        )


def _payload(problem, command, method, jsb, t_value) -> dict:
    f = problem.f
    r = _Renderer(f.ring, t_value)
    if command == "invariants":
        return {"milnor_basis": [r.monomial(m) for m in jsb.algebra.basis]}
    if command == "logvf":
        basis = logvf_basis(f, method)
        return {
            "method": method,
            "fields": [r.field(v) for v in basis.fields],
        }
    if command == "torsion":
        basis = logvf_basis(f, method)
        return {
            "method": method,
            "torsion": [
                {"witness": r.poly(tc.witness.witness), "form": r.form(tc.representative)}
                for tc in torsion_basis(f, basis)
            ],
        }
    if command == "residues":
        basis = logvf_basis(f, method)
        reg = regular_meromorphic_basis(f, basis)
        return {
            "method": method,
            "residues": [
                {
                    "witness": r.poly(rep.source.witness),
                    "xi": r.form(rep.xi),
                    "denominator": r.poly(rep.denominator),
                    "eta": r.form(rep.eta),
                }
                for rep in reg
            ],
            "assumptions": list(reg.assumptions),
        }
    if command == "gauss-manin":
        rep = connection_report(f)
        M = rep.basis_M
        entries = []
        for e in rep.entries:
            entries.append({
                "b": r.poly(e.witness_b),
                "divergence": r.frac(e.divergence),
                "D_fb": r.coords_poly(e.reduced, M),
                "fD_b": r.coords_poly(_fd(e, jsb), M),
                "coordinates": r.coords(e.reduced, M),
            })
        return {
            "M": [r.monomial(m) for m in M],
            "entries": entries,
            "relation": _relation(r, rep.relation) if rep.relation is not None else None,
            "saturation": _saturation(r, rep.saturation) if rep.saturation is not None else None,
            "notes": list(rep.notes),
        }
    if command == "integral":
        rel = integral_dependence_f2(f)
        step = saturation_step(rel)
        return {
            "relation": _relation(r, rel),
            "saturation": _saturation(r, step) if step is not None else None,
        }
    raise ValueError(command)


def _fd(entry, jsb) -> dict:
    out = dict(entry.reduced)
    for k, c in jsb.algebra.reduce(entry.witness_b).items():
        w = out.get(k, 0) - c
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _relation(r: _Renderer, rel) -> dict:
    names = rel.f.ring.names
    return {
        "unit": r.poly(rel.unit_factor),
        "linear": [r.poly(a) for a in rel.linear_coeffs],
        "quadratic": {f"{names[i]},{names[j]}": r.poly(a) for (i, j), a in sorted(rel.quadratic_coeffs.items())},
        "identity_holds": rel.holds(),
    }


def _saturation(r: _Renderer, step) -> dict:
    return {
        "D2_f2": r.coords_poly(step.reduced, step.basis),
        "coordinates": r.coords(step.reduced, step.basis),
    }


# ---------------------------------------------------------------------------
# output

def emit(report: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return _text(report)


def _text(report: dict) -> str:
    out = [f"{report['command']}: f = {report['f']}  in ({', '.join(report['vars'])})"
           f"  weights ({', '.join(report['weights'])})"]
    out.append(f"mu = {report['mu']}  tau = {report['tau']}  "
               f"mu_hyperplane = {report['mu_hyperplane'] or '-'}  "
               f"quasi_homogeneous = {'yes' if report['quasi_homogeneous'] else 'no'}")
    p = report["payload"]
    cmd = report["command"]
    if cmd == "invariants":
        out.append("M = {" + ", ".join(p["milnor_basis"]) + "}")
    elif cmd == "logvf":
        out.append(f"method: {p['method']}")
        for k, v in enumerate(p["fields"], 1):
            coeffs = ", ".join(f"d/d{c['var']}: {_frac_text(c)}" for c in v["coefficients"])
            out.append(f"v{k} [witness {v['witness']}]  {coeffs}  cofactor {_frac_text(v['cofactor'])}")
    elif cmd == "torsion":
        for k, t in enumerate(p["torsion"], 1):
            out.append(f"beta{k} [witness {t['witness']}]  {_form_text(t['form'])}")
    elif cmd == "residues":
        for k, t in enumerate(p["residues"], 1):
            out.append(f"res{k} [witness {t['witness']}]  ({_form_text(t['xi'])}) / ({t['denominator']}) |_S")
        for a in p["assumptions"]:
            out.append(f"assumed: {a}")
    elif cmd == "gauss-manin":
        out.append("M = {" + ", ".join(p["M"]) + "}")
        for e in p["entries"]:
            out.append(f"D(f*({e['b']})*omega) = ({e['D_fb']})*omega   fD(({e['b']})*omega) = ({e['fD_b']})*omega")
        if p["relation"] is not None:
            out.extend(_relation_text(p["relation"]))
        if p["saturation"] is not None:
            out.append(f"D^2(f^2*omega) = ({p['saturation']['D2_f2']})*omega")
        for n in p["notes"]:
            out.append(f"note: {n}")
    elif cmd == "integral":
        out.extend(_relation_text(p["relation"]))
        if p["saturation"] is None:
            out.append("D^2(f^2*omega): not available (R is not in J)")
        else:
            out.append(f"D^2(f^2*omega) = ({p['saturation']['D2_f2']})*omega")
    if "t_value" in p:
        out.append(f"specialized at t = {p['t_value']}")
    for w in report["warnings"]:
        out.append(f"warning: {w}")
    return "\n".join(out) + "\n"


def _frac_text(fr: dict) -> str:
    if fr["denominator"] == "1":
        return fr["numerator"]
    return f"({fr['numerator']})/({fr['denominator']})"


def _form_text(w: dict) -> str:
    body = " + ".join(
        f"({t['numerator']})*{t['basis']}" if t["basis"] != "1" else f"({t['numerator']})"
        for t in w["terms"]
    ) or "0"
    if w["denominator"] == "1":
        return body
    return f"[{body}]/({w['denominator']})"


def _relation_text(rel: dict) -> List[str]:
    out = [f"unit = {rel['unit']}"]
    out += [f"a_{k + 1} = {a}" for k, a in enumerate(rel["linear"])]
    out += [f"a_{{{k}}} = {a}" for k, a in rel["quadratic"].items()]
    out.append(f"identity holds: {rel['identity_holds']}")
    return out


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logres", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem_file")
    ap.add_argument("--method", choices=("polar", "jacobi"), default="polar")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--t-value", dest="t_value", help="specialize the parameter, e.g. 0 or 3/2")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.problem_file, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise ParseError(f"cannot read {args.problem_file}: {exc}") from None
        problem = parse_problem_file(text)
        t_value = None
        if args.t_value is not None:
            try:
                t_value = Fraction(args.t_value)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"--t-value must be a rational p/q, got {args.t_value!r}") from None
        report = run_command(problem, args.command, args.method, t_value)
    except LogresError as exc:
        return _fail(exc.code, exc.exit_code, str(exc), args.json)
    except Exception as exc:  # any escape is an internal failure
        return _fail("E_INTERNAL_INVARIANT", 4, f"{type(exc).__name__}: {exc}", args.json)
    sys.stdout.write(emit(report, "json" if args.json else "text"))
    return 0


def _fail(code: str, exit_code: int, message: str, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(json.dumps({"error": {"code": code, "message": message}}, sort_keys=True, indent=2) + "\n")
    sys.stderr.write(f"error[{code}]: {message}\n")
    return exit_code


def load_schema() -> dict:
    from importlib.resources import files

    return json.loads(files("logres").joinpath("schema/report.schema.json").read_text("utf-8"))


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
