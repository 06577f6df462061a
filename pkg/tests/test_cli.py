import json
from pathlib import Path

import jsonschema
import pytest

from logres.cli import COMMANDS, emit, load_schema, main, parse_problem_file, run_command
from logres.errors import ParseError, SpecializationError

DATA = Path(__file__).parent / "data"
FIXTURES = sorted(p.name for p in DATA.glob("*.txt"))


def spec_of(name):
    return parse_problem_file((DATA / name).read_text())


def test_parse_u12_spec():
    problem = parse_problem_file("vars: z,x,y\nweights: 3,4,4\nparam: t\nf: x^3+y^3+z^4+t*x*y*z^2")
    assert problem.vars == ["z", "x", "y"]
    assert problem.ring.weights == (3, 4, 4)
    assert problem.ring.names[problem.ring.distinguished] == "z"
    assert problem.param == "t"


def test_parse_cusp_spec_default_weights():
    problem = parse_problem_file("vars: x,y\nf: x^2-y^3")
    assert problem.weights is None
    assert problem.ring.weights == (1, 1)


@pytest.mark.parametrize("text", [
    "vars: x\nf: x^2",
    "f: x^2",
    "vars: x,y",
    "vars: x,y\nweights: 1,2,3\nf: x^2-y^3",
    "vars: x,y\nf: x^2-y^3\nf: x",
    "vars: x,y\ncolour: red\nf: x^2",
    "vars: x,y\nweights: 0,1\nf: x^2",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_problem_file(text)


def test_polynomial_error_has_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse_problem_file("vars: x,y\n\nf: x^2+*y")
    assert exc.value.line == 3
    assert exc.value.column == 8


def test_run_command_invariants():
    rep = run_command(spec_of("cusp.txt"), "invariants")
    assert (rep["mu"], rep["tau"], rep["quasi_homogeneous"]) == ("2", "2", True)
    rep = run_command(spec_of("u12.txt"), "invariants")
    assert (rep["mu"], rep["tau"], rep["mu_hyperplane"], rep["quasi_homogeneous"]) == ("12", "11", "4", False)


def test_run_command_scherk_gauss_manin():
    rep = run_command(spec_of("scherk.txt"), "gauss-manin")
    assert len(rep["payload"]["entries"]) == 10
    assert any("saturation" in n for n in rep["payload"]["notes"])


def test_logvf_method_flag():
    problem = spec_of("cusp.txt")
    polar = run_command(problem, "logvf", "polar")["payload"]
    jacobi = run_command(problem, "logvf", "jacobi")["payload"]
    assert polar["method"] == "polar" and jacobi["method"] == "jacobi"
    assert [f["cofactor"]["numerator"] for f in jacobi["fields"]] == ["1", "y"]


def test_emit_json_instance():
    rep = run_command(spec_of("cusp.txt"), "invariants")
    out = json.loads(emit(rep, "json"))
    assert out["command"] == "invariants"
    assert out["mu"] == "2" and out["tau"] == "2"


def test_emitted_polynomials_round_trip():
    problem = spec_of("scherk.txt")
    rep = run_command(problem, "gauss-manin")
    for e in rep["payload"]["entries"]:
        for key in ("b", "D_fb", "fD_b"):
            assert problem.ring.parse(e[key]).render() == e[key]


def test_specialization():
    problem = spec_of("e12.txt")
    rep = run_command(problem, "logvf", "jacobi", t_value=0)
    first = rep["payload"]["fields"][0]
    assert first["numerators"] == ["1/3*x", "1/7*y"]
    assert rep["payload"]["t_value"] == "0"
    with pytest.raises(SpecializationError):
        run_command(spec_of("u12.txt"), "invariants", t_value=0)


def test_t_value_without_parameter():
    with pytest.raises(ParseError):
        run_command(spec_of("cusp.txt"), "invariants", t_value=1)


def test_generic_warning_lists_inverted_factors():
    rep = run_command(spec_of("u12.txt"), "invariants")
    assert rep["warnings"] and "t" in rep["warnings"][0]


@pytest.mark.parametrize("args,code", [
    (["invariants", "cusp.txt"], 0),
    (["invariants", "missing.txt"], 2),
    (["invariants", "u12.txt", "--t-value", "0"], 3),
    (["invariants", "u12.txt", "--t-value", "1/0"], 2),
])
def test_exit_codes(args, code, capsys):
    args = [args[0], str(DATA / args[1])] + args[2:]
    assert main(args) == code


def test_error_json(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("vars: x,y\nf: x^2\n")
    assert main(["invariants", str(p), "--json"]) == 3
    out = json.loads(capsys.readouterr().out)
    assert out["error"]["code"] == "E_NONISOLATED"


def test_unexpected_exception_maps_to_internal(monkeypatch, capsys):
    from logres import cli

    def boom(*a, **k):
        raise KeyError("x")

    monkeypatch.setattr(cli, "run_command", boom)
    assert main(["invariants", str(DATA / "cusp.txt")]) == 4
    assert "E_INTERNAL_INVARIANT" in capsys.readouterr().err


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("command", COMMANDS)
def test_json_validates_and_is_deterministic(name, command, capsys):
    method = "jacobi" if name == "e12.txt" else "polar"
    args = [command, str(DATA / name), "--json", "--method", method]
    outs = []
    for _ in range(2):
        assert main(args) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    jsonschema.validate(doc, load_schema())
    assert emit(doc, "json") == outs[0]
