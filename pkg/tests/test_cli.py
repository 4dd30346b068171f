import json

import pytest

from onsager.cli import main
from onsager.expr import (
    Bracket,
    Call,
    DomainError,
    ExprSyntaxError,
    Lit,
    Mul,
    Sub,
    evaluate,
    parse,
    to_text,
)
from onsager.uea import equal, pbw_normal_form


# ---------------------------------------------------------------------------
# parser

def test_parse_product_minus():
    ast = parse("2*xp(3)*xm(1) - h(2)")
    assert isinstance(ast, Sub)
    assert isinstance(ast.left, Mul)
    assert ast.right == Call("h", (2,))


def test_parse_divided_power():
    ast = parse("dp(xp(1),3)")
    assert ast == Call("dp", (Call("xp", (1,)), 3))


def test_parse_bracket_and_rationals():
    ast = parse("[xp(2), xm(1)] + 3/2")
    assert isinstance(ast.left, Bracket)
    assert ast.right == Lit(__import__("fractions").Fraction(3, 2))


def test_parse_signed_calls():
    parse("d1(+,2,1,1)")
    parse("duv(-,1,2,2,1)")
    parse("dt(+,1,1,2,2)")


def test_syntax_error_positions():
    with pytest.raises(ExprSyntaxError) as exc:
        parse("xp(1) +")
    assert exc.value.line == 1
    with pytest.raises(ExprSyntaxError):
        parse("xp(1,2)")
    with pytest.raises(ExprSyntaxError):
        parse("frob(1)")
    with pytest.raises(ExprSyntaxError):
        parse("xp(1) @ xm(1)")


def test_roundtrip_print_parse_print():
    for text in ("2*xp(3)*xm(1) - h(2)", "dp(xp(1),3)", "-lam(2,1,2)",
                 "[h(2), xp(1)]", "binom(h(0),2)*xm(1)", "1/2*h(4)",
                 "d1(+,1,2,1) + duv(-,0,2,1,1)"):
        once = to_text(parse(text))
        assert to_text(parse(once)) == once


def test_evaluate_negative_order_lambda_is_zero():
    assert evaluate(parse("lam(1,1,-2)")).is_zero


def test_evaluate_negative_index_normalized():
    a = evaluate(parse("xp(-3)"))
    b = evaluate(parse("-xp(3)"))
    assert equal(a, b)
    assert equal(evaluate(parse("h(-2)")), evaluate(parse("h(2)")))


def test_domain_errors():
    with pytest.raises(DomainError):
        evaluate(parse("lam(1,0,2)"))
    with pytest.raises(DomainError):
        evaluate(parse("p(0,1,1)"))
    with pytest.raises(DomainError):
        evaluate(parse("dp(xp(1)*xm(1), 2)"))  # not degree one
    with pytest.raises(DomainError):
        evaluate(parse("[xp(1)*xp(2), h(0)]"))


def test_evaluate_bracket_matches_table():
    out = evaluate(parse("[xp(2), xm(1)]"))
    assert equal(out, evaluate(parse("h(3) - h(1)")))


# ---------------------------------------------------------------------------
# commands

def test_bracket_command(capsys):
    assert main(["bracket", "xp(2)", "xm(1)"]) == 0
    assert capsys.readouterr().out.strip() == "-h(1) + h(3)"


def test_normalize_command(capsys):
    assert main(["normalize", "xp(1)*xm(1)"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "-h(0) + h(2) + xm(1)*xp(1)"
    # emitted text parses back to the same element
    assert equal(pbw_normal_form(evaluate(parse(out))),
                 pbw_normal_form(evaluate(parse("xp(1)*xm(1)"))))


def test_normalize_json_schema(capsys):
    assert main(["normalize", "h(2)*xp(1)", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"words"}
    for word in payload["words"]:
        assert set(word) == {"coeff", "factors"}
        for f in word["factors"]:
            assert f["kind"] in ("xp", "xm", "h")
            assert isinstance(f["index"], int)


def test_coords_command(capsys):
    assert main(["coords", "xp(1)*xm(1)", "--mdegree", "2", "--index", "1"]) == 0
    out = capsys.readouterr().out
    assert "lam(1,1,1)" in out
    assert "integral: true" in out


def test_coords_out_of_truncation(capsys):
    assert main(["coords", "h(6)", "--mdegree", "1", "--index", "1"]) == 1
    assert "out of truncation" in capsys.readouterr().err


def test_verify_exit_codes(capsys):
    assert main(["verify", "--suite", "I6", "--max-index", "2",
                 "--max-order", "2"]) == 0
    capsys.readouterr()
    assert main(["verify", "--suite", "NOPE"]) == 2
    capsys.readouterr()
    assert main(["verify", "--suite", "I6", "--max-index", "0"]) == 2


def test_verify_json_report_schema(capsys):
    assert main(["verify", "--suite", "I7", "--max-index", "2",
                 "--max-order", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"config", "results", "summary"}
    assert payload["summary"]["fail"] == 0
    for r in payload["results"]:
        assert set(r) == {"id", "params", "pass", "counterexample", "ms"}
        assert r["ms"] == 0


def test_verify_json_deterministic_across_jobs(capsys):
    args = ["verify", "--suite", "I6,XKL1", "--max-index", "2",
            "--max-order", "2", "--format", "json"]
    assert main(args + ["--jobs", "1"]) == 0
    first = capsys.readouterr().out
    assert main(args + ["--jobs", "4"]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_audit_commands(capsys):
    assert main(["audit", "span", "--parity", "even", "--cutoff", "6"]) == 0
    out = capsys.readouterr().out
    assert "rank 3" in out and "h(0)" in out
    assert main(["audit", "theorem", "--mdegree", "1", "--index", "1",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 4 and payload["independent"] is True


def test_realize_command(capsys):
    assert main(["realize", "h(0)"]) == 0
    out = capsys.readouterr().out
    assert "2i" in out


def test_syntax_error_exit_code(capsys):
    assert main(["normalize", "xp(1"]) == 2
    assert "syntax error" in capsys.readouterr().err
    assert main(["normalize", "lam(1,0,2)"]) == 2


def test_config_file_defaults(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("max_index = 2\nmax_order = 1\ntags = I6\nformat = json\n",
                   encoding="utf-8")
    monkeypatch.setenv("ONSAGER_CONFIG", str(cfg))
    assert main(["verify"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["config"]["max_index"] == 2
    assert payload["config"]["tags"] == ["I6"]


def test_config_file_malformed(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("what even is this\n", encoding="utf-8")
    monkeypatch.setenv("ONSAGER_CONFIG", str(cfg))
    assert main(["verify"]) == 2
    assert "error" in capsys.readouterr().err
