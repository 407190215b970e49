"""CLI layer: commands, exit codes, file parsing, machine report round trip."""

import json

import pytest

from inoueaut.cli import (
    ParamFileError,
    format_quad_complex,
    load_param_file,
    main,
    parse_quad_complex,
)
from inoueaut.exactnum import QuadComplex, QuadReal

EX319 = """\
# worked example: theta = 6
surface_type = +
theta = 6
r = 6
x1 = 1
x2 = -1/2 + 1/2*u
e = 0
t = 0
"""

EX321 = """\
surface_type = +
theta = 4
r = 6
x1 = 1
x2 = u
e = 1/4 - 1/12*u
"""

EX323 = """\
surface_type = +
theta = 7
r = 10
x1 = 1
x2 = -2/3 + 1/3*u
e = 0
"""


def write(tmp_path, text, name="surface.params"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_analyze_example_theta6(tmp_path, capsys):
    rc = main(["analyze", write(tmp_path, EX319)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "Z/2 x Z/2" in out
    assert "order 4" in out
    assert "N = [[1, 2], [2, 5]]" in out


def test_analyze_trivial_group(tmp_path, capsys):
    text = EX321.replace("e = 1/4 - 1/12*u", "e = 0")
    rc = main(["analyze", write(tmp_path, text)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "trivial" in out


def test_analyze_machine_round_trip(tmp_path, capsys):
    rc = main(["analyze", "--machine", write(tmp_path, EX319)])
    out = capsys.readouterr().out
    assert rc == 0
    payload = json.loads(out)
    assert payload["q_group"]["order"] == 4
    assert payload["q_group"]["invariant_factors"] == [2, 2]
    assert payload["bound"] == 8
    assert payload["kernel"] == "C*"
    assert payload["oracle"]["checked"] is True
    # canonical: re-serialization is byte-identical
    again = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    assert again == out.rstrip("\n")


def test_analyze_no_oracle_flag(tmp_path, capsys):
    rc = main(["analyze", "--no-oracle", "--machine", write(tmp_path, EX319)])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["oracle"]["checked"] is False


def test_analyze_double_r(tmp_path, capsys):
    rc = main(["analyze", "--machine", "--double-r", write(tmp_path, EX323)])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["double_r"]["r"] == 20
    assert payload["double_r"]["q_group"]["order"] >= 1


def test_exit_code_parse_error(tmp_path, capsys):
    rc = main(["analyze", write(tmp_path, "surface_type = +\ngarbage line\n")])
    assert rc == 2
    assert "parse error" in capsys.readouterr().err
    rc = main(["analyze", write(tmp_path, EX319.replace("x2 = -1/2 + 1/2*u", "x2 = oops"))])
    assert rc == 2
    rc = main(["analyze", str(tmp_path / "missing.params")])
    assert rc == 2


def test_exit_code_invalid_params(tmp_path, capsys):
    rc = main(["analyze", write(tmp_path, EX319.replace("r = 6", "r = 0"))])
    assert rc == 3
    assert "invalid parameters" in capsys.readouterr().err
    # theta out of range for the plus family
    rc = main(["analyze", write(tmp_path, EX319.replace("theta = 6", "theta = 2"))])
    assert rc == 3
    # chi(x1, x2) = 0
    rc = main(["analyze", write(tmp_path, EX319.replace("x2 = -1/2 + 1/2*u", "x2 = 7"))])
    assert rc == 3


def test_exit_code_not_standard_form(tmp_path, capsys):
    text = EX321.replace("e = 1/4 - 1/12*u", "e = 1/17 - 1/17*u")
    rc = main(["analyze", write(tmp_path, text)])
    assert rc == 4
    assert "standard form" in capsys.readouterr().err


def test_exit_code_internal_consistency(tmp_path, capsys, monkeypatch):
    # force a conditions/oracle disagreement; only a bug can produce one
    import inoueaut.components as components

    monkeypatch.setattr(components, "normalizer_oracle", lambda *a, **k: False)
    rc = main(["analyze", write(tmp_path, EX319)])
    assert rc == 5
    assert "internal consistency" in capsys.readouterr().err


def test_check_standard_form_command(tmp_path, capsys):
    rc = main(["check-standard-form", write(tmp_path, EX321)])
    assert rc == 0
    assert "standard form: yes" in capsys.readouterr().out
    text = EX321.replace("e = 1/4 - 1/12*u", "e = 1/17 - 1/17*u")
    rc = main(["check-standard-form", write(tmp_path, text)])
    assert rc == 4
    assert "standard form: no" in capsys.readouterr().out


def test_bound_command(tmp_path, capsys):
    rc = main(["bound", write(tmp_path, EX323)])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "20"


def test_fundamental_unit_command(capsys):
    rc = main(["fundamental-unit", "6", "+"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "1 + sqrt(2)" in out
    assert "-1/2 + 1/2*u" in out
    rc = main(["fundamental-unit", "2", "+"])
    assert rc == 3


def test_examples_command(capsys):
    rc = main(["examples"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.count("... ok") == 4


def test_param_file_details(tmp_path):
    params = load_param_file(write(tmp_path, EX319))
    assert params.field.theta == 6 and params.r == 6
    with pytest.raises(ParamFileError):
        load_param_file(write(tmp_path, EX319 + "theta = 6\n"))  # duplicate
    with pytest.raises(ParamFileError):
        load_param_file(write(tmp_path, "surface_type = +\n"))  # missing keys
    with pytest.raises(ParamFileError):
        load_param_file(write(tmp_path, EX319.replace("surface_type = +", "surface_type = pm")))
    with pytest.raises(ParamFileError):
        load_param_file(write(tmp_path, EX319 + "unknown = 1\n"))


def test_t_parsing_and_formatting(tmp_path):
    cases = [
        ("0", QuadComplex.zero(32)),
        ("1/2", QuadComplex.from_real(QuadReal(1, 0, 32) / 2)),
        ("1/2 + 1/3*sqrtD", QuadComplex.from_real(QuadReal(1, 0, 32) / 2 + QuadReal(0, 1, 32) / 3)),
        ("(1 + 2*sqrtD)i", QuadComplex(QuadReal.zero(32), QuadReal(1, 2, 32))),
        ("-sqrtD + (1/2)i", QuadComplex(QuadReal(0, -1, 32), QuadReal(1, 0, 32) / 2)),
    ]
    for text, expected in cases:
        parsed = parse_quad_complex(text, 32)
        assert parsed == expected
        assert parse_quad_complex(format_quad_complex(parsed), 32) == parsed
    with pytest.raises(ParamFileError):
        parse_quad_complex("nonsense!", 32)
    complex_t = EX319.replace("t = 0", "t = 1/2 + (1/3*sqrtD)i")
    params = load_param_file(write(tmp_path, complex_t))
    assert params.t.im == QuadReal(0, 1, 32) / 3
