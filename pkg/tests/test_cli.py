"""Command-line interface, run in process through cli.main."""

import json
import random

import pytest

from linkhom import cli
from linkhom.homotopy import apply_word, generators
from linkhom.model import (
    GeneratorWord,
    InvariantVector,
    load_scheme,
    parse_word,
    read_vector_text,
    write_vector,
)

S4 = load_scheme(4)
S5 = load_scheme(5)


def vec_file(tmp_path, name, scheme, mapping):
    v = InvariantVector.from_values(scheme, mapping)
    path = tmp_path / name
    write_vector(v, path)
    return str(path), v


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decide_equivalent_pair(tmp_path, capsys):
    left, _ = vec_file(tmp_path, "l.vec", S4, {"y_234": 1})
    right, _ = vec_file(tmp_path, "r.vec", S4, {"y_234": 1, "y_1234": 7})
    code, out, _ = run(capsys, "decide", left, right)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "EQUIVALENT"
    assert lines[1].startswith("witness: ")
    # the witness replays: parse it back and apply it
    word = parse_word(lines[1].removeprefix("witness: "), S4)
    lvec = read_vector_text(open(left).read())
    rvec = read_vector_text(open(right).read())
    assert apply_word(word, lvec) == rvec


def test_decide_identical_files_gives_empty_witness(tmp_path, capsys):
    path, _ = vec_file(tmp_path, "v.vec", S5, {"y_12": 2, "y_12345": -1})
    code, out, _ = run(capsys, "decide", path, path)
    assert code == 0
    assert out.splitlines()[1] == "witness: "


def test_decide_negative_pair(tmp_path, capsys):
    left, _ = vec_file(tmp_path, "l.vec", S4, {"y_12": 1})
    right, _ = vec_file(tmp_path, "r.vec", S4, {"y_12": 2})
    code, out, _ = run(capsys, "decide", left, right)
    assert code == 1
    assert out.splitlines() == ["NOT-EQUIVALENT", "failed stage: 1"]
    code, out, _ = run(capsys, "decide", "--json", left, right)
    assert code == 1
    assert json.loads(out) == {"equivalent": False, "failed_stage": 1}


def test_decide_json_witness(tmp_path, capsys):
    left, lvec = vec_file(tmp_path, "l.vec", S4, {"y_234": 1})
    right, rvec = vec_file(tmp_path, "r.vec", S4, {"y_234": 1, "y_1234": 7})
    code, out, _ = run(capsys, "decide", "--json", left, right)
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True
    word = parse_word(payload["witness"], S4)
    assert apply_word(word, lvec) == rvec


def test_act_and_round_trip(tmp_path, capsys):
    path, v = vec_file(tmp_path, "v.vec", S4, {"y_23": 1, "y_24": -2})
    code, out, _ = run(capsys, "act", path, "xs_12^3", "xs_21^-1")
    assert code == 0
    word = parse_word("xs_12^3 xs_21^-1", S4)
    assert read_vector_text(out) == apply_word(word, v)
    # --json carries only the nonzero coordinates
    code, out, _ = run(capsys, "act", "--json", path, "xs_12^3", "xs_21^-1")
    payload = json.loads(out)
    expected = apply_word(word, v)
    assert payload["n"] == 4
    assert payload["values"] == {s.name: val for s, val in expected.nonzero()}


def test_act_then_decide_loop(tmp_path, capsys):
    rng = random.Random(13)
    gids = generators(4)
    for trial in range(10):
        v = InvariantVector(S4, tuple(rng.randint(-3, 3) for _ in S4.coords))
        left = tmp_path / f"left{trial}.vec"
        write_vector(v, left)
        word = GeneratorWord(
            [(rng.choice(gids), rng.choice((-2, -1, 1, 2))) for _ in range(3)]
        )
        code, out, _ = run(capsys, "act", str(left), *word.token_text.split())
        assert code == 0
        right = tmp_path / f"right{trial}.vec"
        right.write_text(out)
        code, out, _ = run(capsys, "decide", str(left), str(right))
        assert code == 0, out


def test_normal_form_command(tmp_path, capsys):
    path, v = vec_file(tmp_path, "v.vec", S4, {"y_12": 1, "y_123": 5})
    code, out, _ = run(capsys, "normal-form", path)
    assert code == 0
    nf = read_vector_text(out)
    from linkhom.homotopy import normal_form

    assert nf == normal_form(v)


def test_orbit_output(tmp_path, capsys):
    path, v = vec_file(tmp_path, "v.vec", S4, {"y_1234": 1})
    code, out, _ = run(capsys, "orbit", path, "--bound", "2", "--cap", "100")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n=4"
    assert lines[-1] == "# members=1 truncated=no discarded=0"
    assert lines[1].split() == [str(x) for x in v.values]
    # deterministic: a second run prints the same text
    code, out2, _ = run(capsys, "orbit", path, "--bound", "2", "--cap", "100")
    assert out2 == out
    code, out, _ = run(capsys, "orbit", "--json", path, "--bound", "2", "--cap", "100")
    payload = json.loads(out)
    assert payload["coords"] == [s.name for s in S4.coords]
    assert payload["members"] == [list(v.values)]
    assert payload["truncated"] is False and payload["discarded"] == 0


def test_orbit_argument_validation(tmp_path, capsys):
    path, _ = vec_file(tmp_path, "v.vec", S4, {})
    code, _, err = run(capsys, "orbit", path, "--bound", "0", "--cap", "10")
    assert code == 2
    assert "positive" in err


def test_verify_fast_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "commutator-tables")
    assert code == 0  # fail-modulo-explained does not fail the run
    assert "commutator-table-4: pass" in out
    assert "third-strand-swap-4: fail-modulo-explained" in out
    code, out, _ = run(capsys, "verify", "--json", "--suite", "commutator-tables")
    assert code == 0
    payload = json.loads(out)
    assert {r["check_id"] for r in payload} >= {"commutator-table-4"}
    assert all({"check_id", "status", "details"} <= set(r) for r in payload)


def test_tables_listing(capsys):
    code, out, _ = run(capsys, "tables", "--list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines == sorted(lines)
    assert any(line.startswith("commutators_4  n=4  6 columns") for line in lines)


def test_tables_show(capsys):
    code, out, _ = run(capsys, "tables", "--show", "commutators_4")
    assert code == 0
    assert "[[x_31,x_41]]" in out
    assert "y_1234 = y_12" in out


def test_tables_show_unknown(capsys):
    code, _, err = run(capsys, "tables", "--show", "nope")
    assert code == 2
    assert "linkhom: error:" in err


def test_malformed_vector_diagnostic(tmp_path, capsys):
    bad = tmp_path / "bad.vec"
    bad.write_text("n=4\ny_12 = banana\n")
    code, _, err = run(capsys, "decide", str(bad), str(bad))
    assert code == 2
    assert "bad.vec" in err and "line 2" in err


def test_bad_word_token_diagnostic(tmp_path, capsys):
    path, _ = vec_file(tmp_path, "v.vec", S4, {})
    code, _, err = run(capsys, "act", path, "xs_99")
    assert code == 2
    assert "xs_99" in err


def test_n_mismatch_rejected(tmp_path, capsys):
    path, _ = vec_file(tmp_path, "v.vec", S4, {})
    code, _, err = run(capsys, "decide", "--n", "5", path, path)
    assert code == 2
    assert "n=4" in err


def test_missing_file_is_an_input_error(tmp_path, capsys):
    missing = str(tmp_path / "absent.vec")
    code, _, err = run(capsys, "decide", missing, missing)
    assert code == 2
    assert "linkhom: error:" in err
