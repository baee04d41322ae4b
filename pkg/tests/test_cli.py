import json
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

from probinf.cli import UsageError, execute, main, replay
from probinf.corpus import accepted_set
from probinf.errors import ProbinfError
from probinf.session import Session, SessionFormatError, load, save

GOLDEN = Path(__file__).parent / "golden"


def run(*commands, session=None):
    session = session or Session()
    out = None
    for cmd in commands:
        session, out = execute(cmd, session)
    return session, out


def test_lottery_query_example():
    s, _ = run(["lottery", "--tickets", "1000", "--level", "99/100"])
    s, out = execute(["query", "loses_7"], s)
    assert out == "Accepted (probability 999/1000)"


def test_query_without_corpus_is_usage_error(capsys):
    with pytest.raises(UsageError, match="no corpus loaded"):
        execute(["query", "a"], Session())
    assert main(["query", "a"]) == 2
    assert "no corpus loaded" in capsys.readouterr().err


def test_unknown_command_exit_code(capsys):
    assert main(["frobnicate"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_domain_error_exit_code(tmp_path, capsys):
    path = tmp_path / "s.json"
    assert main(["--session", str(path), "space", "a", "b"]) == 0
    assert main(["--session", str(path), "dist", "1/2", "1/4"]) == 1
    assert "weights sum to 3/4, not 1" in capsys.readouterr().err
    assert main(["--session", str(path), "dist", "1/2", "1/2"]) == 0
    assert main(["--session", str(path), "prob", "a &"]) == 1
    assert "position 3" in capsys.readouterr().err


def test_condition_twice_equals_conjunction():
    base = [["space", "a", "b", "c", "d"], ["dist", "1/10", "2/10", "3/10", "4/10"]]
    twice, _ = run(*base, ["condition", "--evidence", "a | b | c"], ["condition", "--evidence", "b | c | d"])
    once, _ = run(*base, ["condition", "--evidence", "(a | b | c) & (b | c | d)"])
    assert (twice.space, twice.names, twice.credal, twice.level) == (once.space, once.names, once.credal, once.level)
    assert twice.history != once.history


def test_history_replay_reconstructs_session():
    s, _ = run(
        ["space", "HH", "HT", "TH", "TT"],
        ["define", "first_heads", "HH | HT"],
        ["credal", "--point", "1/4", "1/4", "1/4", "1/4", "--point", "1/2", "1/4", "1/8", "1/8"],
        ["condition", "--evidence", "first_heads"],
        ["prob", "HH"],
        ["corpus", "--odds", "3"],
        ["jeffrey", "--evidence", "HH", "--to", "1/3", "--json"],
        ["query", "HH | HT"],
    )
    assert len(s.history) == 6
    assert replay(s.history) == s


def test_session_save_load_round_trip(tmp_path):
    s, _ = run(["lottery", "--tickets", "11", "--level", "9/10"], ["condition", "--evidence", "~t1"])
    path = tmp_path / "s.json"
    save(s, path)
    again = load(path)
    assert again == s
    assert accepted_set(again.corpus) == accepted_set(s.corpus)
    data = json.loads(path.read_text())
    assert data["acceptance_level"] == "9/10"
    assert data["credal"]["points"][0][1] == "1/10"


def test_save_and_load_commands(tmp_path):
    path = tmp_path / "s.json"
    s, out = run(["lottery", "--tickets", "5", "--level", "3/4"], ["save", str(path)])
    assert out == f"saved to {path}"
    t, _ = execute(["load", str(path)], Session())
    assert t == s


def test_load_rejects_bad_weights(tmp_path):
    s, _ = run(["space", "a", "b"], ["dist", "1/2", "1/2"])
    data = s.to_json()
    data["credal"]["points"] = [["1", "1"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(ProbinfError, match="weights sum to 2, not 1"):
        load(path)


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    with pytest.raises(SessionFormatError, match="malformed.*line 1, column 1"):
        load(path)
    path.write_text('{"version": 1,\n "atoms": [}')
    with pytest.raises(SessionFormatError, match="line 2"):
        load(path)
    path.write_text(json.dumps({"version": 99}))
    with pytest.raises(SessionFormatError, match="version"):
        load(path)


def test_session_file_chaining(tmp_path, capsys, monkeypatch):
    path = tmp_path / "chain.json"
    monkeypatch.setenv("PROBINF_SESSION", str(path))
    assert main(["lottery", "--tickets", "11", "--level", "9/10"]) == 0
    assert main(["query", "wins_3"]) == 0
    assert main(["query", "wins_3 | wins_4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "RejectedNegationAccepted (probability 1/11)"
    assert out[2] == "Unknown (probability 2/11)"


def test_decimal_rationals_are_exact():
    s, out = run(["space", "a", "b"], ["dist", "0.48", "0.52"])
    assert s.credal.generators[0].weights == (F(12, 25), F(13, 25))


def test_csv_commands(tmp_path):
    sample = tmp_path / "x.csv"
    sample.write_text("1\n2\n3\n4\n5\n")
    _, out = execute(["tinterval", "--csv", str(sample), "--json"])
    lo = json.loads(out)["interval"]["lower"]
    assert lo == pytest.approx(1.0368, abs=1e-3)
    pair = tmp_path / "nk.csv"
    pair.write_text("10,5\n")
    _, out = execute(["binci", "--csv", str(pair)])
    assert out.startswith("0.95 exact interval for r: [0.187")


def test_usage_errors():
    with pytest.raises(UsageError):
        execute(["binci", "--n", "10"])
    with pytest.raises(UsageError):
        execute(["prob", "a"], Session())
    with pytest.raises(UsageError):
        execute(["lottery", "--tickets", "ten", "--level", "1/2"])


def test_lottery_cli_runtime():
    start = time.perf_counter()
    s, _ = run(["lottery", "--tickets", "1000", "--level", "99/100"])
    _, out = execute(["consistency"], s)
    assert out.startswith("JointlyInconsistent: 1000")
    assert time.perf_counter() - start < 5


# --- golden JSON documents ------------------------------------------------------

GOLDEN_CASES = {
    "query_unknown": [["lottery", "--tickets", "11", "--level", "9/10"], ["query", "wins_3 | wins_4", "--json"]],
    "query_rejected": [["lottery", "--tickets", "11", "--level", "9/10"], ["query", "wins_3", "--json"]],
    "accept": [["lottery", "--tickets", "11", "--level", "9/10"], ["accept", "loses_3", "loses_3 & loses_4", "--json"]],
    "accept_all": [["lottery", "--tickets", "4", "--level", "1/2"], ["accept", "--all", "--json"]],
    "consistency": [["lottery", "--tickets", "3", "--level", "1/2"], ["consistency", "--json"]],
    "coherence_book": [["space", "a", "b"], ["coherence", "--bet", "a", "3/5", "--bet", "~a", "3/5", "--json"]],
    "coherence_ok": [["space", "a", "b", "c"], ["coherence", "--bet", "a | b", "1/2", "--bet", "b", "1/4", "--json"]],
    "prob_given": [
        ["space", "HH", "HT", "TH", "TT"],
        ["dist", "--uniform"],
        ["prob", "HH | TH", "--given", "HH | HT", "--json"],
    ],
    "condition": [["space", "a", "b", "c"], ["dist", "3/10", "3/10", "4/10"], ["condition", "--evidence", "a | b", "--json"]],
    "jeffrey": [["space", "a", "b", "c"], ["dist", "3/10", "3/10", "4/10"], ["jeffrey", "--evidence", "a | b", "--to", "9/10", "--json"]],
    "tinterval": [["tinterval", "--values", "1", "2", "3", "4", "5", "--level", "0.95", "--json"]],
    "binci": [["binci", "--n", "10", "--k", "5", "--json"]],
    "bound": [["bound", "--n", "1", "--json"]],
    "coverage": [["coverage", "--n", "10", "--p", "0.5", "--json"]],
    "test": [["test", "--n", "20", "--k", "17", "--null", "0.5", "--tail", "upper", "--json"]],
    "reliability": [["reliability", "--successes", "45", "--applications", "50", "--gullibility", "0.1", "--json"]],
    "advise_refuse": [
        ["space", "x"],
        ["dist", "1"],
        ["corpus", "--level", "99/100"],
        ["advise", "--frequency", "0.48", "0.52", "--tosses", "12", "--odds", "1000", "--json"],
    ],
    "advise_take": [
        ["space", "x"],
        ["dist", "1"],
        ["corpus", "--level", "99/100"],
        ["advise", "--frequency", "0.48", "0.52", "--odds", "10", "--json"],
    ],
    "corpus_odds": [["space", "a", "b"], ["dist", "--uniform"], ["corpus", "--odds", "10", "--json"]],
}


def assert_same_document(actual, expected):
    if isinstance(expected, float):
        assert actual == pytest.approx(expected, rel=1e-9, abs=1e-12)
    elif isinstance(expected, dict):
        assert isinstance(actual, dict) and sorted(actual) == sorted(expected)
        for key in expected:
            assert_same_document(actual[key], expected[key])
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected)
        for a, e in zip(actual, expected):
            assert_same_document(a, e)
    else:
        assert actual == expected


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_json(name):
    _, out = run(*GOLDEN_CASES[name])
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert_same_document(json.loads(out), expected)
