import io
import json

import pytest

from kummerlab.cli import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, build_parser, main, run
from kummerlab.commands import COMMANDS

RUNNABLE = {
    "eval": "eval.json",
    "dominant": "dominant.json",
    "fibers": "fibers_power.json",
    "fiber-tree": "fiber_tree.json",
    "push": "push.json",
    "harm": "harm.json",
    "theta": "theta.json",
    "bridge": "bridge.json",
    "split-locus": "split_locus.json",
    "split-verdict": "split_verdict.json",
    "split-radius": "split_radius.json",
    "annulus-iso": "annulus_iso.json",
    "length-localize": "length_localize.json",
    "thm1-sweep": "thm1_sweep.json",
    "witness-solvable": "witness_threshold.json",
}


def invoke(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def problem(data_dir, name):
    return str(data_dir / "problems" / name)


def expected(data_dir, name):
    return (data_dir / "expected" / name).read_text(encoding="utf-8")


def test_every_command_has_a_sample_problem():
    assert sorted(RUNNABLE) == sorted(COMMANDS)


@pytest.mark.parametrize(
    "command, source, golden, flags",
    [
        ("fibers", "fibers.json", "fibers.json", []),
        ("fiber-tree", "fiber_tree.json", "fiber_tree.tsv", ["--tsv"]),
        ("length-localize", "length_localize.json", "length_localize.json", ["--n-max", "8"]),
        ("dominant", "dominant.json", "dominant.json", []),
        ("split-verdict", "split_verdict.json", "split_verdict.json", []),
    ],
)
def test_golden_outputs(capsys, data_dir, command, source, golden, flags):
    code, out = invoke(capsys, command, "--input", problem(data_dir, source), *flags)
    assert code == EXIT_OK
    assert out == expected(data_dir, golden)


@pytest.mark.parametrize("command", sorted(RUNNABLE))
def test_outputs_are_deterministic(capsys, data_dir, command):
    path = problem(data_dir, RUNNABLE[command])
    first_code, first = invoke(capsys, command, "--input", path)
    second_code, second = invoke(capsys, command, "--input", path)
    assert first_code == second_code == EXIT_OK
    assert first == second
    document = json.loads(first)
    assert (document["command"], document["p"]) == (command, 3)


def test_reads_stdin(data_dir):
    args = build_parser().parse_args(["fibers"])
    stdin = io.StringIO((data_dir / "problems" / "fibers.json").read_text(encoding="utf-8"))
    stdout = io.StringIO()
    assert run(args, stdin=stdin, stdout=stdout) == EXIT_OK
    assert stdout.getvalue() == expected(data_dir, "fibers.json")


class TestPayloads:
    def test_eval(self, capsys, data_dir):
        _, out = invoke(capsys, "eval", "--input", problem(data_dir, "eval.json"))
        assert json.loads(out)["result"] == {"lambda": "2", "value": "1"}

    def test_power_fibers(self, capsys, data_dir):
        _, out = invoke(capsys, "fibers", "--input", problem(data_dir, "fibers_power.json"))
        result = json.loads(out)["result"]
        assert (result["j"], result["count"]) == (1, 9)

    def test_harm(self, capsys, data_dir):
        _, out = invoke(capsys, "harm", "--input", problem(data_dir, "harm.json"))
        result = json.loads(out)["result"]
        assert result["invariant_factors"] == [3, 3]
        assert result["order"] == 9 and result["enumeration_checked"]

    def test_theta(self, capsys, data_dir):
        _, out = invoke(capsys, "theta", "--input", problem(data_dir, "theta.json"))
        result = json.loads(out)["result"]
        assert result["cochain"] == {"ab": 1, "bc": 1, "ca": 1}
        assert result["harmonic"] is True

    def test_bridge(self, capsys, data_dir):
        _, out = invoke(capsys, "bridge", "--input", problem(data_dir, "bridge.json"))
        result = json.loads(out)["result"]
        assert result["bridge"] is True and result["eval_surjective"] is False

    def test_split_locus(self, capsys, data_dir):
        _, out = invoke(capsys, "split-locus", "--input", problem(data_dir, "split_locus.json"))
        locus = json.loads(out)["result"]["locus"]
        assert (locus["lo"], locus["hi"]) == ("-3", "-3/2")

    def test_split_radius(self, capsys, data_dir):
        _, out = invoke(capsys, "split-radius", "--input", problem(data_dir, "split_radius.json"))
        radius = json.loads(out)["result"]["radius"]
        assert radius == {"exact": True, "lower": "-1/2", "upper": "-1/2"}

    def test_split_radius_suite(self, capsys, data_dir):
        code, out = invoke(
            capsys, "split-radius", "--input", problem(data_dir, "split_radius_suite.json"),
            "--seed", "3",
        )
        result = json.loads(out)["result"]
        assert code == EXIT_OK
        assert (result["seed"], result["count"], len(result["rows"])) == (3, 10, 10)
        assert result["dichotomy_failures"] == 0
        assert result["oracle_contradictions"] == 0

    def test_annulus_iso(self, capsys, data_dir):
        _, out = invoke(capsys, "annulus-iso", "--input", problem(data_dir, "annulus_iso.json"))
        result = json.loads(out)["result"]
        assert result == {"isomorphic": True, "length": "2", "other_length": "2"}

    def test_sweep(self, capsys, data_dir):
        _, out = invoke(capsys, "thm1-sweep", "--input", problem(data_dir, "thm1_sweep.json"))
        result = json.loads(out)["result"]
        assert result["ok"] is True
        assert len(result["rows"]) == 56

    def test_witnesses(self, capsys, data_dir):
        _, out = invoke(
            capsys, "witness-solvable", "--input", problem(data_dir, "witness_threshold.json")
        )
        result = json.loads(out)["result"]
        assert result["cochain"]["ab"] == 1
        assert result["point"]["radius"] == "-3/2"
        assert all(check["consistent"] for check in result["checks"])
        _, out = invoke(
            capsys, "witness-solvable", "--input", problem(data_dir, "witness_skeleton.json")
        )
        witness = json.loads(out)["result"]["witness"]
        assert (witness["rescale"], witness["count_at"], witness["count_below"]) == ("-1/2", 1, 3)


class TestExitCodes:
    def test_unknown_verdict_with_strict(self, capsys, data_dir):
        path = problem(data_dir, "split_verdict_wild.json")
        code, out = invoke(capsys, "split-verdict", "--input", path)
        assert code == EXIT_OK
        assert json.loads(out)["result"]["verdict"]["label"] == "unknown(wild-boundary)"
        code, _ = invoke(capsys, "split-verdict", "--input", path, "--strict")
        assert code == EXIT_UNKNOWN

    def test_invalid_document(self, capsys, data_dir):
        code = main(["fibers", "--input", problem(data_dir, "bad_schema.json")])
        captured = capsys.readouterr()
        assert code == EXIT_INPUT and captured.out == ""
        assert "InputError" in captured.err

    def test_domain_error(self, capsys, data_dir):
        code, out = invoke(
            capsys, "split-verdict", "--input", problem(data_dir, "not_invertible.json")
        )
        assert code == EXIT_DOMAIN and out == ""

    def test_tsv_needs_a_tree(self, capsys, data_dir):
        code, _ = invoke(capsys, "fibers", "--input", problem(data_dir, "fibers.json"), "--tsv")
        assert code == EXIT_INPUT

    def test_missing_file(self, capsys, tmp_path):
        code, _ = invoke(capsys, "fibers", "--input", str(tmp_path / "none.json"))
        assert code == EXIT_INPUT

    def test_non_positive_override(self, capsys, data_dir):
        path = problem(data_dir, "length_localize.json")
        code, _ = invoke(capsys, "length-localize", "--input", path, "--n-max", "0")
        assert code == EXIT_INPUT

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2

    def test_internal_failure(self, capsys, data_dir, monkeypatch):
        def failing(config, settings, seed):
            raise ZeroDivisionError("division by zero")

        monkeypatch.setitem(COMMANDS, "eval", failing)
        code = main(["eval", "--input", problem(data_dir, "eval.json")])
        captured = capsys.readouterr()
        assert code == EXIT_DOMAIN and captured.out == ""
        assert "InternalError" in captured.err
