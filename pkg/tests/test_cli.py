"""Command line front end tests."""

import io
import json
import subprocess
import sys

import pytest

from resnil.cli import (
    BuiltinExample,
    JobSpec,
    builtin_examples,
    main,
    parse_endo_text,
    parse_matrix_literal,
    run,
)
from resnil.criteria import Certainty, Verdict
from resnil.errors import DimensionMismatch, NotPrime, WordSyntaxError


class TestInputParsing:
    def test_matrix_literal(self):
        A = parse_matrix_literal("[[0, 1], [1, 3]]")
        assert A.to_rows() == [[0, 1], [1, 3]]

    def test_matrix_literal_rejects_garbage(self):
        for text in ("[1,2,3]", "[[1,'a']]", "hello", "[]"):
            with pytest.raises(ValueError):
                parse_matrix_literal(text)
        with pytest.raises(DimensionMismatch):
            parse_matrix_literal("[[1,2],[3]]")

    def test_endo_text(self):
        f = parse_endo_text("a->b; b->a b^3")
        assert f.rank == 2
        assert str(f.images[0]) == "b"

    def test_endo_text_bad_word(self):
        with pytest.raises(WordSyntaxError):
            parse_endo_text("a->$; b->a")


class TestJobSpec:
    def test_exactly_one_source(self):
        with pytest.raises(ValueError):
            JobSpec()
        with pytest.raises(ValueError):
            JobSpec(matrix="[[1]]", example="identity")

    def test_inverse_requires_endo(self):
        with pytest.raises(ValueError):
            JobSpec(matrix="[[1]]", inverse="a->a")

    def test_option_validation(self):
        with pytest.raises(ValueError):
            JobSpec(matrix="[[1]]", power=0)
        with pytest.raises(ValueError):
            JobSpec(matrix="[[1]]", tensor_bound=0)
        with pytest.raises(NotPrime):
            JobSpec(matrix="[[1]]", primes=(4,))

    def test_dict_round_trip(self):
        job = JobSpec(matrix="[[0,1],[1,3]]", power=2, primes=(3,))
        assert JobSpec.from_dict(job.to_dict()) == job

    def test_unknown_fields_rejected(self):
        with pytest.raises(ValueError):
            JobSpec.from_dict({"matrix": "[[1]]", "frobnicate": True})


class TestReports:
    def test_deterministic_output(self):
        job = JobSpec(matrix="[[0,1],[1,3]]", primes=(3,))
        first, _ = run(job)
        second, _ = run(job)
        assert first == second

    def test_report_contents(self):
        text, v = run(JobSpec(matrix="[[1,1],[-1,0]]"))
        assert "det A = 1; tr A = 1; det(A-E) = 1" in text
        assert "residually nilpotent: no  [proven]" in text
        assert "lower central series length: 2  [proven]" in text
        assert v.residually_nilpotent[0] is False

    def test_certainty_always_printed(self):
        for name in ("braid3", "identity", "mikhailov"):
            text, _ = run(JobSpec(example=name))
            for line in text.splitlines():
                if line.startswith("residually nilpotent:"):
                    assert "[" in line and "]" in line

    def test_every_witness_has_anchor_line(self):
        text, v = run(JobSpec(matrix="[[0,1],[1,3]]"))
        assert text.count("anchor:") == len(v.witnesses)
        for w in v.witnesses:
            assert w.anchor in text

    def test_requested_prime_reported_unknown(self):
        text, _ = run(JobSpec(matrix="[[0,-1],[1,4]]", primes=(5,)))
        assert "p=2: yes  [proven]" in text
        assert "p=5: unknown  [unknown]" in text

    def test_power_applied_before_classification(self):
        text, v = run(JobSpec(example="mikhailov", power=2))
        assert "det A = 1; tr A = 11" in text
        assert v.residually_nilpotent[0] is True
        assert v.p_finite_map()[3][0] is True


class TestJsonInterface:
    def test_json_output_round_trips(self):
        text, v = run(JobSpec(matrix="[[0,1],[1,3]]", as_json=True))
        doc = json.loads(text)
        assert set(doc) == {"job", "matrices", "verdict"}
        assert Verdict.from_dict(doc["verdict"]) == v
        assert doc["matrices"] == [[[0, 1], [1, 3]]]

    def test_json_job_echo_reloadable(self):
        job = JobSpec(example="braid3", primes=(2, 3))
        text, v = run(JobSpec(example="braid3", primes=(2, 3), as_json=True))
        doc = json.loads(text)
        again = JobSpec.from_dict(doc["job"], as_json=True)
        text2, v2 = run(again)
        assert v2 == v

    def test_json_stdin_mode(self, monkeypatch, capsys):
        doc = {"matrix": "[[1,1],[-1,0]]"}
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
        assert main(["--json"]) == 0
        out = capsys.readouterr().out
        parsed = json.loads(out)
        assert parsed["verdict"]["residually_nilpotent"]["value"] is False

    def test_json_stdin_accepts_nested_list_matrix(self, monkeypatch, capsys):
        # natural JSON spelling: rows as arrays, not a quoted literal
        doc = {"matrix": [[1, 1], [-1, 0]]}
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
        assert main(["--json"]) == 0
        parsed = json.loads(capsys.readouterr().out)
        assert parsed["verdict"]["lcs_length"] == "two"
        assert parsed["matrices"] == [[[1, 1], [-1, 0]]]

    def test_json_stdin_rejects_malformed(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO("{not json"))
        assert main(["--json"]) == 2


class TestExitCodes:
    def test_success(self, capsys):
        assert main(["--matrix", "[[1,1],[-1,0]]"]) == 0
        assert "residually nilpotent" in capsys.readouterr().out

    def test_bad_matrix(self, capsys):
        assert main(["--matrix", "[[1,2],[3]]"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_word(self, capsys):
        assert main(["--endo", "a->$"]) == 2
        err = capsys.readouterr().err
        assert "offset" in err

    def test_unknown_example(self, capsys):
        assert main(["--example", "nope"]) == 2
        assert "available" in capsys.readouterr().err

    def test_no_source(self, capsys):
        assert main([]) == 2

    def test_cap_exceeded(self, capsys):
        code = main(["--matrix", "[[1,1],[-1,0]]", "--cap", "4"])
        assert code == 3
        assert "error:" in capsys.readouterr().err

    def test_wrong_inverse(self, capsys):
        code = main(["--endo", "a->b; b->a b^3", "--inverse", "a->b; b->a"])
        assert code == 2

    def test_list_examples(self, capsys):
        assert main(["--list-examples"]) == 0
        out = capsys.readouterr().out
        for ex in builtin_examples():
            assert ex.name in out


class TestBuiltinExamples:
    def test_catalog_shape(self):
        names = [ex.name for ex in builtin_examples()]
        assert names == [
            "mikhailov",
            "braid3",
            "klein_p2",
            "mixed_signs",
            "identity",
        ]

    def test_each_example_matches_expectations(self):
        for ex in builtin_examples():
            _, v = run(JobSpec(example=ex.name))
            assert v.residually_nilpotent[0] is ex.expect_resnil, ex.name
            assert v.lcs_length.value == ex.expect_lcs, ex.name
            for p in ex.expect_primes:
                assert v.p_finite_proven(p), (ex.name, p)
            assert v.p_finite_all_primes == ex.expect_all_primes, ex.name

    def test_family_report_lists_both_matrices(self):
        text, v = run(JobSpec(example="klein_p2"))
        assert "family of 2 action matrices" in text
        assert "matrix 1:" in text and "matrix 2:" in text
        assert "builtin expectation check: ok" in text
        assert v.residually_nilpotent == (True, Certainty.proven())

    def test_automorphism_proof_line(self):
        text, _ = run(
            JobSpec(endo="a->b; b->a b^3", inverse="a->b A^3; b->a")
        )
        assert "automorphism: proven by supplied inverse" in text

    def test_unverified_automorphism_caveat(self):
        text, _ = run(JobSpec(endo="a->b; b->a b^3"))
        assert "automorphism: not verified" in text


class TestConsoleScript:
    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "resnil.cli", "--example", "identity"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "residually nilpotent: yes" in proc.stdout
