"""Integration tests for the command-line interface.

Tests cover:
- Text and JSON output of the subcommands
- Deterministic output across runs
- Exit codes for parse errors, caps, usage errors and failed suites
"""

import json

import pytest

from ordkit.domain.entities import SuiteResult
from ordkit.infrastructure.config import ConfigManager, get_settings
from ordkit.presentation.cli.main import EXIT_CAP, EXIT_ERROR, EXIT_OK, EXIT_PROPERTY, run_command
from ordkit.services.check_service import PropertyChecker


class TestCommands:
    """Tests for successful subcommands."""

    def test_cmp(self):
        assert run_command(["cmp", "tower(2, I+1)", "tower(1, I*2)"]) == (EXIT_OK, "GT\n", "")

    def test_cmp_equal(self):
        code, out, _ = run_command(["cmp", "w*K", "K"])
        assert (code, out) == (EXIT_OK, "EQ\n")

    @pytest.mark.parametrize(
        "raw,short",
        [("w^I", "I"), ("phi(K, 0)", "K"), ("w^w1", "w1"), ("phi(1, psi(w1;1;0))", "psi(w1;1;0)")],
    )
    def test_cmp_agrees_with_nf(self, raw, short):
        assert run_command(["cmp", raw, short])[:2] == (EXIT_OK, "EQ\n")
        assert run_command(["nf", raw])[1] == run_command(["nf", short])[1]

    def test_cmp_json(self):
        code, out, _ = run_command(["--json", "cmp", "w", "w1"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["result"] == "LT"
        assert payload["right"] == {"t": "Omega1"}

    def test_nf(self):
        code, out, _ = run_command(["nf", "w^2 + 1"])
        assert (code, out) == (EXIT_OK, "w^2 + 1\n")

    def test_nf_normalizes(self):
        code, out, _ = run_command(["--json", "nf", "w + w^2"])
        assert code == EXIT_OK
        payload = json.loads(out)
        two = {"t": "Sum", "parts": [{"t": "One"}, {"t": "One"}]}
        assert payload["normal_form"] == {"t": "WExp", "exponent": two}
        assert payload["canonical"] is False

    def test_abgam_json(self):
        code, out, _ = run_command(["abgam", "--n", "1", "--N", "2", "--json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["n"] == 1
        assert sorted(payload["gamma"]) == ["0", "1", "2"]

    def test_enum(self):
        code, out, _ = run_command(["enum", "--below", "I", "--size", "1"])
        assert (code, out) == (EXIT_OK, "0\nw1\nK\n")

    def test_trace(self):
        code, out, _ = run_command(["--json", "trace", "thm1", "--N", "1"])
        assert code == EXIT_OK
        assert len(json.loads(out)["states"]) == 5

    def test_trace_shows_small_m_adjustment(self):
        code, out, _ = run_command(["trace", "thm1", "--m", "0", "--p", "0", "--N", "1"])
        assert code == EXIT_OK
        assert "traced with m=1 in place of m=0, so n=4 rather than 3" in out

    def test_rank(self):
        code, out, _ = run_command(["rank", "in(0, 1)"])
        assert code == EXIT_OK
        assert out.strip()

    def test_hull(self):
        code, out, _ = run_command(["--json", "hull", "I + 1", "--alpha", "I"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["member"] is True
        assert payload["clause"]["clause"] == "sum"

    def test_output_is_deterministic(self):
        argv = ["--json", "enum", "--below", "w1", "--size", "3"]
        assert run_command(argv) == run_command(argv)

    def test_check_suite(self):
        code, out, _ = run_command(["check", "--suite", "identities"])
        assert code == EXIT_OK
        assert "identities" in out

    def test_help(self):
        code, out, _ = run_command(["--help"])
        assert code == EXIT_OK
        assert "ordkit" in out


class TestExitCodes:
    """Tests for failure exit codes."""

    def test_parse_error(self):
        code, out, err = run_command(["cmp", "w $", "0"])
        assert code == EXIT_ERROR
        assert out == ""
        assert "[PARSE_ERROR]" in err

    def test_parse_error_json(self):
        code, out, _ = run_command(["--json", "nf", "phi(w1 0)"])
        assert code == EXIT_ERROR
        error = json.loads(out)["error"]
        assert (error["line"], error["column"]) == (1, 8)

    def test_nf_rejects_invalid_result(self):
        code, _, err = run_command(["nf", "psi(K; 1; 0)"])
        assert code == EXIT_ERROR
        assert "psi_kappa" in err

    def test_ceiling(self):
        code, _, err = run_command(["--max-tower", "1", "nf", "tower(3, 0)"])
        assert code == EXIT_CAP
        assert "[CEILING_EXCEEDED]" in err

    def test_max_tower_flag_is_not_sticky(self):
        run_command(["--max-tower", "1", "nf", "0"])
        assert get_settings().max_tower == 8

    def test_enumeration_cap(self, monkeypatch):
        monkeypatch.setenv("ORDKIT_ENUM_CAP", "10")
        ConfigManager.reset()
        code, _, err = run_command(["enum", "--below", "I", "--size", "3"])
        assert code == EXIT_CAP
        assert "[SIZE_LIMIT_EXCEEDED]" in err

    @pytest.mark.parametrize("argv", [["frobnicate"], [], ["cmp", "w"]])
    def test_usage_errors(self, argv):
        assert run_command(argv)[0] == EXIT_ERROR

    def test_failed_suite(self, mocker):
        mocker.patch.object(
            PropertyChecker,
            "identities",
            return_value=SuiteResult("identities", 3, ["w + 1 != 1 + w"]),
        )
        code, _, err = run_command(["check", "--suite", "identities"])
        assert code == EXIT_PROPERTY
        assert "[PROPERTY_VIOLATION]" in err
