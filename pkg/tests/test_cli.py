"""
Command-Line Tests
==================

Runs `cli.main` in-process against a StringIO buffer:
- word / numeration / irep / figure / exponent output
- exit codes for parse, contract and oracle-mismatch failures
- verbosity and determinism
"""

import io
import logging
from fractions import Fraction
from unittest.mock import patch

import mpmath as mp
import pytest

import cli
from cli import EXIT_CONTRACT, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, format_number, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.unit
class TestWordAndNumeration:
    """word and numeration subcommands."""

    def test_tribonacci_prefix(self, tribonacci_prefix):
        code, output = run("word", "periodic:|012", "zeros", "--length", "50")
        assert code == EXIT_OK
        assert output == tribonacci_prefix + "\n"

    def test_rep_and_val(self):
        assert run("numeration", "periodic:|01", "rep", "10") == (EXIT_OK, "01001\n")
        assert run("numeration", "periodic:|01", "val", "01001") == (EXIT_OK, "10\n")

    def test_check(self):
        assert run("numeration", "periodic:|01", "check", "101") == (EXIT_OK, "valid\n")
        assert run("numeration", "periodic:|01", "check", "11") == (EXIT_OK, "invalid\n")

    @pytest.mark.edge_case
    def test_rep_needs_integer(self, capsys):
        code, _ = run("numeration", "periodic:|01", "rep", "ten")
        assert code == EXIT_PARSE
        assert "error:" in capsys.readouterr().err


@pytest.mark.integration
class TestIrepTables:
    """irep subcommand in every mode."""

    def test_closed_with_case_labels(self):
        code, output = run("irep", "periodic:|001122", "periodic:|1", "--n-from", "2", "--n-to", "2")
        assert code == EXIT_OK
        assert output == "n,irep,case\n2,5,iii.1\n"

    def test_brute_and_rauzy(self):
        expected = "n,irep\n1,2\n2,3\n"
        assert run("irep", "periodic:|01", "zeros", "--n-to", "2", "--mode", "brute") == (EXIT_OK, expected)
        assert run("irep", "periodic:|01", "zeros", "--n-to", "2", "--mode", "rauzy") == (EXIT_OK, expected)

    def test_fibonacci_case_row(self):
        _, output = run("irep", "periodic:|01", "zeros", "--n-from", "2", "--n-to", "2")
        assert output.splitlines()[1] == "2,3,iv.a.1"

    def test_cross_check_passes(self):
        code, output = run("irep", "periodic:|012", "periodic:|001", "--n-to", "60", "--mode", "cross")
        assert code == EXIT_OK
        assert len(output.splitlines()) == 61

    def test_cross_check_reports_mismatch(self, capsys):
        with patch('cli.irep_rauzy', return_value=0):
            code, output = run("irep", "periodic:|01", "zeros", "--n-to", "3", "--mode", "cross")
        assert code == EXIT_MISMATCH
        assert output == ""
        err = capsys.readouterr().err
        assert "n=1:" in err and "n=3:" in err

    @pytest.mark.edge_case
    def test_bad_range(self):
        assert run("irep", "periodic:|01", "zeros", "--n-from", "5", "--n-to", "2")[0] == EXIT_PARSE

    @pytest.mark.edge_case
    def test_bad_directive(self, capsys):
        assert run("irep", "bogus:01", "zeros")[0] == EXIT_PARSE
        assert "error:" in capsys.readouterr().err

    @pytest.mark.edge_case
    def test_non_regular_is_contract_error(self):
        assert run("irep", "periodic:|0102", "zeros") == (EXIT_CONTRACT, "")
        assert run("irep", "periodic:|0102", "zeros", "--mode", "cross") == (EXIT_CONTRACT, "")

    @pytest.mark.edge_case
    def test_invalid_intercept_is_contract_error(self):
        assert run("irep", "periodic:|012", "periodic:|1") == (EXIT_CONTRACT, "")
        assert run("irep", "periodic:|012", "periodic:|1", "--mode", "rauzy") == (EXIT_CONTRACT, "")

    def test_output_is_deterministic(self):
        argv = ("irep", "periodic:|0123", "periodic:|011", "--n-to", "80")
        assert run(*argv) == run(*argv)


@pytest.mark.integration
class TestFigure:
    """figure subcommand."""

    def test_header_and_rows(self):
        code, output = run("figure", "--fig", "1")
        assert code == EXIT_OK
        lines = output.splitlines()
        assert lines[0] == "# directive: periodic:|001122"
        assert lines[1] == "# intervals: 1,5,17,51,147"
        assert lines[2] == "# subintervals: 2,8,26,76"
        assert lines[3] == "n,irep_zeros,irep_01,irep_ones"
        rows = [line.split(",") for line in lines[4:]]
        assert len(rows) == 147
        assert rows[0][0] == "1" and rows[-1][0] == "147"
        assert rows[4][1] == "3"
        assert rows[1][3] == "5"

    @pytest.mark.slow
    def test_checked_figure(self):
        checked = run("figure", "--check")
        assert checked[0] == EXIT_OK
        assert checked == run("figure")


@pytest.mark.integration
class TestExponent:
    """exponent subcommand."""

    def test_closed(self):
        code, output = run("exponent", "periodic:|01", "--kind", "closed")
        assert code == EXIT_OK
        assert float(output) == pytest.approx(2.6180, abs=1e-4)

    def test_dio_value(self):
        code, output = run("exponent", "periodic:|001122", "periodic:|1")
        assert code == EXIT_OK
        assert float(output) == pytest.approx(1.9156, abs=1e-3)

    def test_dio_trace(self):
        _, output = run("exponent", "periodic:|01", "zeros", "--trace")
        lines = output.splitlines()
        assert lines[0].startswith("# dio: ")
        assert lines[1].startswith("# range: ") and lines[1].endswith("-40")
        assert lines[2] == "k,max_ratio"
        assert lines[-1].startswith("40,")

    def test_ice_trace(self):
        _, output = run("exponent", "periodic:|01", "--kind", "ice", "--length", "30", "--trace")
        lines = output.splitlines()
        assert lines[2] == "n,max_ratio"
        assert len(lines) == 3 + 30

    def test_bounds(self):
        code, output = run("exponent", "periodic:|01", "zeros", "--kind", "bounds")
        assert code == EXIT_OK
        header, row = output.splitlines()
        assert header == "lower,upper,liouville"
        assert row.endswith(",false")

    def test_closed_ignores_intercept(self, caplog):
        with caplog.at_level(logging.WARNING, logger="cli"):
            code, _ = run("exponent", "periodic:|01", "periodic:|01", "--kind", "closed")
        assert code == EXIT_OK
        assert "ignoring intercept" in caplog.text

    @pytest.mark.edge_case
    def test_non_regular_needs_fallback(self):
        assert run("exponent", "periodic:|0102")[0] == EXIT_CONTRACT

    def test_fallback_estimate(self, caplog):
        with caplog.at_level(logging.WARNING, logger="exponents"):
            code, output = run("exponent", "periodic:|0102", "--fallback", "--prefix-length", "300", "--trace")
        assert code == EXIT_OK
        lines = output.splitlines()
        assert float(lines[0].removeprefix("# dio: ")) > 1
        assert lines[2] == "n,max_ratio"
        assert "uncertified" in caplog.text


@pytest.mark.unit
class TestEntrypoint:
    """Parser, verbosity and number formatting."""

    @pytest.mark.edge_case
    def test_unknown_subcommand_exits_with_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["plot"], out=io.StringIO())
        assert excinfo.value.code == EXIT_PARSE

    @pytest.mark.parametrize("flags, level", [([], logging.WARNING), (["-v"], logging.INFO), (["-vv"], logging.DEBUG)])
    def test_verbosity(self, mocker, flags, level):
        basic_config = mocker.patch.object(cli.logging, "basicConfig")
        main(flags + ["numeration", "periodic:|01", "val", "1"], out=io.StringIO())
        assert basic_config.call_args.kwargs["level"] == level

    def test_format_number(self):
        assert format_number(7) == "7"
        assert format_number(Fraction(1, 3)) == "0.3333333333"
        assert format_number(mp.inf) == "inf"
        assert format_number(2.5) == "2.5"
