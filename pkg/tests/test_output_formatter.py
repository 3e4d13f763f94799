"""
Tests for rational and bound formatting and the text reports.
"""

from fractions import Fraction

import pytest

from conftest import cyc
from src.equations import PermTuple, parse_system
from src.finite_groups import cyclic_group
from src.output_formatter import OutputFormatter
from src.roots import approx_root, root_bound
from src.sofic import check_representation, regular_representation
from src.stability import repair


class TestFormatting:
    def test_rational(self, formatter):
        assert formatter.format_rational(Fraction(2, 5)) == "2/5 (0.4)"
        assert formatter.format_rational(0) == "0/1 (0)"

    def test_rational_digits(self):
        formatter = OutputFormatter({'output': {'decimal_digits': 3}})
        assert formatter.format_rational(Fraction(1, 3)) == "1/3 (0.333)"

    def test_bound_is_exact_then_decimal(self, formatter):
        text = formatter.format_bound(root_bound(3, 1000))
        assert "sqrt" in text
        assert text.endswith("(0.103280)") or text.endswith("(0.10328)")

    def test_rational_bound(self, formatter):
        assert formatter.format_bound(root_bound(2, 10 ** 4)) == "1/50 (0.02)"

    def test_unknown_format(self, formatter):
        with pytest.raises(ValueError):
            formatter.render_permutation(cyc(2, (1, 2)), "matrix")

    def test_default_format_from_config(self):
        formatter = OutputFormatter({'output': {'default_format': 'cycles'}})
        assert formatter.render_permutation(cyc(3, (1, 2))) == "3\ncycles: (1 2)\n"


class TestReports:
    def test_root_report(self, formatter):
        report = formatter.create_root_report(approx_root(cyc(5, (1, 2), (3, 4, 5)), 2))
        assert "defect: 2/5 (0.4)" in report
        assert "within bound: yes" in report
        assert "g:       (3 5 4)" in report

    def test_composite_root_report_lists_stages(self, formatter):
        report = formatter.create_root_report(approx_root(cyc(6, (1, 2, 3, 4, 5, 6)), 6))
        assert "stage p=3" in report and "stage p=2" in report

    def test_check_report(self, formatter):
        system = parse_system("x1 x2 = x2 x1")
        t = PermTuple((cyc(3, (1, 2, 3)), cyc(3, (1, 2))))
        report = formatter.create_check_report(system, t)
        assert "defect: 1/1 (1)" in report
        assert "[1] x1 x2 = x2 x1: 1/1 (1)" in report
        assert "exact solution: no" in report

    def test_repair_report(self, formatter):
        result = repair(parse_system("x1^2 = 1"), PermTuple((cyc(5, (1, 2), (3, 4, 5)),)), 1)
        report = formatter.create_repair_report(result, 1)
        assert "radius_used: 1" in report
        assert "|M|:  3" in report
        assert "|M*|: 3" in report
        assert "max distance: 3/5 (0.6)" in report

    def test_representation_report(self, formatter):
        table, phi = regular_representation(cyclic_group(3))
        report = formatter.create_representation_report(
            check_representation(table, phi), Fraction(1, 10), Fraction(1, 2))
        assert "mult_defect: 0/1 (0)" in report
        assert "separation: 1/1 (1)" in report
        assert "passes(eps=1/10, alpha=1/2): yes" in report


def test_write_to_file_creates_parents(formatter, tmp_path):
    target = tmp_path / "nested" / "out.txt"
    assert formatter.write_to_file("3\noneline: 1 2 3\n", str(target))
    assert target.read_text() == "3\noneline: 1 2 3\n"


def test_write_to_file_reports_failure(formatter, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert not formatter.write_to_file("data", str(blocker / "child.txt"))
