"""
Output Formatter Module
Renders permutations, tuples, tables and representations in the file formats
read by the input processor, plus human-readable reports with exact
rationals and their decimal values.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional

import sympy

from src.equations import EquationSystem, PermTuple, relation_defects, render_word
from src.perm_core import Permutation, render_cycles
from src.roots import ApproxRootResult, statement_bound
from src.sofic import PartialGroupTable, RepresentationReport
from src.stability import RepairResult, printed_bad_set_bound

logger = logging.getLogger(__name__)

FORMATS = ('oneline', 'cycles')


class OutputFormatter:
    """Formats values and reports for files and standard output."""

    def __init__(self, config: Dict):
        """
        Initialize the output formatter.

        Args:
            config: Configuration dictionary
        """
        self.config = config
        self.output_config = config.get('output', {})
        self.digits = int(self.output_config.get('decimal_digits', 6))
        self.default_format = self.output_config.get('default_format', 'oneline')

    def _format(self, fmt: Optional[str]) -> str:
        fmt = fmt or self.default_format
        if fmt not in FORMATS:
            raise ValueError(f"Unknown permutation format {fmt!r}; use one of {FORMATS}")
        return fmt

    def render_permutation_line(self, f: Permutation, fmt: Optional[str] = None) -> str:
        if self._format(fmt) == 'cycles':
            return f"cycles: {render_cycles(f)}"
        return "oneline: " + " ".join(str(x) for x in f.images)

    def render_permutation(self, f: Permutation, fmt: Optional[str] = None) -> str:
        """Permutation file text: degree line, then one permutation line."""
        return f"{f.n}\n{self.render_permutation_line(f, fmt)}\n"

    def render_tuple(self, t: PermTuple, fmt: Optional[str] = None) -> str:
        lines = [str(t.n)] + [self.render_permutation_line(f, fmt) for f in t.perms]
        return "\n".join(lines) + "\n"

    def render_representation(self, phi: Mapping[str, Permutation], fmt: Optional[str] = None) -> str:
        perms = list(phi.values())
        if not perms:
            raise ValueError("Cannot render an empty representation")
        lines = [str(perms[0].n)]
        lines.extend(f"{label} {self.render_permutation_line(f, fmt)}" for label, f in phi.items())
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_table(table: PartialGroupTable) -> str:
        lines = ["elements " + " ".join(table.elements)]
        if table.unit is not None:
            lines.append(f"unit {table.unit}")
        lines.extend(f"{a} * {b} = {c}" for (a, b), c in table.products.items())
        return "\n".join(lines) + "\n"

    def format_rational(self, x) -> str:
        """``num/den (decimal)`` with the configured significant digits."""
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator} ({float(x):.{self.digits}g})"

    def format_bound(self, expr) -> str:
        """Exact symbolic bound followed by its decimal value; never a float alone."""
        expr = sympy.sympify(expr)
        value = sympy.N(expr, self.digits + 4)
        return f"{sympy.sstr(expr)} ({float(value):.{self.digits}g})"

    def create_root_report(self, result: ApproxRootResult) -> str:
        lines = []
        lines.append("=" * 60)
        lines.append(f"APPROXIMATE {result.p}-TH ROOT (n = {result.n})")
        lines.append("=" * 60)
        lines.append(f"g:       {render_cycles(result.g)}")
        lines.append(f"f_tilde: {render_cycles(result.f_tilde)}")
        lines.append(f"defect: {self.format_rational(result.defect)}")
        lines.append(f"bound:  {self.format_bound(result.bound)}")
        lines.append(f"within bound: {'yes' if result.within_bound() else 'NO'}")
        if len(result.stages) > 1:
            for stage in result.stages:
                lines.append(f"  stage p={stage.p}: defect {self.format_rational(stage.defect)}, "
                             f"bound {self.format_bound(stage.bound)}")
        elif result.p > 1:
            lines.append(f"sharper form: {self.format_bound(statement_bound(result.p, result.n))}")
        if result.broken_points:
            lines.append(f"points made fixed: {' '.join(str(a) for a in result.broken_points)}")
        return "\n".join(lines)

    def create_check_report(self, system: EquationSystem, t: PermTuple) -> str:
        defects = relation_defects(system, t)
        lines = []
        lines.append("=" * 60)
        lines.append(f"SYSTEM CHECK (n = {t.n}, k = {t.k}, r = {system.r})")
        lines.append("=" * 60)
        lines.append(f"defect: {self.format_rational(max(defects))}")
        for i, ((lhs, rhs), d) in enumerate(zip(system.relations, defects), start=1):
            lines.append(f"  [{i}] {render_word(lhs)} = {render_word(rhs)}: {self.format_rational(d)}")
        lines.append(f"exact solution: {'yes' if max(defects) == 0 else 'no'}")
        return "\n".join(lines)

    def create_repair_report(self, result: RepairResult, k: int) -> str:
        lines = []
        lines.append("=" * 60)
        lines.append(f"REPAIR (n = {result.n})")
        lines.append("=" * 60)
        lines.append(f"input defect: {self.format_rational(result.input_defect)}")
        lines.append(f"radius_used: {result.radius_used}")
        lines.append(f"|M|:  {result.failing_count} "
                     f"(bounds eps*r*n = {self.format_rational(result.failing_bound_relations)}, "
                     f"eps*k*n = {self.format_rational(result.failing_bound_generators)})")
        lines.append(f"|M*|: {result.bad_count} (bound {self.format_rational(result.bad_set_bound)})")
        printed = printed_bad_set_bound(result.input_defect, k, result.radius_used, result.n)
        if printed is not None:
            lines.append(f"      closed-form estimate {self.format_rational(printed)}")
        for j, d in enumerate(result.distances, start=1):
            lines.append(f"  d(x{j}): {self.format_rational(d)}")
        lines.append(f"max distance: {self.format_rational(result.max_distance)}")
        return "\n".join(lines)

    def create_nearest_report(self, witness: PermTuple, distance: Fraction) -> str:
        lines = [f"distance: {self.format_rational(distance)}"]
        lines.extend(f"  x{j} = {render_cycles(f)}" for j, f in enumerate(witness.perms, start=1))
        return "\n".join(lines)

    def create_representation_report(self, report: RepresentationReport, eps=None, alpha=None) -> str:
        lines: List[str] = []
        lines.append("=" * 60)
        lines.append(f"REPRESENTATION CHECK (n = {report.n})")
        lines.append("=" * 60)
        lines.append(f"mult_defect: {self.format_rational(report.mult_defect)}")
        if report.worst_product is not None:
            a, b = report.worst_product
            lines.append(f"  worst product: {a} * {b}")
        lines.append(f"unit_ok: {'yes' if report.unit_ok else 'no'}")
        separation = "n/a" if report.separation is None else self.format_rational(report.separation)
        lines.append(f"separation: {separation}")
        if eps is not None and alpha is not None:
            lines.append(f"passes(eps={eps}, alpha={alpha}): "
                         f"{'yes' if report.passes(eps, alpha) else 'no'}")
        return "\n".join(lines)

    def write_to_file(self, text: str, output_path: str) -> bool:
        """
        Write rendered text to a file.

        Args:
            text: Rendered content
            output_path: Path to output file

        Returns:
            True if successful, False otherwise
        """
        try:
            output_file = Path(output_path)
            output_file.parent.mkdir(parents=True, exist_ok=True)
            with open(output_file, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
            logger.info(f"Successfully wrote output to {output_path}")
            return True
        except OSError as e:
            logger.error(f"Error writing output file: {str(e)}")
            return False
