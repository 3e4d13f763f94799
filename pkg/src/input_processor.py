"""
Input Processing Module
Parses permutation, tuple, relation-system, group-table and representation
files. Every format error carries the 1-based line number it was found on.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from src.equations import ArityError, EquationSystem, PermTuple, WordSyntaxError, parse_system
from src.perm_core import CycleError, Permutation, from_cycles
from src.sofic import PartialGroupTable, RepresentationError

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r"\(([^()]*)\)")
_PRODUCT = re.compile(r"^(\S+)\s*\*\s*(\S+)\s*=\s*(\S+)$")


class FormatError(ValueError):
    """Malformed input file; `line` is the 1-based line number (0 if unknown)."""

    def __init__(self, message: str, line: int = 0, source: Optional[str] = None):
        self.detail = message
        self.line = line
        self.source = source
        location = ":".join(str(part) for part in (source, line or None) if part)
        super().__init__(f"{location}: {message}" if location else message)


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """Non-blank lines with comments stripped, paired with their line numbers."""
    lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            lines.append((line_no, line))
    return lines


def _parse_degree(line_no: int, line: str) -> int:
    try:
        n = int(line)
    except ValueError:
        raise FormatError(f"expected the degree n, got {line!r}", line_no)
    if n < 1:
        raise FormatError(f"degree must be at least 1, got {n}", line_no)
    return n


def parse_permutation_line(line: str, n: int, line_no: int = 0) -> Permutation:
    """
    Parse ``oneline: i1 ... in`` or ``cycles: (a b c)(d e)``.

    Args:
        line: Line content without the label
        n: Expected degree
        line_no: Line number for error messages

    Raises:
        FormatError: On an unknown keyword, a wrong image count or a
            non-bijection
    """
    keyword, sep, body = line.partition(':')
    keyword = keyword.strip().lower()
    if not sep or keyword not in ('oneline', 'cycles'):
        raise FormatError(f"expected 'oneline:' or 'cycles:', got {line!r}", line_no)

    if keyword == 'oneline':
        try:
            images = tuple(int(x) for x in body.split())
        except ValueError:
            raise FormatError(f"images must be integers: {body.strip()!r}", line_no)
        if len(images) != n:
            raise FormatError(f"expected {n} images, got {len(images)}", line_no)
        try:
            return Permutation(images)
        except ValueError as e:
            raise FormatError(str(e), line_no)

    body = body.strip()
    if _CYCLE.sub('', body).strip():
        raise FormatError(f"malformed cycle notation: {body!r}", line_no)
    try:
        cycles = [[int(x) for x in group.split()] for group in _CYCLE.findall(body)]
        return from_cycles(n, cycles)
    except (ValueError, CycleError) as e:
        raise FormatError(str(e), line_no)


def parse_permutation_text(text: str) -> Permutation:
    lines = _content_lines(text)
    if len(lines) != 2:
        raise FormatError(
            f"a permutation file has a degree line and one permutation line, found {len(lines)} lines",
            lines[-1][0] if lines else 0,
        )
    n = _parse_degree(*lines[0])
    line_no, line = lines[1]
    return parse_permutation_line(line, n, line_no)


def parse_tuple_text(text: str) -> PermTuple:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise FormatError("a tuple file needs a degree line and at least one permutation",
                          lines[-1][0] if lines else 0)
    n = _parse_degree(*lines[0])
    perms = [parse_permutation_line(line, n, line_no) for line_no, line in lines[1:]]
    return PermTuple(tuple(perms))


def parse_table_text(text: str) -> PartialGroupTable:
    """
    Parse a partial group table.

    Lines are ``a * b = c``, at most one ``unit e`` and optionally
    ``elements a b c`` to declare labels that take part in no product.
    """
    elements: List[str] = []
    products: Dict[Tuple[str, str], str] = {}
    unit: Optional[str] = None

    def declare(label: str) -> None:
        if label not in elements:
            elements.append(label)

    for line_no, line in _content_lines(text):
        head, _, rest = line.partition(' ')
        if head == 'unit':
            if unit is not None:
                raise FormatError("second 'unit' line", line_no)
            if not rest.strip() or len(rest.split()) != 1:
                raise FormatError(f"'unit' takes exactly one label: {line!r}", line_no)
            unit = rest.strip()
            declare(unit)
            continue
        if head == 'elements':
            for label in rest.split():
                declare(label)
            continue
        match = _PRODUCT.match(line)
        if match is None:
            raise FormatError(f"expected 'a * b = c', got {line!r}", line_no)
        a, b, c = match.groups()
        if (a, b) in products and products[(a, b)] != c:
            raise FormatError(f"conflicting products for {a} * {b}", line_no)
        for label in (a, b, c):
            declare(label)
        products[(a, b)] = c

    if not elements:
        raise FormatError("table is empty")
    try:
        return PartialGroupTable(elements=tuple(elements), products=products, unit=unit)
    except RepresentationError as e:
        raise FormatError(str(e))


def parse_representation_text(text: str) -> Tuple[int, Dict[str, Permutation]]:
    """Parse ``n`` followed by ``LABEL oneline: ...`` / ``LABEL cycles: ...`` lines."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("representation file is empty")
    n = _parse_degree(*lines[0])
    phi: Dict[str, Permutation] = {}
    for line_no, line in lines[1:]:
        label, _, rest = line.partition(' ')
        if not rest.strip():
            raise FormatError(f"expected 'LABEL oneline: ...', got {line!r}", line_no)
        if label in phi:
            raise FormatError(f"label {label!r} assigned twice", line_no)
        phi[label] = parse_permutation_line(rest.strip(), n, line_no)
    return n, phi


class InputProcessor:
    """Loads one input file in any of the supported formats."""

    def __init__(self, file_path: str):
        """
        Initialize the input processor.

        Args:
            file_path: Path to the input file
        """
        self.file_path = file_path
        self.text: Optional[str] = None

    def read_text(self) -> str:
        """
        Read the file once and cache its content.

        Raises:
            FileNotFoundError: If the file does not exist
        """
        if self.text is None:
            path = Path(self.file_path)
            if not path.is_file():
                raise FileNotFoundError(f"Input file not found: {self.file_path}")
            self.text = path.read_text(encoding='utf-8')
            logger.debug(f"Read {len(self.text)} characters from {self.file_path}")
        return self.text

    def _wrap(self, parser, *args):
        try:
            return parser(self.read_text(), *args)
        except FormatError as e:
            raise FormatError(e.detail, e.line, source=str(self.file_path)) from e

    def load_permutation(self) -> Permutation:
        return self._wrap(parse_permutation_text)

    def load_tuple(self) -> PermTuple:
        return self._wrap(parse_tuple_text)

    def load_system(self, k: Optional[int] = None) -> EquationSystem:
        try:
            return parse_system(self.read_text(), k)
        except (WordSyntaxError, ArityError) as e:
            raise FormatError(str(e), source=str(self.file_path)) from e

    def load_table(self) -> PartialGroupTable:
        return self._wrap(parse_table_text)

    def load_representation(self) -> Tuple[int, Dict[str, Permutation]]:
        return self._wrap(parse_representation_text)
