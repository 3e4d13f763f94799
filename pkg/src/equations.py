"""
Word Equations
Words in generators x_1..x_k and their inverses, relation systems w_i = u_i,
parsing, evaluation on permutation tuples and the epsilon-solution defect.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from src.perm_core import Permutation, hamming, identity, inverse

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]

_TOKEN = re.compile(r"\s*(?:(x)(\d+)|(\()|(\))|(\^)\s*([+-]?\d+)|(1)(?![\d^])|(\S))")


class WordSyntaxError(ValueError):
    """Raised for malformed word or system text."""


class ArityError(ValueError):
    """Raised when a word or tuple does not fit the declared arity."""


@dataclass(frozen=True)
class Word:
    """Fully expanded word: a sequence of (generator index, sign) letters."""

    letters: Tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: 'Word') -> 'Word':
        return concat_words(self, other)

    def max_generator(self) -> int:
        return max((j for j, _ in self.letters), default=0)

    def __str__(self) -> str:
        return render_word(self)


@dataclass(frozen=True)
class EquationSystem:
    """Relations lhs_i = rhs_i over k generators."""

    k: int
    relations: Tuple[Tuple[Word, Word], ...]

    def __post_init__(self):
        if not self.relations:
            raise WordSyntaxError("An equation system needs at least one relation")
        if self.k < 1:
            raise ArityError(f"Arity must be at least 1, got {self.k}")
        for lhs, rhs in self.relations:
            if max(lhs.max_generator(), rhs.max_generator()) > self.k:
                raise ArityError(f"Relation {lhs} = {rhs} uses a generator beyond x{self.k}")

    @property
    def r(self) -> int:
        return len(self.relations)

    def __str__(self) -> str:
        return render_system(self)


@dataclass(frozen=True)
class PermTuple:
    """One permutation per generator, all of the same degree."""

    perms: Tuple[Permutation, ...]

    def __post_init__(self):
        perms = tuple(self.perms)
        object.__setattr__(self, 'perms', perms)
        if not perms:
            raise ArityError("A permutation tuple needs at least one permutation")
        degrees = {f.n for f in perms}
        if len(degrees) != 1:
            raise ArityError(f"Permutations in a tuple must share one degree, got {sorted(degrees)}")

    @property
    def n(self) -> int:
        return self.perms[0].n

    @property
    def k(self) -> int:
        return len(self.perms)

    def __getitem__(self, j: int) -> Permutation:
        """Permutation of generator x_j (1-based)."""
        return self.perms[j - 1]


def concat_words(w: Word, v: Word) -> Word:
    return Word(w.letters + v.letters)


def invert_word(w: Word) -> Word:
    return Word(tuple((j, -s) for j, s in reversed(w.letters)))


def _parse_tokens(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            break
        if match.group(1):
            tokens.append(('gen', match.group(2)))
        elif match.group(3):
            tokens.append(('open', '('))
        elif match.group(4):
            tokens.append(('close', ')'))
        elif match.group(5):
            tokens.append(('exp', match.group(6)))
        elif match.group(7):
            tokens.append(('one', '1'))
        else:
            raise WordSyntaxError(f"Unexpected character {match.group(8)!r} in word {text!r}")
        pos = match.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def _power_letters(letters: Tuple[Letter, ...], exponent: int) -> Tuple[Letter, ...]:
    if exponent == 0:
        raise WordSyntaxError("Exponent 0 is not allowed")
    if exponent < 0:
        letters = invert_word(Word(letters)).letters
    return letters * abs(exponent)


def parse_word(text: str) -> Word:
    """
    Parse a word.

    Factors are whitespace separated: ``xJ``, ``xJ^E``, ``1`` (identity) or a
    parenthesised group ``(...)^E``. Exponents expand to |E| letters.

    Args:
        text: Word text; blank text is the identity word

    Returns:
        The expanded Word

    Raises:
        WordSyntaxError: On malformed tokens, J = 0 or E = 0
    """
    tokens = _parse_tokens(text or "")
    stack: List[List[Letter]] = [[]]
    last: Optional[Tuple[int, int]] = None  # (depth, start offset) of the last factor

    for kind, value in tokens:
        current = stack[-1]
        if kind == 'gen':
            j = int(value)
            if j == 0:
                raise WordSyntaxError("Generator index must be at least 1 (got x0)")
            last = (len(stack), len(current))
            current.append((j, 1))
        elif kind == 'one':
            last = None
        elif kind == 'open':
            stack.append([])
            last = None
        elif kind == 'close':
            if len(stack) == 1:
                raise WordSyntaxError(f"Unbalanced ')' in {text!r}")
            group = stack.pop()
            last = (len(stack), len(stack[-1]))
            stack[-1].extend(group)
        elif kind == 'exp':
            if last is None or last[0] != len(stack):
                raise WordSyntaxError(f"Exponent without a factor in {text!r}")
            start = last[1]
            factor = tuple(current[start:])
            del current[start:]
            current.extend(_power_letters(factor, int(value)))
            last = None
    if len(stack) != 1:
        raise WordSyntaxError(f"Unbalanced '(' in {text!r}")
    return Word(tuple(stack[0]))


def render_word(w: Word) -> str:
    """Render with runs of equal letters compressed to xJ^E; identity is '1'."""
    if not w.letters:
        return "1"
    parts = []
    run_letter, run = w.letters[0], 0
    for letter in w.letters + ((0, 0),):
        if letter == run_letter:
            run += 1
            continue
        j, s = run_letter
        exponent = s * run
        parts.append(f"x{j}" if exponent == 1 else f"x{j}^{exponent}")
        run_letter, run = letter, 1
    return " ".join(parts)


def parse_system(text: str, k: Optional[int] = None) -> EquationSystem:
    """
    Parse a relation system, one relation per line.

    A line ``A = B = C`` yields the relations A = B and B = C. ``#`` starts a
    comment; blank lines are skipped.

    Args:
        text: System text
        k: Arity; inferred as the largest generator index when omitted

    Returns:
        EquationSystem

    Raises:
        WordSyntaxError: If a line has no '=', a word is malformed or no
            relation is present (messages carry the line number)
    """
    relations = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        sides = line.split('=')
        if len(sides) < 2:
            raise WordSyntaxError(f"Line {line_no}: relation needs '=': {raw.strip()!r}")
        try:
            words = [parse_word(side) for side in sides]
        except WordSyntaxError as e:
            raise WordSyntaxError(f"Line {line_no}: {e}") from e
        relations.extend(zip(words, words[1:]))

    if not relations:
        raise WordSyntaxError("System contains no relations")
    inferred = max(max(l.max_generator(), r.max_generator()) for l, r in relations)
    return EquationSystem(k=k if k is not None else max(inferred, 1), relations=tuple(relations))


def render_system(system: EquationSystem) -> str:
    return "\n".join(f"{render_word(l)} = {render_word(r)}" for l, r in system.relations)


def _check_arity(w: Word, t: PermTuple) -> None:
    if w.max_generator() > t.k:
        raise ArityError(f"Word uses x{w.max_generator()} but the tuple has {t.k} permutations")


def letter_tables(t: PermTuple) -> dict:
    """Image tables of every letter (j, +1) and (j, -1), for repeated tracing."""
    tables = {}
    for j, f in enumerate(t.perms, start=1):
        tables[(j, 1)] = f.images
        tables[(j, -1)] = inverse(f).images
    return tables


def trace_point(w: Word, t: PermTuple, a: int, tables: Optional[dict] = None) -> int:
    """Image (a)w(t), following the letters left to right."""
    _check_arity(w, t)
    tables = tables or letter_tables(t)
    for letter in w.letters:
        a = tables[letter][a - 1]
    return a


def evaluate(w: Word, t: PermTuple) -> Permutation:
    """
    Evaluate w on a tuple under the right action.

    The identity word evaluates to the identity permutation.

    Raises:
        ArityError: If w uses a generator the tuple does not have
    """
    _check_arity(w, t)
    if not w.letters:
        return identity(t.n)
    tables = letter_tables(t)
    images = list(range(1, t.n + 1))
    for letter in w.letters:
        table = tables[letter]
        images = [table[x - 1] for x in images]
    return Permutation(tuple(images))


def check_system_arity(system: EquationSystem, t: PermTuple) -> None:
    if system.k != t.k:
        raise ArityError(f"System has arity {system.k} but the tuple has {t.k} permutations")


def relation_defects(system: EquationSystem, t: PermTuple) -> List[Fraction]:
    """h(w_i(t), u_i(t)) for every relation, in order."""
    check_system_arity(system, t)
    return [hamming(evaluate(lhs, t), evaluate(rhs, t)) for lhs, rhs in system.relations]


def defect(system: EquationSystem, t: PermTuple) -> Fraction:
    """
    Largest relation defect; t is an epsilon-solution iff defect <= epsilon.

    Raises:
        ArityError: If the system and tuple arities differ
    """
    return max(relation_defects(system, t))


def is_exact_solution(system: EquationSystem, t: PermTuple) -> bool:
    return defect(system, t) == 0
