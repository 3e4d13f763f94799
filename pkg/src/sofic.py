"""
Representation Checker
Checks whether a map from a finite partial group table into S_n is an
(F, eps, alpha)-representation: almost multiplicative, unit preserving and
separating.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from src.finite_groups import FiniteGroup, regular_action
from src.perm_core import Permutation, compose, hamming, identity, is_identity

logger = logging.getLogger(__name__)


class RepresentationError(ValueError):
    """Raised when a table or map is inconsistent."""


@dataclass(frozen=True)
class PartialGroupTable:
    """
    Finite label set F with an optional unit and partial products.

    products[(a, b)] = c records a*b = c for the pairs whose product lies in F.
    """

    elements: Tuple[str, ...]
    products: Dict[Tuple[str, str], str]
    unit: Optional[str] = None

    def __post_init__(self):
        labels = set(self.elements)
        if len(labels) != len(self.elements):
            raise RepresentationError("Element labels must be distinct")
        if self.unit is not None and self.unit not in labels:
            raise RepresentationError(f"Unit {self.unit!r} is not an element")
        for (a, b), c in self.products.items():
            if not {a, b, c} <= labels:
                raise RepresentationError(f"Product {a} * {b} = {c} uses an unknown label")
        if self.unit is not None:
            e = self.unit
            for (a, b), c in self.products.items():
                if (a == e and c != b) or (b == e and c != a):
                    raise RepresentationError(f"Product {a} * {b} = {c} contradicts unit {e}")


@dataclass(frozen=True)
class RepresentationReport:
    """Exact measurements of a candidate representation."""

    n: int
    mult_defect: Fraction
    unit_ok: bool
    separation: Optional[Fraction]
    worst_product: Optional[Tuple[str, str]] = None

    def passes(self, eps, alpha) -> bool:
        """mult_defect < eps, unit preserved and separation > alpha."""
        separated = self.separation is None or self.separation > Fraction(alpha)
        return self.mult_defect < Fraction(eps) and self.unit_ok and separated


def table_from_group(group: FiniteGroup, labels: Optional[Sequence[str]] = None) -> PartialGroupTable:
    """Full multiplication table of a finite group, the identity as unit."""
    labels = list(labels) if labels is not None else [f"g{i}" for i in range(group.order)]
    if len(labels) != group.order:
        raise RepresentationError("One label per group element is required")
    products = {
        (labels[a], labels[b]): labels[group.mult(a, b)]
        for a in range(group.order) for b in range(group.order)
    }
    return PartialGroupTable(elements=tuple(labels), products=products, unit=labels[0])


def regular_representation(group: FiniteGroup, labels: Optional[Sequence[str]] = None,
                           copies: int = 1) -> Tuple[PartialGroupTable, Dict[str, Permutation]]:
    """
    Table and map for the right-regular action of a finite group.

    The map is an exact homomorphism and moves every point for every
    non-identity element.
    """
    table = table_from_group(group, labels)
    perms = regular_action(group, range(group.order), copies)
    return table, dict(zip(table.elements, perms))


def _degree(phi: Mapping[str, Permutation], table: PartialGroupTable) -> int:
    missing = [a for a in table.elements if a not in phi]
    if missing:
        raise RepresentationError(f"Map is undefined on {missing}")
    degrees = {phi[a].n for a in table.elements}
    if len(degrees) != 1:
        raise RepresentationError(f"Map images have different degrees: {sorted(degrees)}")
    return degrees.pop()


def check_representation(table: PartialGroupTable, phi: Mapping[str, Permutation],
                         eps=None, alpha=None) -> RepresentationReport:
    """
    Measure a candidate (F, eps, alpha)-representation.

    Args:
        table: Partial group table on F
        phi: Map from labels to permutations of one degree
        eps: Optional multiplicativity threshold, logged against the result
        alpha: Optional separation threshold, logged against the result

    Returns:
        RepresentationReport with exact rationals

    Raises:
        RepresentationError: If phi misses a label or degrees differ
    """
    n = _degree(phi, table)
    mult_defect = Fraction(0)
    worst = None
    for (a, b), c in table.products.items():
        d = hamming(compose(phi[a], phi[b]), phi[c])
        if d > mult_defect:
            mult_defect, worst = d, (a, b)

    unit_ok = table.unit is None or is_identity(phi[table.unit])
    id_n = identity(n)
    others = [hamming(phi[a], id_n) for a in table.elements if a != table.unit]
    separation = min(others) if others else None

    report = RepresentationReport(
        n=n, mult_defect=mult_defect, unit_ok=unit_ok, separation=separation, worst_product=worst,
    )
    if eps is not None and alpha is not None:
        logger.info(f"Representation on {n} points: passes(eps={eps}, alpha={alpha}) = "
                    f"{report.passes(eps, alpha)}")
    return report


def chain_defect(table: PartialGroupTable, phi: Mapping[str, Permutation],
                 letters: Sequence[str]) -> Fraction:
    """
    Compare phi of a product with the product of phi along a word.

    Every prefix product of `letters` must be recorded in the table. Returns
    h(phi(l_1 ... l_r), phi(l_1) ... phi(l_r)); it stays below
    (2r - 1) * mult_defect-type thresholds.
    """
    if not letters:
        raise RepresentationError("A word needs at least one letter")
    _degree(phi, table)
    label = letters[0]
    product = phi[label]
    for letter in letters[1:]:
        key = (label, letter)
        if key not in table.products:
            raise RepresentationError(f"Prefix product {label} * {letter} is not in the table")
        label = table.products[key]
        product = compose(product, phi[letter])
    return hamming(phi[label], product)


def separation_lower_bound(alpha, delta, length: int, eps) -> Fraction:
    """alpha - delta*|w| - 2|w|*eps, a lower bound on h(phi(w), id) after repair."""
    return Fraction(alpha) - Fraction(delta) * length - 2 * length * Fraction(eps)
