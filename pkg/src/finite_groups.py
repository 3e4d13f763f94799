"""
Finite Groups
Finite permutation groups given by generators: element closure and Cayley
table through sympy's permutation groups, and the right-regular action used
for planted exact solutions and regular representations.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup
from sympy.combinatorics.named_groups import CyclicGroup, SymmetricGroup

from src.perm_core import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group as an element list and a Cayley table on indices.

    elements[0] is the identity and table[a][b] is the index of the product
    elements[a] * elements[b] (right action: apply elements[a] first).
    """

    name: str
    elements: Tuple[Permutation, ...]
    table: Tuple[Tuple[int, ...], ...]
    generators: Tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]


def to_sympy(f: Permutation) -> SymPermutation:
    """The same permutation on 0..n-1, in sympy's left-to-right product convention."""
    return SymPermutation([x - 1 for x in f.images])


def from_sympy(g: SymPermutation, n: int) -> Permutation:
    images = [x + 1 for x in g.array_form]
    images.extend(range(len(images) + 1, n + 1))
    return Permutation(tuple(images))


def _group_from_sympy(pgroup: PermutationGroup, generators: Sequence[SymPermutation], name: str,
                      elements: Optional[Sequence[SymPermutation]] = None) -> FiniteGroup:
    """
    Tabulate a sympy permutation group.

    Elements come in Dimino order unless an explicit listing is given; the
    identity is moved to the front either way. sympy multiplies left to right,
    (i)(a*b) = ((i)a)b, which is the right action used here.
    """
    listing = list(elements) if elements is not None else list(pgroup.generate_dimino(af=False))
    listing.sort(key=lambda g: not g.is_Identity)
    position = {g: i for i, g in enumerate(listing)}
    table = tuple(tuple(position[a * b] for b in listing) for a in listing)
    n = pgroup.degree
    logger.debug(f"Tabulated {name}: order {len(listing)} on {n} points")
    return FiniteGroup(
        name=name,
        elements=tuple(from_sympy(g, n) for g in listing),
        table=table,
        generators=tuple(position[s] for s in generators),
    )


def group_closure(generators: Sequence[Permutation], name: str = "group",
                  max_order: int = 100000) -> FiniteGroup:
    """
    Close a generator set under multiplication.

    Args:
        generators: Permutations of a common degree
        name: Label for logs and presets
        max_order: Largest group order accepted

    Returns:
        FiniteGroup whose generators field indexes the given generators

    Raises:
        ValueError: If no generators are given, degrees differ, or the group
            is larger than max_order
    """
    if not generators:
        raise ValueError("At least one generator is required")
    if len({f.n for f in generators}) != 1:
        raise ValueError("Generators must share one degree")
    sym_generators = [to_sympy(f) for f in generators]
    pgroup = PermutationGroup(sym_generators)
    if pgroup.order() > max_order:
        raise ValueError(f"Group {name} has order {pgroup.order()}, above {max_order}")
    return _group_from_sympy(pgroup, sym_generators, name)


def cyclic_group(m: int) -> FiniteGroup:
    """Z/m generated by the m-cycle (1 2 ... m), elements listed as its powers."""
    if m < 1:
        raise ValueError(f"Cyclic group order must be positive, got {m}")
    pgroup = CyclicGroup(m)
    generator = pgroup.generators[0]
    return _group_from_sympy(pgroup, [generator], f"Z{m}",
                             elements=[generator ** k for k in range(m)])


def symmetric_group_s3() -> FiniteGroup:
    """S3 generated by the involutions (1 2) and (2 3)."""
    involutions = [SymPermutation([[0, 1]], size=3), SymPermutation([[1, 2]], size=3)]
    return _group_from_sympy(SymmetricGroup(3), involutions, "S3")


def exponent_three_group() -> FiniteGroup:
    """
    The order-27 group of exponent 3, acting on (Z/3)^2 by (u,v) -> (u+1,v)
    and (u,v) -> (u,v+u). Its generators satisfy
    x^3 = y^3 = (xy)^3 = (x^2 y)^3 = 1.
    """
    def point(u: int, v: int) -> int:
        return 3 * (u % 3) + (v % 3) + 1

    shift = [0] * 9
    shear = [0] * 9
    for u in range(3):
        for v in range(3):
            shift[point(u, v) - 1] = point(u + 1, v)
            shear[point(u, v) - 1] = point(u, v + u)
    return group_closure([Permutation(tuple(shift)), Permutation(tuple(shear))], name="E27")


def regular_action(group: FiniteGroup, elements: Sequence[int], copies: int = 1) -> List[Permutation]:
    """
    Right-regular action of chosen group elements on copies * |G| points.

    Point c*|G| + i + 1 stands for element i in copy c; element a sends it to
    the point of element i*a in the same copy.

    Args:
        group: The acting group
        elements: Indices of the elements to realise
        copies: Number of disjoint copies of the regular action

    Returns:
        One permutation per requested element
    """
    if copies < 1:
        raise ValueError(f"Number of copies must be positive, got {copies}")
    order = group.order
    perms = []
    for a in elements:
        images = []
        for c in range(copies):
            offset = c * order
            images.extend(offset + group.mult(i, a) + 1 for i in range(order))
        perms.append(Permutation(tuple(images)))
    return perms
