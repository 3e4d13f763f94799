"""
Stability Repair
Turns an epsilon-solution of a relation system into a nearby exact solution:
points whose radius-m neighborhood in the edge-colored graph touches a failing
point are made fixed, all other points keep their images.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

from src.equations import (
    EquationSystem,
    PermTuple,
    check_system_arity,
    defect,
    letter_tables,
    trace_point,
)
from src.perm_core import Permutation, disagreements, inverse

logger = logging.getLogger(__name__)


class NotClosedError(ValueError):
    """A good point maps into the bad set, so a repaired map is not a bijection."""


class StillFailingError(ValueError):
    """The repaired maps are bijections but do not solve the system."""


class ExhaustedError(ValueError):
    """No radius up to m_max produced an exact solution."""

    def __init__(self, m_max: int, message: Optional[str] = None):
        self.m_max = m_max
        super().__init__(message or f"No radius in 0..{m_max} produced an exact solution")


@dataclass(frozen=True)
class RepairResult:
    """Repaired tuple plus the diagnostics of the run that produced it."""

    repaired: PermTuple
    radius_used: int
    failing_count: int
    bad_count: int
    distances: Tuple[Fraction, ...]
    max_distance: Fraction
    input_defect: Fraction
    failing_bound_relations: Fraction
    failing_bound_generators: Fraction
    bad_set_bound: Fraction

    @property
    def n(self) -> int:
        return self.repaired.n


def _adjacency(t: PermTuple) -> List[Tuple[int, ...]]:
    tables = []
    for f in t.perms:
        tables.append(f.images)
        tables.append(inverse(f).images)
    return tables


def _ball(t: PermTuple, sources: Iterable[int], m: int, tables=None) -> Set[int]:
    """All points within m steps of some source along any f_j or f_j^-1."""
    tables = tables or _adjacency(t)
    seen = set(sources)
    frontier = deque((a, 0) for a in seen)
    while frontier:
        a, depth = frontier.popleft()
        if depth == m:
            continue
        for table in tables:
            b = table[a - 1]
            if b not in seen:
                seen.add(b)
                frontier.append((b, depth + 1))
    return seen


def neighborhood(t: PermTuple, a: int, m: int) -> FrozenSet[int]:
    """
    Radius-m neighborhood N(a) in the edge-colored graph of t.

    Args:
        t: Permutation tuple
        a: Point in 1..n
        m: Radius (>= 0)

    Returns:
        Points reachable from a in at most m steps

    Raises:
        ValueError: If a is out of range or m is negative
    """
    if a < 1 or a > t.n:
        raise ValueError(f"Point {a} out of range 1..{t.n}")
    if m < 0:
        raise ValueError(f"Radius must be non-negative, got {m}")
    return frozenset(_ball(t, [a], m))


def failing_vertices(system: EquationSystem, t: PermTuple) -> FrozenSet[int]:
    """Points a where (a)w_i differs from (a)u_i for some relation i."""
    check_system_arity(system, t)
    tables = letter_tables(t)
    return frozenset(
        a for a in range(1, t.n + 1)
        if any(trace_point(lhs, t, a, tables) != trace_point(rhs, t, a, tables)
               for lhs, rhs in system.relations)
    )


def bad_vertices(system: EquationSystem, t: PermTuple, m: int,
                 failing: Optional[FrozenSet[int]] = None) -> FrozenSet[int]:
    """Union of the radius-m neighborhoods of the failing points."""
    if m < 0:
        raise ValueError(f"Radius must be non-negative, got {m}")
    if failing is None:
        failing = failing_vertices(system, t)
    if not failing:
        return frozenset()
    # a multi-source search from M gives the union of balls in one pass
    return frozenset(_ball(t, failing, m))


def ball_size_bound(k: int, m: int) -> int:
    """Size bound for a radius-m ball when every point has 2k neighbors."""
    if k < 1:
        raise ValueError(f"Arity must be at least 1, got {k}")
    return 1 + sum(2 * k * (2 * k - 1) ** (j - 1) for j in range(1, m + 1))


def bad_set_bound(eps, k: int, r: int, m: int, n: int) -> Fraction:
    """
    A-priori bound on |M*|: (eps * r * n) * ball_size_bound(k, m).

    Args:
        eps: Defect of the input tuple
        k: Number of generators
        r: Number of relations
        m: Radius
        n: Degree
    """
    return Fraction(eps) * r * n * ball_size_bound(k, m)


def printed_bad_set_bound(eps, k: int, m: int, n: int) -> Optional[Fraction]:
    """
    The form eps*k*n*(1 + k((2k-1)^(m-1) - 1)/(k-1)).

    Undefined at k = 1 (returns None), and at m = 0 the inner power is
    fractional; kept only for side-by-side reporting.
    """
    if k == 1:
        return None
    inner = Fraction(2 * k - 1) ** (m - 1) - 1
    return Fraction(eps) * k * n * (1 + k * inner / (k - 1))


def _repaired_tuple(t: PermTuple, bad: FrozenSet[int]) -> PermTuple:
    perms = []
    for j, f in enumerate(t.perms, start=1):
        images = list(f.images)
        for a in bad:
            images[a - 1] = a
        for a in range(1, t.n + 1):
            if a not in bad and images[a - 1] in bad:
                raise NotClosedError(
                    f"Good point {a} maps to bad point {images[a - 1]} under x{j}"
                )
        perms.append(Permutation(tuple(images)))
    return PermTuple(tuple(perms))


def repair(system: EquationSystem, t: PermTuple, m: int) -> RepairResult:
    """
    Repair at a fixed radius.

    Points of M* (the radius-m neighborhood of the failing set) become fixed
    under every generator; the other points keep their images. The result is
    validated before it is returned.

    Args:
        system: Relation system
        t: Candidate epsilon-solution
        m: Radius

    Returns:
        RepairResult with an exact solution

    Raises:
        NotClosedError: If a good point maps into M*
        StillFailingError: If the repaired tuple still violates a relation
    """
    input_defect = defect(system, t)
    failing = failing_vertices(system, t)
    bad = bad_vertices(system, t, m, failing)
    repaired = _repaired_tuple(t, bad)

    if defect(system, repaired) != 0:
        raise StillFailingError(f"Repaired tuple at radius {m} is not an exact solution")

    distances = tuple(
        Fraction(disagreements(f, g), t.n) for f, g in zip(t.perms, repaired.perms)
    )
    n = t.n
    result = RepairResult(
        repaired=repaired,
        radius_used=m,
        failing_count=len(failing),
        bad_count=len(bad),
        distances=distances,
        max_distance=max(distances),
        input_defect=input_defect,
        failing_bound_relations=input_defect * system.r * n,
        failing_bound_generators=input_defect * system.k * n,
        bad_set_bound=bad_set_bound(input_defect, system.k, system.r, m, n),
    )
    logger.info(
        f"Repair at radius {m}: |M|={result.failing_count}, |M*|={result.bad_count}, "
        f"max distance {result.max_distance}"
    )
    return result


def repair_auto(system: EquationSystem, t: PermTuple, m_max: int) -> RepairResult:
    """
    Try radii 0, 1, ..., m_max and return the first successful repair.

    Raises:
        ExhaustedError: If every radius up to m_max fails
    """
    if m_max < 0:
        raise ValueError(f"m_max must be non-negative, got {m_max}")
    for m in range(m_max + 1):
        try:
            return repair(system, t, m)
        except (NotClosedError, StillFailingError) as e:
            logger.debug(f"Radius {m} rejected: {e}")
    logger.warning(f"Repair exhausted all radii up to {m_max}")
    raise ExhaustedError(m_max)


def _changes_per_generator(changes: int, k: int, rng: np.random.Generator) -> np.ndarray:
    counts = rng.multinomial(changes, [1.0 / k] * k)
    # a single image of a bijection cannot change alone; fold lone changes into the largest share
    for j in range(k):
        if counts[j] == 1 and counts.sum() > 1:
            counts[j] = 0
            counts[int(np.argmax(counts))] += 1
    if counts.sum() == 1:
        counts[counts == 1] = 2
    return counts


def corrupt_tuple(t: PermTuple, changes: int, rng: np.random.Generator) -> PermTuple:
    """
    Change exactly `changes` images of a tuple, spread at random over its
    generators.

    Within one generator, c >= 2 chosen points have their images rotated,
    which changes all c images and keeps the map a bijection. A request for a
    single change yields two.

    Args:
        t: Tuple to corrupt
        changes: Number of images to change, at most n
        rng: Seeded numpy generator

    Returns:
        The corrupted tuple

    Raises:
        ValueError: If changes is negative or exceeds n
    """
    if changes < 0 or changes > t.n:
        raise ValueError(f"Can change between 0 and {t.n} images, got {changes}")
    if changes == 0 or t.n < 2:
        return t
    perms = []
    for f, count in zip(t.perms, _changes_per_generator(changes, t.k, rng)):
        if count == 0:
            perms.append(f)
            continue
        images = np.asarray(f.images, dtype=np.int64)
        points = rng.choice(t.n, size=int(count), replace=False)
        images[points] = np.roll(images[points], -1)
        perms.append(Permutation.unchecked(tuple(images.tolist())))
    return PermTuple(tuple(perms))
