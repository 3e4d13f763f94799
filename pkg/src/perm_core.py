"""
Permutation Core
Permutation values on {1..n}, group operations under the right action (a)f,
cycle structure and the normalized Hamming metric.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from operator import ne
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class DegreeMismatchError(ValueError):
    """Raised when two permutations of different degree are combined."""


class CycleError(ValueError):
    """Raised when a cycle list does not describe a permutation."""


@dataclass(frozen=True)
class Permutation:
    """
    A bijection of {1..n}, stored as its image sequence.

    images[a - 1] is (a)f, the image of point a. Values are immutable, so a
    Permutation can be shared freely between threads.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(map(int, self.images))
        object.__setattr__(self, 'images', images)
        n = len(images)
        if n < 1:
            raise ValueError("Permutation degree must be at least 1")
        if min(images) < 1 or max(images) > n or len(set(images)) != n:
            shown = list(images) if n <= 20 else f"{list(images[:20])}..."
            raise ValueError(f"Image sequence is not a bijection of 1..{n}: {shown}")

    @classmethod
    def from_images(cls, images: Sequence[int]) -> 'Permutation':
        """Validated permutation from a 1-indexed image sequence."""
        return cls(tuple(images))

    @classmethod
    def unchecked(cls, images: Tuple[int, ...]) -> 'Permutation':
        """Wrap an image tuple of Python ints that is already a bijection of 1..n."""
        perm = object.__new__(cls)
        object.__setattr__(perm, 'images', images)
        return perm

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        """Image of point a."""
        return self.images[a - 1]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def __pow__(self, e: int) -> 'Permutation':
        return power(self, e)

    def __str__(self) -> str:
        return render_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class CycleDecomposition:
    """Canonical cycles of a permutation, fixed points included."""

    n: int
    cycles: Tuple[Tuple[int, ...], ...]

    def lengths(self) -> List[int]:
        return [len(c) for c in self.cycles]

    def cycle_type(self) -> Dict[int, int]:
        """Map cycle length -> number of cycles of that length."""
        counts: Dict[int, int] = {}
        for cycle in self.cycles:
            counts[len(cycle)] = counts.get(len(cycle), 0) + 1
        return counts


def identity(n: int) -> Permutation:
    """Identity permutation of degree n."""
    return Permutation(tuple(range(1, n + 1)))


def _check_degrees(f: Permutation, g: Permutation) -> None:
    if f.n != g.n:
        raise DegreeMismatchError(f"Degree mismatch: {f.n} vs {g.n}")


def from_point_map(n: int, sources: Sequence[int], targets: Sequence[int]) -> Permutation:
    """
    Permutation sending sources[i] to targets[i]; unlisted points are fixed.

    No validation: the caller guarantees that the map is a bijection, as it is
    for cycles read off an existing permutation.
    """
    images = np.arange(1, n + 1, dtype=np.int64)
    if len(sources):
        images[np.asarray(sources, dtype=np.int64) - 1] = np.asarray(targets, dtype=np.int64)
    return Permutation.unchecked(tuple(images.tolist()))


def compose(f: Permutation, g: Permutation) -> Permutation:
    """
    Product fg under the right action: a -> ((a)f)g.

    Args:
        f: Applied first
        g: Applied second

    Returns:
        The composed permutation

    Raises:
        DegreeMismatchError: If f and g act on different degrees
    """
    _check_degrees(f, g)
    # index 0 is padding so point a looks up position a
    g_images = (0,) + g.images
    return Permutation.unchecked(tuple(map(g_images.__getitem__, f.images)))


def inverse(f: Permutation) -> Permutation:
    """Inverse permutation."""
    return from_point_map(f.n, f.images, np.arange(1, f.n + 1))


def power(f: Permutation, e: int) -> Permutation:
    """
    e-th power of f, for any integer e.

    Each cycle is rotated by e positions, so the cost is linear in n and
    independent of |e|.
    """
    sources: List[int] = []
    targets: List[int] = []
    for cycle in cycle_decomposition(f).cycles:
        shift = e % len(cycle)
        if shift:
            sources.extend(cycle)
            targets.extend(cycle[shift:] + cycle[:shift])
    return from_point_map(f.n, sources, targets)


def disagreements(f: Permutation, g: Permutation) -> int:
    """Number of points a with (a)f != (a)g."""
    _check_degrees(f, g)
    return sum(map(ne, f.images, g.images))


def hamming(f: Permutation, g: Permutation) -> Fraction:
    """
    Normalized Hamming distance h(f, g) = |{a : (a)f != (a)g}| / n.

    Returns:
        Exact rational in [0, 1]

    Raises:
        DegreeMismatchError: If f and g act on different degrees
    """
    return Fraction(disagreements(f, g), f.n)


def cycle_decomposition(f: Permutation) -> CycleDecomposition:
    """
    Canonical cycle decomposition.

    Every cycle starts at its minimal element and cycles are ordered by that
    element; fixed points appear as 1-cycles.
    """
    n = f.n
    successor = (0,) + f.images
    seen = bytearray(n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        seen[start] = 1
        cycle = [start]
        point = successor[start]
        while point != start:
            seen[point] = 1
            cycle.append(point)
            point = successor[point]
        cycles.append(tuple(cycle))
    return CycleDecomposition(n=n, cycles=tuple(cycles))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """
    Build a permutation of degree n from disjoint cycles.

    Args:
        n: Degree
        cycles: Point sequences; points not mentioned are fixed

    Returns:
        The permutation mapping each cycle entry to the next one

    Raises:
        CycleError: If a point is out of range or repeated
    """
    if n < 1:
        raise CycleError("Degree must be at least 1")
    used = set()
    sources: List[int] = []
    targets: List[int] = []
    for cycle in cycles:
        cycle = [int(x) for x in cycle]
        for point in cycle:
            if point < 1 or point > n:
                raise CycleError(f"Point {point} out of range 1..{n}")
            if point in used:
                raise CycleError(f"Point {point} repeated")
            used.add(point)
        if len(cycle) > 1:
            sources.extend(cycle)
            targets.extend(cycle[1:] + cycle[:1])
    return from_point_map(n, sources, targets)


def cycle_type(f: Permutation) -> Dict[int, int]:
    """Map cycle length -> number of cycles of that length."""
    return cycle_decomposition(f).cycle_type()


def is_identity(f: Permutation) -> bool:
    return all(image == a for a, image in enumerate(f.images, start=1))


def random_permutation(n: int, rng: Optional[np.random.Generator] = None) -> Permutation:
    """
    Uniformly random permutation of degree n.

    Args:
        n: Degree
        rng: Seeded numpy generator; the same generator state gives the same
            permutation

    Returns:
        A permutation drawn from the uniform distribution on S_n
    """
    if rng is None:
        rng = np.random.default_rng()
    images = np.arange(1, n + 1)
    rng.shuffle(images)
    return Permutation.unchecked(tuple(images.tolist()))


def render_cycles(f: Permutation) -> str:
    """Cycle notation without fixed points; the identity renders as '()'."""
    parts = []
    for cycle in cycle_decomposition(f).cycles:
        if len(cycle) > 1:
            parts.append("(" + " ".join(str(x) for x in cycle) + ")")
    return "".join(parts) if parts else "()"
