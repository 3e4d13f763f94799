"""
Brute-Force Oracle
Exhaustive ground truth at small degree: enumeration of S_n, brute-force
roots and nearest exact solutions of a relation system.
"""

import itertools
import logging
from fractions import Fraction
from typing import FrozenSet, Iterator, Optional, Tuple

from src.equations import EquationSystem, PermTuple, check_system_arity, is_exact_solution
from src.perm_core import Permutation, hamming, power

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 8
DEFAULT_NEAREST_MAX_DEGREE = 5
DEFAULT_NEAREST_MAX_ARITY = 2


class CapExceededError(ValueError):
    """Raised when an exhaustive search would exceed its configured cap."""


def enumerate_permutations(n: int, cap: int = DEFAULT_MAX_DEGREE) -> Iterator[Permutation]:
    """
    Yield all n! permutations in lexicographic order of image sequences.

    The first one is the identity.

    Raises:
        CapExceededError: If n exceeds cap
    """
    if n < 1:
        raise ValueError(f"Degree must be at least 1, got {n}")
    if n > cap:
        raise CapExceededError(f"Degree {n} exceeds the enumeration cap {cap}")
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def brute_exact_root(f: Permutation, p: int, cap: int = DEFAULT_MAX_DEGREE) -> Optional[Permutation]:
    """First x in enumeration order with x^p = f, or None."""
    for x in enumerate_permutations(f.n, cap):
        if power(x, p) == f:
            return x
    return None


def all_powers(n: int, p: int, cap: int = DEFAULT_MAX_DEGREE) -> FrozenSet[Permutation]:
    """
    The set {x^p : x in S_n}.

    f has a p-th root iff f is in this set; one pass over S_n answers the
    question for every f at once.
    """
    return frozenset(power(x, p) for x in enumerate_permutations(n, cap))


def nearest_exact_solution(system: EquationSystem, t: PermTuple,
                           max_degree: int = DEFAULT_NEAREST_MAX_DEGREE,
                           max_arity: int = DEFAULT_NEAREST_MAX_ARITY) -> Tuple[PermTuple, Fraction]:
    """
    Exact solution closest to t in the max-over-generators Hamming distance.

    Candidates run through (S_n)^k in lexicographic order; the first one
    attaining the minimum distance wins.

    Args:
        system: Relation system
        t: Reference tuple
        max_degree: Cap on n
        max_arity: Cap on k

    Returns:
        (witness, distance)

    Raises:
        CapExceededError: If n or k exceeds its cap
    """
    check_system_arity(system, t)
    if t.n > max_degree:
        raise CapExceededError(f"Degree {t.n} exceeds the nearest-solution cap {max_degree}")
    if t.k > max_arity:
        raise CapExceededError(f"Arity {t.k} exceeds the nearest-solution cap {max_arity}")

    if is_exact_solution(system, t):
        return t, Fraction(0)

    perms = list(enumerate_permutations(t.n, max_degree))
    best: Optional[PermTuple] = None
    best_distance = Fraction(2)
    searched = 0
    for combo in itertools.product(perms, repeat=t.k):
        searched += 1
        distance = max(hamming(f, g) for f, g in zip(t.perms, combo))
        if distance >= best_distance:
            continue
        candidate = PermTuple(combo)
        if is_exact_solution(system, candidate):
            best, best_distance = candidate, distance
            if distance == 0:
                break

    logger.debug(f"Nearest solution search over {searched} tuples: distance {best_distance}")
    # the all-identity tuple solves every system, so best is always set
    return best, best_distance
