"""
Permutation Roots
Exact p-th roots (cycle-count criterion and construction), approximate roots
with an a-priori defect bound, and composite exponents through a chain of
prime stages.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Tuple

import sympy

from src.perm_core import (
    Permutation,
    cycle_decomposition,
    cycle_type,
    from_point_map,
    hamming,
    power,
)

logger = logging.getLogger(__name__)


class NotPrimeError(ValueError):
    """Raised when a prime exponent is required but not given."""


class NoExactRootError(ValueError):
    """Raised when x^p = f has no solution."""


@dataclass(frozen=True)
class CycleTypeProfile:
    """
    Cycle bookkeeping of f relative to a prime p.

    counts[k] is the number of cycles of length k*p and residues[k] is that
    count reduced mod p. n0 counts the points lying in cycles of length
    coprime to p.
    """

    p: int
    n: int
    n0: int
    counts: Dict[int, int]
    residues: Dict[int, int]
    support: FrozenSet[int]

    def alpha(self, k: int) -> int:
        return self.counts.get(k, 0) // self.p

    def broken_cycle_total(self) -> int:
        return sum(self.residues.values())


@dataclass(frozen=True)
class ApproxRootResult:
    """An exact root g of a repaired target f_tilde close to f."""

    p: int
    n: int
    g: Permutation
    f_tilde: Permutation
    defect: Fraction
    bound: sympy.Expr
    broken_points: Tuple[int, ...] = ()
    stages: Tuple['ApproxRootResult', ...] = field(default=(), repr=False)

    def within_bound(self) -> bool:
        """Exact check defect <= bound."""
        return bool(sympy.Rational(self.defect.numerator, self.defect.denominator) <= self.bound)


def is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"Exponent {p} is not prime")


def prime_factors(p: int) -> List[int]:
    """Prime factors of p with multiplicity, largest first."""
    if p < 1:
        raise ValueError(f"Exponent must be positive, got {p}")
    factors = []
    for prime, multiplicity in sympy.factorint(p).items():
        factors.extend([int(prime)] * multiplicity)
    return sorted(factors, reverse=True)


def root_bound(p: int, n: int) -> sympy.Expr:
    """A-priori defect bound 2*sqrt(2)*(p-1)/sqrt(p*n) for a prime stage."""
    return 2 * sympy.sqrt(2) * (p - 1) / sympy.sqrt(sympy.Integer(p) * n)


def statement_bound(p: int, n: int) -> sympy.Expr:
    """The sharper 2*sqrt(2(p-1))/sqrt(p*n) form; reported, not relied on."""
    return 2 * sympy.sqrt(2 * (p - 1)) / sympy.sqrt(sympy.Integer(p) * n)


def chain_bound(p: int, n: int) -> sympy.Expr:
    """
    Accumulated bound for a composite exponent.

    With prime factors q_1, ..., q_m processed in order, stage i contributes
    (q_1 ... q_{i-1}) * root_bound(q_i, n).
    """
    total = sympy.Integer(0)
    prefix = 1
    for q in prime_factors(p):
        total += prefix * root_bound(q, n)
        prefix *= q
    return total


def _profile_from_type(lengths: Dict[int, int], n: int, p: int) -> CycleTypeProfile:
    n0 = 0
    counts: Dict[int, int] = {}
    for length, m in sorted(lengths.items()):
        if length % p:
            n0 += length * m
        else:
            counts[length // p] = m
    return CycleTypeProfile(
        p=p,
        n=n,
        n0=n0,
        counts=counts,
        residues={k: m % p for k, m in counts.items()},
        support=frozenset(counts),
    )


def profile(f: Permutation, p: int) -> CycleTypeProfile:
    """
    Count the kp-cycles of f.

    Args:
        f: Permutation
        p: Prime

    Returns:
        CycleTypeProfile with n0, counts m_k, residues r_k and support S

    Raises:
        NotPrimeError: If p is not prime
    """
    _require_prime(p)
    return _profile_from_type(cycle_type(f), f.n, p)


def exact_root_exists(f: Permutation, p: int) -> bool:
    """True iff the number of kp-cycles of f is divisible by p for every k."""
    return all(r == 0 for r in profile(f, p).residues.values())


def _root_from_cycles(n: int, cycles: Sequence[Tuple[int, ...]], p: int) -> Permutation:
    """
    Root of the permutation with the given canonical cycles, which must
    satisfy the root criterion.

    A cycle C of length r coprime to p contributes C^alpha with alpha*p = 1
    (mod r). Cycles of length kp are taken in blocks of p consecutive cycles
    and each block is interleaved into one cycle of length kp^2: its i-th
    point of cycle j is followed by the i-th point of cycle j+1, and the last
    cycle steps on to the (i+1)-th point of the first.
    """
    sources: List[int] = []
    targets: List[int] = []
    pending: Dict[int, List[Tuple[int, ...]]] = {}
    blocks = 0
    for cycle in cycles:
        length = len(cycle)
        if length % p:
            if length == 1:
                continue
            alpha = pow(p, -1, length)
            sources.extend(cycle)
            targets.extend(cycle[alpha:] + cycle[:alpha])
            continue
        block = pending.setdefault(length, [])
        block.append(cycle)
        if len(block) == p:
            for j in range(p - 1):
                sources.extend(block[j])
                targets.extend(block[j + 1])
            sources.extend(block[-1])
            targets.extend(block[0][1:] + block[0][:1])
            blocks += 1
            pending[length] = []
    if any(pending.values()):
        raise NoExactRootError(f"No {p}-th root: some kp-cycle count is not divisible by {p}")
    logger.debug(f"{p}-th root: {blocks} interleaved blocks")
    return from_point_map(n, sources, targets)


def exact_root(f: Permutation, p: int) -> Permutation:
    """
    Construct x with x^p = f.

    Cycles of length r coprime to p become C^alpha with alpha*p = 1 (mod r).
    Cycles of length kp are taken in blocks of p consecutive cycles (canonical
    order) and each block is interleaved into one cycle of length kp^2.

    Raises:
        NotPrimeError: If p is not prime
        NoExactRootError: If some kp-cycle count is not divisible by p
    """
    _require_prime(p)
    return _root_from_cycles(f.n, cycle_decomposition(f).cycles, p)


def approx_root_prime(f: Permutation, p: int) -> ApproxRootResult:
    """
    Approximate p-th root for a prime p.

    For each k in S the last r_k cycles of length kp lose their maximal point,
    which becomes fixed. The result f_tilde satisfies the root criterion and
    differs from f on exactly 2 * sum(r_k) points.

    Args:
        f: Target permutation
        p: Prime exponent

    Returns:
        ApproxRootResult with g^p = f_tilde and defect = h(f, f_tilde)
    """
    _require_prime(p)
    decomposition = cycle_decomposition(f)
    prof = _profile_from_type(decomposition.cycle_type(), f.n, p)
    to_break = dict(prof.residues)
    remaining = prof.broken_cycle_total()
    cycles = list(decomposition.cycles)
    images = list(f.images)
    broken: List[int] = []
    for idx in range(len(cycles) - 1, -1, -1):
        if not remaining:
            break
        cycle = cycles[idx]
        length = len(cycle)
        k = length // p
        if length % p or not to_break.get(k):
            continue
        to_break[k] -= 1
        remaining -= 1
        pos = cycle.index(max(cycle))
        top = cycle[pos]
        # the predecessor of top now skips it; top becomes fixed
        images[cycle[pos - 1] - 1] = cycle[(pos + 1) % length]
        images[top - 1] = top
        broken.append(top)
        cycles[idx] = cycle[:pos] + cycle[pos + 1:]

    f_tilde = Permutation.unchecked(tuple(images)) if broken else f
    g = _root_from_cycles(f.n, cycles, p)
    defect = hamming(f, f_tilde)
    expected = Fraction(2 * prof.broken_cycle_total(), f.n)
    if defect != expected:
        raise AssertionError(f"Defect {defect} differs from 2*sum(r_k)/n = {expected}")
    result = ApproxRootResult(
        p=p,
        n=f.n,
        g=g,
        f_tilde=f_tilde,
        defect=defect,
        bound=root_bound(p, f.n),
        broken_points=tuple(sorted(broken)),
    )
    logger.debug(f"Prime stage p={p}: broke {len(broken)} cycles, defect {defect}")
    return result


def approx_root(f: Permutation, p: int) -> ApproxRootResult:
    """
    Approximate p-th root for any positive p.

    The prime factors of p (largest first) are processed as a chain: the first
    stage roots f, each later stage roots the previous stage's g. The reported
    defect is h(g^p, f), computed exactly.
    """
    if p < 1:
        raise ValueError(f"Exponent must be positive, got {p}")
    if p == 1:
        return ApproxRootResult(p=1, n=f.n, g=f, f_tilde=f, defect=Fraction(0), bound=sympy.Integer(0))

    stages = []
    current = f
    for q in prime_factors(p):
        stage = approx_root_prime(current, q)
        stages.append(stage)
        current = stage.g

    g = current
    if len(stages) == 1:
        # a single prime stage already has g^p = f_tilde
        f_tilde, defect = stages[0].f_tilde, stages[0].defect
    else:
        f_tilde = power(g, p)
        defect = hamming(f_tilde, f)
    result = ApproxRootResult(
        p=p,
        n=f.n,
        g=g,
        f_tilde=f_tilde,
        defect=defect,
        bound=chain_bound(p, f.n),
        broken_points=tuple(sorted(x for s in stages for x in s.broken_points)),
        stages=tuple(stages),
    )
    logger.info(f"Approximate {p}-th root: defect {result.defect}, bound {result.bound}")
    return result
