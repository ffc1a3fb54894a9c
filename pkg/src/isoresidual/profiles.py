"""Order profiles, residue tuples and partial-sum vanishing structures.

Pole labels are 1-based; a subset of poles is stored as an int bitmask with
bit i-1 standing for pole i.  A subset and its complement impose the same
residue condition (the total sum already vanishes), so the canonical
representative of the pair is the one containing pole 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._linalg import Kernel, kernel_contains, kernel_reduce, ones_kernel
from .errors import RealizationExhausted
from .exactarith import GaussianRational

MAX_POLES = 16

Mask = int


def full_mask(n: int) -> Mask:
    return (1 << n) - 1


def mask_from_indices(indices, n: int) -> Mask:
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"pole index {i} out of range 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def indices_from_mask(mask: Mask) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def canonical_mask(mask: Mask, n: int) -> Mask:
    """Representative of {subset, complement} containing pole 1."""
    full = full_mask(n)
    if not 0 < mask < full:
        raise ValueError("subset must be nonempty and proper")
    return mask if mask & 1 else mask ^ full


def _mask_sort_key(mask: Mask):
    return (mask.bit_count(), mask)


@dataclass(frozen=True, slots=True)
class OrderProfile:
    """Zero order a and positive pole orders b_1..b_n, with a = sum(b) - 2."""

    a: int
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.b) < 2:
            raise ValueError("need at least two poles")
        if any(not isinstance(x, int) or x < 1 for x in self.b):
            raise ValueError("pole orders must be positive integers")
        if self.a != sum(self.b) - 2:
            raise ValueError(
                f"zero order {self.a} does not match pole orders (expected "
                f"{sum(self.b) - 2})"
            )

    @classmethod
    def from_pole_orders(cls, b) -> "OrderProfile":
        b = tuple(b)
        return cls(sum(b) - 2, b)

    @property
    def n(self) -> int:
        return len(self.b)

    def order_sum(self, mask: Mask) -> int:
        """Total pole order over a subset mask."""
        total = 0
        b = self.b
        while mask:
            low = mask & -mask
            total += b[low.bit_length() - 1]
            mask ^= low
        return total


@dataclass(frozen=True, slots=True)
class ResidueTuple:
    """Exact Gaussian-rational residues, one per pole, summing to zero."""

    values: tuple[GaussianRational, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 2:
            raise ValueError("need at least two residues")
        if any(not isinstance(v, GaussianRational) for v in self.values):
            raise ValueError("residues must be GaussianRational values")
        total = GaussianRational(Fraction(0))
        for v in self.values:
            total = total + v
        if total:
            raise ValueError(f"residues must sum to zero (got {total})")

    @property
    def n(self) -> int:
        return len(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def subset_sum(self, mask: Mask) -> GaussianRational:
        total = GaussianRational(Fraction(0))
        for i in indices_from_mask(mask):
            total = total + self.values[i - 1]
        return total


@dataclass(frozen=True, slots=True)
class VanishingStructure:
    """The lattice of vanishing partial sums a residue tuple satisfies.

    closure holds every canonical nonempty proper subset whose indicator lies
    in the rational span of the generator indicators together with the
    all-ones vector; generators is the deterministic greedy independent
    subset of the closure (ordered by cardinality, then by bitmask value);
    rank == len(generators) <= n - 1.
    """

    n: int
    generators: tuple[Mask, ...]
    closure: frozenset[Mask]
    rank: int

    def is_trivial(self) -> bool:
        return self.rank == 0

    def is_identically_zero(self) -> bool:
        return self.rank == self.n - 1

    def contains(self, mask: Mask) -> bool:
        return canonical_mask(mask, self.n) in self.closure

    def sorted_closure(self) -> tuple[Mask, ...]:
        return tuple(sorted(self.closure, key=_mask_sort_key))


def _check_n(n: int):
    if not 2 <= n <= MAX_POLES:
        raise ValueError(f"pole count must be between 2 and {MAX_POLES}, got {n}")


def _canonical_masks(n: int):
    """All canonical nonempty proper subsets: the ones containing pole 1."""
    full = full_mask(n)
    return (m for m in range(1, full, 2))


def _greedy_generators(n: int, closure) -> tuple[Mask, ...]:
    kernel = ones_kernel(n)
    gens = []
    for mask in sorted(closure, key=_mask_sort_key):
        if not kernel_contains(kernel, mask):
            gens.append(mask)
            kernel = kernel_reduce(kernel, mask)
    return tuple(gens)


@lru_cache(maxsize=None)
def _span_closure(n: int, gens: frozenset) -> tuple[frozenset, tuple, int, Kernel]:
    kernel = ones_kernel(n)
    for mask in gens:
        kernel = kernel_reduce(kernel, mask)
    closure = frozenset(m for m in _canonical_masks(n) if kernel_contains(kernel, m))
    canonical_gens = _greedy_generators(n, closure)
    return closure, canonical_gens, len(canonical_gens), kernel


def structure_from_generators(n: int, generators) -> VanishingStructure:
    """Span closure of the given subsets (in either representative).

    Dependent generators are dropped; the stored generator list is the
    canonical greedy one, so structures with equal closures compare equal.
    """
    _check_n(n)
    gens = frozenset(canonical_mask(m, n) for m in generators)
    closure, canonical_gens, rank, _ = _span_closure(n, gens)
    return VanishingStructure(n, canonical_gens, closure, rank)


def structure_kernel(structure: VanishingStructure) -> Kernel:
    """Integer basis of the residue tuples satisfying the structure (the
    orthogonal complement of the generators plus the total sum)."""
    return _span_closure(structure.n, frozenset(structure.generators))[3]


def trivial_structure(n: int) -> VanishingStructure:
    return structure_from_generators(n, ())


def identically_zero_structure(n: int) -> VanishingStructure:
    """The structure of the zero residue tuple: every subset vanishes."""
    return structure_from_generators(n, [1 << i for i in range(n - 1)])


def vanishing_subsets(residues: ResidueTuple) -> VanishingStructure:
    """Exact vanishing structure of a residue tuple.

    The closure is found by direct subset summation; the generators are the
    greedy independent subfamily in canonical order.
    """
    n = residues.n
    _check_n(n)
    sums = [GaussianRational(Fraction(0))] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + residues.values[low.bit_length() - 1]
    closure = frozenset(m for m in _canonical_masks(n) if not sums[m])
    gens = _greedy_generators(n, closure)
    return VanishingStructure(n, gens, closure, len(gens))


def is_refinement(structure: VanishingStructure, other: VanishingStructure) -> bool:
    """True iff every vanishing of the first also holds in the second."""
    if structure.n != other.n:
        raise ValueError("structures must have the same pole count")
    return structure.closure <= other.closure


def realize_residues(structure: VanishingStructure, seed: int) -> ResidueTuple:
    """Deterministic exact rational residues with exactly this structure.

    Samples integer combinations of a kernel basis of the generator
    conditions; generic points avoid the finitely many hyperplanes that
    would create extra vanishings, so the retry loop ends quickly.  If the
    structure is identically zero only the zero tuple realizes it.
    """
    n = structure.n
    if structure.is_identically_zero():
        return ResidueTuple(tuple(GaussianRational(Fraction(0)) for _ in range(n)))
    basis = structure_kernel(structure)
    rng = random.Random(seed)
    for attempt in range(64):
        bound = 8 * (attempt + 1)
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        vec = [sum(c * row[i] for c, row in zip(coeffs, basis)) for i in range(n)]
        if not any(vec):
            continue
        candidate = ResidueTuple(tuple(GaussianRational(Fraction(x)) for x in vec))
        if vanishing_subsets(candidate).closure == structure.closure:
            return candidate
    raise RealizationExhausted(
        f"no generic residue tuple found for rank-{structure.rank} structure "
        f"on {n} poles with seed {seed}"
    )


@lru_cache(maxsize=None)
def all_vanishing_structures(n: int) -> tuple[VanishingStructure, ...]:
    """Every span-closed vanishing structure on n poles, by breadth-first
    closure of generator additions.  Exponential in n; meant for sweeps."""
    _check_n(n)
    start = trivial_structure(n)
    seen = {start.closure: start}
    frontier = [start]
    while frontier:
        nxt = []
        for structure in frontier:
            for mask in _canonical_masks(n):
                if mask in structure.closure:
                    continue
                grown = structure_from_generators(
                    n, structure.generators + (mask,)
                )
                if grown.closure not in seen:
                    seen[grown.closure] = grown
                    nxt.append(grown)
        frontier = nxt
    return tuple(
        sorted(
            seen.values(),
            key=lambda s: (s.rank, sorted(s.closure, key=_mask_sort_key)),
        )
    )
