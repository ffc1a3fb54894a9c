"""Closed-form counts of single-zero differentials with fixed residues.

The count for a profile (a; b_1..b_n) and a vanishing structure V is the
alternating sum over partitions of the pole set into s zero-sum parts

    N = sum_s (-1)^(s-1) (a+1)^(s-2) sum_{partitions} prod_parts falling_f(b_J - 1, |J| + 1)

where b_J is the total pole order of a part.  The s = 1 term carries the
rational factor 1/(a+1) but always collapses to the integer falling_f(a, n);
the whole sum is evaluated in exact rational arithmetic and asserted to be a
nonnegative integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from ._linalg import solve_linear
from .errors import InterpolationMismatch, NegativeResult, NonIntegralResult
from .exactarith import falling_f
from .partitions import _partitions_by_size
from .profiles import (
    Mask,
    OrderProfile,
    VanishingStructure,
    canonical_mask,
    identically_zero_structure,
    is_refinement,
    mask_from_indices,
)

__all__ = [
    "CountBreakdown",
    "count_closed_form",
    "count_general",
    "count_one_vanishing",
    "count_two_nonzero",
    "zero_identity_value",
    "check_monotonicity",
    "check_polynomial_degree",
    "DegreeFitReport",
    "degenerate_simple_poles",
]


@dataclass(frozen=True, slots=True)
class CountBreakdown:
    """Total count plus the signed contribution of each part count s."""

    total: int
    per_s: tuple[tuple[int, Fraction, int], ...]  # (s, term value, #partitions)
    max_parts: int


def _check_match(profile: OrderProfile, structure: VanishingStructure):
    if profile.n != structure.n:
        raise ValueError(
            f"profile has {profile.n} poles but structure has {structure.n}"
        )


def _formula_terms(profile: OrderProfile, structure: VanishingStructure):
    """Per-s terms of the alternating sum, as exact Fractions."""
    a = profile.a
    terms = []
    for s, parts_list in _partitions_by_size(structure):
        inner = 0
        for partition in parts_list:
            term = 1
            for part in partition:
                term *= falling_f(profile.order_sum(part) - 1, part.bit_count() + 1)
            inner += term
        if s == 1:
            coeff = Fraction(1, a + 1)
        else:
            coeff = Fraction((-1) ** (s - 1) * (a + 1) ** (s - 2))
        terms.append((s, coeff * inner, len(parts_list)))
    return terms


def count_closed_form(profile: OrderProfile, structure: VanishingStructure) -> CountBreakdown:
    """Exact count of differentials of the given profile whose residue tuple
    has exactly this vanishing structure.

    Raises NonIntegralResult or NegativeResult if the alternating sum fails
    to be a nonnegative integer; both would indicate an internal bug.
    """
    _check_match(profile, structure)
    terms = _formula_terms(profile, structure)
    total = sum(value for _, value, _ in terms)
    if total.denominator != 1:
        raise NonIntegralResult(f"count {total} is not an integer")
    if total < 0:
        raise NegativeResult(f"count {total} is negative")
    return CountBreakdown(int(total), tuple(terms), max(s for s, _, _ in terms))


@lru_cache(maxsize=1 << 17)
def _count_total(profile: OrderProfile, structure: VanishingStructure) -> int:
    """Memoized total, for the recursion and the verification sweeps."""
    return count_closed_form(profile, structure).total


def count_general(profile: OrderProfile) -> int:
    """Count for residues with no vanishing partial sums: falling_f(a, n)."""
    out = falling_f(profile.a, profile.n)
    assert isinstance(out, int)
    return out


def count_one_vanishing(profile: OrderProfile, subset: Mask) -> int:
    """Count for residues with exactly one vanishing partial sum.

    The correction subtracts the product of the counts of the two pole
    groups cut out by the subset; it is symmetric under complement.
    """
    subset = canonical_mask(subset, profile.n)
    b_sub = profile.order_sum(subset)
    size = subset.bit_count()
    return count_general(profile) - falling_f(b_sub - 1, size + 1) * falling_f(
        profile.a - b_sub + 1, profile.n - size + 1
    )


def count_two_nonzero(profile: OrderProfile, i: int, j: int) -> int:
    """Count when every residue vanishes except an opposite pair at poles
    i and j: (n-2)! times the product of (b_k - 1) over the other poles.

    Zero whenever some other pole is simple, since a simple pole cannot
    carry a zero residue.
    """
    if i == j:
        raise ValueError("the two poles carrying residues must be distinct")
    pair = mask_from_indices((i, j), profile.n)
    out = 1
    for k in range(2, profile.n - 1):  # (n-2)!
        out *= k
    for idx in range(1, profile.n + 1):
        if not (pair >> (idx - 1)) & 1:
            out *= profile.b[idx - 1] - 1
    return out


def zero_identity_value(profile: OrderProfile) -> Fraction:
    """Value of the alternating sum over all set partitions of the poles.

    This is the formula evaluated on the identically-zero structure; it is
    expected to vanish identically (the zero residue tuple admits no
    differential) and the cancellation is a nontrivial identity worth
    checking, so the raw rational value is returned unasserted.
    """
    terms = _formula_terms(profile, identically_zero_structure(profile.n))
    return sum(value for _, value, _ in terms)


def degenerate_simple_poles(profile: OrderProfile, structure: VanishingStructure) -> tuple[int, ...]:
    """Poles forced to carry a zero residue despite being simple.

    Such configurations admit no differential at all; the closed form
    consistently evaluates to zero on them, but callers may want to warn.
    """
    _check_match(profile, structure)
    out = []
    for i in range(1, profile.n + 1):
        if profile.b[i - 1] == 1 and structure.contains(1 << (i - 1)):
            out.append(i)
    return tuple(out)


def check_monotonicity(
    profile: OrderProfile,
    structure: VanishingStructure,
    refinement: VanishingStructure,
) -> bool:
    """True iff the count strictly drops from a structure to a strictly
    finer one (more vanishing conditions, fewer differentials)."""
    _check_match(profile, structure)
    if not is_refinement(structure, refinement) or structure.closure == refinement.closure:
        raise ValueError("second structure must strictly refine the first")
    return (
        count_closed_form(profile, structure).total
        > count_closed_form(profile, refinement).total
    )


@dataclass(frozen=True, slots=True)
class DegreeFitReport:
    """Outcome of the exact polynomial fit of the count in b_1..b_n."""

    n: int
    b_range: int
    monomials: int
    points_verified: int
    total_degree: int
    top_component_nonzero: bool
    max_variable_degree: int


def _monomials_up_to(n: int, degree: int):
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], degree)
    return out


def check_polynomial_degree(structure: VanishingStructure, b_range: int) -> DegreeFitReport:
    """Fit the count as an exact polynomial of total degree <= n - 2 in the
    pole orders and verify the fit on every remaining grid point.

    Training points are the simplex lattice {b : sum(b_i - 1) <= n - 2},
    which determines the fit uniquely; the rest of the grid [1, b_range]^n
    is held out.  Raises InterpolationMismatch if any held-out evaluation
    disagrees, which would falsify the degree bound.
    """
    if structure.is_identically_zero():
        raise ValueError("the identically-zero structure has no nonzero count")
    n = structure.n
    degree = n - 2
    if b_range < n - 1:
        raise ValueError(f"b_range must be at least {n - 1} to pin the fit")

    def evaluate(point) -> int:
        return _count_total(OrderProfile.from_pole_orders(point), structure)

    monomials = _monomials_up_to(n, degree)
    train = [tuple(e + 1 for e in exps) for exps in monomials]
    matrix = []
    rhs = []
    for point in train:
        row = []
        for exps in monomials:
            v = 1
            for base, e in zip(point, exps):
                v *= base**e
            row.append(Fraction(v))
        matrix.append(row)
        rhs.append(Fraction(evaluate(point)))
    coeffs = solve_linear(matrix, rhs)

    def poly_at(point) -> Fraction:
        total = Fraction(0)
        for c, exps in zip(coeffs, monomials):
            if c:
                v = 1
                for base, e in zip(point, exps):
                    v *= base**e
                total += c * v
        return total

    train_set = set(train)
    verified = 0
    for point in product(range(1, b_range + 1), repeat=n):
        if point in train_set:
            continue
        if poly_at(point) != evaluate(point):
            raise InterpolationMismatch(
                f"degree-{degree} fit missed the count at b = {point}"
            )
        verified += 1

    nonzero = [(exps, c) for exps, c in zip(monomials, coeffs) if c]
    total_degree = max((sum(e) for e, _ in nonzero), default=0)
    return DegreeFitReport(
        n=n,
        b_range=b_range,
        monomials=len(monomials),
        points_verified=verified,
        total_degree=total_degree,
        top_component_nonzero=any(sum(e) == degree for e, _ in nonzero),
        max_variable_degree=max((max(e) for e, _ in nonzero), default=0),
    )
