"""Boundary recursion over two-level degenerations, as a cross-check.

A two-level graph is a partition of the poles into top components
X_1..X_m (m >= 2); every marked pole sits on top, single poles forming
semistable bubbles, and the bottom component carries the zero plus one node
per top component.  Imposing the vanishing conditions of a structure one
generator at a time, the count drops by a boundary correction at each step:

    N(V_k) = N(V_{k-1}) - sum_{graphs} twist * N_bottom * prod N_top

and the recursion's final value must agree with the closed form, which is
the point of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._linalg import integer_row_basis, kernel_contains, kernel_reduce, mask_dot
from .counting import _count_total
from .errors import NonIntegralResult
from .exactarith import GaussianRational
from .partitions import iter_set_partitions
from .profiles import (
    Mask,
    OrderProfile,
    ResidueTuple,
    VanishingStructure,
    canonical_mask,
    full_mask,
    identically_zero_structure,
    indices_from_mask,
    structure_from_generators,
    structure_kernel,
    trivial_structure,
    vanishing_subsets,
)

__all__ = [
    "InducedStructures",
    "TwoLevelGraph",
    "twist",
    "boundary_graphs",
    "induced_structures",
    "count_recursive",
]


@dataclass(frozen=True, slots=True)
class TwoLevelGraph:
    """Partition of the poles into top components, ordered by smallest pole."""

    n: int
    blocks: tuple[Mask, ...]

    def __post_init__(self):
        union = 0
        for block in self.blocks:
            if union & block:
                raise ValueError("blocks must be disjoint")
            union |= block
        if union != full_mask(self.n):
            raise ValueError("blocks must cover all poles")
        if len(self.blocks) < 2:
            raise ValueError("need at least two top components")
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b & -b):
            raise ValueError("blocks must be ordered by smallest pole")

    @property
    def m(self) -> int:
        return len(self.blocks)


def twist(graph: TwoLevelGraph, profile: OrderProfile) -> int:
    """Product over top components of (total pole order - 1), the number of
    horizontal prongs at each node; zero iff some component is one simple
    pole."""
    if profile.n != graph.n:
        raise ValueError("profile and graph disagree on the pole count")
    out = 1
    for block in graph.blocks:
        out *= profile.order_sum(block) - 1
    return out


@lru_cache(maxsize=None)
def boundary_graphs(previous: VanishingStructure, new_subset: Mask) -> tuple[TwoLevelGraph, ...]:
    """Two-level graphs whose component sums, together with the previous
    structure and the total sum, generate the newly imposed condition.

    The new subset must be independent of the previous structure.
    """
    n = previous.n
    new_subset = canonical_mask(new_subset, n)
    if new_subset in previous.closure:
        raise ValueError("the new condition must not already hold")
    base = structure_kernel(previous)
    out = []
    for blocks in iter_set_partitions(full_mask(n)):
        if len(blocks) < 2:
            continue
        kernel = base
        for block in blocks:
            kernel = kernel_reduce(kernel, block)
        if kernel_contains(kernel, new_subset):
            out.append(TwoLevelGraph(n, blocks))
    return tuple(out)


def _local_structure(bits: tuple[int, ...], member) -> VanishingStructure:
    """Structure on a component, re-indexed to local labels; ``member``
    decides global-mask membership.  Components have at least two poles."""
    size = len(bits)
    qualifying = []
    for local in range(1, full_mask(size), 2):  # canonical: contains local 1
        gmask = 0
        rest = local
        while rest:
            low = rest & -rest
            gmask |= 1 << bits[low.bit_length() - 1]
            rest ^= low
        if member(gmask):
            qualifying.append(local)
    return structure_from_generators(size, qualifying)


@dataclass(frozen=True, slots=True)
class InducedStructures:
    """What a boundary stratum imposes on its pieces.

    tops holds one structure per component (None for single-pole bubbles,
    which carry no residue moduli); bottom is the vanishing structure of a
    generic residue tuple at the nodes; bottom_dim is the linear dimension
    of the node residue space.  A stratum is rigid, and contributes to the
    recursion, exactly when bottom_dim == 1 (node residues determined up to
    scale); bottom_dim == 0 means the nodes are forced to the zero tuple.
    """

    tops: tuple
    bottom: VanishingStructure
    bottom_dim: int


@lru_cache(maxsize=None)
def induced_structures(
    graph: TwoLevelGraph,
    previous: VanishingStructure,
    include_block_sums: bool = True,
) -> InducedStructures:
    """Vanishing structures inherited by the top components and the bottom.

    Top components inherit every subset condition that holds identically on
    the boundary stratum; by default that span includes the component sums
    themselves, which the Residue Theorem forces on each component
    (include_block_sums=False keeps only conditions generated by the
    previous structure, a strictly weaker reading kept for comparison).

    The node residues at the bottom range over the image of the admissible
    residue tuples under the per-component summation map.  The bottom
    structure reported is the vanishing structure of a generic point of
    that image; when the image is a line the generic point is the line's
    direction itself, so accidental vanishings of the direction count.
    """
    if graph.n != previous.n:
        raise ValueError("graph and structure disagree on the pole count")
    base = structure_kernel(previous)
    top_kernel = base
    if include_block_sums:
        for block in graph.blocks:
            top_kernel = kernel_reduce(top_kernel, block)

    tops = []
    for block in graph.blocks:
        if block.bit_count() == 1:
            tops.append(None)
            continue
        bits = tuple(i - 1 for i in indices_from_mask(block))
        tops.append(_local_structure(bits, lambda g: kernel_contains(top_kernel, g)))

    m = graph.m
    images = [tuple(mask_dot(row, block) for block in graph.blocks) for row in base]
    image_basis = integer_row_basis(images)
    bottom_dim = len(image_basis)
    if bottom_dim == 0:
        bottom = identically_zero_structure(m)
    elif bottom_dim == 1:
        direction = ResidueTuple(
            tuple(GaussianRational(Fraction(x)) for x in image_basis[0])
        )
        bottom = vanishing_subsets(direction)
    else:

        def node_member(node_mask: Mask) -> bool:
            union = 0
            rest = node_mask
            while rest:
                low = rest & -rest
                union |= graph.blocks[low.bit_length() - 1]
                rest ^= low
            return kernel_contains(base, union)

        qualifying = [t for t in range(1, full_mask(m), 2) if node_member(t)]
        bottom = structure_from_generators(m, qualifying)
    return InducedStructures(tuple(tops), bottom, bottom_dim)


def _block_profile(profile: OrderProfile, block: Mask) -> OrderProfile:
    orders = tuple(profile.b[i - 1] for i in indices_from_mask(block))
    return OrderProfile.from_pole_orders(orders)


def count_recursive(
    profile: OrderProfile,
    structure: VanishingStructure,
    *,
    include_block_sums: bool = True,
    generator_order=None,
    trace: list | None = None,
) -> int:
    """Recount by peeling off the structure's generators one at a time and
    subtracting the boundary corrections; must equal the closed form.

    A graph contributes only when its bottom component is rigid: the node
    residue space is a line (bottom_dim == 1), which pins the node residues
    up to scale.  Each single-pole component contributes the factor
    (order - 1) * 1/(order - 1); the cancelled factor 1 is used directly so
    that order-1 poles never reach the zero denominator, and with it every
    term is a plain integer.

    generator_order overrides the canonical generating sequence (it must
    generate the same structure); trace, if given, collects a per-level
    term table of JSON-ready dicts.
    """
    if profile.n != structure.n:
        raise ValueError("profile and structure disagree on the pole count")
    n = profile.n
    if structure.is_identically_zero():
        # The zero residue tuple admits no differential.
        return 0
    if generator_order is None:
        generators = structure.generators
    else:
        generators = tuple(canonical_mask(g, n) for g in generator_order)
        if structure_from_generators(n, generators).closure != structure.closure:
            raise ValueError("generator_order does not generate the structure")

    total = _count_total(profile, trivial_structure(n))
    previous = trivial_structure(n)
    for level, new_subset in enumerate(generators, start=1):
        level_entry = {
            "level": level,
            "generator": list(indices_from_mask(new_subset)),
            "terms": [],
        }
        correction = 0
        for graph in boundary_graphs(previous, new_subset):
            induced = induced_structures(graph, previous, include_block_sums)
            entry = {
                "blocks": [list(indices_from_mask(b)) for b in graph.blocks],
                "twist": str(twist(graph, profile)),
                "bottom_dim": induced.bottom_dim,
            }
            if induced.bottom_dim != 1:
                # dim 0: the node residues are forced to zero (no such
                # differential); dim >= 2: the bottom is not rigid.  Either
                # way the stratum contributes nothing.
                if trace is not None:
                    entry["skipped"] = "bottom-not-rigid"
                    level_entry["terms"].append(entry)
                continue
            bottom_profile = OrderProfile.from_pole_orders(
                tuple(profile.order_sum(b) for b in graph.blocks)
            )
            term = _count_total(bottom_profile, induced.bottom)
            factors = [str(term)]
            for block, top in zip(graph.blocks, induced.tops):
                if term == 0:
                    break
                if top is None:
                    # Semistable bubble: (order-1) * falling_f(order-2, 1) == 1.
                    continue
                block_total = profile.order_sum(block)
                top_count = _count_total(_block_profile(profile, block), top)
                term *= (block_total - 1) * top_count
                factors.append(f"{block_total - 1}*{top_count}")
            correction += term
            if trace is not None:
                entry["factors"] = factors
                entry["term"] = str(term)
                if include_block_sums:
                    alt = induced_structures(graph, previous, False)
                    entry["top_span_readings_differ"] = alt.tops != induced.tops
                level_entry["terms"].append(entry)
        total -= correction
        previous = structure_from_generators(n, generators[:level])
        if trace is not None:
            level_entry["running_total"] = str(total)
            trace.append(level_entry)
    if not isinstance(total, int):
        raise NonIntegralResult(f"recursive count {total} is not an integer")
    return total
