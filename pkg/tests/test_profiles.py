from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isoresidual.exactarith import GaussianRational
from isoresidual.profiles import (
    MAX_POLES,
    OrderProfile,
    ResidueTuple,
    all_vanishing_structures,
    canonical_mask,
    full_mask,
    identically_zero_structure,
    indices_from_mask,
    is_refinement,
    mask_from_indices,
    realize_residues,
    structure_from_generators,
    structure_kernel,
    trivial_structure,
    vanishing_subsets,
)


def gr(x):
    return GaussianRational(Fraction(x))


def residues(*values):
    return ResidueTuple(tuple(gr(v) for v in values))


class TestOrderProfile:
    def test_basic(self):
        profile = OrderProfile(4, (2, 2, 1, 1))
        assert profile.n == 4
        assert profile.order_sum(0b0011) == 4
        assert profile.order_sum(0b1100) == 2

    def test_from_pole_orders(self):
        assert OrderProfile.from_pole_orders((1, 1, 2)) == OrderProfile(2, (1, 1, 2))

    def test_validation(self):
        with pytest.raises(ValueError):
            OrderProfile(3, (1, 1, 2))  # a must be sum(b) - 2
        with pytest.raises(ValueError):
            OrderProfile(0, (2,))  # at least two poles
        with pytest.raises(ValueError):
            OrderProfile(0, (2, 0))  # positive orders


class TestResidueTuple:
    def test_sum_must_vanish(self):
        with pytest.raises(ValueError):
            residues(1, 1, 1)

    def test_subset_sum(self):
        rho = residues(1, -1, 2, -2)
        assert rho.subset_sum(0b0011) == gr(0)
        assert rho.subset_sum(0b0101) == gr(3)

    def test_is_zero(self):
        assert residues(0, 0).is_zero()
        assert not residues(1, -1).is_zero()


class TestMasks:
    def test_round_trip(self):
        assert indices_from_mask(mask_from_indices((1, 3), 4)) == (1, 3)

    def test_canonical_contains_pole_one(self):
        assert canonical_mask(0b0011, 4) == 0b0011
        assert canonical_mask(0b1100, 4) == 0b0011
        with pytest.raises(ValueError):
            canonical_mask(0, 4)
        with pytest.raises(ValueError):
            canonical_mask(full_mask(4), 4)


class TestVanishingSubsets:
    def test_one_pair(self):
        structure = vanishing_subsets(residues(1, -1, 2, -2))
        assert structure.closure == frozenset({0b0011})
        assert structure.rank == 1

    def test_two_pairs(self):
        structure = vanishing_subsets(residues(1, -1, 1, -1))
        assert structure.closure == frozenset({0b0011, 0b1001})
        assert structure.rank == 2

    def test_zero_tuple(self):
        structure = vanishing_subsets(residues(0, 0, 0))
        assert structure.closure == frozenset({0b001, 0b011, 0b101})
        assert structure.rank == 2
        assert structure.is_identically_zero()

    def test_gaussian_values(self):
        # residues (i, -i, 0): the pair {1,2} and the singleton {3} are
        # complements, hence one and the same condition
        rho = ResidueTuple((GaussianRational(0, Fraction(1)),
                            GaussianRational(0, Fraction(-1)), gr(0)))
        structure = vanishing_subsets(rho)
        assert structure.contains(0b100) and structure.contains(0b011)
        assert structure.rank == 1


class TestStructureFromGenerators:
    def test_single_pair(self):
        structure = structure_from_generators(4, [0b0011])
        assert structure.closure == frozenset({0b0011})

    def test_span_does_not_include_third_pairing(self):
        # {1,4}/{2,3} is not a rational combination of {1,2}, {1,3} and the
        # total sum; solving the 3-variable system by hand shows no solution.
        structure = structure_from_generators(4, [0b0011, 0b0101])
        assert structure.closure == frozenset({0b0011, 0b0101})
        assert structure.rank == 2

    def test_singletons_force_zero_tuple(self):
        structure = structure_from_generators(3, [0b001, 0b010])
        assert structure.rank == 2
        assert structure.closure == frozenset({0b001, 0b011, 0b101})

    def test_complement_representative_accepted(self):
        assert structure_from_generators(4, [0b1100]) == structure_from_generators(
            4, [0b0011]
        )

    def test_pole_count_bounds(self):
        with pytest.raises(ValueError):
            structure_from_generators(MAX_POLES + 1, [0b1])
        with pytest.raises(ValueError):
            structure_from_generators(1, [])


def all_structures_up_to(n_max):
    for n in range(2, n_max + 1):
        yield from all_vanishing_structures(n)


class TestClosureLaws:
    def test_closure_idempotence(self):
        for structure in all_structures_up_to(5):
            again = structure_from_generators(structure.n, structure.closure)
            assert again == structure

    def test_complement_stability(self):
        for structure in all_structures_up_to(5):
            full = full_mask(structure.n)
            for mask in range(1, full):
                assert structure.contains(mask) == structure.contains(mask ^ full)

    def test_rank_counts_independent_conditions(self):
        for structure in all_structures_up_to(5):
            kernel = structure_kernel(structure)
            assert structure.rank == structure.n - 1 - len(kernel)

    def test_generators_sorted_and_minimal(self):
        for structure in all_structures_up_to(5):
            keys = [(g.bit_count(), g) for g in structure.generators]
            assert keys == sorted(keys)
            assert structure.rank == len(structure.generators)


class TestRealizeResidues:
    def test_round_trip_all_structures(self):
        for structure in all_structures_up_to(5):
            if structure.is_identically_zero():
                continue
            for seed in (0, 1, 2):
                rho = realize_residues(structure, seed)
                assert vanishing_subsets(rho).closure == structure.closure

    def test_deterministic(self):
        structure = structure_from_generators(4, [0b0011])
        assert realize_residues(structure, 7) == realize_residues(structure, 7)

    def test_identically_zero_gives_zero_tuple(self):
        rho = realize_residues(identically_zero_structure(4), 0)
        assert rho.is_zero()

    def test_two_pair_pattern(self):
        # conditions r1+r2 = 0 and r1+r3 = 0 with total sum force
        # (t, -t, -t, t)
        structure = structure_from_generators(4, [0b0011, 0b0101])
        rho = realize_residues(structure, 0)
        r = rho.values
        assert r[1] == -r[0] and r[2] == -r[0] and r[3] == r[0]
        assert r[0]

    def test_trivial_structure_generic(self):
        rho = realize_residues(trivial_structure(3), 5)
        assert vanishing_subsets(rho).rank == 0


class TestRefinement:
    def test_trivial_refines_everything(self):
        for structure in all_vanishing_structures(4):
            assert is_refinement(trivial_structure(4), structure)

    def test_strict_containment(self):
        small = structure_from_generators(4, [0b0011])
        big = structure_from_generators(4, [0b0011, 0b0101])
        assert is_refinement(small, big)
        assert not is_refinement(big, small)

    def test_incomparable(self):
        left = structure_from_generators(4, [0b0011])
        right = structure_from_generators(4, [0b0101])
        assert not is_refinement(left, right)
        assert not is_refinement(right, left)

    def test_pole_count_mismatch(self):
        with pytest.raises(ValueError):
            is_refinement(trivial_structure(3), trivial_structure(4))


class TestStructureEnumeration:
    def test_counts(self):
        # n=3 by hand: the trivial structure, one structure per canonical
        # subset ({1}, {1,2}, {1,3}), and the identically-zero structure.
        assert len(all_vanishing_structures(2)) == 2
        assert len(all_vanishing_structures(3)) == 5
        assert len(all_vanishing_structures(4)) == 18

    def test_all_distinct_and_closed(self):
        structures = all_vanishing_structures(4)
        assert len({s.closure for s in structures}) == len(structures)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_vanishing_structure_matches_realization(data):
    n = data.draw(st.integers(2, 5))
    gens = data.draw(
        st.lists(st.integers(1, full_mask(n) - 1), min_size=0, max_size=3)
    )
    structure = structure_from_generators(n, gens)
    if structure.is_identically_zero():
        return
    rho = realize_residues(structure, data.draw(st.integers(0, 100)))
    for mask in range(1, full_mask(n)):
        expected = structure.contains(mask)
        assert (rho.subset_sum(mask) == gr(0)) == expected
