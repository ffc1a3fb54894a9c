import pytest
from hypothesis import given, settings, strategies as st

from isoresidual.counting import (
    check_monotonicity,
    check_polynomial_degree,
    count_closed_form,
    count_general,
    count_one_vanishing,
    count_two_nonzero,
    degenerate_simple_poles,
    zero_identity_value,
)
from isoresidual.levelgraph import count_recursive
from isoresidual.profiles import (
    OrderProfile,
    full_mask,
    identically_zero_structure,
    structure_from_generators,
    trivial_structure,
)

MU_3 = OrderProfile(2, (1, 1, 2))
MU_4 = OrderProfile(4, (2, 2, 1, 1))


class TestClosedForm:
    def test_generic_three_poles(self):
        # ground truth from elimination: p^2 + 2p - 1 has two simple roots
        assert count_closed_form(MU_3, trivial_structure(3)).total == 2

    def test_one_vanishing_three_poles(self):
        # ground truth from elimination: the single root p = 1/2
        structure = structure_from_generators(3, [0b100])
        assert count_closed_form(MU_3, structure).total == 1

    def test_one_vanishing_four_poles(self):
        structure = structure_from_generators(4, [0b0011])
        breakdown = count_closed_form(MU_4, structure)
        assert breakdown.total == 9
        assert [value for _, value, _ in breakdown.per_s] == [12, -3]

    def test_rank_two_four_poles(self):
        structure = structure_from_generators(4, [0b0011, 0b0101])
        breakdown = count_closed_form(MU_4, structure)
        assert breakdown.total == 5
        assert [value for _, value, _ in breakdown.per_s] == [12, -7]

    def test_identically_zero_structure(self):
        assert count_closed_form(MU_4, identically_zero_structure(4)).total == 0

    def test_breakdown_consistency(self):
        breakdown = count_closed_form(MU_4, identically_zero_structure(4))
        assert sum(value for _, value, _ in breakdown.per_s) == breakdown.total
        assert breakdown.max_parts == max(s for s, _, _ in breakdown.per_s)

    def test_first_term_is_general_count(self):
        for profile in (MU_3, MU_4, OrderProfile.from_pole_orders((3, 2, 2, 1, 1))):
            breakdown = count_closed_form(
                profile, identically_zero_structure(profile.n)
            )
            assert breakdown.per_s[0][1] == count_general(profile)

    def test_pole_count_mismatch(self):
        with pytest.raises(ValueError):
            count_closed_form(MU_3, trivial_structure(4))


class TestSpecialCases:
    def test_count_general(self):
        assert count_general(MU_3) == 2
        assert count_general(OrderProfile(1, (1, 1, 1))) == 1

    @pytest.mark.parametrize("n", range(2, 8))
    def test_all_simple_poles_factorial(self, n):
        profile = OrderProfile.from_pole_orders((1,) * n)
        expected = 1
        for k in range(2, n - 1):
            expected *= k
        assert count_general(profile) == expected

    def test_one_vanishing_formula(self):
        assert count_one_vanishing(MU_3, 0b100) == 1
        assert count_one_vanishing(MU_4, 0b0011) == 9

    def test_one_vanishing_complement_invariance(self):
        for subset in range(1, full_mask(4)):
            assert count_one_vanishing(MU_4, subset) == count_one_vanishing(
                MU_4, subset ^ full_mask(4)
            )

    def test_two_nonzero(self):
        assert count_two_nonzero(MU_4, 3, 4) == 2
        assert count_two_nonzero(MU_3, 1, 2) == 1

    def test_two_nonzero_simple_pole_elsewhere(self):
        profile = OrderProfile.from_pole_orders((1, 2, 2))
        assert count_two_nonzero(profile, 2, 3) == 0

    def test_two_nonzero_validation(self):
        with pytest.raises(ValueError):
            count_two_nonzero(MU_4, 2, 2)


class TestZeroIdentity:
    def test_three_simple_poles_term_by_term(self):
        profile = OrderProfile(1, (1, 1, 1))
        assert zero_identity_value(profile) == 0
        breakdown = count_closed_form(profile, identically_zero_structure(3))
        assert [value for _, value, _ in breakdown.per_s] == [1, -3, 2]

    def test_two_poles(self):
        profile = OrderProfile(0, (1, 1))
        assert zero_identity_value(profile) == 0
        breakdown = count_closed_form(profile, identically_zero_structure(2))
        assert [value for _, value, _ in breakdown.per_s] == [1, -1]

    def test_mixed_orders(self):
        assert zero_identity_value(MU_4) == 0


class TestDegenerateSimplePoles:
    def test_reports_forced_zero_at_simple_pole(self):
        profile = OrderProfile(1, (1, 1, 1))
        structure = structure_from_generators(3, [0b001])
        assert degenerate_simple_poles(profile, structure) == (1,)
        assert count_closed_form(profile, structure).total == 0

    def test_silent_for_higher_order(self):
        structure = structure_from_generators(3, [0b100])
        assert degenerate_simple_poles(MU_3, structure) == ()


class TestMonotonicity:
    def test_chain(self):
        trivial = trivial_structure(4)
        one = structure_from_generators(4, [0b0011])
        two = structure_from_generators(4, [0b0011, 0b0101])
        zero = identically_zero_structure(4)
        assert check_monotonicity(MU_4, trivial, one)
        assert check_monotonicity(MU_4, one, two)
        assert check_monotonicity(MU_4, two, zero)

    def test_rejects_non_refinement(self):
        with pytest.raises(ValueError):
            check_monotonicity(
                MU_4,
                structure_from_generators(4, [0b0011]),
                structure_from_generators(4, [0b0101]),
            )

    def test_rejects_equal_structures(self):
        with pytest.raises(ValueError):
            check_monotonicity(MU_4, trivial_structure(4), trivial_structure(4))


class TestPolynomialDegree:
    def test_trivial_three_poles(self):
        report = check_polynomial_degree(trivial_structure(3), 3)
        assert report.total_degree == 1
        assert report.top_component_nonzero
        assert report.points_verified == 3**3 - 4

    def test_one_vanishing_three_poles(self):
        report = check_polynomial_degree(structure_from_generators(3, [0b100]), 3)
        assert report.total_degree == 1
        assert report.top_component_nonzero

    def test_four_poles_rank_two(self):
        structure = structure_from_generators(4, [0b0011, 0b0101])
        report = check_polynomial_degree(structure, 3)
        assert report.total_degree == 2
        assert report.top_component_nonzero
        assert report.max_variable_degree <= 2

    def test_rejects_identically_zero(self):
        with pytest.raises(ValueError):
            check_polynomial_degree(identically_zero_structure(3), 3)

    def test_rejects_small_grid(self):
        with pytest.raises(ValueError):
            check_polynomial_degree(trivial_structure(5), 3)


def permute_mask(mask, perm):
    out = 0
    for i, target in enumerate(perm):
        if (mask >> i) & 1:
            out |= 1 << target
    return out


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_relabeling_equivariance(data):
    n = data.draw(st.integers(2, 6))
    b = tuple(data.draw(st.lists(st.integers(1, 4), min_size=n, max_size=n)))
    gens = data.draw(st.lists(st.integers(1, full_mask(n) - 1), max_size=3))
    perm = data.draw(st.permutations(range(n)))

    profile = OrderProfile.from_pole_orders(b)
    structure = structure_from_generators(n, gens)

    permuted_b = [0] * n
    for i, target in enumerate(perm):
        permuted_b[target] = b[i]
    permuted_profile = OrderProfile.from_pole_orders(permuted_b)
    permuted_structure = structure_from_generators(
        n, [permute_mask(g, perm) for g in gens]
    )

    assert (
        count_closed_form(profile, structure).total
        == count_closed_form(permuted_profile, permuted_structure).total
    )


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_recursion_relabeling_equivariance(data):
    n = data.draw(st.integers(2, 5))
    b = tuple(data.draw(st.lists(st.integers(1, 3), min_size=n, max_size=n)))
    gens = data.draw(st.lists(st.integers(1, full_mask(n) - 1), max_size=2))
    perm = data.draw(st.permutations(range(n)))

    profile = OrderProfile.from_pole_orders(b)
    structure = structure_from_generators(n, gens)
    permuted_b = [0] * n
    for i, target in enumerate(perm):
        permuted_b[target] = b[i]
    permuted = structure_from_generators(n, [permute_mask(g, perm) for g in gens])

    assert count_recursive(profile, structure) == count_recursive(
        OrderProfile.from_pole_orders(permuted_b), permuted
    )
