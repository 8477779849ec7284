import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limsupdim import (
    ExplicitSchedule,
    PowerLawSchedule,
    RadiusTuple,
    RegularityVector,
    closed_form_dimension,
    critical_exponent_series,
    estimate_sum_growth,
    exponent_profile,
    partial_sum,
    partial_sums,
    singular_value,
    svf_profile,
)

from oracles import allocation_oracle, dyadic_block_divergence, powerlaw_phi_term


# ---------------------------------------------------------------------------
# singular_value
# ---------------------------------------------------------------------------


def test_worked_value_two_radii():
    assert singular_value((0.5, 0.25), (1, 1), 1.5) == pytest.approx(0.25, abs=1e-15)


def test_t_zero_is_one():
    assert singular_value((0.3, 0.7, 0.01), (1.2, 0.4, 2.0), 0.0) == 1.0


def test_single_radius_is_power():
    for t in (0.0, 0.3, 1.0):
        assert singular_value((0.5,), (1.0,), t) == pytest.approx(0.5**t, rel=1e-15)


def test_unsorted_input_sorted_internally():
    # largest radius absorbs the exponent first
    assert singular_value((0.25, 0.5), (1, 1), 0.5) == pytest.approx(
        0.5**0.5, rel=1e-12
    )


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        singular_value((0.5, 0.25), (1,), 0.5)


def test_t_out_of_range_raises():
    with pytest.raises(ValueError):
        singular_value((0.5,), (1,), 1.5)
    with pytest.raises(ValueError):
        singular_value((0.5,), (1,), -0.1)


def test_nonpositive_radius_raises():
    with pytest.raises(ValueError):
        singular_value((0.5, 0.0), (1, 1), 0.5)
    with pytest.raises(ValueError):
        RadiusTuple((0.5, -1.0))


def test_radius_above_one_rejected_in_tuple():
    with pytest.raises(ValueError):
        RadiusTuple((1.5,))


@given(
    st.lists(st.floats(0.05, 1.0), min_size=1, max_size=5),
    st.data(),
)
@settings(max_examples=100, deadline=None)
def test_permutation_invariance(radii, data):
    s = data.draw(
        st.lists(st.floats(0.0, 2.0), min_size=len(radii), max_size=len(radii))
    )
    total = math.fsum(s)
    t = data.draw(st.floats(0.0, total)) if total > 0 else 0.0
    perm = data.draw(st.permutations(range(len(radii))))
    base = singular_value(radii, s, t)
    permuted = singular_value([radii[i] for i in perm], [s[i] for i in perm], t)
    assert permuted == pytest.approx(base, rel=1e-12, abs=1e-300)


@given(st.lists(st.floats(0.05, 0.95), min_size=1, max_size=4), st.data())
@settings(max_examples=60, deadline=None)
def test_strictly_decreasing_in_t_when_radii_below_one(radii, data):
    s = [1.0] * len(radii)
    total = float(len(radii))
    t1 = data.draw(st.floats(0.0, total - 0.01))
    t2 = data.draw(st.floats(t1 + 0.01, total))
    assert singular_value(radii, s, t2) < singular_value(radii, s, t1)


def test_truncation_identity():
    # with radii sorted non-increasingly, dropping the last coordinate does
    # not change the value below the reduced total
    radii = (0.8, 0.3, 0.1)
    s = (1.0, 0.7, 0.5)
    for t in np.linspace(0.0, 1.7, 12):
        assert singular_value(radii, s, t) == pytest.approx(
            singular_value(radii[:2], s[:2], t), rel=1e-12
        )


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_allocation_oracle_agreement(data):
    d = data.draw(st.integers(1, 3))
    grid = 1000
    radii = [data.draw(st.floats(0.05, 1.0)) for _ in range(d)]
    s_units = [data.draw(st.integers(1, 1000 if d == 3 else 2000)) for _ in range(d)]
    s = [u / grid for u in s_units]
    t_units = data.draw(st.integers(0, sum(s_units)))
    t = t_units / grid
    expected = allocation_oracle(radii, s, t)
    assert singular_value(radii, s, t) == pytest.approx(expected, rel=1e-6)


# ---------------------------------------------------------------------------
# svf_profile
# ---------------------------------------------------------------------------


def test_profile_breakpoints_worked_example():
    prof = svf_profile((0.5, 0.25), (1, 1))
    ts = [b[0] for b in prof.breakpoints]
    ys = [b[1] for b in prof.breakpoints]
    assert ts == [0.0, 1.0, 2.0]
    assert ys[0] == 0.0
    assert ys[1] == pytest.approx(math.log(0.5), rel=1e-15)
    assert ys[2] == pytest.approx(math.log(0.125), rel=1e-15)


def test_profile_single_piece_d1():
    prof = svf_profile((0.3,), (1.5,))
    assert len(prof.breakpoints) == 2
    slope = (prof.breakpoints[1][1] - prof.breakpoints[0][1]) / 1.5
    assert slope == pytest.approx(math.log(0.3), rel=1e-14)


def test_profile_tie_symmetric():
    a = svf_profile((0.5, 0.5), (1.0, 0.7))
    b = svf_profile((0.5, 0.5), (0.7, 1.0))
    for t in np.linspace(0, 1.7, 9):
        assert a.value(t) == pytest.approx(b.value(t), rel=1e-13)


def test_profile_matches_singular_value_everywhere():
    radii = (0.9, 0.2, 0.35)
    s = (0.8, 1.1, 0.5)
    prof = svf_profile(radii, s)
    for t in np.linspace(0.0, prof.total, 41):
        assert prof.value(float(t)) == pytest.approx(
            singular_value(radii, s, float(t)), rel=1e-12
        )


def test_profile_breakpoint_continuity_within_4_ulp():
    radii = (0.9, 0.2, 0.35)
    s = (0.8, 1.1, 0.5)
    prof = svf_profile(radii, s)
    ts = [b[0] for b in prof.breakpoints]
    ys = [b[1] for b in prof.breakpoints]
    for i in range(1, len(ts)):
        width = ts[i] - ts[i - 1]
        slope = (ys[i] - ys[i - 1]) / width
        from_left = ys[i - 1] + width * slope
        assert abs(from_left - ys[i]) <= 4 * math.ulp(max(abs(ys[i]), 1.0))


def test_profile_slopes_non_increasing():
    # the largest radii load first, so log Phi decays faster and faster
    radii = (0.9, 0.2, 0.35, 0.5)
    s = (0.8, 1.1, 0.5, 0.3)
    prof = svf_profile(radii, s)
    slopes = []
    for (t0, y0), (t1, y1) in zip(prof.breakpoints, prof.breakpoints[1:]):
        if t1 > t0:
            slopes.append((y1 - y0) / (t1 - t0))
    assert all(s2 <= s1 + 1e-12 for s1, s2 in zip(slopes, slopes[1:]))


# ---------------------------------------------------------------------------
# exponent profile and critical exponents
# ---------------------------------------------------------------------------


def test_exponent_profile_worked_example():
    prof = exponent_profile(PowerLawSchedule((2, 3)), (1, 1))
    assert prof.value(0.0) == 0.0
    assert prof.value(0.5) == pytest.approx(1.0)
    assert prof.value(1.0) == pytest.approx(2.0)
    assert prof.value(1.5) == pytest.approx(2.0 + 3.0 * 0.5)
    assert prof.slopes == (2.0, 3.0)


def test_exponent_profile_identity_d1():
    prof = exponent_profile(PowerLawSchedule((1,)), (1,))
    for t in (0.0, 0.25, 1.0):
        assert prof.value(t) == pytest.approx(t)


def test_exponent_profile_permutation_invariant():
    a = exponent_profile(PowerLawSchedule((3, 2)), (0.5, 1.5))
    b = exponent_profile(PowerLawSchedule((2, 3)), (1.5, 0.5))
    for t in np.linspace(0, 2.0, 9):
        assert a.value(float(t)) == pytest.approx(b.value(float(t)), rel=1e-14)


def test_exponent_profile_convex():
    prof = exponent_profile(PowerLawSchedule((0.7, 2.5, 1.1)), (0.4, 1.0, 0.9))
    assert all(s2 >= s1 for s1, s2 in zip(prof.slopes, prof.slopes[1:]))


def test_exponent_profile_rejects_bad_alpha():
    with pytest.raises(ValueError):
        PowerLawSchedule((2.0, -1.0))
    with pytest.raises(ValueError):
        PowerLawSchedule((0.0,))


def test_critical_exponent_worked_values():
    assert critical_exponent_series(PowerLawSchedule((2, 3)), (1, 1)) == pytest.approx(
        0.5, abs=1e-8
    )
    assert critical_exponent_series(PowerLawSchedule((1, 2)), (1, 1)) == pytest.approx(
        1.0, abs=1e-8
    )


def test_critical_exponent_constant_tail_gives_total():
    sched = ExplicitSchedule((RadiusTuple((0.5, 0.5)),), tail="constant")
    assert critical_exponent_series(sched, (1, 1)) == 2.0


def test_critical_exponent_no_tail_raises():
    sched = ExplicitSchedule((RadiusTuple((0.5, 0.5)),))
    with pytest.raises(ValueError):
        critical_exponent_series(sched, (1, 1))


def test_critical_exponent_power_tail_uses_tail():
    sched = ExplicitSchedule(
        (RadiusTuple((0.9, 0.9)),), tail=PowerLawSchedule((2, 3))
    )
    assert critical_exponent_series(sched, (1, 1)) == pytest.approx(0.5, abs=1e-8)


def test_series_oracle_blocks():
    # dyadic-block growth of raw partial sums locates t* between probes
    term = powerlaw_phi_term((2, 3), (1, 1))
    assert dyadic_block_divergence(term, 0.45)
    assert not dyadic_block_divergence(term, 0.55)


def test_closed_form_worked_values():
    assert closed_form_dimension(PowerLawSchedule((2, 3)), (1, 1)) == pytest.approx(0.5)
    assert closed_form_dimension(PowerLawSchedule((1, 2)), (1, 1)) == pytest.approx(1.0)


def test_closed_form_d1_is_min():
    for a in (0.5, 1.0, 2.0, 4.0):
        for sigma in (0.4, 1.0, 1.7):
            expected = min(1.0 / a, sigma)
            assert closed_form_dimension(PowerLawSchedule((a,)), (sigma,)) == pytest.approx(
                expected
            )


def test_closed_form_unsorted_alphas_relabelled():
    assert closed_form_dimension(PowerLawSchedule((3, 2)), (1, 1)) == pytest.approx(
        closed_form_dimension(PowerLawSchedule((2, 3)), (1, 1))
    )


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_methods_agree_on_random_schedules(data):
    d = data.draw(st.integers(1, 4))
    alphas = [data.draw(st.floats(0.5, 5.0)) for _ in range(d)]
    s = [data.draw(st.floats(0.01, 2.0)) for _ in range(d)]
    cf = closed_form_dimension(PowerLawSchedule(tuple(alphas)), s)
    series = critical_exponent_series(PowerLawSchedule(tuple(alphas)), s, tol=1e-10)
    assert series == pytest.approx(cf, abs=1e-8)


def test_prefactors_do_not_move_critical_exponent():
    base = critical_exponent_series(PowerLawSchedule((2, 3)), (1, 1))
    shifted = critical_exponent_series(
        PowerLawSchedule((2, 3), (0.25, 3.0)), (1, 1)
    )
    assert shifted == pytest.approx(base, abs=1e-9)


def test_n_min_reflects_prefactors():
    sched = PowerLawSchedule((1.0, 2.0), (3.0, 1.0))
    assert sched.n_min == 3
    with pytest.raises(ValueError):
        sched.radius_tuple(2)
    assert max(sched.radius_tuple(3).values) <= 1.0


# ---------------------------------------------------------------------------
# partial sums and growth
# ---------------------------------------------------------------------------


def test_partial_sum_t_zero_counts_terms():
    assert partial_sum(PowerLawSchedule((2, 3)), (1, 1), 0.0, 5) == 5.0


def test_partial_sum_harmonic():
    got = partial_sum(PowerLawSchedule((1,)), (1,), 1.0, 4)
    assert got == pytest.approx(1 + 0.5 + 1 / 3 + 0.25, rel=1e-15)


def test_partial_sum_explicit_single_tuple():
    sched = ExplicitSchedule((RadiusTuple((0.5, 0.25)),))
    assert partial_sum(sched, (1, 1), 1.5, 1) == pytest.approx(0.25, rel=1e-14)


def test_partial_sum_beyond_explicit_requires_tail():
    sched = ExplicitSchedule((RadiusTuple((0.5, 0.25)),))
    with pytest.raises(ValueError):
        partial_sum(sched, (1, 1), 1.5, 2)


def test_partial_sums_checkpoints_match_single_calls():
    sched = PowerLawSchedule((2, 3))
    many = partial_sums(sched, (1, 1), 0.7, [10, 100, 1000])
    singles = [partial_sum(sched, (1, 1), 0.7, N) for N in (10, 100, 1000)]
    assert many == singles  # bit-identical: same terms, same exact summation


def test_growth_slope_divergent():
    slope = estimate_sum_growth(
        PowerLawSchedule((2, 3)), (1, 1), 0.25, (10**3, 10**4, 10**5)
    )
    assert slope == pytest.approx(0.5, abs=0.05)


def test_growth_slope_convergent():
    slope = estimate_sum_growth(
        PowerLawSchedule((2, 3)), (1, 1), 1.0, (10**3, 10**4, 10**5)
    )
    assert abs(slope) <= 0.05


def test_growth_slope_at_zero_is_one():
    slope = estimate_sum_growth(
        PowerLawSchedule((2, 3)), (1, 1), 0.0, (10**3, 10**4, 10**5)
    )
    assert slope == pytest.approx(1.0, abs=1e-9)


def test_growth_requires_increasing_blocks():
    with pytest.raises(ValueError):
        estimate_sum_growth(PowerLawSchedule((2,)), (1,), 0.1, (100, 100, 200))
    with pytest.raises(ValueError):
        estimate_sum_growth(PowerLawSchedule((2,)), (1,), 0.1, (100, 200))


def test_regularity_vector_validation():
    with pytest.raises(ValueError):
        RegularityVector((-0.1,))
    assert RegularityVector((0.5, 1.5)).total() == 2.0
