import dataclasses
import math
import random

import pytest
from hypothesis import given, strategies as st

from ternrep import (
    Eligibility,
    InternalError,
    PROFILES,
    ResourceCapError,
    TernaryForm,
    Witness,
    build_witness,
    eligibility,
    evaluate,
    factorize,
    find_q,
    is_prime,
    jacobi,
    select_case,
    solve_bh,
    solve_t,
    verify_witness,
    witness_problems,
)
from ternrep.pipeline import SMALL_CORE, composed_values, enumerate_point

T1A = PROFILES["T1A"]
T1B = PROFILES["T1B"]
T3A = PROFILES["T3A"]


def constructive_witnesses(form, lo, hi):
    for m in range(lo, hi):
        w = build_witness(form, m)
        if isinstance(w, Witness) and w.case_id != SMALL_CORE:
            yield w


def construction_frame(w):
    """Profile and core governing the stored construction fields."""
    if w.case_id == "T2D":
        return select_case(TernaryForm.D122, w.core // 2), w.core // 2
    return PROFILES[w.case_id], w.core


class TestFindQ:
    def test_pinned_values(self):
        assert find_q(T1A, 3) == 73
        assert find_q(T1A, 1) == 17
        assert find_q(T3A, 5) == 29

    def test_smallest_in_class_with_character(self):
        # independent re-derivation of the q = 73 pin: walk the class by hand
        candidates = [q for q in range(4, 74) if q % 8 == 1]
        good = [
            q for q in candidates
            if is_prime(q) and jacobi(-2 * q, 3) == 1
        ]
        assert good == [73]

    def test_character_skips_candidates(self):
        # 17 = 1 (mod 8) is prime but jacobi(-17, 5) = -1, so core 5 under
        # the odd-core x2+2y2+2z2 profile must skip it
        assert jacobi(-17, 5) == -1
        assert find_q(T1B, 5) == 41

    def test_postconditions_sample(self):
        for profile, core in [
            (T1A, 11), (T1B, 13), (PROFILES["T1C"], 6),
            (PROFILES["T1D"], 10), (PROFILES["T1E"], 14),
            (PROFILES["T2A"], 19), (PROFILES["T2B"], 23),
            (PROFILES["T2C"], 13), (T3A, 13), (PROFILES["T3B"], 17),
        ]:
            q = find_q(profile, core)
            r, modulus = profile.q_residue
            assert is_prime(q)
            assert q > core
            assert q % modulus == r
            odd = profile.n0(core) if profile.core_parity == "even" else core
            for p, _ in factorize(odd):
                assert jacobi(-profile.char_factor * q, p) == 1

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            find_q(T1A, 3, max_candidates=1)

    def test_delegating_profile_has_no_q(self):
        with pytest.raises(InternalError):
            find_q(PROFILES["T2D"], 6)


class TestSolveT:
    def test_pinned_values(self):
        assert solve_t(T1A, 3, 73) == 1
        assert solve_t(T1A, 1, 73) == 0
        assert solve_t(T1B, 1, 17) == 0

    def test_congruence_holds(self):
        for profile, core in [(T1A, 11), (T1B, 13), (PROFILES["T2C"], 29),
                              (T3A, 13), (PROFILES["T3B"], 17)]:
            q = find_q(profile, core)
            modulus = profile.target(core)
            t = solve_t(profile, modulus, q)
            assert 0 <= t < modulus
            den = profile.t_den_factor * q
            assert (t * t * den + 1) % modulus == 0

    def test_unsolvable_is_internal(self):
        # q = 17 fails the character condition at p = 5, so the congruence
        # t^2 = -1/(4q) (mod 5) has no root
        with pytest.raises(InternalError):
            solve_t(T1B, 5, 17)


class TestSolveBH:
    def test_pinned_values(self):
        assert solve_bh(T1A, 3, 73) == (17, 2)
        assert solve_bh(T1A, 1, 17) == (13, 5)

    def test_parity_and_identity(self):
        for profile, core in [
            (T1A, 11), (T1B, 13), (PROFILES["T1C"], 6), (PROFILES["T2A"], 19),
            (PROFILES["T2C"], 13), (T3A, 13), (PROFILES["T3B"], 17),
        ]:
            n0 = profile.n0(core)
            q = find_q(profile, core)
            b, h = solve_bh(profile, n0, q)
            assert 0 <= b < 2 * q
            assert b * b + profile.gamma * n0 == profile.d_factor * q * h
            if profile.b_parity == "odd":
                assert b % 2 == 1
            if profile.b_parity == "even":
                assert b % 2 == 0
            if profile.h_odd:
                assert h % 2 == 1

    def test_minimality(self):
        # no smaller nonnegative b of the required parity satisfies the
        # congruence b^2 = -gamma*n0 (mod q)
        for profile, core in [(T1A, 3), (T1B, 13), (T3A, 13)]:
            n0 = profile.n0(core)
            q = find_q(profile, core)
            b, _ = solve_bh(profile, n0, q)
            for smaller in range(b):
                if profile.b_parity == "odd" and smaller % 2 == 0:
                    continue
                if profile.b_parity == "even" and smaller % 2 == 1:
                    continue
                assert (smaller * smaller + profile.gamma * n0) % q != 0


def first_point_reference(profile, core, q, t, b, h):
    """Naive rescan used to cross-check enumerate_point.

    Iterates the same normative order but derives the x-range from a
    conservative symmetric bound instead of the tight interval.
    """
    target = profile.target(core)
    u, w, v = profile.binary_coefficients(core, q, b, h)
    c1 = profile.alpha * t * q
    c2 = b * t
    num_y, den_y = profile.y_bound
    y_max = 0
    while (y_max + 1) * (y_max + 1) * den_y < num_y * q:
        y_max += 1
    budget = profile.delta_factor * q * target
    x_max = (math.isqrt(budget) + b * y_max) // (profile.alpha * q) + 1
    ys = [0]
    for ay in range(1, y_max + 1):
        ys.extend((-ay, ay))
    for y in ys:
        for x in range(-x_max, x_max + 1):
            rem = target - (u * x * x + w * x * y + v * y * y)
            if rem < 0 or rem % profile.rho != 0:
                continue
            root = math.isqrt(rem // profile.rho)
            if root * root * profile.rho != rem:
                continue
            for r_val in sorted({-root, root}):
                zn = r_val - c1 * x - c2 * y
                if zn % target == 0:
                    lattice_x = 2 * x if profile.x_substituted else x
                    return (lattice_x, y, zn // target)
    return None


class TestEnumeratePoint:
    def test_golden_point(self):
        assert enumerate_point(T1A, 3, 73, 1, 17, 2) == (1, -4, -2)

    def test_hits_target(self):
        for form in TernaryForm:
            for w in constructive_witnesses(form, 1, 260):
                profile, core = construction_frame(w)
                point = enumerate_point(profile, core, w.q, w.t, w.b, w.h)
                _, _, f = composed_values(profile, core, w.q, w.t, w.b, w.h, point)
                assert f == profile.target(core)

    def test_agrees_with_reference_scan(self):
        for form in TernaryForm:
            for w in constructive_witnesses(form, 1, 260):
                profile, core = construction_frame(w)
                assert first_point_reference(
                    profile, core, w.q, w.t, w.b, w.h
                ) == w.point

    def test_substituted_lattice_coordinate_is_even(self):
        for w in constructive_witnesses(TernaryForm.D122, 1, 300):
            profile, _ = construction_frame(w)
            if profile.x_substituted:
                assert w.point[0] % 2 == 0


class TestBuildWitness:
    def test_golden_fixture(self):
        w = build_witness(TernaryForm.D122, 3)
        assert isinstance(w, Witness)
        assert (w.q, w.t, w.b, w.h) == (73, 1, 17, 2)
        assert w.point == (1, -4, -2)
        assert w.r1 == -1
        assert w.n == 1
        assert w.binary == (1, 0)
        assert w.representation == (1, 0, 1)
        assert w.case_id == "T1A"
        assert (w.k, w.s, w.core) == (0, 1, 3)

    def test_verdict_passthrough(self):
        verdict = build_witness(TernaryForm.D122, 7)
        assert verdict.kind is Eligibility.OBSTRUCTED
        verdict = build_witness(TernaryForm.D117, 11)
        assert verdict.kind is Eligibility.OUTSIDE_COVERED_CASES

    def test_small_core_path(self):
        w = build_witness(TernaryForm.D113, 4)
        assert w.case_id == SMALL_CORE
        assert w.core == 1
        assert w.q is None and w.point is None
        assert evaluate(TernaryForm.D113, w.representation) == 4

    def test_smallest_covered_d117(self):
        w = build_witness(TernaryForm.D117, 5)
        assert w.case_id == "T3A"
        assert evaluate(TernaryForm.D117, w.representation) == 5

    def test_delegation(self):
        w = build_witness(TernaryForm.D112, 6)
        assert w.case_id == "T2D"
        inner = build_witness(TernaryForm.D122, 3)
        assert (w.q, w.t, w.b, w.h) == (inner.q, inner.t, inner.b, inner.h)
        assert w.point == inner.point
        assert w.representation == (0, 2, 1)
        assert evaluate(TernaryForm.D112, w.representation) == 6

    def test_lift(self):
        w = build_witness(TernaryForm.D122, 4 * 9 * 3)
        assert (w.k, w.s, w.core) == (1, 3, 3)
        assert w.representation == (6, 0, 6)

    def test_resource_cap_propagates(self):
        with pytest.raises(ResourceCapError):
            build_witness(TernaryForm.D122, 3, max_candidates=1)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            build_witness(TernaryForm.D122, 0)

    def test_deterministic(self):
        for form in TernaryForm:
            for m in (97, 194, 388, 3880):
                assert build_witness(form, m) == build_witness(form, m)


class TestVerifyWitness:
    def test_accepts_pipeline_output(self):
        for form in TernaryForm:
            for m in range(1, 400):
                w = build_witness(form, m)
                if isinstance(w, Witness):
                    assert witness_problems(w) == []
                    assert verify_witness(w)

    def test_corrupted_h(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, h=w.h + 1)
        assert not verify_witness(bad)
        assert any("d*h" in p for p in witness_problems(bad))

    def test_zero_point(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, point=(0, 0, 0))
        assert not verify_witness(bad)
        assert any("zero" in p for p in witness_problems(bad))

    def test_corrupted_q(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, q=w.q + 8)  # 81 stays in the class
        assert not verify_witness(bad)

    def test_corrupted_t(self):
        w = build_witness(TernaryForm.D122, 11)
        bad = dataclasses.replace(w, t=w.t + 1)
        assert not verify_witness(bad)

    def test_corrupted_b_parity(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, b=w.b + 1)
        assert not verify_witness(bad)

    def test_corrupted_representation(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, representation=(1, 1, 1))
        assert not verify_witness(bad)

    def test_corrupted_case_id(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, case_id="T1B")
        assert not verify_witness(bad)

    def test_corrupted_binary(self):
        w = build_witness(TernaryForm.D122, 11)
        bad = dataclasses.replace(w, binary=(w.binary[0] + 1, w.binary[1]))
        assert not verify_witness(bad)

    def test_corrupted_scale(self):
        w = build_witness(TernaryForm.D122, 12)
        bad = dataclasses.replace(w, s=3)
        assert not verify_witness(bad)

    def test_unknown_case(self):
        w = build_witness(TernaryForm.D122, 3)
        bad = dataclasses.replace(w, case_id="T9Z")
        assert not verify_witness(bad)
        assert any("unknown case" in p for p in witness_problems(bad))


class TestWitnessIdentities:
    def test_congruence_at_random_triples(self):
        rng = random.Random(20240817)
        for form in TernaryForm:
            for w in constructive_witnesses(form, 1, 200):
                profile, core = construction_frame(w)
                target = profile.target(core)
                for _ in range(100):
                    x = rng.randrange(-1000, 1001)
                    if profile.x_substituted:
                        x *= 2
                    point = (x, rng.randrange(-1000, 1001),
                             rng.randrange(-1000, 1001))
                    _, _, f = composed_values(
                        profile, core, w.q, w.t, w.b, w.h, point
                    )
                    assert f % target == 0

    def test_binary_part_positive_definite(self):
        for form in TernaryForm:
            for w in constructive_witnesses(form, 1, 300):
                profile, core = construction_frame(w)
                u, wc, v = profile.binary_coefficients(core, w.q, w.b, w.h)
                assert u > 0 and v > 0
                assert wc * wc - 4 * u * v < 0

    def test_descent_character_on_odd_power_primes(self):
        # v = d*q*n; every odd prime other than q dividing v to an odd
        # power must pass jacobi(-c, p) = 1
        for form in TernaryForm:
            for w in constructive_witnesses(form, 1, 300):
                profile, _ = construction_frame(w)
                if w.n == 0:
                    continue
                v = profile.d_factor * w.q * w.q * w.n
                for p, e in factorize(v):
                    if p in (2, w.q, profile.c) or e % 2 == 0:
                        continue
                    assert jacobi(-profile.c, p) == 1

    def test_r_and_binary_recomputed(self):
        for form in TernaryForm:
            for w in constructive_witnesses(form, 1, 200):
                profile, core = construction_frame(w)
                r1, n, f = composed_values(
                    profile, core, w.q, w.t, w.b, w.h, w.point
                )
                assert (r1, n) == (w.r1, w.n)
                assert f == profile.target(core)
                a, beta = w.binary
                assert a * a + profile.c * beta * beta == w.n


class TestRepresentabilityAtSmallScale:
    def test_equivalence_forms(self):
        for form, modulus, bad in ((TernaryForm.D122, 8, 7),
                                   (TernaryForm.D112, 16, 14)):
            for m in range(1, 1200):
                stripped = m
                while stripped % 4 == 0:
                    stripped //= 4
                w = build_witness(form, m)
                if stripped % modulus == bad:
                    assert not isinstance(w, Witness)
                else:
                    assert isinstance(w, Witness)
                    assert evaluate(form, w.representation) == m

    def test_sufficiency_forms(self):
        for form in (TernaryForm.D113, TernaryForm.D117):
            for m in range(1, 1200):
                if eligibility(form, m).eligible:
                    w = build_witness(form, m)
                    assert isinstance(w, Witness)
                    assert evaluate(form, w.representation) == m

    @given(st.sampled_from(list(TernaryForm)), st.integers(1, 10**7))
    def test_any_witness_evaluates(self, form, m):
        w = build_witness(form, m)
        if isinstance(w, Witness):
            assert evaluate(form, w.representation) == m
            assert verify_witness(w)
