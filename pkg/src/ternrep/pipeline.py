"""Constructive witness pipeline.

For an eligible m the solver reduces to a squarefree core, picks the case
profile, finds the auxiliary prime q, solves the modular parameters t and
(b, h), enumerates the unique-shape lattice point with F(point) = target,
descends the binary value n = a^2 + c*beta^2, and assembles a
representation of m.  The Witness records every intermediate so the whole
chain can be re-audited offline.

Scan orders are normative: witnesses are bit-reproducible across runs and
job counts.  The existence argument behind the enumeration is a
geometry-of-numbers volume bound; the search simply walks the finite box
that bound permits and takes the first hit.
"""

import math
from dataclasses import dataclass

from .arith import crt, inv_mod, is_prime, jacobi, sqrt_mod_prime
from .cases import CaseProfile, PROFILES, select_case
from .descent import represent_binary
from .errors import (
    InternalError,
    NonResidueError,
    NotInvertibleError,
    NotRepresentableError,
    ResourceCapError,
)
from .factor import factorize, squarefree_decompose
from .forms import (
    EligibilityVerdict,
    TernaryForm,
    checked_representation,
    eligibility,
    evaluate,
    lift_representation,
    reduce_to_core,
)
from .oracle import brute_force_ternary

__all__ = [
    "DEFAULT_CANDIDATE_CAP",
    "SMALL_CORE",
    "Witness",
    "find_q",
    "solve_t",
    "solve_bh",
    "enumerate_point",
    "composed_values",
    "build_witness",
    "verify_witness",
    "witness_problems",
]

DEFAULT_CANDIDATE_CAP = 10**6

# Cores whose odd part is 1 make every modulus in the construction
# degenerate, so they are answered from the exhaustive search instead.
SMALL_CORE = "SMALL_CORE"
_SMALL_CORE_LIMIT = 2


@dataclass(frozen=True)
class Witness:
    """Full audit trail for one represented integer.

    For the small-core path every construction field is None.  For the
    delegating case (T2D) the construction fields describe the run on
    m1 = core / 2 under the x^2+2y^2+2z^2 profile selected by m1.
    """

    form: TernaryForm
    m: int
    k: int
    s: int
    core: int
    case_id: str
    q: int | None
    t: int | None
    b: int | None
    h: int | None
    point: tuple | None
    r1: int | None
    n: int | None
    binary: tuple | None
    representation: tuple


def find_q(profile: CaseProfile, core: int, max_candidates: int = DEFAULT_CANDIDATE_CAP) -> int:
    """Smallest prime q > max(core, 2) in the profile's residue class with
    jacobi(-char_factor * q, p) = 1 for every odd prime p of the core.

    Raises ResourceCapError after max_candidates values of the residue
    class have been examined.
    """
    if profile.delegate:
        raise InternalError("delegating profile has no q of its own")
    r, modulus = profile.q_residue
    odd_part = profile.n0(core) if profile.core_parity == "even" else core
    char_primes = [p for p, _ in factorize(odd_part)]
    q = max(core, 2) + 1
    q += (r - q) % modulus
    examined = 0
    while examined < max_candidates:
        examined += 1
        if is_prime(q) and all(
            jacobi(-profile.char_factor * q, p) == 1 for p in char_primes
        ):
            return q
        q += modulus
    raise ResourceCapError(
        "no auxiliary prime for core %d within %d candidates" % (core, max_candidates)
    )


def solve_t(profile: CaseProfile, modulus: int, q: int) -> int:
    """t in [0, modulus) with t^2 = -1/(t_den_factor * q) (mod modulus).

    modulus is odd and squarefree; the congruence is solved prime by prime
    with the canonical root and recombined by CRT.  The character condition
    on q guarantees solvability, so failure here is an internal error.
    """
    den = profile.t_den_factor * q
    pairs = []
    for p, _ in factorize(modulus):
        try:
            a = -inv_mod(den % p, p) % p
            pairs.append((sqrt_mod_prime(a, p), p))
        except (NonResidueError, NotInvertibleError) as exc:
            raise InternalError(
                "t-congruence unsolvable mod %d (q = %d): %s" % (p, q, exc)
            ) from exc
    return crt(pairs)


def solve_bh(profile: CaseProfile, n0: int, q: int) -> tuple:
    """(b, h) with b^2 + gamma*n0 = (d_factor * q) * h and the profile's
    parity side conditions.

    b is canonical: from the canonical root r of -gamma*n0 mod q, the
    candidates {r, q-r, r+q, 2q-r} are filtered by parity and the smallest
    survivor is taken.
    """
    gn = profile.gamma * n0
    try:
        root = sqrt_mod_prime(-gn % q, q)
    except NonResidueError as exc:
        raise InternalError(
            "-%d should be a square mod %d by construction: %s" % (gn, q, exc)
        ) from exc
    candidates = (root, q - root, root + q, 2 * q - root)
    if profile.b_parity == "odd":
        candidates = [v for v in candidates if v % 2 == 1]
    elif profile.b_parity == "even":
        candidates = [v for v in candidates if v % 2 == 0]
    b = min(candidates)
    d = profile.d_factor * q
    total = b * b + gn
    if total % d != 0:
        raise InternalError("b^2 + gamma*n0 = %d is not divisible by d = %d" % (total, d))
    h = total // d
    if profile.h_odd and h % 2 == 0:
        raise InternalError("h = %d should be odd for profile %s" % (h, profile.id))
    return b, h


def composed_values(
    profile: CaseProfile, core: int, q: int, t: int, b: int, h: int, point
) -> tuple:
    """(R, binary part, F) of the composed form at a lattice point.

    The point is given in lattice coordinates; for the substituted profiles
    its x-coordinate must be even.
    """
    x, y, z = point
    if profile.x_substituted:
        if x % 2 != 0:
            raise ValueError("lattice x must be even for profile %s" % profile.id)
        x //= 2
    u, w, v = profile.binary_coefficients(core, q, b, h)
    binary = u * x * x + w * x * y + v * y * y
    r_val = profile.alpha * t * q * x + b * t * y + profile.target(core) * z
    return r_val, binary, profile.rho * r_val * r_val + binary


def enumerate_point(
    profile: CaseProfile, core: int, q: int, t: int, b: int, h: int
) -> tuple:
    """First lattice point with F(point) = target under the normative scan.

    Scan order: y ascending by absolute value with the negative sign first
    (0, -1, 1, -2, 2, ...); x ascending over the exact interval allowed by
    the binary part's budget; z ascending over the at most two values
    solving the R-budget.  All bounds are evaluated in exact integers.
    """
    target = profile.target(core)
    gn = profile.gamma * profile.n0(core)
    delta = profile.delta_factor * q
    lam = profile.alpha * q
    u, w, v = profile.binary_coefficients(core, q, b, h)
    c1 = profile.alpha * t * q
    c2 = b * t
    num_y, den_y = profile.y_bound

    ay = 0
    while ay * ay * den_y < num_y * q:
        for y in ((0,) if ay == 0 else (-ay, ay)):
            budget = delta * target - gn * y * y
            if budget < 0:
                continue
            s = math.isqrt(budget)
            x_lo = -((b * y + s) // lam)
            x_hi = (s - b * y) // lam
            for x in range(x_lo, x_hi + 1):
                rem = target - (u * x * x + w * x * y + v * y * y)
                if rem < 0 or rem % profile.rho != 0:
                    continue
                rr = rem // profile.rho
                root = math.isqrt(rr)
                if root * root != rr:
                    continue
                for r_val in ((0,) if root == 0 else (-root, root)):
                    zn = r_val - c1 * x - c2 * y
                    if zn % target == 0:
                        lattice_x = 2 * x if profile.x_substituted else x
                        return (lattice_x, y, zn // target)
        ay += 1
    raise InternalError(
        "no lattice point with F = %d for core %d (profile %s)"
        % (target, core, profile.id)
    )


def _construct(profile: CaseProfile, core: int, max_candidates: int) -> dict:
    """Run the q/t/b/h/point/descent chain for one squarefree core."""
    q = find_q(profile, core, max_candidates)
    target = profile.target(core)
    t = solve_t(profile, target, q)
    b, h = solve_bh(profile, profile.n0(core), q)
    point = enumerate_point(profile, core, q, t, b, h)
    r1, n, f_val = composed_values(profile, core, q, t, b, h, point)
    if f_val != target:
        raise InternalError("enumerated point does not hit the target")
    try:
        binary = represent_binary(n, profile.c)
    except NotRepresentableError as exc:
        raise InternalError(
            "descent failed for n = %d, c = %d: %s" % (n, profile.c, exc)
        ) from exc
    return {
        "q": q, "t": t, "b": b, "h": h, "point": point,
        "r1": r1, "n": n, "binary": binary,
        "base": profile.assemble(binary[0], binary[1], r1),
    }


def build_witness(
    form: TernaryForm, m: int, max_candidates: int = DEFAULT_CANDIDATE_CAP
):
    """Witness for eligible m, or the EligibilityVerdict explaining why m
    is out of reach (obstructed or outside the covered cases).

    The returned representation is always re-checked by evaluation.
    """
    verdict = eligibility(form, m)
    if not verdict.eligible:
        return verdict
    k, s, core = reduce_to_core(form, m)

    if core <= _SMALL_CORE_LIMIT:
        base = brute_force_ternary(form, core)
        if base is None:
            raise InternalError("tiny eligible core %d has no representation" % core)
        rep = checked_representation(form, m, lift_representation(base, k, s))
        return Witness(form, m, k, s, core, SMALL_CORE,
                       None, None, None, None, None, None, None, None, rep)

    if form is TernaryForm.D112 and core % 2 == 0:
        inner = build_witness(TernaryForm.D122, core // 2, max_candidates)
        if not isinstance(inner, Witness) or inner.case_id == SMALL_CORE:
            raise InternalError("delegation expected a constructive inner witness")
        iu, iv, iw = inner.representation
        rep = checked_representation(
            form, m, lift_representation((2 * iv, 2 * iw, iu), k, s)
        )
        return Witness(form, m, k, s, core, "T2D",
                       inner.q, inner.t, inner.b, inner.h, inner.point,
                       inner.r1, inner.n, inner.binary, rep)

    profile = select_case(form, core)
    parts = _construct(profile, core, max_candidates)
    rep = checked_representation(
        form, m, lift_representation(parts["base"], k, s)
    )
    return Witness(form, m, k, s, core, profile.id,
                   parts["q"], parts["t"], parts["b"], parts["h"],
                   parts["point"], parts["r1"], parts["n"], parts["binary"], rep)


def _construction_profile(w: Witness):
    """Profile whose identities the witness's construction fields obey,
    plus the core those identities are stated for."""
    if w.case_id == "T2D":
        return select_case(TernaryForm.D122, w.core // 2), w.core // 2
    return PROFILES[w.case_id], w.core


def witness_problems(w: Witness) -> list:
    """Every invariant violation in the witness, recomputed from scratch.

    An empty list means the witness verifies.
    """
    problems = []
    if w.m < 1:
        return ["m < 1"]
    if not eligibility(w.form, w.m).eligible:
        problems.append("m is not eligible for this form")
    if (1 << (2 * w.k)) * w.s * w.s * w.core != w.m:
        problems.append("4^k * s^2 * core != m")
    if w.s % 2 == 0:
        problems.append("s is even")
    odd_core = w.core // 2 if w.core % 2 == 0 else w.core
    if odd_core % 2 == 0 or squarefree_decompose(odd_core)[0] != 1:
        problems.append("core is not squarefree of the expected shape")
    if evaluate(w.form, w.representation) != w.m:
        problems.append("representation does not evaluate to m")

    if w.case_id == SMALL_CORE:
        if w.core > _SMALL_CORE_LIMIT:
            problems.append("small-core marker on a core above the limit")
        return problems

    if w.case_id == "T2D" and (w.form is not TernaryForm.D112 or w.core % 2 != 0):
        problems.append("delegation marker outside even cores of x2+y2+2z2")
        return problems
    try:
        profile, prof_core = _construction_profile(w)
    except (KeyError, InternalError):
        return problems + ["unknown case id %r" % (w.case_id,)]
    if w.case_id != "T2D" and (
        profile.form is not w.form or select_case(w.form, w.core) is not profile
    ):
        problems.append("case id does not match the core")
        return problems

    if None in (w.q, w.t, w.b, w.h, w.point, w.r1, w.n, w.binary):
        return problems + ["construction fields are incomplete"]

    target = profile.target(prof_core)
    n0 = profile.n0(prof_core)
    if not is_prime(w.q):
        problems.append("q is not prime")
    if w.q <= max(prof_core, 2):
        problems.append("q is not above the core")
    r, modulus = profile.q_residue
    if w.q % modulus != r:
        problems.append("q is outside its residue class")
    odd = n0 if profile.core_parity == "even" else prof_core
    for p, _ in factorize(odd):
        if jacobi(-profile.char_factor * w.q, p) != 1:
            problems.append("character condition fails at p = %d" % p)

    den = profile.t_den_factor * w.q
    if not 0 <= w.t < max(target, 1):
        problems.append("t out of range")
    if math.gcd(den, target) != 1:
        problems.append("t denominator shares a factor with the modulus")
    elif (w.t * w.t + inv_mod(den % target, target)) % target != 0:
        problems.append("t^2 != -1/den (mod modulus)")

    if profile.b_parity == "odd" and w.b % 2 == 0:
        problems.append("b parity violates the profile")
    if profile.b_parity == "even" and w.b % 2 == 1:
        problems.append("b parity violates the profile")
    if not 0 <= w.b < 2 * w.q:
        problems.append("b is not in canonical range")
    if w.b * w.b + profile.gamma * n0 != profile.d_factor * w.q * w.h:
        problems.append("b^2 + gamma*n0 != d*h")
    elif profile.h_odd and w.h % 2 == 0:
        problems.append("h should be odd")

    if w.point == (0, 0, 0):
        problems.append("point is zero")
        return problems
    if profile.x_substituted and w.point[0] % 2 != 0:
        problems.append("lattice x-coordinate is odd")
        return problems
    try:
        r1, n, f_val = composed_values(
            profile, prof_core, w.q, w.t, w.b, w.h, w.point
        )
    except ValueError as exc:
        return problems + [str(exc)]
    if f_val != target:
        problems.append("F(point) != target")
    if r1 != w.r1:
        problems.append("R does not match the point")
    if n != w.n:
        problems.append("binary value does not match the point")

    a, beta = w.binary
    if a < 0 or beta < 0:
        problems.append("binary rep not normalized")
    if a * a + profile.c * beta * beta != w.n:
        problems.append("binary rep does not evaluate to n")

    base = profile.assemble(a, beta, w.r1)
    if w.case_id == "T2D":
        bu, bv, bw = base
        base = (2 * bv, 2 * bw, bu)
    if w.representation != lift_representation(base, w.k, w.s):
        problems.append("representation does not match the assembly")
    return problems


def verify_witness(w: Witness) -> bool:
    """True iff every witness invariant holds when recomputed from scratch."""
    return not witness_problems(w)
