"""Modular arithmetic primitives: Jacobi symbol, deterministic primality,
square roots mod p, inverses, CRT.

All functions work on plain Python ints and are pure.
"""

from .errors import NonCoprimeModuliError, NonResidueError, NotInvertibleError

__all__ = ["jacobi", "is_prime", "sqrt_mod_prime", "inv_mod", "crt"]


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; jacobi(a, 1) == 1.

    Returns -1, 0 or 1.  0 exactly when gcd(a, n) > 1.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi requires odd positive n, got %r" % (n,))
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# Deterministic Miller-Rabin witness sets.  Each entry (bound, bases) is a
# proven result: testing against `bases` is exact for all n < bound.
_MR_TIERS = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (9080191, (31, 73)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (4759123141, (2, 7, 61)),
    (1122004669633, (2, 13, 23, 1662803)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Exact primality test, deterministic for all n below ~3.3e24.

    Uses trial division by tiny primes followed by Miller-Rabin with a
    proven witness set.  No randomness anywhere.
    """
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_TIERS[-1][0]:
        raise ValueError("is_prime: %d exceeds the deterministic witness range" % n)
    for bound, bases in _MR_TIERS:
        if n < bound:
            break
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in bases:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod_prime(a: int, p: int) -> int:
    """Canonical square root of a mod odd prime p: the root r with
    0 <= r <= (p - 1) // 2.

    Raises NonResidueError when a is a quadratic non-residue mod p.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("sqrt_mod_prime requires an odd prime modulus, got %r" % (p,))
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        raise NonResidueError("%d is not a square mod %d" % (a, p))
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    elif p % 8 == 5:
        r = pow(a, (p + 3) // 8, p)
        if r * r % p != a:
            r = r * pow(2, (p - 1) // 4, p) % p
    else:
        # Tonelli-Shanks.  The least non-residue is found by direct scan,
        # which keeps the whole function deterministic.
        q = p - 1
        s = 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            t2 = t
            i = 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            bexp = pow(c, 1 << (m - i - 1), p)
            r = r * bexp % p
            c = bexp * bexp % p
            t = t * c % p
            m = i
    return min(r, p - r)


def inv_mod(a: int, n: int) -> int:
    """Inverse of a mod n (n >= 1); inv_mod(anything, 1) == 0."""
    if n < 1:
        raise ValueError("inv_mod requires n >= 1, got %r" % (n,))
    if n == 1:
        return 0
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NotInvertibleError("%d is not invertible mod %d" % (a, n)) from None


def crt(pairs) -> int:
    """Combine congruences x = r_i (mod n_i) with pairwise coprime moduli.

    Returns the unique solution in [0, prod n_i).  An empty sequence gives 0.
    """
    x, n = 0, 1
    for r, ni in pairs:
        if ni < 1:
            raise ValueError("crt modulus must be >= 1, got %r" % (ni,))
        try:
            step = (r - x) * inv_mod(n, ni) % ni
        except NotInvertibleError:
            raise NonCoprimeModuliError("moduli share a factor: %d, %d" % (n, ni)) from None
        x += n * step
        n *= ni
    return x % n
