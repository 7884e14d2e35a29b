"""Arbitrary-precision modular arithmetic with an auditable multiplication counter.

Everything the parameter generator and the compressor need from number
theory lives here: Miller-Rabin primality, safe-prime search, generator
finding, exact order checks in safe-prime groups, and a ModContext whose
every modular multiplication is counted so cost claims can be measured
rather than asserted.
"""

from __future__ import annotations

import random
import threading

from .errors import (
    BadFactorizationError,
    DomainError,
    NotInvertibleError,
    SearchExhaustedError,
    UnknownFactorizationError,
)


def ceil_lg(x: int) -> int:
    """Smallest k with 2**k >= x."""
    if x < 1:
        raise ValueError("ceil_lg needs a positive integer")
    return (x - 1).bit_length()


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = tuple(_sieve(2000))

# Below this bound the fixed base set is a proven-deterministic test.
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_probable_prime(x: int, rounds: int = 64) -> bool:
    """Miller-Rabin primality with small-prime trial division first.

    Exact below the deterministic-base bound; above it, `rounds`
    pseudo-random witnesses derived from x keep the answer reproducible
    with error probability at most 4**-rounds.
    """
    if x < 2:
        raise ValueError("primality is asked of integers >= 2")
    for p in _SMALL_PRIMES:
        if x == p:
            return True
        if x % p == 0:
            return False
    if x < _DETERMINISTIC_BOUND:
        return _miller_rabin(x, _DETERMINISTIC_BASES)
    rng = random.Random(x ^ 0x9E3779B97F4A7C15)
    bases = [rng.randrange(2, x - 1) for _ in range(rounds)]
    return _miller_rabin(x, bases)


class ModContext:
    """A prime modulus plus a counter of multiplications done through it.

    The context is immutable apart from the counter.  When the cofactor
    q = (M-1)/2 is itself prime, multiplicative orders are one of
    {1, 2, q, 2q} and can be decided exactly.
    """

    def __init__(self, M: int, q: int | None = None, rounds: int = 64):
        if M < 3 or M % 2 == 0:
            raise DomainError(f"modulus must be an odd prime, got {M}")
        if not is_probable_prime(M, rounds):
            raise DomainError(f"modulus {M} is not prime")
        if q is not None:
            if M != 2 * q + 1:
                raise DomainError("cofactor q must satisfy M = 2q + 1")
            if not is_probable_prime(q, rounds):
                raise DomainError(f"cofactor {q} is not prime")
        self.M = M
        self.q = q
        self._count = 0
        self._lock = threading.Lock()

    @property
    def m(self) -> int:
        """Bit length of the modulus, ceil(lg M)."""
        return ceil_lg(self.M)

    @property
    def mulcount(self) -> int:
        with self._lock:
            return self._count

    def _tick(self, k: int = 1):
        with self._lock:
            self._count += k

    def mod_mul(self, a: int, b: int) -> int:
        self._tick()
        return a * b % self.M

    def mod_pow(self, base: int, exponent: int) -> int:
        """Left-to-right square-and-multiply; every multiplication counts.

        Negative exponents go through the inverse of the base.
        """
        M = self.M
        if exponent < 0:
            base = self.mod_inverse(base)
            exponent = -exponent
        base %= M
        if exponent == 0:
            return 1
        result = base
        muls = 0
        for bit in bin(exponent)[3:]:
            result = result * result % M
            muls += 1
            if bit == "1":
                result = result * base % M
                muls += 1
        if muls:
            self._tick(muls)
        return result

    def mod_inverse(self, x: int) -> int:
        M = self.M
        x %= M
        t, new_t = 0, 1
        r, new_r = M, x
        while new_r:
            quot = r // new_r
            t, new_t = new_t, t - quot * new_t
            r, new_r = new_r, r - quot * new_r
        if r != 1:
            raise NotInvertibleError(f"{x} has no inverse modulo {M}")
        return t % M


def generator_checks(ctx: ModContext, g: int, prime_factors) -> bool:
    """True iff g generates the full group, given the distinct primes
    dividing M - 1."""
    g %= ctx.M
    if g in (0, 1):
        return False
    order = ctx.M - 1
    return all(ctx.mod_pow(g, order // p) != 1 for p in set(prime_factors))


def find_generator(ctx: ModContext, factors, rng=None, budget: int = 10_000) -> int:
    """Find a generator of the multiplicative group modulo ctx.M.

    `factors` lists the primes of M - 1 with multiplicity and must
    multiply back to it.  Without an rng the search scans upward from 2,
    which is deterministic; with one it samples at random.
    """
    order = ctx.M - 1
    prod = 1
    for f in factors:
        prod *= f
    if prod != order:
        raise BadFactorizationError(
            f"factors multiply to {prod}, expected {order}"
        )
    distinct = sorted(set(factors))
    if rng is None:
        for g in range(2, ctx.M):
            if generator_checks(ctx, g, distinct):
                return g
        raise SearchExhaustedError("no generator found by scan")  # unreachable for prime M
    for _ in range(budget):
        g = rng.randrange(2, ctx.M)
        if generator_checks(ctx, g, distinct):
            return g
    raise SearchExhaustedError(f"no generator found in {budget} samples")


def multiplicative_order_safe(ctx: ModContext, w: int) -> int:
    """Exact order of w when the modulus is a safe prime."""
    if ctx.q is None:
        raise UnknownFactorizationError(
            "order computation needs the prime cofactor q"
        )
    w %= ctx.M
    if w == 0:
        raise DomainError("0 has no multiplicative order")
    if w == 1:
        return 1
    if w == ctx.M - 1:
        return 2
    if ctx.mod_pow(w, ctx.q) == 1:
        return ctx.q
    return 2 * ctx.q


def order_at_least(ctx: ModContext, w: int, bound: int) -> bool:
    """Whether the order of w modulo a safe prime reaches `bound`."""
    return multiplicative_order_safe(ctx, w) >= bound


def find_safe_prime(bits: int, rng, budget: int | None = None) -> ModContext:
    """Search for M = 2q + 1 with q prime and ceil(lg M) = bits.

    Each attempt draws one candidate q uniformly from [2**(bits-2),
    2**(bits-1) - 1], which forces the bit length of M.
    """
    if bits < 5:
        raise DomainError(f"safe-prime search needs at least 5 bits, got {bits}")
    attempts = 2_000_000 if budget is None else budget
    lo = 1 << (bits - 2)
    hi = (1 << (bits - 1)) - 1
    for _ in range(attempts):
        q = rng.randrange(lo, hi + 1) | 1
        if not is_probable_prime(q):
            continue
        M = 2 * q + 1
        if is_probable_prime(M):
            return ModContext(M, q=q)
    raise SearchExhaustedError(
        f"no {bits}-bit safe prime found in {attempts} attempts"
    )
