"""Executable cryptanalysis: subset-sum splitting, birthday search,
exhaustive toy collisions, and knapsack density.

The meet-in-the-middle solver attacks plain subset-sum instances; the
long-shadow coupling of the compressor has no workable split point, so
the solver demonstrates the dichotomy on the additive problem it does
apply to.  The birthday harness truncates digests so that collisions are
reachable at desk scale; truncation is a testing aid, not a mode of the
hash.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bitcodec import BitString, bit_long_shadow
from .compress import digest
from .errors import DomainError, InstanceTooLargeError
from .numtheory import ceil_lg
from .params import PublicParams

MITM_CAP = 40
BRUTE_CAP = 24
COLLISION_CAP = 12

BIRTHDAY_COEFFICIENT = 1.1774  # sqrt(2 ln 2), inputs for a 50% collision


@dataclass(frozen=True)
class SubsetSumInstance:
    c: tuple[int, ...]
    s: int

    def __post_init__(self):
        if any(x < 1 for x in self.c):
            raise DomainError("weights must be positive")
        if self.s < 0:
            raise DomainError("target must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.c)


def mitm_subset_sum(
    inst: SubsetSumInstance, cap: int = MITM_CAP
) -> tuple[int, ...] | None:
    """Meet-in-the-middle subset sum in O(n * 2^(n/2)).

    Tabulate all sums of the first floor(n/2) weights, sort, then for
    each assignment of the remaining weights binary-search the
    complement.  Ties resolve to the first hit in sorted-table order,
    with right-half assignments enumerated in counting order (low bit =
    first right-half weight), so the answer is deterministic.
    """
    n = inst.n
    if n > cap:
        raise InstanceTooLargeError(f"n = {n} exceeds cap {cap}")
    t = n // 2
    left, right = inst.c[:t], inst.c[t:]

    table = []
    for mask in range(1 << t):
        total = 0
        mm = mask
        while mm:
            low = mm & -mm
            total += left[low.bit_length() - 1]
            mm ^= low
        table.append((total, mask))
    table.sort()
    sums = [e[0] for e in table]

    for rmask in range(1 << (n - t)):
        total = 0
        mm = rmask
        while mm:
            low = mm & -mm
            total += right[low.bit_length() - 1]
            mm ^= low
        r = inst.s - total
        if r < 0:
            continue
        i = bisect_left(sums, r)
        if i < len(sums) and sums[i] == r:
            lmask = table[i][1]
            bits = [(lmask >> j) & 1 for j in range(t)]
            bits += [(rmask >> j) & 1 for j in range(n - t)]
            return tuple(bits)
    return None


def brute_force_solve(
    inst: SubsetSumInstance, cap: int = BRUTE_CAP
) -> list[tuple[int, ...]]:
    """Every assignment hitting the target, by exhaustive search.

    Weights are walked in descending order with two-sided bound pruning
    (all weights are positive), which returns exactly the set a plain
    2^n enumeration would.  Output is sorted for determinism.
    """
    n = inst.n
    if n > cap:
        raise InstanceTooLargeError(f"n = {n} exceeds cap {cap}")
    order = sorted(range(n), key=lambda i: -inst.c[i])
    weights = [inst.c[i] for i in order]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]

    solutions: list[tuple[int, ...]] = []
    chosen = [0] * n

    def walk(k: int, remaining: int):
        if remaining > suffix[k]:
            return
        if k == n:
            if remaining == 0:
                bits = [0] * n
                for pos, flag in zip(order, chosen):
                    bits[pos] = flag
                solutions.append(tuple(bits))
            return
        if remaining == 0:
            # only the all-zero tail can finish
            bits = [0] * n
            for pos, flag in zip(order[:k], chosen[:k]):
                bits[pos] = flag
            solutions.append(tuple(bits))
            return
        if weights[k] <= remaining:
            chosen[k] = 1
            walk(k + 1, remaining - weights[k])
            chosen[k] = 0
        walk(k + 1, remaining)

    walk(0, inst.s)
    solutions.sort()
    return solutions


@dataclass(frozen=True)
class BirthdayStats:
    """Outcome of one truncated-digest birthday experiment."""

    trials: int
    collision: tuple[BitString, BitString] | None
    threshold: float
    seed: int
    mask_bits: int
    collision_value: int | None = None


def birthday_search(
    pub: PublicParams, mask_bits: int, budget: int, seed: int, workers: int = 1
) -> BirthdayStats:
    """Draw random nonzero messages until two share a truncated digest.

    Digests are truncated to their low mask_bits bits purely so that
    collisions become reachable in a test run; worker w uses the rng
    seeded with seed + w, workers advance in lockstep, and the reported
    trial count sums over all workers.
    """
    import random

    if not 1 <= mask_bits <= pub.m:
        raise DomainError(f"mask_bits must lie in [1, {pub.m}]")
    if budget < 1:
        raise DomainError("budget must be at least 1")
    if workers < 1:
        raise DomainError("workers must be at least 1")
    n = pub.n
    mask = (1 << mask_bits) - 1
    rngs = [random.Random(seed + w) for w in range(workers)]
    seen: list[dict[int, int]] = [{} for _ in range(workers)]
    threshold = BIRTHDAY_COEFFICIENT * 2 ** (mask_bits / 2)

    trials = 0
    while trials < budget:
        for w in range(workers):
            if trials >= budget:
                break
            rng = rngs[w]
            v = 0
            while v == 0:
                v = rng.getrandbits(n)
            msg = BitString.from_int(v, n)
            t = digest(pub, msg).value & mask
            trials += 1
            prior = seen[w].get(t)
            if prior is None:
                seen[w][t] = v
            elif prior != v:
                return BirthdayStats(
                    trials=trials,
                    collision=(BitString.from_int(prior, n), msg),
                    threshold=threshold,
                    seed=seed,
                    mask_bits=mask_bits,
                    collision_value=t,
                )
    return BirthdayStats(
        trials=trials,
        collision=None,
        threshold=threshold,
        seed=seed,
        mask_bits=mask_bits,
    )


@dataclass(frozen=True)
class CollisionPair:
    """Two distinct messages with equal (full) digests, plus the
    long-shadow difference and its product identity check."""

    msg1: BitString
    msg2: BitString
    digest_value: int
    ydiff: tuple[int, ...]
    product_is_one: bool


def brute_force_collision(pub: PublicParams, cap: int = COLLISION_CAP) -> list[CollisionPair]:
    """Hash every nonzero message at toy scale and group by digest.

    For each colliding pair the long-shadow difference ydiff is reported
    together with a direct check that the initial values raised to it
    multiply to 1, which is the algebraic face of any collision.
    """
    n = pub.n
    if n > cap:
        raise InstanceTooLargeError(f"n = {n} exceeds cap {cap}")
    ctx = pub.context()
    groups: dict[int, list[int]] = {}
    for v in range(1, 1 << n):
        msg = BitString.from_int(v, n)
        d = digest(pub, msg).value
        groups.setdefault(d, []).append(v)

    pairs: list[CollisionPair] = []
    for d in sorted(groups):
        vs = groups[d]
        if len(vs) < 2:
            continue
        for v1, v2 in combinations(vs, 2):
            m1 = BitString.from_int(v1, n)
            m2 = BitString.from_int(v2, n)
            ls1 = bit_long_shadow(m1)
            ls2 = bit_long_shadow(m2)
            ydiff = tuple(a - b for a, b in zip(ls1, ls2))
            num = 1
            den = 1
            for c, y in zip(pub.C, ydiff):
                if y > 0:
                    num = ctx.mod_mul(num, ctx.mod_pow(c, y))
                elif y < 0:
                    den = ctx.mod_mul(den, ctx.mod_pow(c, -y))
            ok = num == den  # num * den^-1 == 1 without an inversion
            pairs.append(
                CollisionPair(
                    msg1=m1, msg2=m2, digest_value=d, ydiff=ydiff, product_is_one=ok
                )
            )
    return pairs


def assp_density(n: int, m: int) -> Fraction:
    """Knapsack density of the additive problem: n * ceil(lg n) / m."""
    if n < 2 or m < 2:
        raise DomainError("need n, m >= 2")
    return Fraction(n * ceil_lg(n), m)
