"""Parameter initialization, validation, serialization, and the
white-box collision certificate.

Key generation produces a public side (the modulus M and the initial
values C_i) and a private side (the coprime basis A_i, the secret
exponent table ell, and the blinding values W and delta), tied together
by C_i = (A_i * W**ell(i)) ** delta mod M.  The private side is only
needed at initialization time and for certifying collisions without
hashing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import coprime
from .bitcodec import BitString, bit_long_shadow
from .errors import (
    DomainError,
    InconsistentParamsError,
    LengthMismatchError,
    ParseError,
    SearchExhaustedError,
)
from .numtheory import (
    ModContext,
    ceil_lg,
    find_safe_prime,
    is_probable_prime,
    multiplicative_order_safe,
)

TEST_MIN_M = 12
PROD_MIN_M = 80
MAX_M = 232
TEST_MIN_N = 4
PROD_MIN_N = 80
MAX_N = 4096
MAX_NBAR = 1 << 32


@dataclass(frozen=True)
class PublicParams:
    """Everything the compressor needs: modulus, widths, initial values."""

    m: int
    n: int
    M: int
    C: tuple[int, ...]

    def __post_init__(self):
        if self.n % 2 or self.n < TEST_MIN_N or self.n > MAX_N:
            raise DomainError(f"n = {self.n} is not an even length in range")
        if len(self.C) != self.n:
            raise DomainError(f"expected {self.n} initial values, got {len(self.C)}")
        if self.M < 3:
            raise DomainError("modulus too small")

    def context(self) -> ModContext:
        """Shared counting context for this modulus (created lazily)."""
        ctx = self.__dict__.get("_ctx")
        if ctx is None:
            q = (self.M - 1) // 2
            ctx = ModContext(self.M, q=q if is_probable_prime(q) else None)
            # setdefault keeps one winner if two threads race the create
            ctx = self.__dict__.setdefault("_ctx", ctx)
        return ctx


@dataclass(frozen=True)
class PrivateParams:
    """Generation-time secrets; discardable, never to be published."""

    m: int
    n: int
    M: int
    P: int
    nbar: int
    W: int
    delta: int
    A: coprime.CoprimeSequence
    ell: tuple[int, ...]
    # One sign choice per magnitude 5, 7, ..., 2*nbar+3; not serialized,
    # so it is absent on parameters read back from a file.
    omega_signs: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        if len(self.A) != self.n or len(self.ell) != self.n:
            raise DomainError("basis and exponent table must have n entries")
        if self.omega_signs is not None and len(self.omega_signs) != self.nbar:
            raise DomainError("need one sign per magnitude")

    def omega(self) -> tuple[int, ...] | None:
        if self.omega_signs is None:
            return None
        return tuple(
            s * mag for s, mag in zip(self.omega_signs, omega_magnitudes(self.nbar))
        )


def omega_magnitudes(nbar: int) -> range:
    """The odd magnitudes 5, 7, ..., 2*nbar + 3."""
    return range(5, 2 * nbar + 4, 2)


def sample_omega(nbar: int, rng) -> tuple[int, ...]:
    """Draw the signed exponent set: one independent sign per magnitude."""
    if nbar < 1:
        raise DomainError("nbar must be positive")
    return tuple(
        mag if rng.randrange(2) else -mag for mag in omega_magnitudes(nbar)
    )


def check_capacity(m: int, n: int, nbar: int, P: int) -> bool:
    """Sizing rule tying the search space to the modulus width:
    2 * n**5 * nbar * P**5 must reach 2**m."""
    return 2 * n**5 * nbar * P**5 >= 1 << m


def capacity_report(m: int, n: int, nbar: int, P: int) -> dict:
    """Both published forms of the sizing rule, with log2 margins."""
    main = 2 * n**5 * nbar * P**5
    alt = 2 * nbar**5 * P**5
    return {
        "main_ok": main >= 1 << m,
        "main_lg": math.log2(main),
        "alt_ok": alt >= 1 << m,
        "alt_lg": math.log2(alt),
        "m": m,
    }


def find_modulus(m: int, n: int, nbar: int, rng, budget: int | None = None) -> ModContext:
    """Safe prime M = 2q + 1 with ceil(lg M) = m.

    Safe primes make the later order checks exact; whenever
    2**(m-2) > 4n(2*nbar+3) the cofactor automatically exceeds the
    collision-argument bound, which holds for every supported size.
    """
    if m < TEST_MIN_M:
        raise DomainError(f"modulus width {m} below the test floor {TEST_MIN_M}")
    return find_safe_prime(m, rng, budget=budget)


def _check_init_constraints(m, n, P, nbar, production):
    min_m = PROD_MIN_M if production else TEST_MIN_M
    min_n = PROD_MIN_N if production else TEST_MIN_N
    if n % 2:
        raise DomainError(f"n = {n} must be even")
    if not min_n <= n <= MAX_N:
        raise DomainError(f"n = {n} outside [{min_n}, {MAX_N}]")
    if not min_m <= m <= MAX_M:
        raise DomainError(f"m = {m} outside [{min_m}, {MAX_M}]")
    if production and m > n:
        raise DomainError(f"production requires m <= n, got m={m}, n={n}")
    if production and not 10 <= ceil_lg(P) <= 32:
        raise DomainError(f"prime bound width {ceil_lg(P)} outside [10, 32]")
    if P < 3 or P > 1 << 32:
        raise DomainError(f"prime bound {P} out of range")
    if not n <= nbar <= MAX_NBAR:
        raise DomainError(f"nbar = {nbar} outside [n, 2**32]")
    if not check_capacity(m, n, nbar, P):
        raise DomainError(
            f"capacity rule fails: 2*n^5*nbar*P^5 < 2^{m} for n={n}, nbar={nbar}, P={P}"
        )


def _compute_initial_values(ctx, A, ell, W, delta) -> tuple[int, ...]:
    w_inv = ctx.mod_inverse(W)
    out = []
    for a, l in zip(A, ell):
        wl = ctx.mod_pow(W if l >= 0 else w_inv, abs(l))
        out.append(ctx.mod_pow(ctx.mod_mul(a, wl), delta))
    return tuple(out)


def initialize(
    m: int,
    n: int,
    P: int,
    nbar: int,
    rng,
    production: bool = False,
    budget: int | None = None,
    max_redraws: int = 64,
) -> tuple[PublicParams, PrivateParams]:
    """Run the full initialization: basis, modulus, blinding, exponents.

    Deterministic for a seeded rng.  A duplicate among the C_i (expected
    about once in 2**m runs) triggers a full redraw of W, delta, and the
    exponent table.
    """
    _check_init_constraints(m, n, P, nbar, production)
    A = coprime.generate(n, P, rng)
    ctx = find_modulus(m, n, nbar, rng, budget=budget)
    M = ctx.M
    order_bound = 1 << (m - ceil_lg(P))
    for _ in range(max_redraws):
        while True:
            W = rng.randrange(2, M - 1)
            if multiplicative_order_safe(ctx, W) >= order_bound:
                break
        while True:
            delta = rng.randrange(2, M - 1)
            if math.gcd(delta, M - 1) == 1:
                break
        omega = sample_omega(nbar, rng)
        ell = tuple(rng.sample(omega, n))
        C = _compute_initial_values(ctx, A, ell, W, delta)
        if len(set(C)) == n and all(1 < c < M for c in C):
            break
    else:
        raise SearchExhaustedError("could not avoid duplicate initial values")
    pub = PublicParams(m=m, n=n, M=M, C=C)
    pub.__dict__["_ctx"] = ctx
    priv = PrivateParams(
        m=m,
        n=n,
        M=M,
        P=P,
        nbar=nbar,
        W=W,
        delta=delta,
        A=A,
        ell=ell,
        omega_signs=tuple(1 if x > 0 else -1 for x in omega),
    )
    return pub, priv


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    informative: bool = False


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks if not c.informative)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tag = "INFO" if c.informative else ("PASS" if c.ok else "FAIL")
            line = f"{tag} {c.name}"
            if c.informative:
                line += f" ok={str(c.ok).lower()}"
            if c.detail:
                line += f" ({c.detail})"
            out.append(line)
        return out


def _least_factor_up_to(x: int, bound: int) -> int | None:
    if x % 2 == 0:
        return 2
    f = 3
    while f <= bound:
        if x % f == 0:
            return f
        f += 2
    return None


def validate(
    pub: PublicParams,
    priv: PrivateParams | None = None,
    nbar: int | None = None,
    rounds: int = 64,
) -> ValidationReport:
    """Itemized check of every generation constraint.

    The cofactor requirement accepts either branch: (M-1)/2 prime, or no
    prime factor of it up to 4n(2*nbar+3).  nbar defaults to n when only
    the public side is in hand.
    """
    checks: list[CheckResult] = []

    def add(name, ok, detail="", informative=False):
        checks.append(CheckResult(name, bool(ok), detail, informative))

    M, m, n = pub.M, pub.m, pub.n
    nb = nbar if nbar is not None else (priv.nbar if priv else n)

    add("modulus_prime", is_probable_prime(M, rounds), f"M = {M}")
    add("modulus_bit_length", ceil_lg(M) == m, f"ceil(lg M) = {ceil_lg(M)}, m = {m}")
    q = (M - 1) // 2
    q_prime = q >= 2 and is_probable_prime(q, rounds)
    add("cofactor_prime", q_prime, f"(M-1)/2 = {q}", informative=True)
    if q_prime:
        add("cofactor_structure", True, "(M-1)/2 is prime")
    else:
        bound = 4 * n * (2 * nb + 3)
        f = _least_factor_up_to(q, bound)
        add(
            "cofactor_structure",
            f is None,
            f"no prime factor of (M-1)/2 up to {bound}"
            if f is None
            else f"(M-1)/2 divisible by {f}",
        )
    add("initial_values_range", all(1 < c < M for c in pub.C))
    add("initial_values_distinct", len(set(pub.C)) == n)

    if priv is not None:
        add(
            "private_header_match",
            (priv.m, priv.n, priv.M) == (m, n, M),
            f"priv carries m={priv.m}, n={priv.n}",
        )
        add("basis_admissible", coprime.verify(priv.A))
        add("basis_in_bound", all(2 <= a <= priv.P for a in priv.A))
        add("nbar_range", n <= priv.nbar <= MAX_NBAR, f"nbar = {priv.nbar}")
        mags_ok = all(
            abs(l) % 2 == 1 and 5 <= abs(l) <= 2 * priv.nbar + 3 for l in priv.ell
        )
        add("lever_magnitudes", mags_ok)
        add("lever_injective", len(set(priv.ell)) == n)
        add(
            "lever_one_sign_per_magnitude",
            len({abs(l) for l in priv.ell}) == n,
        )
        if priv.omega_signs is not None:
            omega = set(priv.omega())
            add("lever_in_omega", all(l in omega for l in priv.ell))
        add("delta_invertible", math.gcd(priv.delta, M - 1) == 1)
        add("blinder_in_range", 1 < priv.W < M - 1)
        try:
            ctx = pub.context()
        except DomainError:
            ctx = None  # composite modulus already reported above
        if q_prime and ctx is not None:
            bound = 1 << (m - ceil_lg(priv.P))
            order = multiplicative_order_safe(ctx, priv.W)
            add(
                "blinder_order",
                order >= bound,
                f"order {order} vs bound 2^{m - ceil_lg(priv.P)}",
            )
        else:
            add(
                "blinder_order",
                True,
                "not checkable without a prime cofactor",
                informative=True,
            )
        if ctx is None:
            add("initial_values_consistent", False, "modulus is not prime")
        else:
            regen = _compute_initial_values(ctx, priv.A, priv.ell, priv.W, priv.delta)
            add("initial_values_consistent", regen == pub.C)
        cap = capacity_report(m, n, priv.nbar, priv.P)
        add(
            "capacity",
            cap["main_ok"],
            f"main 2^{cap['main_lg']:.1f}, alt 2^{cap['alt_lg']:.1f} vs 2^{m}",
            informative=True,
        )

    return ValidationReport(tuple(checks))


@dataclass(frozen=True)
class CollisionCertificate:
    """Private-side witness that two messages collide (or do not).

    k and kprime are the exact signed exponent sums of the two long
    shadows against the secret table; the certificate holds exactly when
    W**(k - kprime) equals the basis product of the long-shadow
    differences, which happens exactly when the digests agree.  kappa is
    the 2-adic valuation of k - kprime, and psi the odd-part root from
    the published collision relation, recorded when it exists.
    """

    k: int
    kprime: int
    kappa: int | None
    psi: int | None
    lhs: int
    rhs: int
    holds: bool


def regenerate_public(priv: PrivateParams) -> PublicParams:
    """Recompute the public side from the private one."""
    ctx = ModContext(priv.M)
    C = _compute_initial_values(ctx, priv.A, priv.ell, priv.W, priv.delta)
    return PublicParams(m=priv.m, n=priv.n, M=priv.M, C=C)


def certify_collision(
    priv: PrivateParams, pub: PublicParams, msg1: BitString, msg2: BitString
) -> CollisionCertificate:
    """Decide digest equality from the private side, without hashing."""
    ctx = pub.context()
    # the regenerated C depends only on priv, so cache it there
    regen = priv.__dict__.get("_regen_C")
    if regen is None or priv.__dict__.get("_regen_M") != pub.M:
        regen = _compute_initial_values(ctx, priv.A, priv.ell, priv.W, priv.delta)
        priv.__dict__["_regen_C"] = regen
        priv.__dict__["_regen_M"] = pub.M
    if regen != pub.C or (priv.m, priv.n, priv.M) != (pub.m, pub.n, pub.M):
        raise InconsistentParamsError("private side does not regenerate public side")
    if len(msg1) != pub.n or len(msg2) != pub.n:
        raise LengthMismatchError("messages must have exactly n bits")
    ls1 = bit_long_shadow(msg1)
    ls2 = bit_long_shadow(msg2)
    k = sum(e * l for e, l in zip(ls1, priv.ell))
    kprime = sum(e * l for e, l in zip(ls2, priv.ell))
    diff = k - kprime
    lhs = ctx.mod_pow(priv.W, diff)
    num = 1
    den = 1
    for a, e1, e2 in zip(priv.A, ls1, ls2):
        d = e2 - e1
        if d > 0:
            num = ctx.mod_mul(num, ctx.mod_pow(a, d))
        elif d < 0:
            den = ctx.mod_mul(den, ctx.mod_pow(a, -d))
    rhs = ctx.mod_mul(num, ctx.mod_inverse(den))
    kappa = None
    psi = None
    if diff != 0:
        kappa = (diff & -diff).bit_length() - 1
        odd = diff >> kappa
        if math.gcd(abs(odd), pub.M - 1) == 1:
            inv = pow(odd, -1, pub.M - 1)
            psi = ctx.mod_pow(rhs, inv)
    return CollisionCertificate(
        k=k, kprime=kprime, kappa=kappa, psi=psi, lhs=lhs, rhs=rhs, holds=lhs == rhs
    )


# ---------------------------------------------------------------------------
# File format: line-oriented ASCII, LF, decimal integers.

PUB_HEADER = "JUNA-PUB 1"
PRIV_HEADER = "JUNA-PRIV 1"


def serialize(obj: PublicParams | PrivateParams) -> str:
    if isinstance(obj, PublicParams):
        lines = [PUB_HEADER, f"m={obj.m}", f"n={obj.n}", f"M={obj.M}"]
        lines += [f"C={c}" for c in obj.C]
    elif isinstance(obj, PrivateParams):
        lines = [
            PRIV_HEADER,
            f"m={obj.m}",
            f"n={obj.n}",
            f"M={obj.M}",
            f"P={obj.P}",
            f"nbar={obj.nbar}",
            f"W={obj.W}",
            f"delta={obj.delta}",
        ]
        lines += [f"A={a}" for a in obj.A]
        lines += [f"L={l}" for l in obj.ell]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


class _LineReader:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.pos = 0

    @property
    def lineno(self) -> int:
        return self.pos + 1

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ParseError("unexpected end of file", line=self.lineno)
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def expect_int(self, key: str, signed: bool = False) -> int:
        lineno = self.lineno
        line = self.next()
        if "=" not in line:
            raise ParseError(f"expected {key}=<int>, got {line!r}", line=lineno)
        k, _, v = line.partition("=")
        if k != key:
            raise ParseError(f"expected key {key!r}, got {k!r}", line=lineno)
        body = v[1:] if signed and v.startswith("-") else v
        if not body.isdigit():
            raise ParseError(f"bad integer {v!r} for key {key!r}", line=lineno)
        return int(v)

    def done(self):
        if self.pos != len(self.lines):
            raise ParseError(
                f"trailing content {self.lines[self.pos]!r}", line=self.lineno
            )


def parse(text: str) -> PublicParams | PrivateParams:
    """Parse a parameter file; the header line picks the flavour."""
    r = _LineReader(text)
    header = r.next()
    if header == PUB_HEADER:
        m = r.expect_int("m")
        n = r.expect_int("n")
        M = r.expect_int("M")
        C = tuple(r.expect_int("C") for _ in range(n))
        r.done()
        try:
            return PublicParams(m=m, n=n, M=M, C=C)
        except DomainError as exc:
            raise ParseError(str(exc)) from exc
    if header == PRIV_HEADER:
        m = r.expect_int("m")
        n = r.expect_int("n")
        M = r.expect_int("M")
        P = r.expect_int("P")
        nbar = r.expect_int("nbar")
        W = r.expect_int("W")
        delta = r.expect_int("delta")
        A = tuple(r.expect_int("A") for _ in range(n))
        L = tuple(r.expect_int("L", signed=True) for _ in range(n))
        r.done()
        try:
            return PrivateParams(
                m=m,
                n=n,
                M=M,
                P=P,
                nbar=nbar,
                W=W,
                delta=delta,
                A=coprime.CoprimeSequence(A, bound=P),
                ell=L,
            )
        except (DomainError, ValueError) as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown header {header!r}", line=1)


def load(path) -> PublicParams | PrivateParams:
    with open(path, "r", encoding="ascii") as fh:
        return parse(fh.read())


def save(obj: PublicParams | PrivateParams, path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize(obj))


def bundled_public_params() -> PublicParams:
    """The published 80-bit / 256-value reference parameter set."""
    from importlib.resources import files

    text = files("juna.data").joinpath("m80_n256.pub").read_text(encoding="ascii")
    return parse(text)
