"""The compression step: an n-bit nonzero message to an m-bit digest.

The digest is the product of the public initial values raised to the
message's long shadows, reduced modulo M.  The fast path multiplies each
initial value in once per unit of its long shadow, so one call costs
sum(long_shadows) - 1 modular multiplications, at most 2n - 1.  An
independent square-and-multiply evaluation of the same formula exists
solely to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitcodec import BitString, bit_long_shadow
from .errors import DomainError, LengthMismatchError, ParseError
from .numtheory import ModContext
from .params import PublicParams


@dataclass(frozen=True)
class Digest:
    """An integer in [1, M-1], rendered as fixed-width lowercase hex."""

    value: int
    m: int

    def __post_init__(self):
        if self.value < 1:
            raise DomainError("digest value must be positive")
        if self.value >> self.m:
            raise DomainError(f"digest value does not fit in {self.m} bits")

    @property
    def hex(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)


def _context_for(pub: PublicParams, ctx: ModContext | None) -> ModContext:
    if ctx is None:
        return pub.context()
    if ctx.M != pub.M:
        raise DomainError("context modulus does not match parameters")
    return ctx


def digest(pub: PublicParams, msg: BitString, ctx: ModContext | None = None) -> Digest:
    """Hash a message by repeated accumulation.

    Each initial value is folded into the accumulator once per unit of
    its long shadow, which keeps the multiplication count at
    sum(long_shadows) - 1 <= 2n - 1.
    """
    ctx = _context_for(pub, ctx)
    if len(msg) != pub.n:
        raise LengthMismatchError(f"message has {len(msg)} bits, parameters want {pub.n}")
    shadows = bit_long_shadow(msg)
    acc = None
    for c, e in zip(pub.C, shadows.values):
        for _ in range(e):
            acc = c if acc is None else ctx.mod_mul(acc, c)
    return Digest(value=acc, m=pub.m)


def digest_oracle(pub: PublicParams, msg: BitString, ctx: ModContext | None = None) -> Digest:
    """Same formula, evaluated per-term by square-and-multiply.

    Exists only as an independent cross-check of digest().
    """
    ctx = _context_for(pub, ctx)
    if len(msg) != pub.n:
        raise LengthMismatchError(f"message has {len(msg)} bits, parameters want {pub.n}")
    shadows = bit_long_shadow(msg)
    acc = None
    for c, e in zip(pub.C, shadows.values):
        if e == 0:
            continue
        term = ctx.mod_pow(c, e)
        acc = term if acc is None else ctx.mod_mul(acc, term)
    return Digest(value=acc, m=pub.m)


def render(d: Digest) -> str:
    """Lowercase hex, zero-padded to ceil(m/4) digits."""
    width = (d.m + 3) // 4
    return format(d.value, f"0{width}x")


def parse_digest(text: str, m: int) -> Digest:
    """Parse the fixed-width hex rendering back into a Digest."""
    width = (m + 3) // 4
    text = text.strip()
    if len(text) != width:
        raise ParseError(f"digest text must be {width} hex digits, got {len(text)}")
    try:
        value = int(text, 16)
    except ValueError:
        raise ParseError(f"not hex: {text!r}") from None
    if value < 1 or value >> m:
        raise ParseError(f"digest value {value} outside [1, 2^{m})")
    return Digest(value=value, m=m)
