import random

import pytest

from juna.bitcodec import BitString, bit_long_shadow
from juna.compress import Digest, digest, digest_oracle, parse_digest, render
from juna.errors import (
    DomainError,
    LengthMismatchError,
    ParseError,
    ZeroMessageError,
)


def test_tiny_digest_hand_checked(tiny_pub):
    # long shadows of 1111 are 2222, so d = 210^2 mod 101 = 64
    msg = BitString.from_string("1111")
    assert digest(tiny_pub, msg).value == 64
    assert digest_oracle(tiny_pub, msg).value == 64


def test_digest_equals_oracle_randomized(toy_pub, mid_pub):
    rng = random.Random(8)
    for pub in (toy_pub, mid_pub):
        for _ in range(1000):
            v = rng.getrandbits(pub.n) or 1
            msg = BitString.from_int(v, pub.n)
            assert digest(pub, msg).value == digest_oracle(pub, msg).value


def test_digest_deterministic(toy_pub):
    msg = BitString.from_string("01010110")
    assert digest(toy_pub, msg) == digest(toy_pub, msg)


def test_single_one_bit_is_power_of_initial_value(toy_pub):
    # a lone 1-bit carries the whole weight n and cannot double
    for x in range(toy_pub.n):
        msg = BitString.from_int(1 << x, toy_pub.n)
        expected = pow(toy_pub.C[toy_pub.n - 1 - x], toy_pub.n, toy_pub.M)
        assert digest(toy_pub, msg).value == expected


def test_mulcount_bound(toy_pub, mid_pub):
    for pub in (toy_pub, mid_pub):
        ctx = pub.context()
        rng = random.Random(21)
        for _ in range(200):
            v = rng.getrandbits(pub.n) or 1
            msg = BitString.from_int(v, pub.n)
            before = ctx.mulcount
            digest(pub, msg, ctx)
            used = ctx.mulcount - before
            expected = sum(bit_long_shadow(msg).values) - 1
            assert used == expected
            assert used <= 2 * pub.n - 1


def test_digest_rejects_bad_messages(toy_pub):
    with pytest.raises(ZeroMessageError):
        digest(toy_pub, BitString.from_string("0" * 8))
    with pytest.raises(LengthMismatchError):
        digest(toy_pub, BitString.from_string("1111"))


def test_digest_rejects_foreign_context(toy_pub, tiny_pub):
    with pytest.raises(DomainError):
        digest(toy_pub, BitString.from_string("1" * 8), tiny_pub.context())


def test_render_examples():
    assert render(Digest(value=64, m=12)) == "040"
    assert render(Digest(value=1, m=80)) == "0" * 19 + "1"
    assert len(render(Digest(value=1, m=80))) == 20


def test_render_parse_round_trip():
    rng = random.Random(4)
    for _ in range(200):
        m = rng.choice((7, 12, 20, 80))
        value = rng.randrange(1, 1 << m)
        d = Digest(value=value, m=m)
        assert parse_digest(render(d), m) == d


def test_parse_digest_errors():
    with pytest.raises(ParseError):
        parse_digest("zz", 8)
    with pytest.raises(ParseError):
        parse_digest("0", 12)  # wrong width
    with pytest.raises(ParseError):
        parse_digest("000", 12)  # zero value out of range


def test_mulcount_survives_concurrent_hashing(toy_pub):
    # the counter must not lose updates under concurrent digest calls
    import threading

    ctx = toy_pub.context()
    rng = random.Random(55)
    batches = [
        [BitString.from_int(rng.randrange(1, 256), 8) for _ in range(100)]
        for _ in range(4)
    ]
    expected = sum(
        sum(bit_long_shadow(m).values) - 1 for batch in batches for m in batch
    )
    before = ctx.mulcount
    threads = [
        threading.Thread(target=lambda b=b: [digest(toy_pub, m, ctx) for m in b])
        for b in batches
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert ctx.mulcount - before == expected
