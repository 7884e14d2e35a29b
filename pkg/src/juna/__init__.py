"""Single-block multiplicative hash over a prime field.

A message of n bits is encoded into its long shadows and compressed to
an m-bit digest as a product of public initial values raised to those
shadows, modulo a safe prime.  The package covers parameter generation
and validation, the compression step with a cost-audited fast path, a
discrete-log comparison hash, reformation of classical hash outputs,
and an executable cryptanalysis harness.
"""

from .bitcodec import (
    BitString,
    LongShadowString,
    ShadowString,
    bit_long_shadow,
    bit_shadow,
    bit_shadow_streaming,
    pad_to_length,
    recover_bits,
)
from .compress import Digest, digest, digest_oracle, parse_digest, render
from .coprime import CoprimeSequence
from .errors import JunaError
from .numtheory import ModContext, ceil_lg, is_probable_prime
from .params import (
    CollisionCertificate,
    PrivateParams,
    PublicParams,
    bundled_public_params,
    certify_collision,
    initialize,
    validate,
)

__all__ = [
    "BitString",
    "CollisionCertificate",
    "CoprimeSequence",
    "Digest",
    "JunaError",
    "LongShadowString",
    "ModContext",
    "PrivateParams",
    "PublicParams",
    "ShadowString",
    "bit_long_shadow",
    "bit_shadow",
    "bit_shadow_streaming",
    "bundled_public_params",
    "ceil_lg",
    "certify_collision",
    "digest",
    "digest_oracle",
    "initialize",
    "is_probable_prime",
    "pad_to_length",
    "parse_digest",
    "recover_bits",
    "render",
    "validate",
]

__version__ = "0.1.0"
