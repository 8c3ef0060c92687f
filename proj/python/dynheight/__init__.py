from ._dynheight import (
    canonical_height,
    certify,
    certify_cubic,
    critical_height,
    critical_monic_ratio,
    enumerate_pcf_quadratics,
    monic_centred,
    poly_roundtrip,
)

__all__ = [
    "canonical_height",
    "certify",
    "certify_cubic",
    "critical_height",
    "critical_monic_ratio",
    "enumerate_pcf_quadratics",
    "monic_centred",
    "poly_roundtrip",
]
