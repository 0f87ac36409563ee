"""Explicit (2,3)-generators of SL_12(q) with re-verifiable certificates."""

from .arith import FactoredInteger, compute_Q, factorize, is_prime
from .cert import Certificate, generate, generate_q, sweep, verify
from .gf import AlphaVector, FieldSpec, canonical_field, find_omega, min_poly_of_omega
from .matgen import GeneratorTriple, Mat, build_x, build_y, build_z, char_poly
from .repcheck import generation_verdict, irreducibility_verdict

__version__ = "0.1.0"

__all__ = [
    "AlphaVector",
    "Certificate",
    "FactoredInteger",
    "FieldSpec",
    "GeneratorTriple",
    "Mat",
    "build_x",
    "build_y",
    "build_z",
    "canonical_field",
    "char_poly",
    "compute_Q",
    "factorize",
    "find_omega",
    "generate",
    "generate_q",
    "generation_verdict",
    "irreducibility_verdict",
    "is_prime",
    "min_poly_of_omega",
    "sweep",
    "verify",
]
