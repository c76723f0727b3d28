"""Exact list decoding of Barnes-Wall lattices over the Gaussian integers."""

from bwlist.arith import (
    CVector,
    GaussianInt,
    NotDivisible,
    QComplex,
    half_relation,
    rsd,
)
from bwlist.decode import DecodeEntry, DecodeList, MaxListExceeded, list_decode
from bwlist.lattice import BWPoint, NotAMember, generator_matrix, is_member

__all__ = [
    "BWPoint",
    "CVector",
    "DecodeEntry",
    "DecodeList",
    "GaussianInt",
    "MaxListExceeded",
    "NotAMember",
    "NotDivisible",
    "QComplex",
    "generator_matrix",
    "half_relation",
    "is_member",
    "list_decode",
    "rsd",
]
