"""Galois descent on sectors: field descriptors, F-conjugacy, twisted forms."""

from stackcount.galois.descent import (
    FConjClass,
    QuadraticCharacter,
    TwistDatum,
    TwistMode,
    f_conjugacy_classes,
    quadratic_characters,
    refines,
    twisted_orbits,
)
from stackcount.galois.field import FieldDescriptor, units_mod

__all__ = [
    "FConjClass",
    "FieldDescriptor",
    "QuadraticCharacter",
    "TwistDatum",
    "TwistMode",
    "f_conjugacy_classes",
    "quadratic_characters",
    "refines",
    "twisted_orbits",
    "units_mod",
]
