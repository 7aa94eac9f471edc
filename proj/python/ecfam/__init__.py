"""Elliptic curve families with prescribed torsion over Q.

Rationals are accepted as int, fractions.Fraction or str and returned as
Fraction; points are pairs (x, y) with None for the point at infinity.
Curves are Curve objects, catalog references "ID@u", or sequences of
2 (A, B) or 5 (a1, a2, a3, a4, a6) coefficients.
"""
import os
from pathlib import Path

_data = Path(__file__).resolve().parent / "data"
if (_data / "catalog.json").exists():
    os.environ.setdefault("ECFAM_CATALOG", str(_data / "catalog.json"))
    os.environ.setdefault("ECFAM_PRINTED", str(_data / "printed_coefficients.json"))

from ._core import (  # noqa: E402
    BadSpecialization,
    Curve,
    UnfactoredError,
    builtin_scans,
    canonical_height,
    catalog_ids,
    catalog_path,
    discriminant_hints,
    family,
    independence,
    listed_points,
    local_data,
    root_number,
    scan,
    scan_spec,
    specialize,
    torsion,
    verify_all,
)

__all__ = [
    "BadSpecialization",
    "Curve",
    "UnfactoredError",
    "builtin_scans",
    "canonical_height",
    "catalog_ids",
    "catalog_path",
    "discriminant_hints",
    "family",
    "independence",
    "listed_points",
    "local_data",
    "root_number",
    "scan",
    "scan_spec",
    "specialize",
    "torsion",
    "verify_all",
]
