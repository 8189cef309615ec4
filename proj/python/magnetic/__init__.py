"""Exact checks for magnetic modular forms and their additive lifts.

Rationals cross the boundary as strings ``"p"`` or ``"p/q"``; cyclotomic
numbers as ``{"order": M, "coeffs": [...]}`` in the power basis of
Q(zeta_M).
"""

from fractions import Fraction

from ._core import (
    Form,
    Lattice,
    Lift,
    PrecisionError,
    check_classical,
    classical_series,
    fkdd,
    j_report,
    run_cli,
    weil_relations_hold,
    weil_representation,
)

__all__ = [
    "Form",
    "Lattice",
    "Lift",
    "PrecisionError",
    "check_classical",
    "classical_series",
    "cyclotomic_to_complex",
    "fkdd",
    "j_report",
    "q_series",
    "run_cli",
    "weil_relations_hold",
    "weil_representation",
]


def q_series(expr, prec):
    """Weight and {n: Fraction} for an expression in E4, E6, Delta, j."""
    weight, coeffs = classical_series(expr, prec)
    return weight, {n: Fraction(c) for n, c in coeffs.items()}


def cyclotomic_to_complex(value):
    import cmath

    order = value["order"]
    return sum(
        float(Fraction(c)) * cmath.exp(2j * cmath.pi * k / order)
        for k, c in enumerate(value["coeffs"])
    )
