"""Closed-form tables for the five-term identity: cone sign conventions for
the five sub-quadruples and the ideal-decomposition shift vectors."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def five_term_tables(slopes: Sequence[Fraction]) -> dict:
    """Sign tables and shift vectors for the slope order l3 < l1 < l4 < l2 < l5.

    Keys ``C2345`` ... ``C1245`` are plus-component sign patterns for the
    corresponding sub-quadruples; ``u1``/``u2`` shift the (1,3,4,5) series,
    ``v1``/``v2`` the (1,2,3,5) series, ``w1``/``w2``/``w3`` the (1,2,4,5)
    series, all in sub-quadruple slot order.
    """
    l1, l2, l3, l4, l5 = (Fraction(s) for s in slopes)
    return {
        "C2345": (1, 1, -1, 1),
        "C1234": (1, -1, -1, 1),
        "C1345": (1, 1, -1, 1),
        "C1235": (1, -1, -1, 1),
        "C1245": (1, -1, -1, 1),
        "u1": (
            (l4 - l3) * (l2 - l1) / ((l4 - l1) * (l3 - l1)),
            (l1 - l2) / (l3 - l1),
            (l1 - l2) / (l1 - l4),
            Fraction(0),
        ),
        "u2": (
            (l5 - l3) * (l2 - l1) / ((l5 - l1) * (l3 - l1)),
            (l1 - l2) / (l3 - l1),
            Fraction(0),
            (l2 - l1) / (l5 - l1),
        ),
        "v1": (
            (l5 - l4) / (l5 - l1),
            Fraction(0),
            (l5 - l4) / (l3 - l5),
            (l5 - l4) * (l1 - l3) / ((l5 - l1) * (l3 - l5)),
        ),
        "v2": (
            Fraction(0),
            (l5 - l4) / (l5 - l2),
            (l5 - l4) / (l3 - l5),
            (l5 - l4) * (l2 - l3) / ((l5 - l2) * (l3 - l5)),
        ),
        "w1": (
            (l5 - l3) / (l5 - l1),
            (l4 - l3) / (l2 - l4),
            (l3 - l2) / (l2 - l4),
            (l3 - l1) / (l5 - l1),
        ),
        "w2": (
            Fraction(0),
            (l5 - l4) * (l2 - l3) / ((l5 - l2) * (l2 - l4)),
            (l3 - l2) / (l2 - l4),
            (l3 - l2) / (l5 - l2),
        ),
        "w3": (
            Fraction(0),
            (l4 - l3) / (l2 - l4),
            (l5 - l2) * (l3 - l4) / ((l2 - l4) * (l5 - l4)),
            (l3 - l4) / (l5 - l4),
        ),
    }
