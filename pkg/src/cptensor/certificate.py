"""Outcome records shared by the certifiers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

POSITIVE = "positive"
NEGATIVE = "negative"
PASSES = "passes"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not_applicable"


def fmt(value) -> str:
    """Render an exact value as an integer or ``p/q``."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def fmt_index(idx) -> str:
    return ",".join(str(i) for i in idx)


@dataclass(frozen=True)
class Witness:
    """A concrete violated relation between two exact quantities.

    ``text`` is the human readable inequality, e.g.
    ``A(1,2)^2 = 4 > A(1,1)*A(2,2) = 1``.
    """

    index: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    text: str

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class Certificate:
    """Result of a certification.

    ``outcome`` is one of ``positive`` (with ``decomposition``),
    ``negative`` (with ``witness``), ``passes`` (a necessary condition
    holds; never a proof of positivity), ``inconclusive`` or
    ``not_applicable`` (with ``reason``).
    """

    outcome: str
    decomposition: Any = None
    witness: Witness | None = None
    reason: str = ""

    @property
    def positive(self) -> bool:
        return self.outcome == POSITIVE

    @property
    def negative(self) -> bool:
        return self.outcome == NEGATIVE
