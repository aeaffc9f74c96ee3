"""Outcome record for one exact series comparison."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import LaurentSeries, format_rational


@dataclass(frozen=True)
class Mismatch:
    power: Fraction
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        power = self.power
        if isinstance(power, Fraction) and power.denominator == 1:
            power = power.numerator
        elif isinstance(power, Fraction):
            power = format_rational(power)
        return {"power": power, "lhs": format_rational(self.lhs), "rhs": format_rational(self.rhs)}


@dataclass(frozen=True)
class IdentityReport:
    name: str
    order_checked: int
    first_mismatch: Mismatch | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order_checked,
            "passed": self.passed,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_json(),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name:<28} order {self.order_checked}"
        if self.first_mismatch is not None:
            m = self.first_mismatch
            text += f"  first mismatch at power {m.power}: {m.lhs} != {m.rhs}"
        if self.note:
            text += f"  ({self.note})"
        return text


def compare_series(name: str, lhs: LaurentSeries, rhs: LaurentSeries, order: int, note: str = "") -> IdentityReport:
    """Report on ``lhs == rhs`` for every power below ``order``."""
    hit = lhs.first_mismatch(rhs, order)
    mismatch = None if hit is None else Mismatch(Fraction(hit[0]), hit[1], hit[2])
    return IdentityReport(name, order, mismatch, note)


def failed(name: str, order: int, power, lhs, rhs, note: str = "") -> IdentityReport:
    return IdentityReport(name, order, Mismatch(Fraction(power), Fraction(lhs), Fraction(rhs)), note)
