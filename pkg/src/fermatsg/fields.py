"""Scalar fields: exact rationals and prime fields."""
from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from fractions import Fraction

FIELD_ENV_VAR = "FERMATSG_FIELD"


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``characteristic == 0``) or GF(q)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(f"characteristic must be 0 or prime, got {self.characteristic}")

    @classmethod
    def parse(cls, text) -> "FieldSpec":
        if isinstance(text, FieldSpec):
            return text
        if text is None:
            text = os.environ.get(FIELD_ENV_VAR, "QQ")
        s = str(text).strip().upper()
        if s in ("QQ", "Q", "0", "RATIONALS"):
            return QQ
        if s.startswith("GF(") and s.endswith(")"):
            s = s[3:-1]
        return cls(int(s))

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __call__(self, value):
        """Coerce an int or Fraction into the canonical representation."""
        q = self.characteristic
        if q == 0:
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            return int(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, q)) % q
        return int(value) % q

    def inv(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return self(Fraction(1) / value)
        return pow(int(value), -1, self.characteristic)

    def div(self, a, b):
        return self(a * self.inv(b)) if self.characteristic else self(Fraction(a) / b)

    def divides_weight(self, weight) -> bool:
        q = self.characteristic
        return q != 0 and any(p % q == 0 for p in weight)

    def warn_if_dividing(self, weight):
        if self.divides_weight(weight):
            warnings.warn(
                f"characteristic {self.characteristic} divides a weight of {weight}; "
                "results are computed but the resolution checks are safest in characteristic 0",
                stacklevel=2,
            )

    def to_json(self) -> str:
        return "QQ" if self.characteristic == 0 else str(self.characteristic)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else "GF(%d)" % self.characteristic


QQ = FieldSpec(0)


def GF(q: int) -> FieldSpec:
    return FieldSpec(q)
