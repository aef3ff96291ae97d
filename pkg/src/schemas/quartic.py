from fractions import Fraction
from typing import List, Optional

from pydantic import BaseModel, field_serializer, field_validator

from ..utils.helpers import format_rational, to_fraction


class Quartic(BaseModel):
    """P = a x^4 + b x^2 + c x + d with rational coefficients"""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @field_validator("a", "b", "c", "d", mode="before")
    @classmethod
    def parse_coefficient(cls, value):
        return to_fraction(value)

    @field_serializer("a", "b", "c", "d")
    def serialize_coefficient(self, value: Fraction) -> str:
        return format_rational(value)

    def label(self) -> str:
        return ",".join(str(v) for v in (self.a, self.b, self.c, self.d))

    class Config:
        arbitrary_types_allowed = True
        frozen = True


class GateReport(BaseModel):
    quartic: Quartic
    irreducible: bool
    four_real_roots: bool
    real_root_count: int
    galois_S4: bool
    delta_integral: bool
    discriminant: Fraction
    delta: Fraction
    resolvent_cubic: List[Fraction]
    resolvent_irreducible: bool
    delta_is_square: bool
    rescale_factor: Optional[int] = None

    @field_validator("discriminant", "delta", mode="before")
    @classmethod
    def parse_rational(cls, value):
        return to_fraction(value)

    @field_validator("resolvent_cubic", mode="before")
    @classmethod
    def parse_cubic(cls, value):
        return [to_fraction(v) for v in value]

    @field_serializer("discriminant", "delta")
    def serialize_rational(self, value: Fraction) -> str:
        return format_rational(value)

    @field_serializer("resolvent_cubic")
    def serialize_cubic(self, value: List[Fraction]) -> List[str]:
        return [format_rational(v) for v in value]

    @property
    def passed(self) -> bool:
        """Irreducible, totally real and with Galois group S4"""
        return self.irreducible and self.four_real_roots and self.galois_S4

    class Config:
        arbitrary_types_allowed = True
