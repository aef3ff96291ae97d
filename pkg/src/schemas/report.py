from enum import Enum
from fractions import Fraction
from typing import Any, List, Optional

from pydantic import BaseModel, Field, field_serializer, field_validator, model_validator

from ..config import settings
from ..utils.helpers import format_rational, to_fraction
from .quartic import GateReport, Quartic


class ClaimStatus(str, Enum):
    """Outcome of one claim verifier"""

    VERIFIED_EXACT = "verified-exact"
    VERIFIED_NUMERIC = "verified-numeric"
    FAILED = "failed"
    SKIPPED = "skipped"


class ReportFormat(str, Enum):
    JSON = "json"
    MARKDOWN = "md"


class OverallStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    GATE_REJECTED = "gate-rejected"


class ClaimReport(BaseModel):
    """One claim: identifier, anchor, status and the computed witness"""

    id: str
    title: str
    anchor: str
    status: ClaimStatus
    witness: Any = None  # Plain JSON data, see utils.helpers.jsonable
    elapsed_ms: float = 0.0

    @property
    def verified(self) -> bool:
        return self.status in (ClaimStatus.VERIFIED_EXACT, ClaimStatus.VERIFIED_NUMERIC)


class RunConfig(BaseModel):
    """Validated command-line configuration"""

    poly: Optional[Quartic] = None
    search: Optional[int] = Field(None, ge=1)
    claims: List[str] = Field(default_factory=list)  # empty means every claim
    precision_bits: int = Field(settings.precision_bits, ge=32)
    samples: int = Field(settings.samples, ge=1)
    seed: int = settings.seed
    format: ReportFormat = ReportFormat(settings.report_format)
    out: Optional[str] = None
    c_max: int = Field(settings.c_max, ge=1)
    k1_max: int = Field(settings.k1_max, ge=1)
    omega4: Fraction = Fraction(settings.omega4)
    charge_c: int = Field(settings.charge_c, ge=1)
    bogomolov_k: int = Field(settings.bogomolov_k, ge=1)

    @field_validator("omega4", mode="before")
    @classmethod
    def parse_omega4(cls, value):
        value = to_fraction(value)
        if value <= 0:
            raise ValueError("omega4 must be positive")
        return value

    @field_serializer("omega4")
    def serialize_omega4(self, value: Fraction) -> str:
        return format_rational(value)

    @model_validator(mode="after")
    def check_source(self):
        if (self.poly is None) == (self.search is None):
            raise ValueError("Exactly one of poly and search must be given")
        return self

    class Config:
        arbitrary_types_allowed = True


class SuiteReport(BaseModel):
    """Everything one run produced"""

    config: RunConfig
    gate: Optional[GateReport] = None
    claims: List[ClaimReport] = Field(default_factory=list)
    overall: OverallStatus
    total_elapsed_ms: float = 0.0

    @classmethod
    def assemble(
        cls,
        config: RunConfig,
        gate: Optional[GateReport],
        claims: List[ClaimReport],
        total_elapsed_ms: float,
    ) -> "SuiteReport":
        if gate is not None and not gate.passed:
            overall = OverallStatus.GATE_REJECTED
        elif all(c.verified for c in claims):
            overall = OverallStatus.VERIFIED
        else:
            overall = OverallStatus.FAILED
        ordered = sorted(claims, key=lambda c: c.id)
        return cls(
            config=config,
            gate=gate,
            claims=ordered,
            overall=overall,
            total_elapsed_ms=total_elapsed_ms,
        )

    class Config:
        arbitrary_types_allowed = True
