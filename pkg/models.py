from typing import Annotated, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer

# decimal output carries 15 significant digits
Decimal15 = Annotated[float, PlainSerializer(lambda x: float(f"{x:.15g}"), return_type=float, when_used="json")]


class FamilyTableRecord(BaseModel):
    family: str
    alpha: Optional[str] = None
    nmax: int
    entries: List[List[str]]


class CacheEnvelope(BaseModel):
    version: int
    digest: str
    table: FamilyTableRecord


class SeriesRecord(BaseModel):
    family: str
    alpha: Optional[str] = None
    order: int
    coefficients: List[List[str]]


class ResidualReport(BaseModel):
    identity: str
    params: Dict[str, str] = Field(default_factory=dict)
    order: int
    zero: bool
    first_nonzero_order: Optional[int] = None


class ResidualBatch(BaseModel):
    name: str
    reports: List[ResidualReport]
    passed: bool = Field(alias="pass")

    model_config = ConfigDict(populate_by_name=True)


class RecurrenceRow(BaseModel):
    n: int
    form: str
    zero: bool


class RecurrenceReport(BaseModel):
    which: str
    nmax: int
    rows: List[RecurrenceRow]
    all_zero: bool


class CdhReport(BaseModel):
    identity: str
    params: Dict[str, str]
    order: int
    samples: int
    zero: bool
    first_nonzero_order: Optional[int] = None


class MzvValue(BaseModel):
    index: str
    N: int
    value: Decimal15
    tail_estimate: Decimal15


class NumericReport(BaseModel):
    identity: str
    l: int
    value: Decimal15
    reference: Decimal15
    difference: Decimal15
    N: int
    tail_estimate: Decimal15
    value_tail: Decimal15
    reference_tail: Decimal15
    tolerance: Decimal15
    passed: bool = Field(alias="pass")

    model_config = ConfigDict(populate_by_name=True)


class ZeroCertificate(BaseModel):
    family: Optional[str] = None
    n: Optional[int] = None
    alpha: Optional[str] = None
    degree: int
    degree_sqfree: int
    roots_in_halfline: int
    roots_positive: int
    root_at_zero: bool
    multiplicity_excess: int
    passed: bool = Field(alias="pass")
    witness: Optional[List[str]] = None

    model_config = ConfigDict(populate_by_name=True)


class CertificateBatch(BaseModel):
    family: str
    alpha: Optional[str] = None
    nmax: int
    certificates: List[ZeroCertificate]
    passed: bool = Field(alias="pass")

    model_config = ConfigDict(populate_by_name=True)


class CdhBatch(BaseModel):
    name: str
    reports: List[CdhReport]
    passed: bool = Field(alias="pass")

    model_config = ConfigDict(populate_by_name=True)


class RecurrenceBatch(BaseModel):
    reports: List[RecurrenceReport]
    passed: bool = Field(alias="pass")

    model_config = ConfigDict(populate_by_name=True)
