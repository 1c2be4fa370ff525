"""Request and response models for the service API.

Rationals travel as strings ("3", "-1/2") so nothing is lost to floats;
algebra documents use the canonical JSON layout from the documents
module and are validated there, keeping a single source of truth.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "1"


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# requests
# ---------------------------------------------------------------------------

class AnalyzeRequest(_Model):
    document: Dict[str, Any]


class SnpRequest(_Model):
    document: Dict[str, Any]
    w1_samples: int = Field(default=0, ge=0, le=100000)
    seed: int = 0


class StructureRequest(_Model):
    document: Dict[str, Any]
    field_coords: List[str] = Field(alias="field")
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class Classify4dRequest(_Model):
    trials: int = Field(default=25, ge=0, le=10000)
    seed: int = 0
    perturb_family: Optional[str] = None


class DerivationsRequest(_Model):
    document: Dict[str, Any]
    skew: bool = False


class GtParseRequest(_Model):
    text: str
    m: int = Field(ge=2, le=9)
    n: int = Field(ge=1, le=9)


class ExtendRequest(_Model):
    document: Dict[str, Any]
    derivation: List[List[str]]
    a_dim: int = Field(default=1, ge=1, le=100)


class ScanRequest(_Model):
    document: Dict[str, Any]
    field_coords: List[str] = Field(alias="field")
    gammas: List[float] = Field(default_factory=lambda: [1.0, 10.0, 100.0])
    samples: int = Field(default=200, ge=1, le=100000)
    seed: int = 0
    tolerance: float = 1e-9
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# ---------------------------------------------------------------------------
# responses
# ---------------------------------------------------------------------------

class HealthResponse(_Model):
    status: str
    name: str
    version: str
    schema_version: str


class AnalyzeResponse(_Model):
    dim: int
    labels: Optional[List[str]]
    valid: bool
    antisymmetry_ok: bool
    jacobi_ok: bool
    first_violation: Optional[str]
    unimodular: Optional[bool] = None
    solvable: Optional[bool] = None
    nilpotent: Optional[bool] = None
    nilpotency_class: Optional[int] = None
    center_dim: Optional[int] = None
    derived_dims: Optional[List[int]] = None
    lower_central_dims: Optional[List[int]] = None
    vergne_type: Optional[List[int]] = None
    metabelian_signature: Optional[List[int]] = None
    has_gram: bool = False


class SnpResponse(_Model):
    dim: int
    solution_dim: int
    solution_basis: List[List[str]]
    is_central_only: bool
    parallel_verified: bool
    w2_verified: bool
    unimodular: bool
    w1_max_sampled: Optional[float] = None


class StructureResponse(_Model):
    ideal_ok: bool
    solvable_ok: bool
    unimodular_ok: bool
    skew_ok: bool
    derived_match_ok: bool
    ok: bool


class SweepEntryModel(_Model):
    family: str
    form: int
    kind: str
    params: Dict[str, str]
    expected_dim: int
    computed_dim: Optional[int]
    match: bool
    valid: bool


class FamilySummary(_Model):
    family: str
    form: int
    draws: int
    mismatches: int


class Classify4dResponse(_Model):
    trials: int
    seed: int
    perturb_family: Optional[str]
    total_draws: int
    mismatch_count: int
    ok: bool
    families: List[FamilySummary]
    mismatches: List[SweepEntryModel]


class DerivationsResponse(_Model):
    dim: int
    skew: bool
    basis_dim: int
    basis: List[List[List[str]]]


class GtParseResponse(_Model):
    m: int
    n: int
    terms: List[List[int]]
    text: str
    surjective: bool
    dim: int
    metabelian_signature: Optional[List[int]]


class ExtendResponse(_Model):
    document: Dict[str, Any]
    dim: int
    snp_dim: int
    complement_dim: int
    complement_contained: bool


class ScanEntryModel(_Model):
    gamma: float
    max_k: float
    positive_count: int
    verdict: str


class ScanResponse(_Model):
    field_coords: List[str] = Field(alias="field")
    samples: int
    seed: int
    tolerance: float
    gamma0_estimate: Optional[float]
    entries: List[ScanEntryModel]
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ErrorResponse(_Model):
    error_class: str
    message: str
    details: Optional[List[str]] = None
