"""Request and response models for the service endpoints.

Every response carries a top-level "schema": "verlinde-kit/1" key so
downstream parsers can pin the format.  Fractions are serialized as
strings like "1/8"; weights, grades, and torus classes as integer lists.
"""

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_ID = "verlinde-kit/1"


class ConfigBody(BaseModel):
    """Per-request overrides of the server's base configuration."""

    model_config = ConfigDict(extra="forbid")

    tolerance: float | None = None
    torus_cap: int | None = None
    weyl_cap: int | None = None
    rootspace_cap: int | None = None
    weight_cap: int | None = None
    parallelism: int | None = None


class LieRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str
    rank: int
    config: ConfigBody | None = None


class FusionRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str
    rank: int
    level: int
    k: list[int] | None = None
    j: list[int] | None = None
    verify: bool = False
    config: ConfigBody | None = None


class RepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    quiver: dict
    level: int | None = None
    config: ConfigBody | None = None


class DynkinRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    quiver: dict
    family: str | None = None
    rank: int | None = None
    level: int | None = None
    config: ConfigBody | None = None


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_id: str = Field(SCHEMA_ID, alias="schema")


class HealthReport(Report):
    status: str
    name: str
    version: str


class CenterReport(BaseModel):
    order: int
    cyclic_orders: list[int]


class LieReport(Report):
    family: str
    rank: int
    cartan: list[list[int]]
    simply_laced: bool
    positive_roots: list[list[int]]
    highest_root: list[int]
    marks: list[int]
    comarks: list[int]
    coxeter_number: int
    dual_coxeter: int
    classical_exponents: list[int]
    weyl_order: int
    center: CenterReport


class FusionEntry(BaseModel):
    k: list[int]
    j: list[int]
    s: list[int]
    n: int


class FusionReport(Report):
    family: str
    rank: int
    level: int
    quantum_coxeter: int
    basis: list[list[int]]
    unit: list[int]
    entries: list[FusionEntry]
    verified: bool | None


class CheckItem(BaseModel):
    axiom: str
    ok: bool
    detail: str


class ValidateReport(Report):
    ok: bool
    checks: list[CheckItem]


class SpectrumPoint(BaseModel):
    point: list[str]
    multiplicity: int


class SpectrumReport(Report):
    dimension: int
    points: list[SpectrumPoint]
    total: int


class ExponentEntry(BaseModel):
    point: list[str]
    m_phi: int
    m_phi0: int | None
    m_pi: int
    exponents: list[int]


class ExponentReport(Report):
    quantum_coxeter: int
    orbit: list[list[int]]
    entries: list[ExponentEntry]
    matches_spectrum: bool


class RootEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    klass: list[int] = Field(alias="class")
    vertex: str
    norm2: int


class RootsReport(Report):
    count: int
    distinct: int
    roots: list[RootEntry]


class DynkinReport(Report):
    ok: bool
    natural: bool | None
    simple: bool | None
    graded: bool | None
    reason: str | None
    report: dict | None
