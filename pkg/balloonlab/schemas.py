"""JSON payloads emitted by the CLI and accepted as input files."""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

REPORT_SCHEMA_VERSION = "1.0"


class EdgeLength(BaseModel):
    u: int = Field(ge=0)
    v: int = Field(ge=0)
    length: int = Field(ge=3)


class BalloonSpecPayload(BaseModel):
    skeleton: str
    lengths: List[EdgeLength] = []
    default_length: Optional[int] = Field(default=None, ge=3)


class GraphSummary(BaseModel):
    graph6: str
    canonical_form: str
    vertices: int
    edges: int
    bipartite: bool
    q: Optional[int] = None


class BalloonPayload(BaseModel):
    graph6: str
    vertices: int
    edges: int
    long_cycle_regime: bool
    cycles: List[Dict[str, Any]]


class ConstructionPayload(BaseModel):
    apex: str
    apex_graph6: str
    n: int
    parts: int
    edge_count: Optional[int]
    description: str


class TuranPredictionPayload(BaseModel):
    case_tag: Literal["AllEvenCycles", "AllSingleEdges", "MixedTrees", "ChiAtLeast4"]
    mode: str
    n: int
    construction: Optional[ConstructionPayload] = None
    edge_count: Optional[int] = None
    symbolic: Optional[str] = None
    conjectural: bool = False


class CertificatePayload(BaseModel):
    host: str
    host_vertices: int
    host_edges: int
    family_size: int
    verdict: Literal["free", "contains", "indeterminate"]
    witness_member: Optional[str] = None
    witness_embedding: Optional[List[int]] = None
    nodes: int
    shortcut: Optional[str] = None
    lower_bound: Optional[str] = None


class LowerBoundPayload(BaseModel):
    mode: str
    prediction: TuranPredictionPayload
    observed_edges: int
    edge_match: bool
    certificate: CertificatePayload
    cross_check: Optional[CertificatePayload] = None
    routes_agree: Optional[bool] = None


class FamilyPayload(BaseModel):
    skeleton: str
    cracked: Optional[List[int]] = None
    members: List[GraphSummary]
    q: Optional[int] = None


class DecompositionPayload(BaseModel):
    status: Literal["complete", "indeterminate"]
    r: int
    t_max: int
    size_cap: int
    members: List[GraphSummary]
    minimal_t: Dict[str, int]
    at_size_cap: List[str]
    candidates_tested: int


class SearchResultPayload(BaseModel):
    n: int
    optimum: int
    exhaustive: bool
    nodes_explored: int
    level_optima: List[int]
    witnesses: Optional[List[str]] = None


class CheckResult(BaseModel):
    name: str
    inputs: Dict[str, Any] = {}
    provenance: Literal["PAPER", "TRIVIAL", "DERIVED"]
    expected: Optional[Any] = None
    observed: Optional[Any] = None
    verdict: Literal["pass", "fail", "indeterminate"]
    runtime_seconds: float = 0.0
    note: Optional[str] = None


class VerificationReportPayload(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    status: Literal["pass", "fail", "indeterminate"]
    quick: bool
    checks: List[CheckResult]
