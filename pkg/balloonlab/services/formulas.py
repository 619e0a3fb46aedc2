"""
Closed-form evaluators and the extremal-construction predictions for
odd-balloonings. All arithmetic is exact (int / Fraction).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Optional

from balloonlab.config import DEFAULT_LARGE_N
from balloonlab.errors import DomainError, ParameterError, PreconditionError
from balloonlab.schemas import ConstructionPayload, TuranPredictionPayload
from balloonlab.services import graph6
from balloonlab.services.cracking import FbulletCase, fbullet_case
from balloonlab.services.graph import Graph, disjoint_union, make_named

logger = logging.getLogger(__name__)


def turan_edges(n: int, r: int) -> int:
    if n < 0 or r < 1:
        raise ParameterError(f"turan_edges needs n >= 0 and r >= 1, got n={n}, r={r}")
    q, s = divmod(n, r)
    return (n * n - s * (q + 1) ** 2 - (r - s) * q * q) // 2


def _window(nu: int, delta: int) -> int:
    return 2 * nu + nu // ((delta + 1) // 2)


def f_chvatal_hanson(n: int, nu: int, delta: int) -> int:
    """
    Maximum number of edges of an n-vertex graph with ν ≤ nu and Δ ≤ delta.

    Δ is first clamped to n - 1, which no graph on n vertices exceeds.

    Raises:
        PreconditionError: n ≤ 2ν, ν < 1 or Δ < 1.
    """
    if nu < 1 or delta < 1:
        raise PreconditionError(f"f(n,ν,Δ) needs ν >= 1 and Δ >= 1, got ν={nu}, Δ={delta}")
    if n < 2 * nu + 1:
        raise PreconditionError(f"f(n,ν,Δ) needs n >= 2ν+1, got n={n}, ν={nu}")
    delta = min(delta, n - 1)
    if delta <= 2 * nu:
        if n <= _window(nu, delta):
            if delta % 2 == 0:
                return n * delta // 2
            return min(n * delta // 2, nu * delta + (delta - 1) // 2 * (2 * (n - nu) // (delta + 3)))
        return nu * delta + nu // ((delta + 1) // 2) * (delta // 2)
    if n <= nu + delta:
        return max(comb(2 * nu + 1, 2), nu * (n + delta - nu) // 2)
    return nu * delta


def f_limit(nu: int, delta: int) -> int:
    """
    The value f(n,ν,Δ) takes for all n ≥ stabilization_n(ν, Δ).
    """
    if nu < 1 or delta < 1:
        raise PreconditionError(f"f(ν,Δ) needs ν >= 1 and Δ >= 1, got ν={nu}, Δ={delta}")
    if delta <= 2 * nu:
        return nu * delta + nu // ((delta + 1) // 2) * (delta // 2)
    return nu * delta


def stabilization_n(nu: int, delta: int) -> int:
    return max(nu + delta + 1, _window(nu, delta) + 1)


def h_edges(n: int, k: int, i: int) -> int:
    """e(H(n,k,i)) for H(n,k,i) = (M_{k-1} ∪ K_1) ∇ T_{n-2k+1,i}."""
    if k < 1 or i not in (1, 2):
        raise ParameterError(f"h(n,k,i) needs k >= 1 and i in (1, 2), got k={k}, i={i}")
    if n < 2 * k + 1:
        raise PreconditionError(f"h(n,k,i) needs n >= 2k+1, got n={n}, k={k}")
    m = n - 2 * k + 1
    return (k - 1) + (2 * k - 1) * m + turan_edges(m, i)


def erdos_stone_asymptotic(n: int, chi: int) -> Fraction:
    """Leading term (1 - 1/(χ-1)) · C(n, 2)."""
    if chi < 2:
        raise ParameterError(f"chromatic number must be at least 2, got {chi}")
    return Fraction(chi - 2, chi - 1) * Fraction(n * (n - 1), 2)


def friendship_prediction(t: int, n: int) -> int:
    """ex(n, F_t) = e(T_{n,2}) + f(t-1, t-1) in the triangle regime."""
    if t < 2:
        raise ParameterError(f"friendship prediction needs t >= 2, got {t}")
    return turan_edges(n, 2) + f_limit(t - 1, t - 1)


# ---------------------------------------------------------------- predictions

@dataclass(frozen=True)
class ApexJoinDescriptor:
    """A ∇ T_{n-|A|, parts}."""

    apex: Graph
    n: int
    parts: int
    apex_name: str = "A"

    def __post_init__(self):
        if self.parts < 1:
            raise ParameterError(f"parts must be at least 1, got {self.parts}")
        if self.n < self.apex.n:
            raise ParameterError(f"n={self.n} is smaller than the apex order {self.apex.n}")

    @property
    def rest(self) -> int:
        return self.n - self.apex.n

    def expected_edges(self) -> int:
        a = self.apex.n
        return self.apex.edge_count + a * self.rest + turan_edges(self.rest, self.parts)

    def describe(self) -> str:
        return f"({self.apex_name}) ∇ T_{{{self.rest},{self.parts}}}"

    def to_payload(self) -> ConstructionPayload:
        return ConstructionPayload(
            apex=self.apex_name,
            apex_graph6=graph6.encode(self.apex),
            n=self.n,
            parts=self.parts,
            edge_count=self.expected_edges(),
            description=self.describe(),
        )


class CaseTag(str, Enum):
    ALL_EVEN_CYCLES = "AllEvenCycles"
    ALL_SINGLE_EDGES = "AllSingleEdges"
    MIXED_TREES = "MixedTrees"
    CHI_AT_LEAST_4 = "ChiAtLeast4"


class PredictionMode(str, Enum):
    BALLOON = "balloon"
    DECOMPOSITION = "decomposition"
    CHI4 = "chi4"


@dataclass(frozen=True)
class TuranPrediction:
    case_tag: CaseTag
    mode: PredictionMode
    n: int
    construction: Optional[ApexJoinDescriptor] = None
    symbolic: Optional[str] = None
    conjectural: bool = False

    @property
    def edge_count(self) -> Optional[int]:
        return self.construction.expected_edges() if self.construction else None

    def to_payload(self) -> TuranPredictionPayload:
        return TuranPredictionPayload(
            case_tag=self.case_tag.value,
            mode=self.mode.value,
            n=self.n,
            construction=self.construction.to_payload() if self.construction else None,
            edge_count=self.edge_count,
            symbolic=self.symbolic,
            conjectural=self.conjectural,
        )

    @classmethod
    def from_payload(cls, payload: TuranPredictionPayload) -> "TuranPrediction":
        construction = None
        if payload.construction:
            c = payload.construction
            construction = ApexJoinDescriptor(graph6.decode(c.apex_graph6), c.n, c.parts, c.apex)
        return cls(CaseTag(payload.case_tag), PredictionMode(payload.mode), payload.n,
                   construction, payload.symbolic, payload.conjectural)


def _apex_for(F_bullet: Graph):
    case = fbullet_case(F_bullet)
    e = F_bullet.edge_count
    if case is FbulletCase.ALL_EVEN_CYCLES:
        k = F_bullet.n // 2
        apex = disjoint_union(make_named("matching", k - 1), make_named("complete", 1))
        return CaseTag.ALL_EVEN_CYCLES, apex, f"M_{k - 1} ∪ K_1"
    if case is FbulletCase.ALL_SINGLE_EDGES:
        return CaseTag.ALL_SINGLE_EDGES, make_named("complete", e), f"K_{e}"
    return CaseTag.MIXED_TREES, make_named("empty", e), f"E_{e}"


def _predict(F_bullet: Graph, n: int, mode: PredictionMode, parts: int, large_n: int) -> TuranPrediction:
    tag, apex, name = _apex_for(F_bullet)
    if n < F_bullet.n + 1:
        raise PreconditionError(f"n must be at least |F•|+1 = {F_bullet.n + 1}, got {n}")
    descriptor = ApexJoinDescriptor(apex, n, parts, name)
    return TuranPrediction(tag, mode, n, descriptor, conjectural=n < large_n)


def predict_ex_balloon(F_bullet: Graph, n: int, long_cycle_regime: bool = True,
                       large_n: int = DEFAULT_LARGE_N) -> TuranPrediction:
    """
    Predicted extremal graph for the odd-ballooning of K_1 ∇ F• with all cycles of length ≥ 5.

    Returns:
        TuranPrediction: apex ∇ T_{n-|apex|,2}; `conjectural` when n < large_n.

    Raises:
        DomainError: F• has a component that is neither a non-trivial tree nor
            an even cycle, or some cycle has length 3.
    """
    if not long_cycle_regime:
        raise DomainError("prediction is outside the long-cycle hypothesis (some cycle has length 3)")
    return _predict(F_bullet, n, PredictionMode.BALLOON, 2, large_n)


def predict_ex_decomposition(F_bullet: Graph, n: int, large_n: int = DEFAULT_LARGE_N) -> TuranPrediction:
    """Predicted extremal graph for the decomposition family: the one-part constructions."""
    return _predict(F_bullet, n, PredictionMode.DECOMPOSITION, 1, large_n)


def predict_chi4(n: int) -> TuranPrediction:
    return TuranPrediction(CaseTag.CHI_AT_LEAST_4, PredictionMode.CHI4, n, symbolic="EX(n,F°) = EX(n,F)")
