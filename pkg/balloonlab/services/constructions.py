import logging
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool
from typing import Iterator, List, Optional, Tuple

from balloonlab.errors import ParameterError, PreconditionError
from balloonlab.schemas import CertificatePayload, LowerBoundPayload
from balloonlab.services import graph6
from balloonlab.services.ballooning import BalloonSpec, odd_balloon
from balloonlab.services.canonical import GraphFamily
from balloonlab.services.cracking import cracking_family
from balloonlab.services.formulas import (
    ApexJoinDescriptor,
    PredictionMode,
    TuranPrediction,
    predict_ex_balloon,
    predict_ex_decomposition,
)
from balloonlab.services.graph import Graph, disjoint_union, is_bipartite, join, make_named
from balloonlab.services.subgraph import EmbeddingResult, SearchStatus, find_embedding, validate_embedding

logger = logging.getLogger(__name__)

BALLOON_LENGTH = 5


def build_apex_join(d: ApexJoinDescriptor) -> Graph:
    G = join(d.apex, make_named("turan", d.rest, d.parts))
    logger.debug(f"Built {d.describe()} on {d.n} vertices: {G.edge_count} edges")
    return G


def build_H(n: int, k: int, i: int) -> Graph:
    """H(n,k,i) = (M_{k-1} ∪ K_1) ∇ T_{n-2k+1,i}."""
    if k < 1 or i < 1:
        raise ParameterError(f"H(n,k,i) needs k >= 1 and i >= 1, got k={k}, i={i}")
    if n < 2 * k + 1:
        raise PreconditionError(f"H(n,k,i) needs n >= 2k+1, got n={n}, k={k}")
    apex = disjoint_union(make_named("matching", k - 1), make_named("complete", 1))
    return build_apex_join(ApexJoinDescriptor(apex, n, i, f"M_{k - 1} ∪ K_1"))


def friendship_witness(n: int) -> Graph:
    """T_{n,2} plus one edge inside its larger part."""
    if n < 4:
        raise ParameterError(f"friendship witness needs n >= 4, got {n}")
    return make_named("turan", n, 2).with_edge(0, 1)


# ---------------------------------------------------------------- certification

class Verdict(str, Enum):
    FREE = "free"
    CONTAINS = "contains"
    INDETERMINATE = "indeterminate"


@dataclass
class FreenessCertificate:
    host: Graph
    family: GraphFamily
    verdict: Verdict
    witness_member: Optional[Graph] = None
    witness: Optional[Tuple[int, ...]] = None
    nodes: int = 0
    shortcut: Optional[str] = None
    undecided: List[Graph] = field(default_factory=list)

    def lower_bound(self) -> Optional[str]:
        if self.verdict is not Verdict.FREE:
            return None
        return f"ex({self.host.n}, family) >= {self.host.edge_count}"

    def to_payload(self) -> CertificatePayload:
        return CertificatePayload(
            host=graph6.encode(self.host),
            host_vertices=self.host.n,
            host_edges=self.host.edge_count,
            family_size=len(self.family),
            verdict=self.verdict.value,
            witness_member=graph6.encode(self.witness_member) if self.witness_member else None,
            witness_embedding=list(self.witness) if self.witness else None,
            nodes=self.nodes,
            shortcut=self.shortcut,
            lower_bound=self.lower_bound(),
        )


def _search_member(args) -> EmbeddingResult:
    host, member, budget = args
    return find_embedding(host, member, budget=budget)


def certify_free(host: Graph, family: GraphFamily, budget: Optional[int] = None, threads: int = 1,
                 use_shortcut: bool = True) -> FreenessCertificate:
    """
    Decide whether `host` contains no member of `family`.

    Members are searched in the family's canonical order with `budget` nodes
    each; the first member found gives the witness. A found member makes the
    verdict CONTAINS; otherwise any exhausted member makes it INDETERMINATE.

    Args:
        host: host graph.
        family: forbidden members.
        budget: search nodes per member, None for no limit.
        threads: worker processes fanning out over members.
        use_shortcut: answer FREE without search when a bipartite host faces only non-bipartite members.

    Returns:
        FreenessCertificate
    """
    if use_shortcut and is_bipartite(host) and all(not is_bipartite(M) for M in family):
        logger.info(f"{host!r} is free of {len(family)} members by parity")
        return FreenessCertificate(host, family, Verdict.FREE, shortcut="bipartite host, non-bipartite members")

    members = list(family)
    tasks = [(host, member, budget) for member in members]
    certificate = FreenessCertificate(host, family, Verdict.FREE)
    pool = Pool(processes=threads) if threads > 1 and len(tasks) > 1 else None
    try:
        results: Iterator[EmbeddingResult] = pool.imap(_search_member, tasks) if pool else map(_search_member, tasks)
        for member, result in zip(members, results):
            certificate.nodes += result.nodes
            if result.status is SearchStatus.FOUND:
                if not validate_embedding(host, member, result.embedding):
                    raise AssertionError(f"witness for {member!r} failed re-validation")
                certificate.verdict = Verdict.CONTAINS
                certificate.witness_member = member
                certificate.witness = result.embedding
                break
            if result.status is SearchStatus.EXHAUSTED:
                certificate.undecided.append(member)
    finally:
        if pool:
            pool.terminate()
            pool.join()
    if certificate.verdict is not Verdict.CONTAINS and certificate.undecided:
        certificate.verdict = Verdict.INDETERMINATE
    logger.info(f"Certification of {host!r} against {len(family)} members: {certificate.verdict.value}")
    return certificate


def decomposition_route_free(descriptor: ApexJoinDescriptor, skeleton: Graph, budget: Optional[int] = None,
                             threads: int = 1) -> FreenessCertificate:
    """
    Freeness of A ∇ E_m against C(F), with m the larger part of the two-part host.

    A copy of F° in A ∇ T_{n-|A|,2} puts a member of C(F) inside A and one part.
    """
    larger_part = descriptor.rest - descriptor.rest // 2
    one_part = ApexJoinDescriptor(descriptor.apex, descriptor.apex.n + larger_part, 1, descriptor.apex_name)
    return certify_free(build_apex_join(one_part), cracking_family(skeleton), budget=budget, threads=threads)


@dataclass
class LowerBoundReport:
    mode: PredictionMode
    prediction: TuranPrediction
    host: Graph
    certificate: FreenessCertificate
    cross_check: Optional[FreenessCertificate] = None

    @property
    def expected_edges(self) -> int:
        return self.prediction.edge_count

    @property
    def edge_match(self) -> bool:
        return self.host.edge_count == self.expected_edges

    @property
    def routes_agree(self) -> Optional[bool]:
        if self.cross_check is None:
            return None
        verdicts = {self.certificate.verdict, self.cross_check.verdict}
        if Verdict.INDETERMINATE in verdicts:
            return None
        return len(verdicts) == 1

    @property
    def passed(self) -> bool:
        return self.edge_match and self.certificate.verdict is Verdict.FREE

    def to_payload(self) -> LowerBoundPayload:
        return LowerBoundPayload(
            mode=self.mode.value,
            prediction=self.prediction.to_payload(),
            observed_edges=self.host.edge_count,
            edge_match=self.edge_match,
            certificate=self.certificate.to_payload(),
            cross_check=self.cross_check.to_payload() if self.cross_check else None,
            routes_agree=self.routes_agree,
        )


def verify_lower_bound(F_bullet: Graph, n: int, mode: PredictionMode = PredictionMode.DECOMPOSITION,
                       budget: Optional[int] = None, threads: int = 1, cross_check: bool = True) -> LowerBoundReport:
    """
    Build the predicted extremal graph for K_1 ∇ F•, compare its edge count with
    the prediction and certify it free of the matching family.

    Decomposition mode uses the one-part construction against C(K_1 ∇ F•);
    balloon mode uses the two-part construction against the ballooning of
    K_1 ∇ F• with all cycles of length five, and also checks the decomposition route.
    """
    mode = PredictionMode(mode)
    skeleton = join(make_named("complete", 1), F_bullet)
    if mode is PredictionMode.DECOMPOSITION:
        prediction = predict_ex_decomposition(F_bullet, n)
        family = cracking_family(skeleton)
    elif mode is PredictionMode.BALLOON:
        prediction = predict_ex_balloon(F_bullet, n)
        family = GraphFamily.of(odd_balloon(BalloonSpec.uniform(skeleton, BALLOON_LENGTH)).graph)
    else:
        raise ParameterError(f"lower bounds are verified in balloon or decomposition mode, not {mode.value}")
    host = build_apex_join(prediction.construction)
    certificate = certify_free(host, family, budget=budget, threads=threads)
    report = LowerBoundReport(mode, prediction, host, certificate)
    if cross_check and mode is PredictionMode.BALLOON:
        report.cross_check = decomposition_route_free(prediction.construction, skeleton, budget=budget, threads=threads)
    logger.info(f"Lower bound {prediction.construction.describe()} n={n}: edges {host.edge_count}/"
                f"{report.expected_edges}, verdict {certificate.verdict.value}")
    return report
