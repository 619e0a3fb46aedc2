import logging
from dataclasses import dataclass, field
from typing import List, Optional

from balloonlab.errors import GuardrailError, ParameterError
from balloonlab.schemas import SearchResultPayload
from balloonlab.services import graph6
from balloonlab.services.canonical import GraphFamily
from balloonlab.services.generation import GraphConstraint, run_generation
from balloonlab.services.graph import Graph, disjoint_union, make_named

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 10


@dataclass
class SearchJob:
    n: int
    forbidden: Optional[GraphFamily] = None
    max_nu: Optional[int] = None
    max_delta: Optional[int] = None
    collect_witnesses: bool = True
    budget: Optional[int] = None
    threads: int = 1
    allow_large: bool = False
    progress: bool = False

    def validate(self) -> None:
        if self.n < 0:
            raise ParameterError(f"n must be non-negative, got {self.n}")
        if self.n > EXHAUSTIVE_MAX_N and not self.allow_large:
            raise GuardrailError(
                f"exhaustive search is limited to n <= {EXHAUSTIVE_MAX_N}; pass allow_large to override",
                details={"n": self.n},
            )
        if self.budget is not None and self.budget <= 0:
            raise ParameterError(f"budget must be positive, got {self.budget}")
        if self.threads < 1:
            raise ParameterError(f"threads must be at least 1, got {self.threads}")
        for name, bound in (("nu", self.max_nu), ("delta", self.max_delta)):
            if bound is not None and bound < 0:
                raise ParameterError(f"{name} bound must be non-negative, got {bound}")
        if self.allow_large and self.n > EXHAUSTIVE_MAX_N:
            logger.warning(f"Exhaustive search beyond the guardrail requested (n={self.n})")

    def constraint(self) -> GraphConstraint:
        forbidden = tuple(self.forbidden) if self.forbidden else ()
        return GraphConstraint(forbidden, self.max_nu, self.max_delta)


@dataclass
class SearchResult:
    n: int
    optimum: int
    witnesses: Optional[GraphFamily]
    exhaustive: bool
    nodes_explored: int
    level_optima: List[int] = field(default_factory=list)

    def to_payload(self) -> SearchResultPayload:
        return SearchResultPayload(
            n=self.n,
            optimum=self.optimum,
            exhaustive=self.exhaustive,
            nodes_explored=self.nodes_explored,
            level_optima=self.level_optima,
            witnesses=[graph6.encode(G) for G in self.witnesses] if self.witnesses is not None else None,
        )


def _search(job: SearchJob) -> SearchResult:
    job.validate()
    constraint = job.constraint()
    run = run_generation(job.n, constraint, threads=job.threads, budget=job.budget,
                         prune_last_level=True, progress=job.progress)
    if run.completed_n == job.n:
        optimum = run.level_optima[job.n]
        witnesses = GraphFamily(run.levels[job.n]) if job.collect_witnesses else None
        return SearchResult(job.n, optimum, witnesses, True, run.examined, run.level_optima)

    padded = disjoint_union(run.best_graph, make_named("empty", job.n - run.completed_n))
    if not constraint.admits(padded):
        padded = make_named("empty", job.n)
    logger.warning(f"Search for n={job.n} stopped at n={run.completed_n}; lower bound {padded.edge_count}")
    witnesses = GraphFamily.of(padded) if job.collect_witnesses else None
    return SearchResult(job.n, padded.edge_count, witnesses, False, run.examined, run.level_optima)


def exact_ex(job: SearchJob) -> SearchResult:
    """
    ex(n, family): the most edges in an n-vertex graph with no member of `job.forbidden`.

    Returns:
        SearchResult: exact when `exhaustive`; a budget stop gives a lower bound.
    """
    if not job.forbidden:
        raise ParameterError("exact_ex needs a non-empty forbidden family")
    if any(F.edge_count == 0 for F in job.forbidden):
        raise ParameterError("forbidden members must have at least one edge")
    return _search(job)


def f_oracle(n: int, nu: int, delta: int, threads: int = 1, budget: Optional[int] = None,
             collect_witnesses: bool = True, allow_large: bool = False, progress: bool = False) -> SearchResult:
    """Exhaustive max e(G) over n-vertex graphs with ν(G) ≤ nu and Δ(G) ≤ delta."""
    job = SearchJob(n, None, nu, delta, collect_witnesses, budget, threads, allow_large, progress)
    return _search(job)


def extremal_witnesses(job: SearchJob) -> GraphFamily:
    job.collect_witnesses = True
    result = exact_ex(job) if job.forbidden else _search(job)
    if not result.exhaustive:
        logger.warning(f"Witnesses for n={job.n} come from an incomplete search")
    return result.witnesses


def forbid(*graphs: Graph) -> GraphFamily:
    return GraphFamily(graphs)
