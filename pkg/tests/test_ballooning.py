import json
import random

import networkx as nx
import pytest

from balloonlab.errors import ParameterError, SpecFormatError
from balloonlab.services import graph6
from balloonlab.services.ballooning import (
    BalloonSpec,
    balloon_payload,
    balloon_sizes,
    format_spec_json,
    format_spec_text,
    odd_balloon,
    parse_spec,
    parse_spec_text,
)
from balloonlab.services.canonical import is_isomorphic
from balloonlab.services.graph import Graph, chromatic_number, join, make_named, named_skeleton
from balloonlab.services.subgraph import contains_subgraph


class TestOddBalloon:
    def test_edge_becomes_cycle(self):
        G = odd_balloon(BalloonSpec.uniform(make_named("complete", 2), 5)).graph
        assert is_isomorphic(G, make_named("cycle", 5))

    def test_triangle_with_five_cycles(self, K3):
        result = odd_balloon(BalloonSpec.uniform(K3, 5))
        assert (result.graph.n, result.graph.edge_count) == (12, 15)
        assert chromatic_number(result.graph) == 3

    def test_fresh_vertices_follow_sorted_edges(self, K3):
        result = odd_balloon(BalloonSpec.uniform(K3, 5))
        assert result.cycles[(0, 1)] == [0, 3, 4, 5, 1]
        assert result.cycles[(0, 2)] == [0, 6, 7, 8, 2]
        assert result.fresh_vertices((2, 1)) == [9, 10, 11]

    def test_star_with_triangles_is_friendship_graph(self):
        G = odd_balloon(BalloonSpec.uniform(make_named("star", 3), 3)).graph
        assert is_isomorphic(G, named_skeleton("friendship", 2))

    def test_mixed_lengths(self, K3):
        spec = BalloonSpec(K3, {(0, 1): 3, (0, 2): 5, (2, 1): 7})
        G = odd_balloon(spec).graph
        assert (G.n, G.edge_count) == (3 + 1 + 3 + 5, 15)
        assert not spec.long_cycle_regime

    @pytest.mark.parametrize("skeleton,length,sizes", [
        (make_named("complete", 2), 5, (5, 5)),
        (join(make_named("complete", 1), make_named("cycle", 4)), 5, (29, 40)),
        (make_named("star", 3), 5, (9, 10)),
    ])
    def test_sizes(self, skeleton, length, sizes):
        spec = BalloonSpec.uniform(skeleton, length)
        assert balloon_sizes(spec) == sizes
        G = odd_balloon(spec).graph
        assert (G.n, G.edge_count) == sizes


    @pytest.mark.parametrize("seed", range(200))
    def test_random_specs(self, seed):
        rng = random.Random(seed)
        skeleton = Graph.from_networkx(nx.gnp_random_graph(rng.randint(2, 6), rng.uniform(0.3, 0.9), seed=seed))
        spec = BalloonSpec(skeleton, {edge: rng.choice((3, 5, 7)) for edge in skeleton.edges()})
        result = odd_balloon(spec)
        G = result.graph

        assert (G.n, G.edge_count) == balloon_sizes(spec)
        assert all(G.has_edge(u, v) for u, v in skeleton.edges())
        assert contains_subgraph(G, skeleton)

        fresh = [result.fresh_vertices(edge) for edge in skeleton.edges()]
        seen = [v for vertices in fresh for v in vertices]
        assert len(seen) == len(set(seen))
        assert all(v >= skeleton.n for v in seen)
        for (u, v), vertices in zip(skeleton.edges(), fresh):
            assert len(vertices) == spec.lengths[(u, v)] - 2


class TestSpecValidation:
    @pytest.mark.parametrize("length", [4, 1, 2])
    def test_rejects_even_or_short_cycles(self, length):
        with pytest.raises(ParameterError):
            BalloonSpec.uniform(make_named("complete", 2), length)

    def test_rejects_missing_edges(self, K3):
        with pytest.raises(ParameterError):
            BalloonSpec(K3, {(0, 1): 5})

    def test_rejects_non_edges(self):
        with pytest.raises(ParameterError):
            BalloonSpec(make_named("path", 3), {(0, 1): 5, (1, 2): 5, (0, 2): 5})


class TestSpecFormats:
    def test_text_with_default(self, K3):
        spec = parse_spec_text("Bw ; edge 1,0 = 7 ; all = 5")
        assert spec.skeleton == K3
        assert spec.lengths == {(0, 1): 7, (0, 2): 5, (1, 2): 5}

    @pytest.mark.parametrize("text", ["", "Bw ; edge 0-1 = 5", "Bw ; all 5", "Bw ; vertex 0 = 5", "Bw ; all = five"])
    def test_text_errors(self, text):
        with pytest.raises(SpecFormatError):
            parse_spec_text(text)

    def test_text_round_trip(self, K3):
        spec = BalloonSpec(K3, {(0, 1): 3, (0, 2): 5, (1, 2): 7})
        assert parse_spec(format_spec_text(spec)) == spec

    def test_json(self, K3):
        spec = parse_spec('{"skeleton": "Bw", "lengths": [{"u": 2, "v": 0, "length": 7}], "default_length": 5}')
        assert spec.lengths == {(0, 1): 5, (0, 2): 7, (1, 2): 5}
        assert parse_spec(format_spec_json(spec)) == spec

    def test_json_validation_error(self):
        with pytest.raises(SpecFormatError):
            parse_spec('{"skeleton": "Bw", "default_length": 1}')

    def test_payload(self, K3):
        spec = BalloonSpec.uniform(K3, 5)
        payload = json.loads(balloon_payload(spec, odd_balloon(spec)).model_dump_json())
        assert payload["vertices"] == 12
        assert payload["long_cycle_regime"] is True
        assert payload["cycles"][0] == {"edge": [0, 1], "cycle": [0, 3, 4, 5, 1]}
        assert graph6.decode(payload["graph6"]).edge_count == 15
