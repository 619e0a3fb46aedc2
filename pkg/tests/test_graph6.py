import random

import networkx as nx
import pytest

from balloonlab.errors import Graph6Error
from balloonlab.services import graph6
from balloonlab.services.graph import Graph, make_named


class TestEncodeDecode:
    @pytest.mark.parametrize("G,text", [
        (make_named("empty", 0), "?"),
        (make_named("complete", 1), "@"),
        (make_named("complete", 2), "A_"),
        (make_named("complete", 3), "Bw"),
    ])
    def test_known_strings(self, G, text):
        assert graph6.encode(G) == text
        assert graph6.decode(text) == G

    def test_header_is_accepted(self):
        assert graph6.decode(">>graph6<<A_\n") == make_named("complete", 2)

    def test_extended_header_for_large_orders(self):
        G = make_named("cycle", 70)
        text = graph6.encode(G)
        assert text.startswith("~")
        assert graph6.decode(text) == G

    def test_random_round_trip(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(0, 70)
            G = Graph.from_networkx(nx.gnp_random_graph(n, rng.random(), seed=rng.randrange(10 ** 6)))
            assert graph6.decode(graph6.encode(G)) == G

    @pytest.mark.parametrize("text", ["", "A", "B~~~"])
    def test_malformed(self, text):
        with pytest.raises(Graph6Error):
            graph6.decode(text)


class TestFiles:
    def test_decode_lines_skips_comments_and_blanks(self):
        graphs = graph6.decode_lines(["# triangle and edge", "Bw", "", "A_"])
        assert graphs == [make_named("complete", 3), make_named("complete", 2)]

    def test_decode_lines_reports_line_number(self):
        with pytest.raises(Graph6Error, match="line 2"):
            graph6.decode_lines(["Bw", "A"])

    def test_read_file(self, graph_file):
        path = graph_file("Bw", "A_")
        assert len(graph6.read_graph6_file(path)) == 2

    def test_read_file_rejects_non_ascii(self, tmp_path):
        path = tmp_path / "family.g6"
        path.write_bytes("Bw\nB\u00e9\n".encode("utf-8"))
        with pytest.raises(Graph6Error, match="ASCII"):
            graph6.read_graph6_file(str(path))

    def test_encode_lines(self):
        assert graph6.encode_lines([make_named("complete", 2), make_named("complete", 3)]) == "A_\nBw\n"


class TestDot:
    def test_dot_output(self):
        dot = graph6.to_dot(make_named("path", 3), name="P", highlight=[1])
        assert dot.startswith("graph P {")
        assert "  0 -- 1;" in dot
        assert "1 [style=filled" in dot
        assert dot.rstrip().endswith("}")
