import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import networkx as nx

from balloonlab.errors import Graph6Error
from balloonlab.services.graph import Graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"


def strip_graph6_header(text: str) -> str:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):].strip()
    return s


def encode(G: Graph) -> str:
    """graph6 string of G (no header, no newline)."""
    return nx.to_graph6_bytes(G.to_networkx(), header=False).decode("ascii").strip()


def decode(text: str) -> Graph:
    """
    Parse one graph6 string.

    Raises:
        Graph6Error: the string is not valid graph6.
    """
    s = strip_graph6_header(text)
    if not s:
        raise Graph6Error("empty graph6 string")
    try:
        G = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
        raise Graph6Error(f"malformed graph6 {s[:40]!r}: {e}")
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def decode_lines(lines: Iterable[str]) -> List[Graph]:
    """Decode one graph per non-blank line; `#` starts a comment line."""
    graphs = []
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            graphs.append(decode(line))
        except Graph6Error as e:
            raise Graph6Error(f"line {number}: {e.message}")
    return graphs


def read_graph6_file(path: str) -> List[Graph]:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as e:
        raise Graph6Error(f"{path}: graph6 files are ASCII, found byte {e.object[e.start]:#04x} at offset {e.start}")
    return decode_lines(text.splitlines())


def encode_lines(graphs: Iterable[Graph]) -> str:
    return "".join(encode(G) + "\n" for G in graphs)


def to_dot(G: Graph, name: str = "G", highlight: Optional[Sequence[int]] = None) -> str:
    """Graphviz DOT text; `highlight` vertices are drawn filled."""
    marked = set(highlight or ())
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        style = ' [style=filled, fillcolor="lightblue"]' if v in marked else ""
        lines.append(f"  {v}{style};")
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
