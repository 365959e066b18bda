import logging
from dataclasses import dataclass
from pathlib import Path

from sda_toolkit.graph.graph import Graph
from sda_toolkit.graph.types import (
    CommunityId,
    DuplicateEdge,
    Edge,
    MalformedLine,
    Provenance,
    Vertex,
    edge_key,
)

logger = logging.getLogger(__name__)

EDGES_FILENAME = "edges.txt"
COMMUNITIES_FILENAME = "communities.txt"
PROVENANCE_FILENAME = "provenance.txt"


@dataclass(frozen=True)
class GraphTexts:
    edges: str
    communities: str
    provenance: str


def _records(text: str, source: str, width: int) -> list[tuple[int, str, list[str]]]:
    records = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != width:
            raise MalformedLine(source, line_no, raw_line, f"expected {width} fields, got {len(fields)}")
        records.append((line_no, raw_line, fields))
    return records


def _vertex_id(source: str, line_no: int, raw_line: str, token: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise MalformedLine(source, line_no, raw_line, f"{token!r} is not an integer id")
    if value < 0:
        raise MalformedLine(source, line_no, raw_line, f"negative id {value}")
    return value


def parse_edges(text: str) -> list[Edge]:
    edges = []
    for line_no, raw_line, (u, v) in _records(text, "edges", 2):
        edges.append((_vertex_id("edges", line_no, raw_line, u), _vertex_id("edges", line_no, raw_line, v)))
    return edges


def parse_communities(text: str) -> dict[Vertex, CommunityId]:
    community: dict[Vertex, CommunityId] = {}
    for line_no, raw_line, (v_token, c_token) in _records(text, "communities", 2):
        v = _vertex_id("communities", line_no, raw_line, v_token)
        c = _vertex_id("communities", line_no, raw_line, c_token)
        if v in community:
            raise MalformedLine("communities", line_no, raw_line, f"vertex {v} already has community {community[v]}")
        community[v] = c
    return community


def parse_provenance(text: str) -> dict[Edge, Provenance]:
    provenance: dict[Edge, Provenance] = {}
    for line_no, raw_line, (u, v, tag) in _records(text, "provenance", 3):
        try:
            kind = Provenance(tag)
        except ValueError:
            raise MalformedLine("provenance", line_no, raw_line, f"unknown provenance tag {tag!r}")
        key = edge_key(_vertex_id("provenance", line_no, raw_line, u), _vertex_id("provenance", line_no, raw_line, v))
        if key in provenance:
            raise DuplicateEdge(f"Provenance listed twice for edge {key}")
        provenance[key] = kind
    return provenance


def load_graph(edge_text: str, community_text: str, provenance_text: str | None = None) -> Graph:
    """Edges without a provenance entry are ORIGINAL"""
    provenance = parse_provenance(provenance_text) if provenance_text else None
    graph = Graph.from_edges(parse_edges(edge_text), parse_communities(community_text), provenance)
    logger.debug(f"Loaded {graph!r}")
    return graph


def save_graph(g: Graph) -> GraphTexts:
    edge_lines = []
    provenance_lines = []
    for (u, v), provenance in g.edges_with_provenance():
        edge_lines.append(f"{u} {v}\n")
        provenance_lines.append(f"{u} {v} {provenance.value}\n")
    community_lines = [f"{v} {g.community(v)}\n" for v in g.vertices]
    return GraphTexts(
        edges="".join(edge_lines),
        communities="".join(community_lines),
        provenance="".join(provenance_lines),
    )


def read_graph_files(edges_path: Path, communities_path: Path, provenance_path: Path | None = None) -> Graph:
    provenance_text = provenance_path.read_text() if provenance_path is not None else None
    return load_graph(edges_path.read_text(), communities_path.read_text(), provenance_text)


def read_graph_dir(directory: Path) -> Graph:
    provenance_path = directory / PROVENANCE_FILENAME
    return read_graph_files(
        directory / EDGES_FILENAME,
        directory / COMMUNITIES_FILENAME,
        provenance_path if provenance_path.exists() else None,
    )


def write_graph_dir(g: Graph, directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    texts = save_graph(g)
    written = []
    for filename, content in (
        (EDGES_FILENAME, texts.edges),
        (COMMUNITIES_FILENAME, texts.communities),
        (PROVENANCE_FILENAME, texts.provenance),
    ):
        path = directory / filename
        path.write_text(content)
        written.append(path)
    return written
