from sda_toolkit.graph.graph import (
    Graph,
    check_k,
    degree_communities,
    is_k_degree_anonymous,
    is_k_structurally_diverse,
)
from sda_toolkit.graph.io import (
    GraphTexts,
    load_graph,
    read_graph_dir,
    read_graph_files,
    save_graph,
    write_graph_dir,
)
from sda_toolkit.graph.types import (
    CommunityId,
    Edge,
    Provenance,
    SplitRecord,
    Vertex,
    edge_key,
    resolve_origins,
)

__all__ = [
    "CommunityId",
    "Edge",
    "Graph",
    "GraphTexts",
    "Provenance",
    "SplitRecord",
    "Vertex",
    "check_k",
    "degree_communities",
    "edge_key",
    "is_k_degree_anonymous",
    "is_k_structurally_diverse",
    "load_graph",
    "read_graph_dir",
    "read_graph_files",
    "resolve_origins",
    "save_graph",
    "write_graph_dir",
]
