"""Colored marked graphs: finite connected subgraphs of the Cayley graph of Z^m x| Z/2.

A combinatorial graph has vertices in Z^m with mass 0 (black) or -2 (red), contains
the root 0 and carries every Cayley edge between its vertices. Vertices are stored
as GroupElements so that projected components, whose masses shift, keep their colors.
"""
import itertools
import json
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import networkx as nx
import yaml

from resonant_blocks.rb_errors import DisconnectedGraphError, GraphFileError
from resonant_blocks.rb_lattice import (
    BLACK_MASS,
    RED_MASS,
    Edge,
    EdgeColor,
    GroupElement,
    QuadForm,
    cayley_neighbours,
    cmap,
    element_edge,
)
from resonant_blocks.rb_rational import integer_nullspace, rank

# Sorted non-zero coordinates of -2e_i and of -3e_i + e_j.
FORBIDDEN_SUM_VALUES = ([-2], [-3, 1])


@dataclass(frozen=True)
class GraphEdge:
    """An edge between the vertices at positions source < target."""
    source: int
    target: int
    edge: Edge

    @property
    def color(self) -> EdgeColor:
        return self.edge.color


@dataclass(frozen=True)
class ColoredGraph:
    """A connected set of group elements with all Cayley edges between them.

    Use complete_closure() for combinatorial vertex sets and from_elements() for
    arbitrary element sets.
    """
    vertices: tuple[GroupElement, ...]
    edges: tuple[GraphEdge, ...]

    @classmethod
    def from_elements(cls, elements: Sequence[GroupElement]) -> "ColoredGraph":
        """Build the induced graph on a set of group elements, keeping their order.

        Args:
            elements: Distinct elements of one Z^m x| Z/2.

        Raises:
            ValueError: If the list is empty or has duplicates.
            DisconnectedGraphError: If the induced graph is not connected.

        Returns:
            ColoredGraph: The graph.
        """
        vertices = tuple(elements)
        if not vertices:
            msg = "A graph needs at least one vertex."
            raise ValueError(msg)
        if len(set(vertices)) != len(vertices):
            msg = f"Duplicate vertices in {[str(v) for v in vertices]}."
            raise ValueError(msg)
        edges = _induced_edges(vertices)
        graph = cls(vertices, edges)
        if not nx.is_connected(graph.to_networkx()):
            msg = f"The vertices {[str(v) for v in vertices]} do not form a connected graph."
            raise DisconnectedGraphError(msg)
        return graph

    @property
    def m(self) -> int:
        return self.vertices[0].m

    @property
    def size(self) -> int:
        return len(self.vertices)

    def vectors(self) -> list[tuple[int, ...]]:
        return [v.coeffs for v in self.vertices]

    def black_only(self) -> bool:
        return all(e.color == EdgeColor.BLACK for e in self.edges)

    def is_combinatorial(self) -> bool:
        """Root 0 first and every twist equal to the color implied by the mass."""
        if self.vertices[0] != GroupElement.zero(self.m):
            return False
        return all(v.mass in {BLACK_MASS, RED_MASS} and v.twist == (v.mass == RED_MASS) for v in self.vertices)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.size))
        for e in self.edges:
            graph.add_edge(e.source, e.target, color=e.color.value, marking=(e.edge.i, e.edge.j))
        return graph

    def encoding_graph(self) -> nx.MultiGraph:
        """The encoding graph on the indices 0..m-1, one edge per distinct marking of this graph."""
        markings = sorted({e.edge for e in self.edges}, key=lambda edge: (edge.i, edge.j, edge.color.value))
        return encoding_graph(self.m, markings)

    def tau_image(self) -> "ColoredGraph | None":
        """The image {(-a, -sigma)} under left multiplication by tau, or None when it is disconnected.

        Black edges survive and red edges do not, so the image is a graph exactly when this
        graph has only black edges.
        """
        images = [GroupElement.tau(self.m) * v for v in self.vertices]
        try:
            return ColoredGraph.from_elements(images)
        except DisconnectedGraphError:
            return None

    def label(self) -> str:
        return " ".join(str(v) for v in self.vertices)

    def to_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [[e.source, e.target, str(e.edge)] for e in self.edges],
        }

    def __str__(self):
        return self.label()


def _induced_edges(vertices: Sequence[GroupElement]) -> tuple[GraphEdge, ...]:
    edges = []
    for i, j in itertools.combinations(range(len(vertices)), 2):
        edge = element_edge(vertices[i], vertices[j])
        if edge is not None:
            edges.append(GraphEdge(i, j, edge))
    return tuple(edges)


def complete_closure(vertexset: Sequence[Sequence[int]]) -> ColoredGraph:
    """Build the combinatorial graph on a vertex set, colors from mass, root first.

    Args:
        vertexset: Integer vectors including the zero vector; masses in {0, -2}.

    Raises:
        ValueError: If the zero vector is missing or the vectors have different lengths.
        BadMassError: If a vertex has a mass outside {0, -2}.
        DisconnectedGraphError: If the induced graph is disconnected.

    Returns:
        ColoredGraph: The complete graph rooted at 0.
    """
    vectors = [tuple(int(c) for c in v) for v in vertexset]
    if not vectors:
        msg = "complete_closure() needs a non-empty vertex set."
        raise ValueError(msg)
    if len({len(v) for v in vectors}) != 1:
        msg = "All vertices must have the same number of coordinates."
        raise ValueError(msg)
    root = (0,) * len(vectors[0])
    if root not in vectors:
        msg = f"The vertex set {[list(v) for v in vectors]} does not contain the root 0."
        raise ValueError(msg)
    ordered = [root] + [v for v in dict.fromkeys(vectors) if v != root]
    return ColoredGraph.from_elements([GroupElement.from_vertex(v) for v in ordered])


def canonical_form(g: ColoredGraph) -> tuple:
    """A key invariant under vertex reordering, and under the tau-image for all-black graphs.

    The key is the sorted list of signed vectors sigma*a; for graphs without red edges it is
    the smaller of that list and the list of negated vectors.
    """
    signed = sorted(v.signed() for v in g.vertices)
    if g.black_only():
        negated = sorted(tuple(-c for c in w) for w in signed)
        return tuple(min(signed, negated))
    return tuple(signed)


def _permuted(vectors, permutation) -> list[tuple[int, ...]]:
    return sorted(tuple(w[k] for k in permutation) for w in vectors)


def symmetric_key(g: ColoredGraph) -> tuple:
    """canonical_form() further quotiented by permutations of the coordinates."""
    signed = [v.signed() for v in g.vertices]
    variants = [signed]
    if g.black_only():
        variants.append([tuple(-c for c in w) for w in signed])
    return min(tuple(_permuted(vectors, p)) for vectors in variants for p in itertools.permutations(range(g.m)))


def _orbit_representative(vertexset, m: int) -> tuple:
    return min(tuple(_permuted(vertexset, p)) for p in itertools.permutations(range(m)))


def enumerate_graphs(m: int, max_vertices: int, coord_bound: int, symmetric: bool = False) -> Iterator[ColoredGraph]:
    """Yield every combinatorial graph in the given range once per canonical key.

    Vertex sets grow breadth first from {0} by adjoining Cayley neighbours within the
    coordinate bound, so every set visited is connected. The visited sets are deduplicated
    exactly (or up to coordinate permutations when symmetric is set); the tau quotient is
    only applied to what is emitted.

    Args:
        m: Number of coordinates.
        max_vertices: Largest vertex count.
        coord_bound: Bound on |coordinate| of every vertex.
        symmetric: Also quotient by permutations of the coordinates.

    Raises:
        ValueError: If a parameter is below 1.

    Yields:
        ColoredGraph: The graphs, smaller vertex counts first.
    """
    if m < 1 or max_vertices < 1 or coord_bound < 1:
        msg = f"enumerate_graphs() needs m, max_vertices and coord_bound >= 1, got {m}, {max_vertices}, {coord_bound}."
        raise ValueError(msg)
    root = (0,) * m
    key_function = symmetric_key if symmetric else canonical_form
    emitted = set()
    seen = {frozenset([root])}
    layer = deque([(root,)])
    while layer:
        ordered = layer.popleft()
        vertexset = frozenset(ordered)
        graph = ColoredGraph.from_elements([GroupElement.from_vertex(v) for v in ordered])
        key = key_function(graph)
        if key not in emitted:
            emitted.add(key)
            yield graph
        if len(ordered) == max_vertices:
            continue
        candidates = set()
        for v in ordered:
            for w in cayley_neighbours(v):
                if w not in vertexset and max(abs(c) for c in w) <= coord_bound:
                    candidates.add(w)
        for w in sorted(candidates):
            grown = (*ordered, w)
            state = _orbit_representative(grown, m) if symmetric else frozenset(grown)
            if state not in seen:
                seen.add(state)
                layer.append(grown)


@dataclass(frozen=True)
class DegeneracyReport:
    """Dimension, rank and the per-color counts and ranks of the non-root vertices."""
    dimension: int
    rank: int
    degenerate: bool
    black_count: int
    black_rank: int
    red_count: int
    red_rank: int


def _rooted_vectors(g: ColoredGraph) -> list[tuple[tuple[int, ...], bool]]:
    """Non-root vertices translated so that the root becomes the identity, with their twists."""
    root_inverse = g.vertices[0].inverse()
    result = []
    for v in g.vertices[1:]:
        moved = v * root_inverse
        result.append((moved.coeffs, moved.twist))
    return result


def rank_and_degeneracy(g: ColoredGraph) -> DegeneracyReport:
    """Compute dimension = |vertices|-1, the rank over Q of the non-root vertices and the degeneracy flag."""
    rooted = _rooted_vectors(g)
    vectors = [a for a, _ in rooted]
    black = [a for a, twist in rooted if not twist]
    red = [a for a, twist in rooted if twist]
    total_rank = rank(vectors) if vectors else 0
    return DegeneracyReport(
        dimension=g.size - 1,
        rank=total_rank,
        degenerate=total_rank < g.size - 1,
        black_count=len(black),
        black_rank=rank(black) if black else 0,
        red_count=len(red),
        red_rank=rank(red) if red else 0,
    )


@dataclass(frozen=True)
class RelationBasis:
    """Integer relations sum n_a a = 0, one coefficient per vertex (the root coefficient is 0)."""
    relations: tuple[tuple[int, ...], ...]

    def is_empty(self) -> bool:
        return not self.relations


def relation_basis(g: ColoredGraph) -> RelationBasis:
    """Primitive integer basis of the relations among the non-root vertices.

    Each relation is normalized so that its first non-zero coefficient is positive.
    """
    vectors = [a for a, _ in _rooted_vectors(g)]
    if not vectors:
        return RelationBasis(())
    columns = [[vec[k] for vec in vectors] for k in range(g.m)]
    basis = integer_nullspace(columns, len(vectors))
    return RelationBasis(tuple((0, *relation) for relation in basis))


class ResonanceClass(StrEnum):
    NONDEGENERATE = "nondegenerate"
    DEGENERATE_RESONANT = "degenerate_resonant"
    AVOIDABLE = "avoidable"


def resonance_residues(g: ColoredGraph, basis: RelationBasis | None = None) -> list[QuadForm]:
    """For each basis relation n, the quadratic form sum n_a C(a) with the sign of each vertex's twist."""
    basis = basis or relation_basis(g)
    rooted = [GroupElement.zero(g.m)] + [GroupElement(a, twist) for a, twist in _rooted_vectors(g)]
    residues = []
    for relation in basis.relations:
        total = QuadForm.zero(g.m)
        for n, element in zip(relation, rooted, strict=True):
            if n:
                total += cmap(element).scale(n)
        residues.append(total)
    return residues


def is_resonant(g: ColoredGraph) -> ResonanceClass:
    """Classify the relations of g.

    Returns:
        ResonanceClass: NONDEGENERATE without relations, DEGENERATE_RESONANT when sum n_a C(a)
        vanishes on every basis relation, AVOIDABLE otherwise.
    """
    basis = relation_basis(g)
    if basis.is_empty():
        return ResonanceClass.NONDEGENERATE
    if all(q.is_zero() for q in resonance_residues(g, basis)):
        return ResonanceClass.DEGENERATE_RESONANT
    return ResonanceClass.AVOIDABLE


@dataclass(frozen=True)
class AllowabilityResult:
    allowable: bool
    witness: tuple[GroupElement, GroupElement] | None = None

    def __bool__(self):
        return self.allowable


def _forbidden_sum(total: tuple[int, ...]) -> bool:
    """True for -2e_i and for -3e_i + e_j with i != j."""
    support = {k: c for k, c in enumerate(total) if c}
    values = sorted(support.values())
    return values in FORBIDDEN_SUM_VALUES


def is_allowable(g: ColoredGraph) -> AllowabilityResult:
    """Look for a black vertex a and a red vertex b with a + b in {-2e_i} or {-3e_i + e_j}.

    Returns:
        AllowabilityResult: allowable=False with the first witness pair (black, red) found, else allowable=True.
    """
    black = [v for v in g.vertices if not v.twist]
    red = [v for v in g.vertices if v.twist]
    for a in black:
        for b in red:
            if _forbidden_sum(tuple(x + y for x, y in zip(a.coeffs, b.coeffs, strict=True))):
                return AllowabilityResult(False, (a, b))
    return AllowabilityResult(True)


# Two odd circuits joined at a vertex or by a path.
HANDCUFF_CYCLES = 2


class CircuitKind(StrEnum):
    NONE = "none"
    EVEN = "even"
    ODD = "odd"
    DOUBLY_ODD = "doubly_odd"
    OTHER = "other"


def marking_vector(edge: Edge, m: int) -> tuple[int, ...]:
    """e_j - e_i for a black marking {i, j} and -e_i - e_j for a red one."""
    vector = [0] * m
    vector[edge.i] = -1
    vector[edge.j] = 1 if edge.color == EdgeColor.BLACK else -1
    return tuple(vector)


def encoding_graph(m: int, markings: Iterable[Edge]) -> nx.MultiGraph:
    """The encoding graph on the indices 0..m-1 with one colored edge per marking, repeats kept."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(m))
    for edge in markings:
        graph.add_edge(edge.i, edge.j, color=edge.color.value)
    return graph


def _fundamental_cycles(graph: nx.MultiGraph) -> list[tuple[frozenset, int]]:
    """Edge sets of the fundamental cycles of a connected multigraph, each with its number of red edges mod 2."""
    def ident(u, v, key):
        return (min(u, v), max(u, v), key)

    red = {
        ident(u, v, key): int(color == EdgeColor.RED.value)
        for u, v, key, color in graph.edges(keys=True, data="color")
    }
    root = min(graph.nodes)
    parent: dict = {root: None}
    parity = {root: 0}
    chords = []
    for u, v, key in nx.edge_bfs(graph, root):
        edge = ident(u, v, key)
        if v not in parent:
            parent[v] = (u, edge)
            parity[v] = parity[u] ^ red[edge]
        else:
            chords.append((u, v, edge))

    def root_path(node) -> set:
        path = set()
        while parent[node] is not None:
            node, edge = parent[node]
            path.add(edge)
        return path

    return [
        (frozenset(root_path(u) ^ root_path(v) | {edge}), parity[u] ^ parity[v] ^ red[edge])
        for u, v, edge in chords
    ]


def circuit_kind(graph: nx.MultiGraph) -> CircuitKind:
    """Classify the cycles of an encoding graph after pruning its pendant trees.

    A single circuit with an even number of red edges is EVEN, with an odd number ODD. Two
    edge-disjoint odd circuits, sharing a vertex or joined by a path, are DOUBLY_ODD. Any
    other cycle structure, including two circuits sharing edges, is OTHER.
    """
    core = nx.MultiGraph(graph)
    leaves = [v for v, d in core.degree() if d == 1]
    while leaves:
        core.remove_nodes_from(leaves)
        leaves = [v for v, d in core.degree() if d == 1]
    core.remove_nodes_from([v for v, d in list(core.degree()) if d == 0])
    if core.number_of_edges() == 0:
        return CircuitKind.NONE
    if not nx.is_connected(core):
        return CircuitKind.OTHER
    cycles = _fundamental_cycles(core)
    if len(cycles) == 1:
        return CircuitKind.ODD if cycles[0][1] else CircuitKind.EVEN
    if len(cycles) == HANDCUFF_CYCLES:
        (first, first_odd), (second, second_odd) = cycles
        if first_odd and second_odd and not first & second:
            return CircuitKind.DOUBLY_ODD
    return CircuitKind.OTHER


def relation_circuit(g: ColoredGraph) -> CircuitKind | None:
    """Circuit kind of the edges carrying the relation among the markings of a spanning tree.

    Returns None unless the tree markings satisfy exactly one relation. A single relation
    is always carried by an EVEN or a DOUBLY_ODD set of edges.
    """
    by_ends = {(e.source, e.target): e.edge for e in g.edges}
    tree = [by_ends[min(u, v), max(u, v)] for u, v in nx.bfs_edges(g.to_networkx(), 0)]
    if not tree:
        return None
    vectors = [marking_vector(edge, g.m) for edge in tree]
    columns = [[vec[k] for vec in vectors] for k in range(g.m)]
    relations = integer_nullspace(columns, len(vectors))
    if len(relations) != 1:
        return None
    support = [edge for edge, n in zip(tree, relations[0], strict=True) if n]
    return circuit_kind(encoding_graph(g.m, support))


def project_components(g: ColoredGraph, i: int) -> list[ColoredGraph]:
    """Remove the edges marked with index i, split into components and drop coordinate i.

    Args:
        g: The graph.
        i: 0-based index.

    Raises:
        IndexError: If i is not a valid coordinate.

    Returns:
        list[ColoredGraph]: Components in m-1 coordinates, ordered by their first vertex in g.
    """
    if not 0 <= i < g.m:
        msg = f"Index {i} outside 0..{g.m - 1}."
        raise IndexError(msg)
    kept = nx.Graph()
    kept.add_nodes_from(range(g.size))
    kept.add_edges_from((e.source, e.target) for e in g.edges if not e.edge.contains(i))
    components = sorted((sorted(c) for c in nx.connected_components(kept)), key=lambda c: c[0])
    result = []
    for component in components:
        elements = [
            GroupElement(g.vertices[k].coeffs[:i] + g.vertices[k].coeffs[i + 1 :], g.vertices[k].twist)
            for k in component
        ]
        result.append(ColoredGraph.from_elements(elements))
    return result


# Graph files -----------------------------------------------------------------------


def _graph_from_entries(entries, file_name: str, line: int) -> ColoredGraph:
    if not isinstance(entries, list) or not entries:
        raise GraphFileError(file_name, line, 1, "'vertices' must be a non-empty list.")
    try:
        if all(isinstance(entry, str) for entry in entries):
            return ColoredGraph.from_elements([GroupElement.parse(entry) for entry in entries])
        if all(isinstance(entry, list) and all(isinstance(c, int) for c in entry) for entry in entries):
            return complete_closure(entries)
    except ValueError as e:
        raise GraphFileError(file_name, line, 1, str(e)) from e
    raise GraphFileError(file_name, line, 1, "vertices must all be integer lists or all be element strings.")


def parse_graph_line(text: str, file_name: str = "<string>", line: int = 1) -> ColoredGraph:
    """Parse one `vertices: [[0,0],[1,-1]]` line.

    Raises:
        GraphFileError: With the line and column of the problem.

    Returns:
        ColoredGraph: The graph.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        column = mark.column + 1 if mark is not None else 1
        raise GraphFileError(file_name, line, column, str(e.problem)) from e
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphFileError(file_name, line, 1, "expected 'vertices: [...]'.")
    return _graph_from_entries(data["vertices"], file_name, line)


def read_graph_file(file_path: str | Path) -> list[ColoredGraph]:
    """Read graphs from a JSON file ({"vertices": [...]} or a list of them) or a line file.

    Args:
        file_path: Path of the file.

    Raises:
        RuntimeError: If the file cannot be read.
        GraphFileError: If the content is malformed.

    Returns:
        list[ColoredGraph]: The graphs in file order.
    """
    path = Path(file_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read graph file {path}: {e}"
        raise RuntimeError(msg) from e
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise GraphFileError(str(path), e.lineno, e.colno, e.msg) from e
        items = data if isinstance(data, list) else [data]
        graphs = []
        for item in items:
            if not isinstance(item, dict) or "vertices" not in item:
                raise GraphFileError(str(path), 1, 1, "expected an object with a 'vertices' list.")
            graphs.append(_graph_from_entries(item["vertices"], str(path), 1))
        return graphs
    graphs = []
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip() and not line.lstrip().startswith("#"):
            graphs.append(parse_graph_line(line, str(path), number))
    return graphs


def graph_line(g: ColoredGraph) -> str:
    """The one-line file form of a graph; plain vectors for combinatorial graphs, element strings otherwise."""
    if g.is_combinatorial():
        body = ",".join("[" + ",".join(str(c) for c in v) + "]" for v in g.vectors())
        return f"vertices: [{body}]"
    return "vertices: [" + ", ".join(f'"{v}"' for v in g.vertices) + "]"
