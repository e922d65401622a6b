"""pytest for colored graphs: closure, enumeration, degeneracy, resonance and graph files."""
import pytest

from resonant_blocks import (
    CircuitKind,
    DisconnectedGraphError,
    Edge,
    EdgeColor,
    GraphFileError,
    GroupElement,
    ResonanceClass,
    canonical_form,
    circuit_kind,
    complete_closure,
    encoding_graph,
    enumerate_graphs,
    is_allowable,
    is_resonant,
    project_components,
    rank_and_degeneracy,
    read_graph_file,
    relation_basis,
    relation_circuit,
)
from resonant_blocks.rb_graphs import graph_line, marking_vector, parse_graph_line, symmetric_key
from resonant_blocks.rb_rational import integer_nullspace

MINIGRAPH = [[0, 0], [1, -1], [-2, 0], [-1, -1]]
THREE_VERTEX = [[-1, -1], [0, 0], [1, -1]]
EMPTY_SPHERE = [[-3, 1, 0, 0], [2, -1, 0, -1], [1, -1, 0, 0], [0, 0, 0, 0], [0, 1, -1, 0], [0, -1, -1, 0]]


def test_complete_closure():
    g = complete_closure(THREE_VERTEX)
    assert g.vertices[0] == GroupElement.zero(2), "Root comes first"
    assert g.size == 3, "Three vertices"
    assert sorted(e.color for e in g.edges) == [EdgeColor.BLACK, EdgeColor.RED], "One black and one red edge"

    single = complete_closure([[0, 0]])
    assert single.size == 1, "Single vertex"
    assert not single.edges, "No edges"

    square = complete_closure(MINIGRAPH)
    assert len(square.edges) == 4, "The minigraph is a square"
    degrees = dict(square.to_networkx().degree())
    assert set(degrees.values()) == {2}, "Every vertex has degree 2"


def test_complete_closure_errors():
    with pytest.raises(ValueError, match="root"):
        complete_closure([[1, -1]])
    with pytest.raises(DisconnectedGraphError):
        complete_closure([[0, 0], [2, -2]])


def test_enumerate_small_ranges():
    """Test the enumeration against the vertex sets that can be listed by hand."""
    labels = {g.label() for g in enumerate_graphs(2, 2, 2)}
    assert "[0,0] [1,-1]" in labels or "[0,0] [-1,1]" in labels, "Includes the black pair"
    assert "[0,0] [-1,-1]t" in labels, "Includes the red pair"
    assert {g.size for g in enumerate_graphs(1, 3, 2)} == {1}, "No generators exist when m = 1"

    keys = {canonical_form(g) for g in enumerate_graphs(2, 4, 2)}
    assert canonical_form(complete_closure(MINIGRAPH)) in keys, "Includes the minigraph"


def test_enumeration_is_connected_and_unique():
    graphs = list(enumerate_graphs(3, 3, 1))
    keys = [canonical_form(g) for g in graphs]
    assert len(keys) == len(set(keys)), "Each canonical key is emitted once"
    assert all(g.is_combinatorial() for g in graphs), "Every graph is rooted with mass-derived colors"
    sizes = [g.size for g in graphs]
    assert sizes == sorted(sizes), "Smaller graphs come first"

    reduced = list(enumerate_graphs(3, 3, 1, symmetric=True))
    assert len(reduced) < len(graphs), "Coordinate permutations merge graphs"
    assert len({symmetric_key(g) for g in reduced}) == len(reduced), "Symmetric keys are unique"

    with pytest.raises(ValueError, match="enumerate_graphs"):
        list(enumerate_graphs(0, 2, 2))


def test_canonical_form():
    black = complete_closure([[0, 0], [1, -1]])
    mirrored = complete_closure([[0, 0], [-1, 1]])
    red = complete_closure([[0, 0], [-1, -1]])
    assert canonical_form(black) == canonical_form(mirrored), "All-black graphs are identified with their tau-image"
    assert canonical_form(black) != canonical_form(red), "Different edge colors"
    assert black.tau_image() is not None, "The tau-image of an all-black graph is connected"
    assert red.tau_image() is None, "Red edges do not survive the tau-image"

    reordered = complete_closure([MINIGRAPH[0], MINIGRAPH[3], MINIGRAPH[1], MINIGRAPH[2]])
    assert canonical_form(reordered) == canonical_form(complete_closure(MINIGRAPH)), "Vertex order does not matter"


def test_rank_and_degeneracy():
    pair = rank_and_degeneracy(complete_closure([[0, 0], [1, -1]]))
    assert (pair.dimension, pair.rank, pair.degenerate) == (1, 1, False), "A single edge is non-degenerate"

    square = rank_and_degeneracy(complete_closure(MINIGRAPH))
    assert (square.dimension, square.rank, square.degenerate) == (3, 2, True), "The minigraph is degenerate"
    assert (square.black_count, square.red_count) == (1, 2), "One black and two red non-root vertices"

    line = rank_and_degeneracy(complete_closure([[0, 0], [-1, 1], [-2, 2]]))
    assert (line.dimension, line.rank, line.degenerate) == (2, 1, True), "Collinear black vertices"


def test_relation_basis():
    basis = relation_basis(complete_closure(MINIGRAPH))
    assert basis.relations == ((0, 1, 1, -1),), "(e1-e2) + (-2e1) - (-e1-e2) = 0"
    assert relation_basis(complete_closure([[0, 0], [1, -1]])).is_empty(), "No relations without degeneracy"

    empty_sphere = complete_closure(EMPTY_SPHERE)
    relations = relation_basis(empty_sphere).relations
    assert len(relations) == 1, "A single relation among five non-root vertices"
    vectors = empty_sphere.vectors()
    total = [sum(n * v[k] for n, v in zip(relations[0], vectors, strict=True)) for k in range(4)]
    assert total == [0, 0, 0, 0], "The relation holds"


def test_is_resonant():
    assert is_resonant(complete_closure(MINIGRAPH)) == ResonanceClass.DEGENERATE_RESONANT, "C-combination of the minigraph vanishes"
    assert is_resonant(complete_closure([[0, 0], [1, -1]])) == ResonanceClass.NONDEGENERATE, "No relation"
    # 2C(e2-e1) - C(2e2-2e1) = -(e1-e2)^2
    assert is_resonant(complete_closure([[0, 0], [-1, 1], [-2, 2]])) == ResonanceClass.AVOIDABLE, "Collinear black vertices"


def test_is_allowable():
    result = is_allowable(complete_closure(MINIGRAPH))
    assert not result, "The minigraph is not allowable"
    black, red = result.witness
    total = sorted(c for c in (a + b for a, b in zip(black.coeffs, red.coeffs, strict=True)) if c)
    assert not black.twist and red.twist, "Witness pairs a black with a red vertex"
    assert total == [-2], "Witness sum is -2e_i"

    forbidden = is_allowable(complete_closure(EMPTY_SPHERE))
    assert not forbidden, "A black and a red vertex sum to -2e1"
    assert forbidden.witness == (GroupElement.zero(4), GroupElement((-3, 1, 0, 0), True)), "Witness 0 and -3e1+e2"

    assert is_allowable(complete_closure([[0, 0], [1, -1]])), "A black pair is allowable"


def test_project_components():
    g = complete_closure(THREE_VERTEX)
    components = project_components(g, 0)
    assert [c.size for c in components] == [1, 1, 1], "Both edges carry index 1"
    assert all(c.m == 1 for c in components), "Coordinate 1 is dropped"

    embedded = complete_closure([[0, 0, 0], [-1, -1, 0], [1, -1, 0]])
    same = project_components(embedded, 2)
    assert len(same) == 1, "An unused index keeps the graph whole"
    assert same[0].size == 3, "All vertices survive"

    assert len(project_components(complete_closure(MINIGRAPH), 0)) == 4, "Every minigraph edge carries index 1"

    with pytest.raises(IndexError):
        project_components(g, 2)


def black(i, j):
    return Edge(EdgeColor.BLACK, i, j)


def red(i, j):
    return Edge(EdgeColor.RED, i, j)


def relation_count(markings, m):
    vectors = [marking_vector(edge, m) for edge in markings]
    columns = [[vec[k] for vec in vectors] for k in range(m)]
    return len(integer_nullspace(columns, len(vectors)))


def test_encoding_graph_of_minigraph():
    g = complete_closure(MINIGRAPH)
    encoding = g.encoding_graph()
    assert sorted(encoding.nodes) == [0, 1], "One node per index"
    assert sorted(encoding.edges(data="color")) == [(0, 1, "Black"), (0, 1, "Red")], "Markings black{1,2} and red{1,2}"
    assert circuit_kind(encoding) == CircuitKind.ODD, "A black and a red edge close an odd circuit"
    assert relation_circuit(g) == CircuitKind.EVEN, "The relation repeats one marking along the tree"

    assert relation_circuit(complete_closure([[0, 0], [-1, 1], [-2, 2]])) == CircuitKind.EVEN, "Two black edges with one marking"
    assert relation_circuit(complete_closure(THREE_VERTEX)) is None, "No relation among independent markings"
    assert relation_circuit(complete_closure([[0, 0]])) is None, "No tree edges"


@pytest.mark.parametrize(
    ("m", "markings", "expected"),
    [
        (3, [black(0, 1), black(1, 2)], CircuitKind.NONE),
        (4, [black(0, 1), red(1, 2), black(2, 3), red(0, 3)], CircuitKind.EVEN),
        (4, [black(0, 1), black(1, 2), red(0, 2), black(2, 3)], CircuitKind.ODD),
        (5, [black(0, 1), black(1, 2), red(0, 2), black(2, 3), black(3, 4), red(2, 4)], CircuitKind.DOUBLY_ODD),
        (
            6,
            [black(0, 1), black(1, 2), red(0, 2), black(2, 3), black(3, 4), black(4, 5), red(3, 5)],
            CircuitKind.DOUBLY_ODD,
        ),
        (2, [black(0, 1), red(0, 1), red(0, 1)], CircuitKind.OTHER),
        (5, [black(0, 1), red(0, 1), black(2, 3), red(2, 3)], CircuitKind.OTHER),
        (4, [black(0, 1), black(1, 2), red(0, 2), black(2, 3), black(1, 3)], CircuitKind.OTHER),
    ],
)
def test_circuit_kind(m, markings, expected):
    """Even circuits and pairs of odd circuits carry exactly one relation, a lone odd circuit none."""
    assert circuit_kind(encoding_graph(m, markings)) == expected
    if expected in {CircuitKind.EVEN, CircuitKind.DOUBLY_ODD}:
        assert relation_count(markings, m) == 1, "One relation among the markings"
    elif expected in {CircuitKind.NONE, CircuitKind.ODD}:
        assert relation_count(markings, m) == 0, "The markings are independent"


def test_single_relations_are_even_or_doubly_odd():
    kinds = set()
    for g in [*enumerate_graphs(2, 4, 2), *enumerate_graphs(3, 3, 1)]:
        kind = relation_circuit(g)
        if kind is not None:
            kinds.add(kind)
    assert CircuitKind.EVEN in kinds, "The minigraph family is found"
    assert kinds <= {CircuitKind.EVEN, CircuitKind.DOUBLY_ODD}, "A single relation is carried by an even or doubly odd circuit"


def test_graph_files(tmp_path):
    g1 = read_graph_file("tests/black-pair.json")
    assert len(g1) == 1, "One graph in the file"
    assert [str(v) for v in g1[0].vertices] == ["[1,0]", "[0,1]"], "Element strings keep their order"

    square = read_graph_file("tests/minigraph.txt")
    assert len(square) == 1, "Comment lines are skipped"
    assert parse_graph_line(graph_line(square[0])).label() == square[0].label(), "Line form reads back"

    bad = tmp_path / "bad.txt"
    bad.write_text("vertices: [[0,0],[1,-1]]\nvertices: [[0,0],[1,0]]\n", encoding="utf-8")
    with pytest.raises(GraphFileError) as exc_info:
        read_graph_file(bad)
    assert exc_info.value.line == 2, "The error names the offending line"

    with pytest.raises(RuntimeError):
        read_graph_file(tmp_path / "missing.json")
