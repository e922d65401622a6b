"""The matrix C_A of a colored graph and its exact characteristic polynomial.

Entries live in Z[y, xi] with y_i standing for sqrt(xi_i):

* diagonal: -a(xi) for an untwisted vertex a, +a(xi) for a twisted one;
* black edge marked {i, j}: +2*y_i*y_j between untwisted vertices, -2*y_i*y_j between twisted ones;
* red edge marked {i, j}: -2*y_i*y_j in the untwisted row, +2*y_i*y_j in the twisted row.

The scalar energies K((a, sigma)) are kept out of C_A and are available from scalar_part().
"""
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from resonant_blocks.rb_graphs import ColoredGraph
from resonant_blocks.rb_lattice import EdgeColor, GroupElement, TangentialSites, kenergy
from resonant_blocks.rb_multipoly import MultiPoly, det_charpoly, eliminate_roots, eval_numeric


@dataclass(frozen=True)
class BlockMatrix:
    """A square matrix of t-free polynomials whose rows and columns follow the vertex order."""
    order: tuple[GroupElement, ...]
    entries: tuple[tuple[MultiPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def m(self) -> int:
        return self.order[0].m

    def entry(self, row: int, col: int) -> MultiPoly:
        return self.entries[row][col]

    def rows_text(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def to_dict(self) -> dict:
        return {"order": [str(v) for v in self.order], "entries": self.rows_text()}

    def evaluate(self, xi: Sequence[float]) -> np.ndarray:
        """Numeric matrix at xi > 0 with y_i = sqrt(xi_i)."""
        return np.array([[eval_numeric(e, xi, 0.0) for e in row] for row in self.entries], dtype=float)

    def is_symmetric(self) -> bool:
        return all(self.entries[r][c] == self.entries[c][r] for r in range(self.size) for c in range(r))


def _edge_monomial(m: int, i: int, j: int) -> MultiPoly:
    return MultiPoly.y(m, i) * MultiPoly.y(m, j) * 2


def build_matrix(g: ColoredGraph) -> BlockMatrix:
    """Build C_A with rows and columns in the vertex order of g."""
    m, size = g.m, g.size
    entries = [[MultiPoly.zero(m) for _ in range(size)] for _ in range(size)]
    for k, v in enumerate(g.vertices):
        entries[k][k] = MultiPoly.linear_xi(m, v.coeffs) * (-v.sign)
    for e in g.edges:
        value = _edge_monomial(m, e.edge.i, e.edge.j)
        source, target = g.vertices[e.source], g.vertices[e.target]
        if e.color == EdgeColor.BLACK:
            entries[e.source][e.target] = value * source.sign
            entries[e.target][e.source] = value * source.sign
        else:
            # -2yy in the untwisted row, +2yy in the twisted row
            entries[e.source][e.target] = value if source.twist else -value
            entries[e.target][e.source] = value if target.twist else -value
    return BlockMatrix(g.vertices, tuple(tuple(row) for row in entries))


def translate_block(mat: BlockMatrix, u: Sequence[int], twisted: bool = False) -> BlockMatrix:
    """The block of the right translate A*(u, sigma): subtract u(xi)*Id, then negate when twisted.

    Args:
        mat: The block.
        u: Translation vector in Z^m.
        twisted: Whether the translation carries tau.

    Returns:
        BlockMatrix: The translated block; its order lists the translated vertices.
    """
    m = mat.m
    shift = MultiPoly.linear_xi(m, tuple(u))
    translation = GroupElement(tuple(u), twisted)
    entries = []
    for r, row in enumerate(mat.entries):
        new_row = []
        for c, e in enumerate(row):
            value = e - shift if r == c else e
            new_row.append(-value if twisted else value)
        entries.append(tuple(new_row))
    return BlockMatrix(tuple(v * translation for v in mat.order), tuple(entries))


def charpoly_matrix(mat: BlockMatrix) -> MultiPoly:
    """det(t*Id - mat) with the square roots eliminated.

    Raises:
        OddExponentError: If a y variable survives with an odd power.
    """
    return eliminate_roots(det_charpoly([list(row) for row in mat.entries]))


def charpoly_block(g: ColoredGraph) -> MultiPoly:
    """The characteristic polynomial of C_A in Z[xi, t], monic of degree |vertices|."""
    return charpoly_matrix(build_matrix(g))


def scalar_part(g: ColoredGraph, sites: TangentialSites) -> list[int]:
    """The dropped scalar energies K((a, sigma)) of the vertices, in vertex order."""
    return [kenergy(v, sites) for v in g.vertices]


def block_mass(g: ColoredGraph) -> int:
    """The mass l of the untwisted vertices (all vertices share its parity).

    For a block without untwisted vertices it is -2 minus the mass of a twisted vertex.
    """
    for v in g.vertices:
        if not v.twist:
            return v.mass
    return -2 - g.vertices[0].mass


def dump_text(mat: BlockMatrix) -> str:
    """Rows of polynomial text, entries separated by ' | '."""
    return "\n".join(" | ".join(row) for row in mat.rows_text())
