"""pytest for exact linear algebra over Q."""
from fractions import Fraction

from resonant_blocks.rb_rational import integer_nullspace, nullspace, primitive_integer_vector, rank, solve_affine


def test_rank():
    assert rank([[1, -1], [-2, 0], [-1, -1]]) == 2, "Minigraph vertices span Q^2"
    assert rank([[-1, 1], [-2, 2]]) == 1, "Parallel vectors"
    assert rank([]) == 0, "Empty set"


def test_nullspace():
    basis = nullspace([[1, 2, 3]], 3)
    assert len(basis) == 2, "One equation in three unknowns"
    assert all(sum(a * b for a, b in zip([1, 2, 3], v, strict=True)) == 0 for v in basis), "Basis vectors solve the system"


def test_integer_nullspace():
    # columns are the vectors (1,-1), (-2,0), (-1,-1)
    relations = integer_nullspace([[1, -2, -1], [-1, 0, -1]], 3)
    assert relations == [(1, 1, -1)], "The single relation, leading coefficient positive"


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(-1, 2), Fraction(1, 3)]) == (3, -2), "Clear denominators and fix the sign"
    assert primitive_integer_vector([0, 0]) == (0, 0), "Zero vector stays zero"


def test_solve_affine():
    solution = solve_affine([[1, 1], [1, -1]], [3, 1])
    assert solution is not None, "Regular system has a solution"
    assert solution[0] == (2, 1), "Unique solution"
    assert solution[1] == [], "No free directions"

    assert solve_affine([[1, 1], [2, 2]], [1, 3]) is None, "Inconsistent system"

    x0, basis = solve_affine([[1, 1]], [2])
    assert x0 == (2, 0), "Particular solution with the free variable at zero"
    assert basis == [(-1, 1)], "One free direction"
