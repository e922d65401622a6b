"""pytest for the exact polynomial arithmetic."""
import pytest

from resonant_blocks import MultiPoly, NonPositiveXiError, OddExponentError, PolynomialParseError, VariableUniverseError, eliminate_roots, eval_numeric, specialize
from resonant_blocks.rb_multipoly import arith, det_charpoly, numeric_scale

BLACK_PAIR = "t^2 + x1*t + x2*t - 3*x1*x2"
RED_PAIR = "t^2 + x1*t + x2*t + 4*x1*x2"


def poly(text: str, m: int = 2) -> MultiPoly:
    return MultiPoly.parse(text, m)


def test_arith():
    t, x1, x2 = MultiPoly.t(2), MultiPoly.xi(2, 0), MultiPoly.xi(2, 1)
    assert arith(t, x1, "add") == poly("t + x1"), "t + x1"
    y12 = MultiPoly.y(2, 0) * MultiPoly.y(2, 1)
    assert arith(y12, y12, "mul") == poly("y1^2*y2^2"), "(y1*y2)^2"
    product = arith(t + x1, t + x2, "mul")
    assert arith(product, x1 * x2 * 4, "sub") == poly(BLACK_PAIR), "(t + x1)(t + x2) - 4*x1*x2"

    with pytest.raises(VariableUniverseError):
        arith(MultiPoly.t(2), MultiPoly.t(3), "add")
    with pytest.raises(ValueError, match="Unknown operation"):
        arith(t, t, "div")


def test_text_form():
    """Test that printing is canonical and parses back to the same polynomial."""
    chi = poly(BLACK_PAIR)
    assert str(chi) == BLACK_PAIR, "Canonical text of the black pair polynomial"
    assert MultiPoly.parse(str(chi)) == chi, "Text parses back"
    assert str(MultiPoly.zero(2)) == "0", "Zero prints as 0"
    assert str(poly("-2*y1*y2")) == "-2*y1*y2", "Leading minus sign"
    assert poly("x2*x1 - x1*x2 + 3") == MultiPoly.constant(2, 3), "Like terms collect"


def test_parse_errors():
    for text in ("t +", "x1 x2", "t^", "z1", "x0", ""):
        with pytest.raises(PolynomialParseError):
            MultiPoly.parse(text, 2)
    with pytest.raises(PolynomialParseError):
        MultiPoly.parse("x3 + t", 2)


def test_det_charpoly():
    zero = MultiPoly.zero(1)
    assert det_charpoly([[zero]]) == MultiPoly.t(1), "1x1 [0] gives t"

    two_yy = poly("2*y1*y2")
    g1_block = [[poly("-x1"), two_yy], [two_yy, poly("-x2")]]
    assert eliminate_roots(det_charpoly(g1_block)) == poly(BLACK_PAIR), "Block of the black pair"

    g2_block = [[MultiPoly.zero(2), -two_yy], [two_yy, poly("-x1 - x2")]]
    raw = det_charpoly(g2_block)
    assert raw.has_roots(), "The raw determinant still contains y variables"
    assert eliminate_roots(raw) == poly(RED_PAIR), "Block of the red pair"


def test_eliminate_roots():
    assert eliminate_roots(poly("y1^2*y2^2")) == poly("x1*x2"), "y_i^2 -> x_i"
    assert eliminate_roots(poly("y1^4*x1 + t")) == poly("x1^3 + t"), "Powers combine with existing xi"
    with pytest.raises(OddExponentError):
        eliminate_roots(poly("y1*y2*t"))


def test_specialize():
    assert specialize(poly(BLACK_PAIR), 0, 0) == poly("t^2 + x2*t"), "Black pair polynomial at x1 = 0"
    assert specialize(poly(RED_PAIR), 0, 0) == poly("t^2 + x2*t"), "Red pair polynomial at x1 = 0"
    assert specialize(poly("t + x1", 3), 2, 5) == poly("t + x1", 3), "Unused index leaves p unchanged"
    assert specialize(poly("y1*y2 + t"), 0, 4) == poly("2*y2 + t"), "Odd y power with a square value"
    assert specialize(poly("y1*y2 + t"), 0, 0) == poly("t"), "y terms vanish at zero"
    with pytest.raises(OddExponentError):
        specialize(poly("y1*y2"), 0, 3)


def test_eval_numeric():
    assert eval_numeric(poly("t + x1"), [2.0, 1.0], -2.0) == pytest.approx(0.0), "t + x1 at x1 = 2, t = -2"
    assert eval_numeric(poly(BLACK_PAIR), [1.0, 1.0], 1.0) == pytest.approx(0.0), "1 + 2 - 3"
    assert eval_numeric(poly("y1*y2"), [4.0, 9.0], 0.0) == pytest.approx(6.0), "sqrt(4)*sqrt(9)"
    value = eval_numeric(poly(RED_PAIR), [1.0, 1.0], complex(-1.0, 3**0.5))
    assert abs(value) < 1e-12, "Complex root of t^2 + 2t + 4"
    assert numeric_scale(poly(BLACK_PAIR), [1.0, 1.0], 1.0) == pytest.approx(6.0), "Sum of absolute term values"

    with pytest.raises(NonPositiveXiError):
        eval_numeric(poly("t"), [0.0, 1.0], 1.0)


def test_t_coefficients_and_division():
    chi = poly(BLACK_PAIR)
    coefficients = chi.coefficients_in_t()
    assert [str(c) for c in coefficients] == ["-3*x1*x2", "x1 + x2", "1"], "Coefficients c0, c1, c2"
    assert MultiPoly.from_t_coefficients(coefficients) == chi, "Rebuilt from its coefficients"

    product = poly("t + x1") * poly("t - 2*x2")
    quotient, remainder = product.divmod_monic_t(poly("t + x1"))
    assert quotient == poly("t - 2*x2"), "Exact quotient"
    assert remainder.is_zero(), "No remainder"
    assert chi.is_homogeneous(), "Characteristic polynomials are homogeneous in (xi, t)"
