import pytest

from enriques.polymodels import (
    DegreeError,
    MultiPoly,
    NotDivisible,
    ParseError,
    castelnuovo_transform,
    double_plane_octic,
    enriques_sextic,
    generic_form,
    parse_poly,
    x,
)


def test_parse_expansion():
    assert str(parse_poly("(x0 + x1)^2")) == "x0^2 + 2*x0*x1 + x1^2"
    assert str(parse_poly("x0 - x0")) == "0"
    assert str(parse_poly("3*x2^2 - x1*x3")) == "-x1*x3 + 3*x2^2"


def test_parse_errors():
    for bad in ("x4", "x0 +", "(x1", "x0 ^ x1", "2 ** 3"):
        with pytest.raises(ParseError):
            parse_poly(bad)


def test_arithmetic_identities():
    a, b = x(0), x(1)
    assert (a + b) * (a - b) == a ** 2 - b ** 2
    assert (a + b) ** 3 == a ** 3 + 3 * a ** 2 * b + 3 * a * b ** 2 + b ** 3
    assert a - a == MultiPoly()


def test_exact_divide():
    a, b = x(0), x(1)
    assert (a ** 2 - b ** 2).exact_divide(a - b) == a + b
    with pytest.raises(NotDivisible):
        (a ** 2 + b).exact_divide(a - b)


def test_geometric_degree_ignores_symbolic_coefficients():
    q = generic_form(2, "q")
    assert q.degree(geometric=True) == 2
    assert q.is_homogeneous(2, geometric=True)
    assert q.degree(geometric=False) == 3


def test_sextic_shape():
    sextic = enriques_sextic(0)
    assert len(sextic.terms) == 4
    sextic = enriques_sextic(generic_form(2, "q"))
    assert len(sextic.terms) == 14
    assert sextic.is_homogeneous(6, geometric=True)


def test_sextic_rejects_non_quadric():
    with pytest.raises(DegreeError):
        enriques_sextic(x(0) ** 3)


def test_sextic_symmetric_in_x2_x3():
    q = parse_poly("x2^2 + x3^2 + x0*x1")
    swap = {"x2": x(3), "x3": x(2)}
    sextic = enriques_sextic(q)
    assert sextic.substitute(swap) == sextic


def test_castelnuovo_trivial_quadric():
    quintic, certificate = castelnuovo_transform(0)
    assert certificate
    assert str(quintic) == (
        "x0^3*x1^2 + x0*x1^2*x2^2 + x0*x1^2*x3^2 + x0*x2^2*x3^2"
    )


def test_castelnuovo_generic_quadric():
    quintic, certificate = castelnuovo_transform(generic_form(2, "q"))
    assert certificate
    assert quintic.is_homogeneous(5, geometric=True)


def test_castelnuovo_concrete_quadric():
    quintic, certificate = castelnuovo_transform(parse_poly("x0*x1 + 2*x2^2"))
    assert certificate
    assert quintic.is_homogeneous(5, geometric=True)


def test_octic_trivial_branch_data():
    octic, certificate = double_plane_octic(0, 0, generic_form(2, "q", nvars=3))
    assert certificate
    assert octic == (x(0) * x(1) * generic_form(2, "q", nvars=3) ** 2
                     * x(0) * x(1))


def test_octic_generic_branch_data():
    c1 = generic_form(3, "a", nvars=3)
    c2 = generic_form(3, "b", nvars=3)
    qpp = generic_form(2, "c", nvars=3)
    octic, certificate = double_plane_octic(c1, c2, qpp)
    assert certificate
    assert octic.is_homogeneous(8, geometric=True)


def test_octic_concrete_values():
    c1 = parse_poly("x0^3")
    c2 = parse_poly("x1^3")
    qpp = parse_poly("x0*x2")
    octic, certificate = double_plane_octic(c1, c2, qpp)
    assert certificate
    assert octic == x(0) * x(1) * (
        x(0) * x(1) * qpp ** 2 - 4 * c1 * c2
    )


def test_octic_rejects_x3_in_inputs():
    with pytest.raises(DegreeError):
        double_plane_octic(x(3) ** 3, 0, 0)
    with pytest.raises(DegreeError):
        double_plane_octic(0, 0, x(0) * x(3))


def test_octic_rejects_wrong_degrees():
    with pytest.raises(DegreeError):
        double_plane_octic(x(0) ** 2, 0, 0)


def test_string_output_is_deterministic():
    p = parse_poly("x1*x0 + x2^2 - 5")
    assert str(p) == str(parse_poly("x2^2 + x0*x1 - 5"))
