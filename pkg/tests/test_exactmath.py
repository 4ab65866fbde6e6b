import random
from fractions import Fraction

import pytest

from ishkit.exactmath import (
    MultiPoly,
    UniPoly,
    format_rational,
    parse_rational,
    poly_det,
    poly_exact_div,
    poly_from_json,
    poly_str,
    poly_to_json,
    unipoly_eval,
    unipoly_factored_str,
    unipoly_from_json,
    unipoly_from_roots,
    unipoly_str,
    unipoly_to_json,
)
from ishkit.exactmath import _det_cofactor


def mp(nvars, terms):
    return MultiPoly(nvars, terms)


def var(n, i):
    return MultiPoly.variable(n, i)


def test_parse_and_format_rational():
    assert parse_rational("5/2") == Fraction(5, 2)
    assert parse_rational(7) == Fraction(7)
    assert parse_rational("-3") == Fraction(-3)
    assert format_rational(Fraction(5, 2)) == "5/2"
    assert format_rational(3) == "3/1"
    with pytest.raises(ValueError):
        parse_rational(1.5)


def test_multipoly_basics():
    x1, x2 = var(2, 0), var(2, 1)
    p = (x1 - x2) * (x1 + x2)
    assert p == x1 * x1 - x2 * x2
    assert p.total_degree() == 2
    assert not p.is_zero
    assert (p - p).is_zero
    assert p.evaluate([3, 2]) == 5
    assert MultiPoly.linear([1, -1], constant=-4) == x1 - x2 - 4


def test_multipoly_cancellation_drops_terms():
    x1, x2 = var(2, 0), var(2, 1)
    p = x1 * x2 + 1
    q = p - x1 * x2
    assert q.terms == {(0, 0): Fraction(1)}


def test_leading_term_graded_lex():
    # x1 > x2: among equal-degree terms the earlier variable wins.
    p = mp(2, {(1, 0): 1, (0, 1): 5})
    assert p.leading_term() == ((1, 0), Fraction(1))
    q = mp(2, {(0, 3): 1, (2, 0): 1})  # degree decides first
    assert q.leading_term() == ((0, 3), Fraction(1))
    with pytest.raises(ValueError):
        MultiPoly.zero(2).leading_term()


def test_poly_str_ordering():
    x1, x2 = var(2, 0), var(2, 1)
    p = x2 * x2 - 2 * x1 + 1
    assert poly_str(p) == "x2^2 - 2*x1 + 1"
    assert poly_str(MultiPoly.zero(2)) == "0"


def test_exact_div_examples():
    x1, z = var(2, 0), var(2, 1)
    q, r = poly_exact_div(x1 * x1 - z * z, x1 + z)
    assert q == x1 - z and r.is_zero
    # not divisible: x1 = (x1 - x2) * 1 + x2
    x1b, x2b = var(2, 0), var(2, 1)
    q, r = poly_exact_div(x1b, x1b - x2b)
    assert q == MultiPoly.const(2, 1)
    assert r == x2b
    with pytest.raises(ZeroDivisionError):
        poly_exact_div(x1, MultiPoly.zero(2))


def test_exact_div_identity_random():
    rng = random.Random(20240817)
    for _ in range(40):
        n = rng.choice([2, 3])

        def rand_poly():
            terms = {}
            for _ in range(rng.randint(1, 5)):
                exp = tuple(rng.randint(0, 2) for _ in range(n))
                terms[exp] = terms.get(exp, 0) + Fraction(rng.randint(-4, 4))
            return MultiPoly(n, terms)

        f, g = rand_poly(), rand_poly()
        if g.is_zero:
            continue
        # exact division of a product
        q, r = poly_exact_div(f * g, g)
        assert r.is_zero and q == f
        # general division identity
        q, r = poly_exact_div(f, g)
        assert g * q + r == f


def test_det_triangular():
    # [[z, 0], [x1, x1 - x2]] over (x1, x2, z)
    x1, x2, z = var(3, 0), var(3, 1), var(3, 2)
    m = [[z, MultiPoly.zero(3)], [x1, x1 - x2]]
    assert poly_det(m) == z * (x1 - x2)


def test_det_saito_matrix_rank_two_cone():
    # Coefficient matrix of the degree-(0,1,2) derivation triple for the
    # coned two-line arrangement; hand cofactor expansion along the last
    # row gives -z*(x1-x2)*(x1-x2-z).
    n = 3
    x1, x2, z = var(n, 0), var(n, 1), var(n, 2)
    zero, one = MultiPoly.zero(n), MultiPoly.const(n, 1)
    prod = (x1 - x2) * (x1 - x2 - z)
    m = [[one, x1, zero], [one, x2, prod], [zero, z, zero]]
    expected = -1 * z * prod
    assert poly_det(m) == expected
    # dividing the determinant by the three linear factors leaves -1
    q, r = poly_exact_div(poly_det(m), z)
    assert r.is_zero
    q, r = poly_exact_div(q, x1 - x2)
    assert r.is_zero
    q, r = poly_exact_div(q, x1 - x2 - z)
    assert r.is_zero
    assert q == MultiPoly.const(n, -1)


def test_det_matches_plain_cofactor():
    # poly_det reorders columns and memoizes; plain first-row cofactor
    # expansion is the independent oracle.
    rng = random.Random(99173)
    for _ in range(10):
        n = 5
        x = [var(2, 0), var(2, 1), MultiPoly.const(2, 1)]
        m = [
            [rng.choice(x) * rng.randint(-2, 2) + rng.randint(-1, 1) for _ in range(n)]
            for _ in range(n)
        ]
        assert poly_det(m) == _det_cofactor(m)


def test_det_rejects_bad_shapes():
    one = MultiPoly.const(2, 1)
    with pytest.raises(ValueError):
        poly_det([])
    with pytest.raises(ValueError):
        poly_det([[one, one]])


def test_det_singular_matrix_is_zero():
    x1, x2 = var(2, 0), var(2, 1)
    row = [x1, x2, x1 + x2, x1 * x2, x1 - x2]
    m = [row, row] + [[x2 * x1, x1, x2, x1, x2] for _ in range(3)]
    m[2] = row
    assert poly_det(m).is_zero


def test_unipoly_from_roots():
    assert unipoly_from_roots([]) == UniPoly.one()
    # t*(t-3)^2 = t^3 - 6t^2 + 9t
    p = unipoly_from_roots([0, 3, 3])
    assert p == UniPoly([0, 9, -6, 1])
    # multiplying in the extra root 1 gives t^4 - 7t^3 + 15t^2 - 9t
    q = p * UniPoly([-1, 1])
    assert q == unipoly_from_roots([0, 1, 3, 3])
    assert q == UniPoly([0, -9, 15, -7, 1])


def test_unipoly_eval():
    p = unipoly_from_roots([0, 3, 3])
    assert unipoly_eval(p, 0) == 0
    assert unipoly_eval(p, 3) == 0
    assert unipoly_eval(p, -1) == -16
    assert unipoly_eval(UniPoly.zero(), 5) == 0


def test_unipoly_eval_at_roots_random():
    rng = random.Random(4242)
    for _ in range(25):
        roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 5))]
        p = unipoly_from_roots(roots)
        assert p.degree() == len(roots)
        for r in roots:
            assert p.evaluate(r) == 0


def test_unipoly_str():
    assert unipoly_str(unipoly_from_roots([0, 3, 3])) == "t^3 - 6t^2 + 9t"
    assert unipoly_str(UniPoly([1, 1, 1])) == "t^2 + t + 1"
    assert unipoly_str(UniPoly([-2])) == "-2"
    assert unipoly_str(UniPoly.zero()) == "0"
    assert unipoly_factored_str([0, 3, 3]) == "t (t-3)^2"
    assert unipoly_factored_str([-1, 0]) == "(t+1) t"
    assert unipoly_factored_str([]) == "1"


def test_geometric():
    assert UniPoly.geometric(3) == UniPoly([1, 1, 1, 1])
    assert UniPoly.geometric(0) == UniPoly.one()
    with pytest.raises(ValueError):
        UniPoly.geometric(-1)


def test_unipoly_json_round_trip():
    p = UniPoly([0, Fraction(9, 2), -6, 1])
    data = unipoly_to_json(p)
    assert data == ["0/1", "9/2", "-6/1", "1/1"]
    assert unipoly_from_json(data) == p
    assert unipoly_from_json([]) == UniPoly.zero()


def test_multipoly_json_round_trip():
    x1, x2 = var(2, 0), var(2, 1)
    p = x1 * x1 - Fraction(1, 2) * x2 + 3
    data = poly_to_json(p)
    assert data[0] == {"exp": [2, 0], "coef": "1/1"}
    assert poly_from_json(2, data) == p
