import random
from fractions import Fraction

import pytest

from ishkit.arrangement import (
    Graph,
    NestSpec,
    build_deleted,
    build_n_ish,
    build_named,
    cone,
)
from ishkit.chambers import (
    Chamber,
    SignVector,
    canonical_chamber,
    chamber_of_point,
    distance_poly,
    enumerate_chambers,
    find_interior_point,
    ish_base_chamber,
    wallcross_expected,
)
from ishkit.exactmath import UniPoly
from ishkit.lattice import char_poly


# -- feasibility oracle --------------------------------------------------


def test_interior_point_simple_box():
    # 0 < x < 1, 0 < y < 1
    rows = [(1, 0, 0), (-1, 0, 1), (0, 1, 0), (0, -1, 1)]
    p = find_interior_point(rows, 2)
    assert p is not None
    assert 0 < p[0] < 1 and 0 < p[1] < 1


def test_interior_point_infeasible():
    assert find_interior_point([(1, 0), (-1, -1)], 1) is None  # x > 0, x < -1
    assert find_interior_point([(0, -1)], 1) is None  # 0 > 1
    assert find_interior_point([(1, 0), (-1, 0)], 1) is None  # x > 0, x < 0


def test_interior_point_unbounded():
    p = find_interior_point([(1, -10)], 1)  # x > 10
    assert p is not None and p[0] > 10
    p = find_interior_point([(-1, -10)], 1)  # x < -10
    assert p is not None and p[0] < -10
    assert find_interior_point([], 2) == (Fraction(0), Fraction(0))


def test_interior_point_needs_substitution():
    # x > 0, y > x, y < x + 1/3
    rows = [(1, 0, 0), (-1, 1, 0), (1, -1, Fraction(1, 3))]
    p = find_interior_point(rows, 2)
    assert p is not None
    x, y = p
    assert x > 0 and y > x and y < x + Fraction(1, 3)


def test_interior_point_rejects_bad_rows():
    with pytest.raises(ValueError):
        find_interior_point([(1, 2)], 2)


# -- sign vectors --------------------------------------------------------


def test_sign_vector_basics():
    v = SignVector((1, -1, 1))
    assert len(v) == 3
    assert str(v) == "+-+"
    assert v.negated() == SignVector((-1, 1, -1))
    assert v.distance(v.negated()) == 3
    assert v.distance(SignVector((1, 1, 1))) == 1
    with pytest.raises(ValueError):
        SignVector((1, 0, -1))
    with pytest.raises(ValueError):
        v.distance(SignVector((1, -1)))


# -- enumeration ---------------------------------------------------------


def test_chamber_counts_small():
    assert len(enumerate_chambers(build_named("ish", 2))) == 3
    assert len(enumerate_chambers(build_named("ish", 3))) == 16
    assert len(enumerate_chambers(cone(build_named("ish", 2)))) == 6


def test_chamber_witnesses_realize_signs():
    arr = build_named("ish", 3)
    for ch in enumerate_chambers(arr):
        again = chamber_of_point(arr, ch.witness)
        assert again.sign_vector == ch.sign_vector


def test_enumeration_is_deterministic():
    arr = build_named("shi", 3)
    first = enumerate_chambers(arr)
    second = enumerate_chambers(arr)
    assert first == second
    signs = [c.sign_vector.signs for c in first]
    assert signs == sorted(signs)


def test_zaslavsky_consistency():
    cases = [
        build_named("ish", 2),
        build_named("ish", 3),
        build_named("shi", 2),
        build_named("shi", 3),
        build_named("coxeter", 3),
        cone(build_named("ish", 2)),
        build_deleted("ish", Graph.make(3, [(1, 2), (2, 3)])),
        build_n_ish(NestSpec.make([[0, Fraction(1, 2)], []])),
    ]
    for arr in cases:
        count = len(enumerate_chambers(arr))
        assert count == abs(char_poly(arr).evaluate(-1))


def test_antipodal_pairing_on_central():
    for arr in (cone(build_named("ish", 2)), build_named("coxeter", 3)):
        chambers = enumerate_chambers(arr)
        vectors = {c.sign_vector for c in chambers}
        for v in vectors:
            assert v.negated() in vectors
            assert v.negated() != v


def test_chamber_of_point_on_wall_fails():
    arr = build_named("ish", 2)
    with pytest.raises(ValueError):
        chamber_of_point(arr, (0, 0))


def test_chamber_json():
    arr = cone(build_named("ish", 2))
    ch = canonical_chamber(NestSpec.make([[0, 1]]), arr)
    assert ch.to_json() == {"signs": "+--", "witness": ["1/1", "2/1", "1/1"]}


# -- distinguished chambers ----------------------------------------------


def test_canonical_chamber_witness_matches_formula():
    ch = canonical_chamber(NestSpec.make([[0, 1]]))
    assert ch.witness == (Fraction(1), Fraction(2), Fraction(1))


def test_canonical_chamber_signs():
    # z positive, every other wall negative
    nest = NestSpec.make([[0, 1, 2], [0, 1]])
    arr = cone(build_n_ish(nest))
    ch = canonical_chamber(nest, arr)
    z_index = next(i for i, h in enumerate(arr.hyperplanes) if h.coeffs[-1] == 1)
    for i, s in enumerate(ch.sign_vector.signs):
        assert s == (1 if i == z_index else -1)


def test_canonical_chamber_requires_descending():
    with pytest.raises(ValueError):
        canonical_chamber(NestSpec.make([[0], [0, 1]]))


def test_canonical_chamber_empty_nest():
    nest = NestSpec.make([[], []])
    ch = canonical_chamber(nest)
    assert ch.witness == (Fraction(1), Fraction(2), Fraction(3), Fraction(1))


def test_canonical_chamber_without_zero_offsets():
    # the witness can collide with x2 in value; no wall passes through it
    nest = NestSpec.make([[1, 2], [1]])
    ch = canonical_chamber(nest)
    assert ch.witness[0] == Fraction(2)


def test_deconed_canonical_is_the_affine_base():
    # Relabeling x_j -> x_{l+2-j} turns the descending staircase into the
    # plain arrangement with all offsets 0..j-1, and carries the deconed
    # canonical witness into the chamber x1 < xl < ... < x2.
    for ell in (3, 4):
        sets = [list(range(ell + 1 - j + 1)) for j in range(2, ell + 1)]
        nest = NestSpec.make(sets)
        assert nest.is_descending()
        witness = canonical_chamber(nest).witness
        assert witness == tuple(Fraction(v) for v in [1, *range(2, ell + 1), 1])
        arr, base = ish_base_chamber(ell)
        carried = (witness[0],) + tuple(reversed(witness[1:-1]))
        assert chamber_of_point(arr, carried).sign_vector == base.sign_vector


# -- wall-crossing polynomials -------------------------------------------


def test_distance_poly_small_line():
    arr, base = ish_base_chamber(2)
    assert distance_poly(arr, base) == UniPoly([1, 1, 1])


def test_distance_poly_rank_three_affine():
    arr, base = ish_base_chamber(3)
    assert distance_poly(arr, base) == UniPoly.geometric(3) * UniPoly.geometric(3)


def test_distance_poly_coned_rank_two():
    nest = NestSpec.make([[0, 1]])
    arr = cone(build_named("ish", 2))
    poly = distance_poly(arr, canonical_chamber(nest, arr))
    assert poly == UniPoly([1, 2, 2, 1])
    assert poly == UniPoly.geometric(1) * UniPoly.geometric(2)


def test_distance_poly_rejects_foreign_base():
    arr = build_named("ish", 2)
    fake = Chamber(SignVector((-1, 1)), (Fraction(0), Fraction(0)))
    with pytest.raises(ValueError):
        distance_poly(arr, fake)


def test_distance_poly_endpoints():
    arr = build_named("shi", 2)
    chambers = enumerate_chambers(arr)
    for base in chambers:
        poly = distance_poly(arr, base)
        assert poly.evaluate(0) == 1
        assert poly.evaluate(1) == len(chambers)


def test_wallcross_product_form_for_descending_nests():
    cases = [
        [[0, 1], [0]],
        [[1, 2], [1]],
        [[], []],
        [[Fraction(1, 2), 3], [3]],
    ]
    for sets in cases:
        nest = NestSpec.make(sets)
        arr = cone(build_n_ish(nest))
        got = distance_poly(arr, canonical_chamber(nest, arr))
        assert got == wallcross_expected(nest)


def test_wallcross_expected_guards():
    with pytest.raises(ValueError):
        wallcross_expected(NestSpec.make([[0], [0, 1]]))


def test_random_bases_keep_zaslavsky_program(  # witness reuse across bases
):
    rng = random.Random(3317)
    arr = build_named("ish", 3)
    chambers = enumerate_chambers(arr)
    for _ in range(5):
        base = rng.choice(chambers)
        poly = distance_poly(arr, base)
        assert poly.evaluate(1) == 16
