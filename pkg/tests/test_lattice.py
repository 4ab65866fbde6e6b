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
from ishkit.exactmath import UniPoly, unipoly_from_roots
from ishkit.lattice import (
    Flat,
    char_poly,
    intersection_poset,
    is_modular,
    is_supersolvable,
    localization,
    nest_filtration,
)

T_MINUS_ONE = UniPoly([-1, 1])


def test_flat_basics():
    amb = Flat.ambient(3)
    assert amb.rank == 0 and amb.dim == 3
    f = Flat.from_rows([[1, -1, 0, 0], [0, 1, -1, 0]], 3)
    assert f is not None and f.rank == 2 and f.dim == 1
    assert f.implies((1, 0, -1, 0))  # x1 = x3 follows
    assert not f.implies((1, 0, -1, 1))
    # inconsistent system has no flat
    assert Flat.from_rows([[1, -1, 0], [1, -1, 1]], 2) is None


def test_flat_rref_is_canonical():
    a = Flat.from_rows([[1, -1, 0, 0], [0, 1, -1, 0]], 3)
    b = Flat.from_rows([[1, 0, -1, 0], [2, -2, 0, 0]], 3)
    assert a == b


def test_poset_two_parallel_lines():
    # two parallel hyperplanes never meet: ambient + 2 flats
    arr = build_named("ish", 2)
    poset = intersection_poset(arr)
    assert len(poset) == 3
    assert poset.char_poly() == UniPoly([0, -2, 1])  # t^2 - 2t


def test_poset_coned_two_lines():
    poset = intersection_poset(cone(build_named("ish", 2)))
    assert len(poset) == 5
    top = poset.top_index()
    assert poset.flats[top].rank == 2
    assert poset.mobius[top] == 2
    assert poset.char_poly() == UniPoly([0, 2, -3, 1])  # t(t-1)(t-2)


def test_char_poly_named_families():
    # chi = t(t - ell)^(ell-1) for both Shi and Ish
    for ell in (2, 3, 4):
        expected = unipoly_from_roots([0] + [ell] * (ell - 1))
        assert char_poly(build_named("ish", ell)) == expected
        assert char_poly(build_named("shi", ell)) == expected
    assert char_poly(build_named("ish", 3)) == UniPoly([0, 9, -6, 1])


def test_char_poly_empty_and_coxeter():
    from ishkit.arrangement import Arrangement

    empty = Arrangement(3, [])
    assert char_poly(empty) == UniPoly([0, 0, 0, 1])
    # braid arrangement: t(t-1)(t-2)
    assert char_poly(build_named("coxeter", 3)) == UniPoly([0, 2, -3, 1])


def test_cone_relation():
    samples = [
        build_named("ish", 2),
        build_named("ish", 3),
        build_named("shi", 3),
        build_n_ish(NestSpec.make([[0, 1], [0]])),
        build_deleted("shi", Graph.make(3, [(1, 2)])),
    ]
    for arr in samples:
        assert char_poly(cone(arr)) == char_poly(arr) * T_MINUS_ONE


def test_char_poly_at_one_vanishes_for_nonempty_central():
    for arr in (cone(build_named("ish", 3)), build_named("coxeter", 4)):
        assert char_poly(arr).evaluate(1) == 0


def test_mobius_alternates_in_sign():
    poset = intersection_poset(cone(build_named("ish", 3)))
    for flat, mu in zip(poset.flats, poset.mobius):
        assert mu != 0
        assert (mu > 0) == (flat.rank % 2 == 0)


def test_localization():
    arr = cone(build_n_ish(NestSpec.make([[0], [1]])))
    X = Flat.from_rows(
        [[0, 0, 0, 1, 0], [1, -1, 0, 0, 0], [1, 0, -1, 0, 0]], 4
    )
    assert X is not None
    loc = localization(arr, X)
    assert len(loc) == 4  # every hyperplane contains this flat
    # localizing at a single hyperplane's flat returns just that hyperplane
    h = arr.hyperplanes[0]
    single = Flat.from_rows([h.row()], 4)
    assert localization(arr, single).hyperplanes == (h,)
    # a subspace that is not an intersection of hyperplanes is rejected
    bogus = Flat.from_rows([[1, 0, 0, 0, 0]], 4)
    with pytest.raises(ValueError):
        localization(arr, bogus)
    with pytest.raises(ValueError):
        localization(arr, Flat.ambient(7))


def test_is_modular_rank_two_cone():
    # in a rank-2 lattice every flat is modular
    arr = cone(build_named("ish", 2))
    poset = intersection_poset(arr)
    for flat in poset.flats:
        assert is_modular(poset, flat)


def test_is_modular_rejects_affine():
    arr = build_named("ish", 2)
    poset = intersection_poset(arr)
    with pytest.raises(ValueError):
        is_modular(poset, poset.flats[0])


def test_modular_failure_exists_in_bad_nest():
    arr = cone(build_n_ish(NestSpec.make([[0], [1]])))
    poset = intersection_poset(arr)
    flags = [is_modular(poset, f) for f in poset.flats]
    assert not all(flags)


def test_supersolvable_examples():
    assert is_supersolvable(cone(build_named("ish", 2))) is not None
    chain = is_supersolvable(cone(build_named("ish", 3)))
    assert chain is not None
    assert [f.rank for f in chain] == [0, 1, 2, 3]
    assert is_supersolvable(cone(build_n_ish(NestSpec.make([[0], [1]])))) is None
    with pytest.raises(ValueError):
        is_supersolvable(build_named("ish", 2))


def test_supersolvable_chain_is_nested():
    chain = is_supersolvable(cone(build_named("ish", 3)))
    assert chain is not None
    for below, above in zip(chain, chain[1:]):
        # the higher flat satisfies every equation of the lower one
        for row in below.rows:
            assert above.implies(row)
        assert above.rank == below.rank + 1


def test_nest_filtration_ish():
    stages, report = nest_filtration(NestSpec.make([[0, 1, 2], [0, 1]]))
    assert report.ranks == (1, 2, 3)
    assert report.ok
    assert len(stages[0]) == 1  # just z = 0
    assert len(stages[-1]) == 7


def test_nest_filtration_empty_nest():
    stages, report = nest_filtration(NestSpec.make([[], []]))
    assert report.ranks == (1, 2)
    assert report.ok


def test_nest_filtration_requires_descending():
    with pytest.raises(ValueError):
        nest_filtration(NestSpec.make([[0], [1]]))


def test_nest_filtration_random_descending():
    rng = random.Random(515253)
    universe = [Fraction(k) for k in range(-2, 4)]
    for _ in range(10):
        ell = rng.choice([2, 3, 4])
        base = {a for a in universe if rng.random() < 0.5}
        sets = []
        for _ in range(ell - 1):
            sets.append(sorted(base))
            base = {a for a in base if rng.random() < 0.7}
        stages, report = nest_filtration(NestSpec.make(sets))
        assert report.ok
        for small, big in zip(stages, stages[1:]):
            assert set(small.hyperplanes) <= set(big.hyperplanes)


def test_zaslavsky_count_matches_poset():
    # |chi(-1)| equals the chamber count; frozen expected values here
    assert abs(char_poly(build_named("ish", 3)).evaluate(-1)) == 16
    assert abs(char_poly(cone(build_named("ish", 2))).evaluate(-1)) == 6
    assert abs(char_poly(build_named("shi", 4)).evaluate(-1)) == 125


def test_poset_json_surface():
    poset = intersection_poset(cone(build_named("ish", 2)))
    data = poset.to_json()
    assert len(data["flats"]) == 5
    ranks = [rec["rank"] for rec in data["flats"]]
    assert ranks == sorted(ranks)
    assert data["flats"][0]["mobius"] == 1
    # hasse edges connect consecutive ranks
    for i, j in data["hasse"]:
        assert data["flats"][j]["rank"] == data["flats"][i]["rank"] + 1
    assert len(data["hasse"]) == 3 + 3  # bottom->atoms, atoms->top
