"""Chambers of rational arrangements, base chambers, wall-crossing counts.

The complement of an arrangement falls apart into open chambers, each
recorded here by its sign vector (one strict sign per hyperplane, in the
arrangement's hyperplane order) together with a rational witness point.
Enumeration inserts hyperplanes one at a time and splits every chamber
the new hyperplane actually cuts; the cut test is exact Fourier-Motzkin
elimination on strict inequalities, which also produces the witness for
each fresh piece.

The canonical chamber of a coned arrangement built from descending sets
is cut out by ``x1 - xj < a z`` for every ``a`` in ``N_j``, the order
``x2 < x3 < ... < xl``, and ``z > 0``; its wall-crossing polynomial
(chambers counted by the number of separating hyperplanes) factors as
``(1+t)`` times one geometric factor per exponent of the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .arrangement import Arrangement, NestSpec, build_n_ish, build_named, cone
from .exactmath import Scalar, UniPoly, format_rational


@dataclass(frozen=True)
class SignVector:
    """Strict signs (+1 or -1), indexed by the arrangement's hyperplane order."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("sign vectors hold only +1 and -1")

    def __len__(self) -> int:
        return len(self.signs)

    def distance(self, other: "SignVector") -> int:
        """Number of separating hyperplanes: positions where signs differ."""
        if len(other) != len(self):
            raise ValueError("sign vectors have different lengths")
        return sum(a != b for a, b in zip(self.signs, other.signs))

    def negated(self) -> "SignVector":
        return SignVector(tuple(-s for s in self.signs))

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class Chamber:
    """A chamber: sign vector plus a rational interior point realizing it."""

    sign_vector: SignVector
    witness: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "signs": str(self.sign_vector),
            "witness": [format_rational(v) for v in self.witness],
        }


# -- exact feasibility of strict inequality systems ---------------------


def _canon_row(row: Sequence[Fraction]) -> tuple[int, ...]:
    # positive scaling only; the inequality direction must survive
    den = lcm(*(f.denominator for f in row)) if row else 1
    ints = [int(f * den) for f in row]
    g = gcd(*(abs(v) for v in ints))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def find_interior_point(
    rows: Sequence[Sequence[Scalar]], nvars: int
) -> tuple[Fraction, ...] | None:
    """A rational solution of the strict system, or None if there is none.

    Each row ``(a_1, ..., a_n, c)`` encodes ``sum(a_i x_i) + c > 0``.
    Fourier-Motzkin elimination projects the variables out one by one
    (strict inequalities combine to strict inequalities, exactly);
    back-substitution then picks interval midpoints, or a unit past the
    single bound when the interval is unbounded.
    """
    system = {
        _canon_row([Fraction(v) for v in row])
        for row in rows
    }
    for row in system:
        if len(row) != nvars + 1:
            raise ValueError("row length must be the variable count plus one")

    stages: list[tuple[list[tuple[int, ...]], list[tuple[int, ...]]]] = []
    for v in range(nvars):
        lowers = [r for r in system if r[v] > 0]
        uppers = [r for r in system if r[v] < 0]
        rest = {r for r in system if r[v] == 0}
        for lo in lowers:
            for up in uppers:
                combined = [
                    Fraction(-up[v] * lo[k] + lo[v] * up[k]) for k in range(nvars + 1)
                ]
                rest.add(_canon_row(combined))
        stages.append((lowers, uppers))
        system = rest

    if any(r[nvars] <= 0 for r in system):
        return None

    point: list[Fraction] = [Fraction(0)] * nvars
    for v in reversed(range(nvars)):
        lowers, uppers = stages[v]
        lo_bound: Fraction | None = None
        hi_bound: Fraction | None = None
        for r in lowers:  # r[v] x_v > -(rest)
            rest_val = Fraction(r[nvars]) + sum(
                r[k] * point[k] for k in range(v + 1, nvars)
            )
            bound = -rest_val / r[v]
            if lo_bound is None or bound > lo_bound:
                lo_bound = bound
        for r in uppers:  # r[v] < 0: x_v < rest / (-r[v])
            rest_val = Fraction(r[nvars]) + sum(
                r[k] * point[k] for k in range(v + 1, nvars)
            )
            bound = rest_val / (-r[v])
            if hi_bound is None or bound < hi_bound:
                hi_bound = bound
        if lo_bound is not None and hi_bound is not None:
            if lo_bound >= hi_bound:
                return None
            point[v] = (lo_bound + hi_bound) / 2
        elif lo_bound is not None:
            point[v] = lo_bound + 1
        elif hi_bound is not None:
            point[v] = hi_bound - 1
    return tuple(point)


def _side_row(arr: Arrangement, index: int, side: int) -> tuple[Fraction, ...]:
    h = arr.hyperplanes[index]
    return tuple(Fraction(side * c) for c in h.coeffs) + (Fraction(-side * h.const),)


def enumerate_chambers(arr: Arrangement) -> list[Chamber]:
    """All chambers, in increasing sign-vector order.

    Hyperplanes are inserted one at a time.  A chamber whose witness
    lies strictly on one side only needs a feasibility test for the
    opposite side; a witness landing exactly on the new hyperplane
    forces a retest of both sides.
    """
    regions: list[tuple[list[int], tuple[Fraction, ...]]] = [
        ([], (Fraction(0),) * arr.dim)
    ]
    for k, h in enumerate(arr.hyperplanes):
        updated: list[tuple[list[int], tuple[Fraction, ...]]] = []
        for signs, witness in regions:
            value = h.eval_at(witness)
            base_rows = [_side_row(arr, i, s) for i, s in enumerate(signs)]
            keep: list[int] = []
            if value > 0:
                keep.append(1)
            elif value < 0:
                keep.append(-1)
            candidates = [s for s in (1, -1) if s not in keep]
            for side in keep:
                updated.append((signs + [side], witness))
            for side in candidates:
                point = find_interior_point(base_rows + [_side_row(arr, k, side)], arr.dim)
                if point is not None:
                    updated.append((signs + [side], point))
        regions = updated
    chambers = [Chamber(SignVector(tuple(signs)), witness) for signs, witness in regions]
    chambers.sort(key=lambda c: c.sign_vector.signs)
    return chambers


def chamber_of_point(arr: Arrangement, point: Sequence[Scalar]) -> Chamber:
    """The chamber containing the point; errors if the point lies on a wall."""
    pt = tuple(Fraction(v) for v in point)
    signs = []
    for h in arr.hyperplanes:
        value = h.eval_at(pt)
        if value == 0:
            raise ValueError(f"point lies on the hyperplane {h.render(arr.var_names())}")
        signs.append(1 if value > 0 else -1)
    return Chamber(SignVector(tuple(signs)), pt)


# -- distinguished chambers ---------------------------------------------


def canonical_chamber(nest: NestSpec, arr: Arrangement | None = None) -> Chamber:
    """Base chamber of the coned arrangement of a descending nest.

    The chamber satisfying ``x1 - xj < a z`` for every ``a`` in ``N_j``,
    ``x2 < x3 < ... < xl`` and ``z > 0``; its witness is
    ``(1 + min N_2, 2, ..., l, 1)``.  When every set is empty the first
    group of conditions is vacuous and the witness takes ``x1 = 1``.
    """
    if not nest.is_descending():
        raise ValueError("the canonical chamber needs a descending nest")
    if arr is None:
        arr = cone(build_n_ish(nest))
    n2 = nest.set_at(2)
    x1 = 1 + min(n2) if n2 else Fraction(1)
    witness = (Fraction(x1),) + tuple(Fraction(j) for j in range(2, nest.ell + 1)) + (
        Fraction(1),
    )
    return chamber_of_point(arr, witness)


def ish_base_chamber(ell: int) -> tuple[Arrangement, Chamber]:
    """The affine arrangement with all walls ``x1 - xj = 0..j-1`` plus the
    Coxeter walls, and its base chamber ``x1 < xl < ... < x2``."""
    arr = build_named("ish", ell)
    witness = (Fraction(0),) + tuple(Fraction(ell + 1 - j) for j in range(2, ell + 1))
    return arr, chamber_of_point(arr, witness)


def distance_poly(arr: Arrangement, base: Chamber) -> UniPoly:
    """Chambers counted by the number of hyperplanes separating them from base."""
    chambers = enumerate_chambers(arr)
    if all(c.sign_vector != base.sign_vector for c in chambers):
        raise ValueError("the base chamber does not belong to this arrangement")
    counts: dict[int, int] = {}
    for c in chambers:
        d = base.sign_vector.distance(c.sign_vector)
        counts[d] = counts.get(d, 0) + 1
    top = max(counts)
    return UniPoly([counts.get(d, 0) for d in range(top + 1)])


def wallcross_expected(nest: NestSpec) -> UniPoly:
    """The product ``(1+t) * prod geometric(e)`` over the nonunit exponents.

    The exponents of the cone come from the chain sorted ascending by
    inclusion: position k contributes ``|N| + l - k`` where the sizes
    increase with k.  (Feeding the descending sizes into the same slots
    would overshoot the chamber count.)
    """
    if not nest.is_descending():
        raise ValueError("the product form is stated for descending nests")
    ell = nest.ell
    sizes = sorted(len(nest.set_at(j)) for j in range(2, ell + 1))
    out = UniPoly.geometric(1)
    for k in range(2, ell + 1):
        out = out * UniPoly.geometric(sizes[k - 2] + ell - k)
    return out
