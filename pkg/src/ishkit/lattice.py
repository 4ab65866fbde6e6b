"""Intersection posets, Moebius values, characteristic polynomials.

A flat is a nonempty intersection of hyperplanes, canonically stored as
the reduced row echelon form of its augmented linear system.  The poset
orders flats by reverse inclusion (the whole space is the bottom
element), and each flat carries the bitmask of hyperplanes containing
it; since a flat equals the intersection of all hyperplanes through it,
masks are a faithful encoding and mask containment decides the order
relation cheaply.

On top of the poset sit the classical tools: Moebius values by the
recursive sum over lower flats, the characteristic polynomial
``sum mu(X) t^dim(X)``, localization, modular flats, supersolvability
via a maximal chain of modular flats, and the rank-by-rank filtration
certificate for coned nested arrangements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangement import Arrangement, Hyperplane, NestSpec, build_n_ish, cone
from .exactmath import UniPoly, format_rational

Row = tuple[Fraction, ...]


def _rref(rows: Iterable[Sequence[Fraction]], width: int) -> tuple[tuple[Row, ...], bool]:
    """Reduced row echelon form of an augmented system.

    The last column is the constant; it is never chosen as a pivot.
    Returns ``(rows, consistent)`` with zero rows dropped.
    """
    mat = [list(map(Fraction, r)) for r in rows]
    lead = 0
    for col in range(width - 1):
        pivot = next((i for i in range(lead, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[lead], mat[pivot] = mat[pivot], mat[lead]
        inv = 1 / mat[lead][col]
        mat[lead] = [v * inv for v in mat[lead]]
        for i in range(len(mat)):
            if i != lead and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[lead])]
        lead += 1
    consistent = all(mat[i][width - 1] == 0 for i in range(lead, len(mat)))
    return tuple(tuple(r) for r in mat[:lead]), consistent


def _reduce_row(row: Sequence[Fraction], rref_rows: Sequence[Row]) -> list[Fraction]:
    out = list(map(Fraction, row))
    for rr in rref_rows:
        pivot = next(i for i, v in enumerate(rr) if v != 0)
        f = out[pivot]
        if f != 0:
            out = [a - f * b for a, b in zip(out, rr)]
    return out


@dataclass(frozen=True)
class Flat:
    """A nonempty affine subspace arising as an intersection of hyperplanes."""

    rows: tuple[Row, ...]
    ambient_dim: int

    @staticmethod
    def ambient(dim: int) -> "Flat":
        return Flat((), dim)

    @staticmethod
    def from_rows(rows: Iterable[Sequence[Fraction]], ambient_dim: int) -> "Flat | None":
        rr, ok = _rref(rows, ambient_dim + 1)
        return Flat(rr, ambient_dim) if ok else None

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.rows)

    def implies(self, row: Sequence[Fraction]) -> bool:
        """Does every point of the flat satisfy ``coeffs . x = const``?"""
        return all(v == 0 for v in _reduce_row(row, self.rows))

    def contains_hyperplane_wise(self, h: Hyperplane) -> bool:
        return self.implies(h.row())

    def intersect_hyperplane(self, h: Hyperplane) -> "Flat | None | str":
        """Intersect with a hyperplane.

        Returns ``"same"`` when the hyperplane already contains the
        flat, ``None`` when the intersection is empty, and the new
        ``Flat`` otherwise.
        """
        red = _reduce_row(h.row(), self.rows)
        if all(v == 0 for v in red):
            return "same"
        if all(v == 0 for v in red[:-1]):
            return None
        rr, ok = _rref(self.rows + (tuple(red),), self.ambient_dim + 1)
        assert ok
        return Flat(rr, self.ambient_dim)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "dim": self.dim,
            "rref": [[format_rational(v) for v in row] for row in self.rows],
        }

    def render(self, names: Sequence[str]) -> str:
        if not self.rows:
            return "ambient space"
        eqs = []
        for row in self.rows:
            coeffs, const = row[:-1], row[-1]
            parts = []
            for c, name in zip(coeffs, names):
                if c == 0:
                    continue
                if not parts:
                    parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
                else:
                    sign = "+" if c > 0 else "-"
                    mag = abs(c)
                    parts.append(f"{sign} {name}" if mag == 1 else f"{sign} {mag}*{name}")
            eqs.append(f"{' '.join(parts)} = {const}")
        return "; ".join(eqs)


class IntersectionPoset:
    """All flats of an arrangement, ordered by reverse inclusion."""

    def __init__(self, arrangement: Arrangement, flats: Sequence[Flat], masks: Sequence[int]) -> None:
        order = sorted(range(len(flats)), key=lambda i: (flats[i].rank, flats[i].rows))
        self.arrangement = arrangement
        self.flats: tuple[Flat, ...] = tuple(flats[i] for i in order)
        self.masks: tuple[int, ...] = tuple(masks[i] for i in order)
        self._index = {f.rows: i for i, f in enumerate(self.flats)}
        self.mobius: tuple[int, ...] = self._compute_mobius()

    def _compute_mobius(self) -> tuple[int, ...]:
        mob = [0] * len(self.flats)
        for i, flat in enumerate(self.flats):
            if flat.rank == 0:
                mob[i] = 1
                continue
            mask = self.masks[i]
            total = 0
            for j in range(i):
                if self.flats[j].rank >= flat.rank:
                    break
                if self.masks[j] & ~mask == 0:
                    total += mob[j]
            mob[i] = -total
        return tuple(mob)

    def __len__(self) -> int:
        return len(self.flats)

    def index_of(self, flat: Flat) -> int:
        try:
            return self._index[flat.rows]
        except KeyError:
            raise ValueError("flat does not belong to this poset") from None

    def leq(self, i: int, j: int) -> bool:
        """Order by reverse inclusion: bottom is the ambient space."""
        return self.masks[i] & ~self.masks[j] == 0

    @property
    def rank(self) -> int:
        return max(f.rank for f in self.flats)

    def flats_of_rank(self, r: int) -> list[int]:
        return [i for i, f in enumerate(self.flats) if f.rank == r]

    def top_index(self) -> int:
        """Index of the center flat; only central arrangements have one."""
        if not self.arrangement.is_central:
            raise ValueError("only central arrangements have a top flat")
        full = (1 << len(self.arrangement)) - 1
        for i, m in enumerate(self.masks):
            if m == full:
                return i
        raise RuntimeError("central arrangement is missing its center flat")

    def char_poly(self) -> UniPoly:
        coeffs = [Fraction(0)] * (self.arrangement.dim + 1)
        for flat, mu in zip(self.flats, self.mobius):
            coeffs[flat.dim] += mu
        return UniPoly(coeffs)

    def join_index(self, i: int, j: int) -> int:
        """Smallest flat above both: the subspace intersection.

        Raises ``ValueError`` when the two flats do not meet (possible
        only for non-central arrangements).
        """
        combined = Flat.from_rows(self.flats[i].rows + self.flats[j].rows, self.arrangement.dim)
        if combined is None:
            raise ValueError("flats do not intersect")
        return self.index_of(combined)

    def meet_index(self, i: int, j: int) -> int:
        """Largest flat below both, by mask containment."""
        both = self.masks[i] & self.masks[j]
        candidates = [k for k, m in enumerate(self.masks) if m & ~both == 0]
        best = max(candidates, key=lambda k: self.flats[k].rank)
        for k in candidates:
            if self.masks[k] & ~self.masks[best] != 0:
                raise RuntimeError("meet is not unique; poset is not a lattice here")
        return best

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for j, fj in enumerate(self.flats):
            for i in range(j):
                if self.flats[i].rank == fj.rank - 1 and self.leq(i, j):
                    out.append((i, j))
        return out

    def to_json(self) -> dict:
        flats = []
        for flat, mu in zip(self.flats, self.mobius):
            rec = flat.to_json()
            rec["mobius"] = mu
            flats.append(rec)
        return {"flats": flats, "hasse": [list(e) for e in self.covers()]}


def intersection_poset(arr: Arrangement) -> IntersectionPoset:
    """Generate every flat by closing the ambient space under intersection."""
    ambient = Flat.ambient(arr.dim)
    found: dict[tuple[Row, ...], Flat] = {ambient.rows: ambient}
    queue = [ambient]
    while queue:
        flat = queue.pop()
        for h in arr.hyperplanes:
            res = flat.intersect_hyperplane(h)
            if isinstance(res, Flat) and res.rows not in found:
                found[res.rows] = res
                queue.append(res)
    flats = list(found.values())
    rows = [h.row() for h in arr.hyperplanes]
    masks = []
    for flat in flats:
        mask = 0
        for bit, row in enumerate(rows):
            if flat.implies(row):
                mask |= 1 << bit
        masks.append(mask)
    return IntersectionPoset(arr, flats, masks)


def char_poly(arr: Arrangement) -> UniPoly:
    """Characteristic polynomial via the Moebius sum over all flats."""
    return intersection_poset(arr).char_poly()


def localization(arr: Arrangement, flat: Flat) -> Arrangement:
    """The sub-arrangement of hyperplanes containing the flat.

    The flat must belong to the intersection poset: it has to equal the
    intersection of the hyperplanes through it.
    """
    if flat.ambient_dim != arr.dim:
        raise ValueError("flat lives in the wrong ambient space")
    chosen = [h for h in arr.hyperplanes if flat.contains_hyperplane_wise(h)]
    check = Flat.from_rows([h.row() for h in chosen], arr.dim)
    if check is None or check.rows != flat.rows:
        raise ValueError("flat is not an intersection of arrangement hyperplanes")
    return Arrangement(arr.dim, chosen, coned=arr.coned)


def is_modular(poset: IntersectionPoset, flat: Flat) -> bool:
    """Modularity test: rank adds along meet and join against every flat."""
    if not poset.arrangement.is_central:
        raise ValueError("modularity is defined here for central arrangements only")
    i = poset.index_of(flat)
    return _is_modular_index(poset, i)


def _is_modular_index(poset: IntersectionPoset, i: int) -> bool:
    ri = poset.flats[i].rank
    for j in range(len(poset.flats)):
        rj = poset.flats[j].rank
        meet = poset.meet_index(i, j)
        join = poset.join_index(i, j)
        if ri + rj != poset.flats[meet].rank + poset.flats[join].rank:
            return False
    return True


def is_supersolvable(arr: Arrangement) -> list[Flat] | None:
    """Search for a maximal chain of modular flats, bottom to top.

    Returns the chain when the arrangement is supersolvable, otherwise
    ``None``.  Central arrangements only.
    """
    if not arr.is_central:
        raise ValueError("supersolvability test needs a central arrangement")
    poset = intersection_poset(arr)
    top_rank = poset.flats[poset.top_index()].rank
    modular_cache: dict[int, bool] = {}

    def modular(i: int) -> bool:
        if i not in modular_cache:
            modular_cache[i] = _is_modular_index(poset, i)
        return modular_cache[i]

    by_rank: dict[int, list[int]] = {}
    for i, f in enumerate(poset.flats):
        by_rank.setdefault(f.rank, []).append(i)

    def extend(chain: list[int]) -> list[int] | None:
        current = chain[-1]
        r = poset.flats[current].rank
        if r == top_rank:
            return chain
        for j in by_rank.get(r + 1, []):
            if poset.leq(current, j) and modular(j):
                res = extend(chain + [j])
                if res is not None:
                    return res
        return None

    bottom = poset.flats_of_rank(0)[0]
    chain = extend([bottom])
    if chain is None:
        return None
    return [poset.flats[i] for i in chain]


@dataclass(frozen=True)
class FiltrationReport:
    """Verification record for a rank-by-rank filtration."""

    ranks: tuple[int, ...]
    ranks_ok: bool
    pairs_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.ranks_ok and self.pairs_ok


def _arrangement_rank(arr: Arrangement) -> int:
    flat = Flat.from_rows([h.row() for h in arr.hyperplanes], arr.dim)
    if flat is None:
        raise ValueError("central arrangement expected")
    return flat.rank


def nest_filtration(nest: NestSpec) -> tuple[list[Arrangement], FiltrationReport]:
    """Filtration of the coned nested arrangement along its natural flats.

    Requires a descending tuple ``N_2 >= N_3 >= ... >= N_ell``.  The
    i-th stage localizes at the flat ``{z = 0, x1 = x2 = ... = xi}``;
    when every set is empty the first coordinate drops out and the
    stages localize at ``{z = 0, x2 = ... = x_{i+1}}`` instead.  The
    report confirms that stage i has rank i and that any two distinct
    hyperplanes of a stage meet inside some hyperplane of the previous
    stage (checked by brute force).
    """
    if not nest.is_descending():
        raise ValueError("nest filtration needs a descending tuple of sets")
    arr = cone(build_n_ish(nest))
    ell = nest.ell
    n = arr.dim
    z_row = [Fraction(0)] * (n + 1)
    z_row[ell] = Fraction(1)

    def diff_row(i: int, j: int) -> list[Fraction]:
        row = [Fraction(0)] * (n + 1)
        row[i - 1] = Fraction(1)
        row[j - 1] = Fraction(-1)
        return row

    stages: list[Arrangement] = []
    degenerate = not nest.set_at(2)  # every set empty: x1 is unconstrained
    total_rank = _arrangement_rank(arr)
    for i in range(1, total_rank + 1):
        rows = [z_row]
        if degenerate:
            rows += [diff_row(j, k) for j in range(2, i + 2) for k in range(j + 1, i + 2)]
        else:
            rows += [diff_row(1, j) for j in range(2, i + 1)]
            rows += [diff_row(j, k) for j in range(2, i + 1) for k in range(j + 1, i + 1)]
        flat = Flat.from_rows(rows, n)
        assert flat is not None
        stages.append(localization(arr, flat))

    failures: list[str] = []
    ranks = tuple(_arrangement_rank(a) for a in stages)
    ranks_ok = ranks == tuple(range(1, total_rank + 1))
    if not ranks_ok:
        failures.append(f"stage ranks {ranks} are not 1..{total_rank}")
    pairs_ok = True
    for idx in range(1, len(stages)):
        current, previous = stages[idx], stages[idx - 1]
        for a_i, ha in enumerate(current.hyperplanes):
            for hb in current.hyperplanes[a_i + 1 :]:
                meet = Flat.from_rows([ha.row(), hb.row()], n)
                assert meet is not None  # central hyperplanes always intersect
                if not any(meet.contains_hyperplane_wise(hc) for hc in previous.hyperplanes):
                    pairs_ok = False
                    failures.append(
                        f"stage {idx + 1}: pair does not meet inside the previous stage"
                    )
    report = FiltrationReport(ranks, ranks_ok, pairs_ok, tuple(failures))
    return stages, report
