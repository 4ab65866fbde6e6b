"""Hyperplane arrangements: construction, coning, defining polynomials.

A hyperplane is stored in a normalized integer form: the equation
``sum(c_i * x_i) = const`` is scaled so that the coefficients and the
constant are coprime integers and the first nonzero coefficient is
positive.  Two hyperplanes are equal exactly when they are the same
point set, so arrangements deduplicate silently while preserving the
order of first appearance.  The hyperplane order of an ``Arrangement``
is part of its contract: chamber sign vectors index into it.

Builders cover the named families (braid/Coxeter, Shi, Ish), the
nested family driven by a tuple of rational sets, the graph-deleted
Shi and Ish variants, and the cone construction.  Coning prepends the
new hyperplane ``z = 0`` and homogenizes every ``alpha = c`` to
``alpha - c*z = 0``; the extra variable ``z`` is always last.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exactmath import MultiPoly, Scalar, default_names, parse_rational


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``sum(coeffs[i] * x_{i+1}) = const``."""

    coeffs: tuple[int, ...]
    const: int

    @staticmethod
    def make(coeffs: Sequence[Scalar], const: Scalar = 0) -> "Hyperplane":
        """Normalize rational input to the canonical integer form."""
        cs = [Fraction(c) for c in coeffs]
        c0 = Fraction(const)
        if all(c == 0 for c in cs):
            raise ValueError("a hyperplane needs a nonzero coefficient vector")
        den = lcm(*(f.denominator for f in cs + [c0]))
        ints = [int(f * den) for f in cs]
        k = int(c0 * den)
        g = gcd(*(abs(v) for v in ints + [k]))
        ints = [v // g for v in ints]
        k //= g
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            ints = [-v for v in ints]
            k = -k
        return Hyperplane(tuple(ints), k)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def form(self) -> MultiPoly:
        """The defining polynomial ``sum(c_i x_i) - const``."""
        return MultiPoly.linear(self.coeffs, -self.const)

    def eval_at(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.dim:
            raise ValueError("point has wrong dimension")
        total = -Fraction(self.const)
        for c, p in zip(self.coeffs, point):
            if c:
                total += c * Fraction(p)
        return total

    def row(self) -> tuple[Fraction, ...]:
        """Augmented row ``(coeffs..., const)`` for linear algebra."""
        return tuple(Fraction(c) for c in self.coeffs) + (Fraction(self.const),)

    def render(self, names: Sequence[str]) -> str:
        parts = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            if not parts:
                parts.append(name if c == 1 else f"-{name}" if c == -1 else f"{c}*{name}")
            else:
                sign = "+" if c > 0 else "-"
                mag = abs(c)
                parts.append(f"{sign} {name}" if mag == 1 else f"{sign} {mag}*{name}")
        return f"{' '.join(parts)} = {self.const}"


class Arrangement:
    """An ordered, duplicate-free collection of hyperplanes in R^dim."""

    __slots__ = ("dim", "coned", "hyperplanes")

    def __init__(self, dim: int, hyperplanes: Iterable[Hyperplane], coned: bool = False) -> None:
        if dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        seen: dict[Hyperplane, None] = {}
        for h in hyperplanes:
            if h.dim != dim:
                raise ValueError("hyperplane dimension does not match the arrangement")
            seen.setdefault(h, None)
        self.dim = dim
        self.coned = coned
        self.hyperplanes = tuple(seen)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __eq__(self, other: object) -> bool:
        # Arrangements are mathematically sets; order matters only for
        # sign-vector indexing, not identity.
        if not isinstance(other, Arrangement):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.coned == other.coned
            and frozenset(self.hyperplanes) == frozenset(other.hyperplanes)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.coned, frozenset(self.hyperplanes)))

    @property
    def is_central(self) -> bool:
        """True when every hyperplane passes through the origin."""
        return all(h.const == 0 for h in self.hyperplanes)

    def var_names(self) -> list[str]:
        return default_names(self.dim, coned=self.coned)

    def __repr__(self) -> str:
        kind = "coned" if self.coned else ("central" if self.is_central else "affine")
        return f"Arrangement({kind}, dim={self.dim}, {len(self)} hyperplanes)"


@dataclass(frozen=True)
class NestSpec:
    """Rational sets ``N_2, ..., N_ell`` driving the nested-Ish family."""

    ell: int
    sets: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def make(sets: Iterable[Iterable[Scalar | str]]) -> "NestSpec":
        cleaned = tuple(tuple(sorted({parse_rational(a) for a in s})) for s in sets)
        ell = len(cleaned) + 1
        if ell < 2:
            raise ValueError("a nest spec needs at least the set N_2")
        return NestSpec(ell, cleaned)

    def set_at(self, j: int) -> tuple[Fraction, ...]:
        """The set N_j for an index 2 <= j <= ell."""
        if not 2 <= j <= self.ell:
            raise ValueError(f"index {j} out of range 2..{self.ell}")
        return self.sets[j - 2]

    def reordered(self, order: Sequence[int]) -> "NestSpec":
        """Relabel: position k takes the original set N_{order[k]}."""
        if sorted(order) != list(range(2, self.ell + 1)):
            raise ValueError("order must be a permutation of 2..ell")
        return NestSpec(self.ell, tuple(self.set_at(j) for j in order))

    def is_descending(self) -> bool:
        return all(
            set(self.sets[i + 1]) <= set(self.sets[i]) for i in range(len(self.sets) - 1)
        )

    def is_ascending(self) -> bool:
        return all(
            set(self.sets[i]) <= set(self.sets[i + 1]) for i in range(len(self.sets) - 1)
        )

    def to_json(self) -> list[list[str]]:
        return [[f"{a.numerator}/{a.denominator}" for a in s] for s in self.sets]

    def __str__(self) -> str:
        body = ", ".join("{" + ", ".join(str(a) for a in s) + "}" for s in self.sets)
        return f"({body})"


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices 1..ell with edges (i, j), i < j."""

    ell: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def make(ell: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if ell < 2:
            raise ValueError("graphs need at least 2 vertices")
        cleaned = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if not 1 <= i < j <= ell:
                raise ValueError(f"edge ({i}, {j}) is not a pair 1 <= i < j <= {ell}")
            cleaned.add((i, j))
        return Graph(ell, frozenset(cleaned))

    @staticmethod
    def complete(ell: int) -> "Graph":
        return Graph.make(ell, [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def _pairs(ell: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]


def _diff(ell: int, i: int, j: int, const: Scalar = 0) -> Hyperplane:
    coeffs = [0] * ell
    coeffs[i - 1] = 1
    coeffs[j - 1] = -1
    return Hyperplane.make(coeffs, const)


NAMED_KINDS = ("coxeter", "shi", "ish")


def build_named(kind: str, ell: int) -> Arrangement:
    """The braid arrangement and its Shi and Ish extensions on 1..ell."""
    if ell < 2:
        raise ValueError("named arrangements need ell >= 2")
    if kind not in NAMED_KINDS:
        raise ValueError(f"unknown arrangement kind {kind!r}")
    planes = [_diff(ell, i, j) for i, j in _pairs(ell)]
    if kind == "shi":
        planes += [_diff(ell, i, j, 1) for i, j in _pairs(ell)]
    elif kind == "ish":
        planes += [_diff(ell, 1, j, i) for i, j in _pairs(ell)]
    return Arrangement(ell, planes)


def build_n_ish(nest: NestSpec) -> Arrangement:
    """The nested family: ``x1 - xj = a`` for ``a in N_j``, plus the
    braid part ``xi - xj = 0`` on the vertices 2..ell."""
    ell = nest.ell
    planes = []
    for j in range(2, ell + 1):
        for a in nest.set_at(j):
            planes.append(_diff(ell, 1, j, a))
    for i in range(2, ell + 1):
        for j in range(i + 1, ell + 1):
            planes.append(_diff(ell, i, j))
    return Arrangement(ell, planes)


def build_deleted(kind: str, graph: Graph) -> Arrangement:
    """Shi or Ish with the non-braid part restricted to the graph's edges."""
    if kind not in ("shi", "ish"):
        raise ValueError(f"deleted arrangements exist for 'shi' and 'ish', not {kind!r}")
    ell = graph.ell
    planes = [_diff(ell, i, j) for i, j in _pairs(ell)]
    for i, j in graph.sorted_edges():
        if kind == "shi":
            planes.append(_diff(ell, i, j, 1))
        else:
            planes.append(_diff(ell, 1, j, i))
    return Arrangement(ell, planes)


def n_from_graph(graph: Graph) -> NestSpec:
    """The nest-style sets of a graph: ``N_j = {0} | {i : (i, j) in G}``.

    The deleted Ish arrangement of ``G`` and the nested arrangement of
    these sets contain exactly the same hyperplanes.
    """
    sets = []
    for j in range(2, graph.ell + 1):
        entries = {Fraction(0)}
        entries |= {Fraction(i) for i, jj in graph.edges if jj == j}
        sets.append(sorted(entries))
    return NestSpec.make(sets)


def cone(arr: Arrangement) -> Arrangement:
    """Homogenize with a new last variable z and prepend ``z = 0``."""
    if arr.coned:
        raise ValueError("arrangement is already coned")
    n = arr.dim + 1
    planes = [Hyperplane.make([0] * arr.dim + [1], 0)]
    for h in arr.hyperplanes:
        planes.append(Hyperplane.make(list(h.coeffs) + [-h.const], 0))
    return Arrangement(n, planes, coned=True)


def defining_poly(arr: Arrangement) -> MultiPoly:
    """Product of the normalized defining forms, in hyperplane order."""
    q = MultiPoly.const(arr.dim, 1)
    for h in arr.hyperplanes:
        q = q * h.form()
    return q


# -- JSON arrangement specs -------------------------------------------


@dataclass(frozen=True)
class ParsedSpec:
    """An arrangement spec plus whatever side data the type carries."""

    kind: str
    ell: int
    arrangement: Arrangement
    nest: "NestSpec | None"
    graph: "Graph | None"
    coned: bool


SPEC_KINDS = ("coxeter", "shi", "ish", "n_ish", "deleted_shi", "deleted_ish")


def ish_nest(ell: int) -> NestSpec:
    """The nest whose nested arrangement is exactly Ish: ``N_j = {0..j-1}``."""
    if ell < 2:
        raise ValueError("need ell >= 2")
    return NestSpec.make([list(range(j)) for j in range(2, ell + 1)])


def from_spec(spec: dict) -> ParsedSpec:
    """Build an arrangement from a JSON-style spec dictionary.

    Recognized shapes::

        {"type": "ish" | "shi" | "coxeter", "ell": 3}
        {"type": "n_ish", "N": [[0, 1], ["0", "1/2"]]}
        {"type": "deleted_ish" | "deleted_shi", "ell": 4, "edges": [[1, 2]]}

    plus an optional ``"cone": true`` on any of them.
    """
    if not isinstance(spec, dict):
        raise ValueError("arrangement spec must be a JSON object")
    kind = spec.get("type")
    if kind not in SPEC_KINDS:
        raise ValueError(f"unknown arrangement type {kind!r}")
    nest: NestSpec | None = None
    graph: Graph | None = None
    if kind == "n_ish":
        if "N" not in spec:
            raise ValueError("n_ish spec needs the key 'N'")
        nest = NestSpec.make(spec["N"])
        ell = nest.ell
        arr = build_n_ish(nest)
    elif kind in ("deleted_shi", "deleted_ish"):
        ell = _read_ell(spec)
        graph = Graph.make(ell, spec.get("edges", []))
        arr = build_deleted(kind.split("_")[1], graph)
        if kind == "deleted_ish":
            nest = n_from_graph(graph)
    else:
        ell = _read_ell(spec)
        arr = build_named(kind, ell)
        if kind == "ish":
            nest = ish_nest(ell)
    want_cone = bool(spec.get("cone", False))
    if want_cone:
        arr = cone(arr)
    return ParsedSpec(kind, ell, arr, nest, graph, want_cone)


def _read_ell(spec: dict) -> int:
    ell = spec.get("ell")
    if not isinstance(ell, int) or ell < 2:
        raise ValueError("spec needs an integer 'ell' >= 2")
    return ell
