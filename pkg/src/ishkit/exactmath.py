"""Exact polynomial arithmetic over the rationals.

Everything in this package is computed with ``fractions.Fraction``; no
floating point is used anywhere.  Two polynomial representations cover
all needs:

* ``MultiPoly`` -- a sparse multivariate polynomial stored as a map
  from exponent tuples to nonzero rational coefficients.  For a
  polynomial in ``x1, x2, x3`` the term ``5/2 * x1^2 * x3`` is the
  entry ``(2, 0, 1) -> Fraction(5, 2)``.  The canonical term order is
  graded lexicographic with earlier variables larger (for coned
  arrangements the variables read ``x1 > x2 > ... > xl > z``); it
  drives division, leading terms and printing, so all output is
  deterministic.

* ``UniPoly`` -- a dense univariate polynomial as an ascending
  coefficient tuple, used for characteristic and wall-crossing
  polynomials.

JSON forms (shared with the command line surface):

* rational   -> ``"num/den"`` string
* UniPoly    -> ascending list of rationals (``[]`` is the zero poly)
* MultiPoly  -> list of ``{"exp": [...], "coef": "num/den"}`` records
  in descending graded-lex order
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Scalar = Union[int, Fraction]


def parse_rational(value: Scalar | str) -> Fraction:
    """Read a rational from an int, a Fraction or a ``"p/q"`` string."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"cannot read a rational from {value!r}")


def format_rational(value: Scalar) -> str:
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def _grlex(exp: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    # Graded lex: total degree first, ties broken so that the earlier
    # variable counts as larger.  Plain tuple comparison does the rest.
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: object = None) -> None:
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, coef in items:
                e = tuple(int(x) for x in exp)
                if len(e) != nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent tuple {e!r} for {nvars} variables")
                c = clean.get(e, Fraction(0)) + Fraction(coef)
                if c == 0:
                    clean.pop(e, None)
                else:
                    clean[e] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value: Scalar) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        exp = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar], constant: Scalar = 0) -> "MultiPoly":
        """The affine-linear polynomial ``sum(c_i * x_i) + constant``."""
        n = len(coeffs)
        terms: dict[tuple[int, ...], Fraction] = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                exp = tuple(1 if k == i else 0 for k in range(n))
                terms[exp] = Fraction(c)
        if constant != 0:
            terms[(0,) * n] = Fraction(constant)
        return cls(n, terms)

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Max total degree of a term; the zero polynomial reports 0."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """Largest term in graded-lex order; errors on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("evaluation point has wrong length")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, coef in self.terms.items():
            term = coef
            for v, e in zip(vals, exp):
                if e:
                    term *= v**e
            total += term
        return total

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other: object) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials have different variable counts")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other: object) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        res = MultiPoly(self.nvars)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        res = MultiPoly(self.nvars)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: object) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "MultiPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MultiPoly(self.nvars)
            q = Fraction(other)
            res = MultiPoly(self.nvars)
            res.terms = {e: c * q for e, c in self.terms.items()}
            return res
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = MultiPoly(self.nvars)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "MultiPoly":
        if power < 0:
            raise ValueError("negative powers are not supported")
        result = MultiPoly.const(self.nvars, 1)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {poly_str(self)!r})"

    def __str__(self) -> str:
        return poly_str(self)


def default_names(nvars: int, coned: bool = False) -> list[str]:
    """Variable names ``x1..xn``, with the last one called ``z`` when coned."""
    names = [f"x{i}" for i in range(1, nvars + 1)]
    if coned and nvars >= 1:
        names[-1] = "z"
    return names


def _monomial_str(exp: tuple[int, ...], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _coef_str(c: Fraction) -> str:
    return str(c)


def poly_str(p: MultiPoly, names: Sequence[str] | None = None) -> str:
    """Render in descending graded-lex order, e.g. ``x1^2*z - 2*x1*x2*z``."""
    if names is None:
        names = default_names(p.nvars)
    if p.is_zero:
        return "0"
    chunks: list[str] = []
    for i, (exp, coef) in enumerate(p.sorted_terms()):
        mono = _monomial_str(exp, names)
        mag = abs(coef)
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        if i == 0:
            chunks.append(body if coef > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(chunks)


def poly_to_json(p: MultiPoly) -> list[dict]:
    return [
        {"exp": list(exp), "coef": format_rational(coef)}
        for exp, coef in p.sorted_terms()
    ]


def poly_from_json(nvars: int, data: Iterable[dict]) -> MultiPoly:
    terms = [(tuple(rec["exp"]), parse_rational(rec["coef"])) for rec in data]
    return MultiPoly(nvars, terms)


# -- division and determinants ---------------------------------------


def _divides(ea: tuple[int, ...], eb: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(ea, eb))


def poly_exact_div(f: MultiPoly, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Single-divisor division in graded-lex order.

    Returns ``(quotient, remainder)`` with ``f == g * quotient + remainder``.
    When ``g`` divides ``f`` exactly the remainder is zero (the leading
    term of a product is the product of leading terms, so the algorithm
    always strips the quotient term by term); conversely a nonzero
    remainder certifies non-divisibility.
    """
    if g.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if f.nvars != g.nvars:
        raise ValueError("polynomials have different variable counts")
    g_exp, g_coef = g.leading_term()
    work = dict(f.terms)
    # Lazy max-heap over graded-lex keys; stale entries are skipped.
    heap = [(-sum(e), tuple(-x for x in e)) for e in work]
    heapq.heapify(heap)
    quotient: dict[tuple[int, ...], Fraction] = {}
    remainder: dict[tuple[int, ...], Fraction] = {}

    def push(exp: tuple[int, ...]) -> None:
        heapq.heappush(heap, (-sum(exp), tuple(-x for x in exp)))

    while heap:
        _, neg = heapq.heappop(heap)
        exp = tuple(-x for x in neg)
        coef = work.pop(exp, None)
        if coef is None or coef == 0:
            continue
        if _divides(g_exp, exp):
            q_exp = tuple(a - b for a, b in zip(exp, g_exp))
            q_coef = coef / g_coef
            quotient[q_exp] = quotient.get(q_exp, Fraction(0)) + q_coef
            for e2, c2 in g.terms.items():
                if e2 == g_exp:
                    continue  # cancels against the popped leading term
                ne = tuple(a + b for a, b in zip(q_exp, e2))
                prev = work.get(ne)
                s = (prev if prev is not None else Fraction(0)) - q_coef * c2
                if s == 0:
                    work.pop(ne, None)
                else:
                    work[ne] = s
                    if prev is None:
                        push(ne)
        else:
            remainder[exp] = coef
    q = MultiPoly(f.nvars)
    q.terms = {e: c for e, c in quotient.items() if c != 0}
    r = MultiPoly(f.nvars)
    r.terms = remainder
    return q, r


def _det_cofactor(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    nvars = m[0][0].nvars
    total = MultiPoly.zero(nvars)
    for j, entry in enumerate(m[0]):
        if entry.is_zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        sub = _det_cofactor(minor)
        if j % 2:
            sub = -sub
        total = total + entry * sub
    return total


def _det_expansion(m: list[list[MultiPoly]]) -> MultiPoly:
    # Division-free Laplace expansion, one column at a time, memoized on
    # the set of unused rows.  Zero entries prune whole branches, so the
    # near-triangular matrices this package produces cost barely more
    # than the product of their diagonals; a dense n x n matrix costs at
    # most n * 2^n polynomial multiplications.  Fraction-free elimination
    # is far slower here: its intermediate minors are dense high-degree
    # products that then need exact division.
    n = len(m)
    nvars = m[0][0].nvars
    zero = MultiPoly.zero(nvars)

    cols = sorted(range(n), key=lambda j: sum(not m[i][j].is_zero for i in range(n)))
    colsign = 1
    for a in range(n):
        for b in range(a + 1, n):
            if cols[a] > cols[b]:
                colsign = -colsign

    memo: dict[int, MultiPoly] = {0: MultiPoly.const(nvars, 1)}

    def minor(rows: int) -> MultiPoly:
        cached = memo.get(rows)
        if cached is not None:
            return cached
        col = cols[n - bin(rows).count("1")]
        total = zero
        parity = 0
        for i in range(n):
            if not rows >> i & 1:
                continue
            entry = m[i][col]
            if not entry.is_zero:
                sub = minor(rows & ~(1 << i))
                if not sub.is_zero:
                    term = entry * sub
                    total = total + (term if parity % 2 == 0 else -term)
            parity += 1
        memo[rows] = total
        return total

    det = minor((1 << n) - 1)
    return det if colsign == 1 else -det


def poly_det(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square MultiPoly matrix.

    Memoized Laplace expansion along the sparsest columns first; exact
    and division-free.
    """
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("determinant requires a nonempty square matrix")
    nvars = matrix[0][0].nvars
    m = [list(row) for row in matrix]
    for row in m:
        for entry in row:
            if entry.nvars != nvars:
                raise ValueError("matrix entries disagree on variable count")
    return _det_expansion(m)


# -- univariate polynomials -------------------------------------------


class UniPoly:
    """Dense univariate polynomial, ascending coefficients, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "UniPoly":
        """The monic polynomial with the given root multiset."""
        result = cls.one()
        for r in roots:
            result = result * cls((-Fraction(r), 1))
        return result

    @classmethod
    def geometric(cls, top: int) -> "UniPoly":
        """``1 + t + ... + t**top``."""
        if top < 0:
            raise ValueError("geometric sum needs a nonnegative top degree")
        return cls([1] * (top + 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "UniPoly") -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __mul__(self, other: object) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def evaluate(self, point: Scalar) -> Fraction:
        x = Fraction(point)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __str__(self) -> str:
        return unipoly_str(self)

    def __repr__(self) -> str:
        return f"UniPoly({unipoly_str(self)!r})"


def unipoly_from_roots(roots: Iterable[Scalar]) -> UniPoly:
    return UniPoly.from_roots(roots)


def unipoly_eval(p: UniPoly, point: Scalar) -> Fraction:
    return p.evaluate(point)


def unipoly_str(p: UniPoly, var: str = "t") -> str:
    """Render descending, e.g. ``t^3 - 6t^2 + 9t``."""
    if p.is_zero:
        return "0"
    chunks: list[str] = []
    for k in range(p.degree(), -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = _coef_str(mag)
        else:
            tpow = var if k == 1 else f"{var}^{k}"
            body = tpow if mag == 1 else f"{_coef_str(mag)}{tpow}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)


def unipoly_factored_str(roots: Iterable[Scalar], var: str = "t") -> str:
    """Render a monic split polynomial from roots, e.g. ``t (t-3)^2``."""
    counts: dict[Fraction, int] = {}
    for r in roots:
        q = Fraction(r)
        counts[q] = counts.get(q, 0) + 1
    factors = []
    for root in sorted(counts):
        if root == 0:
            base = var
        elif root > 0:
            base = f"({var}-{root})"
        else:
            base = f"({var}+{-root})"
        mult = counts[root]
        factors.append(base if mult == 1 else f"{base}^{mult}")
    return " ".join(factors) if factors else "1"


def unipoly_to_json(p: UniPoly) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def unipoly_from_json(data: Iterable[Scalar | str]) -> UniPoly:
    return UniPoly([parse_rational(c) for c in data])
