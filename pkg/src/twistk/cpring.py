"""The ring K_*(CP^inf) = Z[t, 1/t]{b_0 = 1, b_1, b_2, ...}.

Multiplication comes from the multiplicative formal group law
F(s, t) = s + t + st: with ``b(r) = sum_i b_i r^i`` one has
``b(s) b(t) = b(F(s, t))``, so ``b_i b_j = sum_k c^k_ij b_k`` where ``c^k_ij``
is the coefficient of ``s^i t^j`` in ``F(s, t)^k``.

The b_i sit in degree 0 and t in degree 2.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Mapping

from .laurent import LaurentPoly, TruncSeries

HatScalar = LaurentPoly  # an integer Laurent polynomial in the single variable t

# (i, j, k) -> additive perturbation; only ever populated by inject_fault()
_FAULTS: dict[tuple[int, int, int], int] = {}


@lru_cache(maxsize=None)
def _closed_form(i: int, j: int, k: int) -> int:
    if not (max(i, j) <= k <= i + j):
        return 0
    return factorial(k) // (factorial(k - j) * factorial(k - i) * factorial(i + j - k))


def structure_constant(i: int, j: int, k: int) -> int:
    """``c^k_ij = k! / ((k-j)! (k-i)! (i+j-k)!)`` on ``max(i,j) <= k <= i+j``."""
    if i < 0 or j < 0:
        raise ValueError("beta indices are nonnegative")
    c = _closed_form(i, j, k)
    if _FAULTS:
        c += _FAULTS.get((i, j, k), 0) + (_FAULTS.get((j, i, k), 0) if i != j else 0)
    return c


@contextlib.contextmanager
def inject_fault(i: int, j: int, k: int, delta: int = 1) -> Iterator[None]:
    """Temporarily perturb one structure constant (self-test fault injection)."""
    _FAULTS[(i, j, k)] = delta
    try:
        yield
    finally:
        _FAULTS.pop((i, j, k), None)


class BetaPoly:
    """Finite sum ``sum a_{m,i} t^m b_i`` with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        for (m, i), a in (terms or {}).items():
            if i < 0:
                raise ValueError(f"negative beta index {i}")
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError("BetaPoly coefficients must be integers")
                a = a.numerator
            elif not isinstance(a, int):
                raise TypeError(f"BetaPoly coefficients must be integers, got {a!r}")
            if a:
                key = (int(m), int(i))
                clean[key] = clean.get(key, 0) + a
                if not clean[key]:
                    del clean[key]
        self.terms = clean
        self._hash = None

    @classmethod
    def beta(cls, i: int, m: int = 0, coeff: int = 1) -> "BetaPoly":
        return cls({(m, i): coeff})

    @classmethod
    def one(cls) -> "BetaPoly":
        return cls({(0, 0): 1})

    @classmethod
    def parse(cls, text: str) -> "BetaPoly":
        from .parsing import parse_beta
        return parse_beta(text)

    @classmethod
    def coerce(cls, x) -> "BetaPoly":
        if isinstance(x, BetaPoly):
            return x
        if isinstance(x, int):
            return cls({(0, 0): x})
        raise TypeError(f"cannot coerce {type(x).__name__} to BetaPoly")

    def __add__(self, other):
        try:
            other = BetaPoly.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for key, a in other.terms.items():
            terms[key] = terms.get(key, 0) + a
        return BetaPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return BetaPoly({k: -a for k, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-BetaPoly.coerce(other))

    def __rsub__(self, other):
        return BetaPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return BetaPoly({k: a * other for k, a in self.terms.items()})
        if isinstance(other, Fraction) and other.denominator == 1:
            return self * other.numerator
        if not isinstance(other, BetaPoly):
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = BetaPoly.coerce(other)
        if not isinstance(other, BetaPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def max_index(self) -> int:
        return max((i for _, i in self.terms), default=0)

    def t_exponents(self) -> set[int]:
        return {m for m, _ in self.terms}

    def shift(self, m: int) -> "BetaPoly":
        """Multiply by ``t^m``."""
        return BetaPoly({(a + m, i): c for (a, i), c in self.terms.items()})

    def at_t_one(self, size: int) -> list[int]:
        """Coefficient vector over b_0..b_{size-1} after t -> 1 (higher b's dropped)."""
        vec = [0] * size
        for (_, i), a in self.terms.items():
            if i < size:
                vec[i] += a
        return vec

    def __repr__(self):
        return f"BetaPoly({str(self)!r})"

    def __str__(self):
        return format_beta(self)


def format_beta(x: BetaPoly) -> str:
    """Text form ``c t^m b<i>``, highest b-index first; readable by ``parse_beta``."""
    if not x.terms:
        return "0"
    keys = sorted(x.terms, key=lambda k: (-k[1], -k[0]))
    out = []
    for n, (m, i) in enumerate(keys):
        a = x.terms[(m, i)]
        parts = []
        if abs(a) != 1 or (m == 0 and i == 0):
            parts.append(str(abs(a)))
        if m:
            parts.append("t" if m == 1 else f"t^{m}")
        if i:
            parts.append(f"b{i}")
        body = " ".join(parts)
        if n == 0:
            out.append(body if a > 0 else "-" + body)
        else:
            out.append((" + " if a > 0 else " - ") + body)
    return "".join(out)


def beta_product(i: int, j: int) -> BetaPoly:
    return BetaPoly({(0, k): structure_constant(i, j, k)
                     for k in range(max(i, j), i + j + 1)})


def multiply(x: BetaPoly, y: BetaPoly) -> BetaPoly:
    terms: dict[tuple[int, int], int] = {}
    for (m1, i), a in x.terms.items():
        for (m2, j), b in y.terms.items():
            for k in range(max(i, j), i + j + 1):
                c = structure_constant(i, j, k)
                if c:
                    key = (m1 + m2, k)
                    terms[key] = terms.get(key, 0) + a * b * c
    return BetaPoly(terms)


def n_series(n: int, order: int, var: str = "s") -> TruncSeries:
    """``[n](s)`` from ``[0](s) = 0`` and ``[n](s) = [n-1](s) + s + s [n-1](s)``."""
    if n < 0:
        raise ValueError("n-series is only defined here for n >= 0")
    if order < 1:
        raise ValueError("order must be positive")
    s = TruncSeries((var,), order, {(1,): 1})
    series = TruncSeries((var,), order, {})
    for _ in range(n):
        series = series + s + s * series
    return series


def beta_series(var: str, order: int) -> TruncSeries:
    """``b(var) = sum_i b_i var^i`` with BetaPoly coefficients."""
    return TruncSeries.from_coefficients(var, order, lambda i: BetaPoly.beta(i))


@dataclass
class IdentityReport:
    name: str
    order: int
    passed: bool
    first_difference: tuple | None = None  # (exponents, lhs coefficient, rhs coefficient)
    checked: int = 0

    def __str__(self):
        if self.passed:
            return f"{self.name} through order {self.order}: pass ({self.checked} coefficients)"
        e, lhs, rhs = self.first_difference
        return (f"{self.name} through order {self.order}: FAIL at exponents {e}: "
                f"lhs = {lhs}, rhs = {rhs}")


def _compare(name: str, order: int, lhs: TruncSeries, rhs: TruncSeries) -> IdentityReport:
    keys = sorted(set(lhs.terms) | set(rhs.terms), key=lambda e: (sum(e), e))
    for e in keys:
        a = BetaPoly.coerce(lhs.coefficient(e))
        b = BetaPoly.coerce(rhs.coefficient(e))
        if a != b:
            return IdentityReport(name, order, False, (e, a, b), len(keys))
    return IdentityReport(name, order, True, None, len(keys))


def fgl_identity_check(m: int | None, order: int) -> IdentityReport:
    """Check ``b(s)^m = b([m](s))``, or ``b(s) b(t) = b(s + t + st)`` when ``m`` is None.

    Left sides multiply BetaPolys through the structure constants; right
    sides only ever form integer combinations of single b_k, so the two
    routes are independent.
    """
    if m is None:
        bs = TruncSeries(("s", "t"), order, {(i, 0): BetaPoly.beta(i) for i in range(order + 1)})
        bt = TruncSeries(("s", "t"), order, {(0, j): BetaPoly.beta(j) for j in range(order + 1)})
        lhs = bs * bt
        fgl = TruncSeries(("s", "t"), order, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
        rhs = beta_series("r", order).compose({"r": fgl})
        return _compare("b(s)b(t) = b(s+t+st)", order, lhs, rhs)
    if m < 1:
        raise ValueError("m must be positive")
    base = beta_series("s", order)
    lhs = base
    for _ in range(m - 1):
        lhs = lhs * base
    rhs = beta_series("r", order).compose({"r": n_series(m, order)})
    return _compare(f"b(s)^{m} = b([{m}](s))", order, lhs, rhs)


@dataclass(frozen=True)
class TruncRing:
    """Quotient of K_*(CP^inf) by the span of b_i, i > D.

    ``table[i][j]`` is the tuple of (k, c^k_ij) with ``k <= D``. The span of
    the dropped b_i is an ideal because c^k_ij vanishes for k < max(i, j).
    """

    D: int
    table: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.D + 1

    def product(self, i: int, j: int) -> dict[int, int]:
        return dict(self.table[i][j])

    def reduce(self, x: BetaPoly) -> BetaPoly:
        return BetaPoly({(m, i): a for (m, i), a in x.terms.items() if i <= self.D})

    def multiply(self, x: BetaPoly, y: BetaPoly) -> BetaPoly:
        terms: dict[tuple[int, int], int] = {}
        for (m1, i), a in x.terms.items():
            if i > self.D:
                continue
            for (m2, j), b in y.terms.items():
                if j > self.D:
                    continue
                for k, c in self.table[i][j]:
                    key = (m1 + m2, k)
                    terms[key] = terms.get(key, 0) + a * b * c
        return BetaPoly(terms)

    def mul_vec(self, x: list[int], y: list[int]) -> list[int]:
        """Product of coefficient vectors (t -> 1)."""
        out = [0] * self.rank
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    for k, c in self.table[i][j]:
                        out[k] += a * b * c
        return out

    def mult_matrix(self, x: list[int]) -> list[list[int]]:
        """Matrix of ``y -> x*y`` on coefficient vectors (columns = b_j)."""
        cols = [self.mul_vec(x, [1 if n == j else 0 for n in range(self.rank)])
                for j in range(self.rank)]
        return [[cols[j][k] for j in range(self.rank)] for k in range(self.rank)]

    def augmentation_vector(self) -> list[int]:
        """Image of b_0..b_D under b_0, b_1 -> 1, b_{>=2} -> 0."""
        return [1 if i <= 1 else 0 for i in range(self.rank)]

    def check_support(self) -> list[tuple[int, int, int]]:
        """Triples (i, j, k) violating the ideal/commutativity/unit invariants."""
        bad = []
        for i in range(self.rank):
            for j in range(self.rank):
                row = dict(self.table[i][j])
                for k, c in row.items():
                    if c and not (max(i, j) <= k <= i + j):
                        bad.append((i, j, k))
                if row != dict(self.table[j][i]):
                    bad.append((i, j, -1))
            if dict(self.table[0][i]) != {i: 1}:
                bad.append((0, i, i))
        return bad


def truncate_ring(D: int) -> TruncRing:
    if D < 1:
        raise ValueError("truncation index must be at least 1")
    table = tuple(
        tuple(tuple((k, structure_constant(i, j, k))
                    for k in range(max(i, j), min(i + j, D) + 1)
                    if structure_constant(i, j, k))
              for j in range(D + 1))
        for i in range(D + 1))
    ring = TruncRing(D, table)
    bad = ring.check_support()
    if bad:
        raise ArithmeticError(f"structure constants violate the support invariant at {bad[:5]}")
    return ring


def augment_hat(x: BetaPoly) -> HatScalar:
    """The ring map onto Z[t, 1/t]: t -> t, b_0 -> 1, b_1 -> 1, b_{>=2} -> 0."""
    terms: dict[tuple[int], int] = {}
    for (m, i), a in x.terms.items():
        if i <= 1:
            terms[(m,)] = terms.get((m,), 0) + a
    return LaurentPoly(("t",), terms)


class ZeroInput(ValueError):
    pass


def injectivity_witness(i: int, x: BetaPoly) -> bool:
    """Whether ``b_i * x != 0``, argued from the top b-index of the product.

    For the highest index j of ``x`` (summed over t-powers), the b_{i+j}
    coefficient of the product is ``binom(i+j, i)`` times x's coefficient,
    since ``c^{i+j}_{ij} = binom(i+j, i)`` and no other pair reaches i+j.
    The product is also computed directly and must agree.
    """
    if not x:
        raise ZeroInput("injectivity witness needs a nonzero element")
    top = leading_term(x)
    product = multiply(BetaPoly.beta(i), x)
    predicted = {m: comb(i + j, i) * a for (m, j), a in top.items()}
    actual = {m: a for (m, k), a in product.terms.items() if k == i + x.max_index()}
    if predicted != actual:
        raise ArithmeticError(f"leading coefficient mismatch for b_{i} * ({x})")
    return bool(product)


def leading_term(x: BetaPoly) -> dict[tuple[int, int], int]:
    j = x.max_index()
    return {(m, k): a for (m, k), a in x.terms.items() if k == j}


def product_rule_violation(max_index: int) -> tuple[int, int, int] | None:
    """First ``(i, j, n)`` with ``sum_k c^k_ij C(n, k) != C(n, i) C(n, j)``.

    ``b_i`` pairs with ``x^n`` like the binomial coefficient ``C(n, i)``, so
    the structure constants are exactly the coefficients expressing a product
    of binomials in the binomial basis. Checking ``n <= i + j`` is enough
    to pin all of them down.
    """
    for i in range(max_index + 1):
        for j in range(i, max_index + 1):
            for n in range(i + j + 1):
                lhs = sum(structure_constant(i, j, k) * comb(n, k) for k in range(i + j + 1))
                if lhs != comb(n, i) * comb(n, j):
                    return i, j, n
    return None
