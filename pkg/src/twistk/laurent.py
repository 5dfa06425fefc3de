"""Exact multivariate Laurent polynomials, truncated power series and the
binomial (integer-valued) polynomial basis.

Coefficients are :class:`fractions.Fraction`; nothing in this module ever
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]

# Exponents are kept inside the signed 64-bit range; leaving it is an error.
_EXP_LIMIT = 2**63 - 1


class NonInvertibleSubstitution(ValueError):
    pass


class CompositionWithUnit(ValueError):
    pass


def _check_exponents(exps: tuple[int, ...]) -> tuple[int, ...]:
    for e in exps:
        if e > _EXP_LIMIT or e < -_EXP_LIMIT:
            raise OverflowError(f"exponent {e} outside the 64-bit range")
    return exps


class LaurentPoly:
    """A finite sum of monomials ``c * x1^e1 * ... * xn^en`` with ``ei`` in Z.

    ``variables`` is sorted by name; ``terms`` maps exponent tuples (aligned
    with ``variables``) to nonzero Fractions. Instances are treated as
    immutable. Operands over different variable sets are embedded into the
    union before combining.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str] = (),
                 terms: Mapping[tuple[int, ...], Scalar] | None = None):
        variables = tuple(variables)
        order = sorted(range(len(variables)), key=lambda i: variables[i])
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        self.variables: tuple[str, ...] = tuple(variables[i] for i in order)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(variables):
                raise ValueError("exponent tuple does not match variables")
            c = Fraction(c)
            if c:
                key = _check_exponents(tuple(int(exps[i]) for i in order))
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self.terms: dict[tuple[int, ...], Fraction] = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> "LaurentPoly":
        # trusted path: variables already sorted, terms already clean
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar, variables: Iterable[str] = ()) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "LaurentPoly":
        return cls((name,), {(exponent,): 1})

    @classmethod
    def monomial(cls, coeff: Scalar, powers: Mapping[str, int]) -> "LaurentPoly":
        names = tuple(powers)
        return cls(names, {tuple(powers[n] for n in names): coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- variable contexts -----------------------------------------------

    def embed(self, variables: Iterable[str]) -> "LaurentPoly":
        """Re-express in a superset of the current variables."""
        target = tuple(sorted(set(variables)))
        if target == self.variables:
            return self
        missing = set(self.variables) - set(target)
        if missing:
            raise ValueError(f"cannot embed: variables {sorted(missing)} dropped")
        idx = [self.variables.index(v) if v in self.variables else -1 for v in target]
        terms = {tuple(e[i] if i >= 0 else 0 for i in idx): c
                 for e, c in self.terms.items()}
        return LaurentPoly._raw(target, terms)

    def support_variables(self) -> tuple[str, ...]:
        """Variables that occur with a nonzero exponent in some term."""
        used = [v for k, v in enumerate(self.variables)
                if any(e[k] for e in self.terms)]
        return tuple(used)

    def reduced(self) -> "LaurentPoly":
        used = self.support_variables()
        if used == self.variables:
            return self
        idx = [self.variables.index(v) for v in used]
        return LaurentPoly._raw(used, {tuple(e[i] for i in idx): c
                                       for e, c in self.terms.items()})

    def _aligned(self, other) -> tuple["LaurentPoly", "LaurentPoly"]:
        other = LaurentPoly.coerce(other)
        if self.variables == other.variables:
            return self, other
        allv = set(self.variables) | set(other.variables)
        return self.embed(allv), other.embed(allv)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._aligned(other)
        except TypeError:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPoly._raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            return self + (-LaurentPoly.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw(self.variables, {})
            return LaurentPoly._raw(self.variables,
                                    {e: c * other for e, c in self.terms.items()})
        try:
            a, b = self._aligned(other)
        except TypeError:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        for e in [e for e, c in terms.items() if not c]:
            del terms[e]
        for e in terms:
            _check_exponents(e)
        return LaurentPoly._raw(a.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        other = LaurentPoly.coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit(self) -> bool:
        """Single nonzero term: invertible in Q[x, x^-1]."""
        return len(self.terms) == 1

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise NonInvertibleSubstitution(f"{self} is not a unit")
        (e, c), = self.terms.items()
        return LaurentPoly._raw(self.variables, {tuple(-x for x in e): 1 / c})

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            r = self.reduced()
            self._hash = hash((r.variables, frozenset(r.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.total_degrees()) <= 1

    def min_exponent(self, var: str) -> int:
        k = self.variables.index(var)
        return min(e[k] for e in self.terms)

    def max_exponent(self, var: str) -> int:
        k = self.variables.index(var)
        return max(e[k] for e in self.terms)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def coefficient(self, powers: Mapping[str, int]) -> Fraction:
        for v in powers:
            if v not in self.variables and powers[v]:
                return Fraction(0)
        key = tuple(powers.get(v, 0) for v in self.variables)
        return self.terms.get(key, Fraction(0))

    def univariate(self, var: str) -> dict[int, Fraction]:
        """Exponent -> coefficient, for a polynomial in ``var`` alone."""
        r = self.reduced()
        if r.variables not in ((), (var,)):
            raise ValueError(f"{self} is not univariate in {var}")
        if not r.variables:
            return {0: c for c in r.terms.values()}
        return {e[0]: c for e, c in r.terms.items()}

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(f: LaurentPoly) -> str:
    """Render in the same grammar :func:`twistk.parsing.parse_expr` reads.

    Terms are ordered by descending total degree, then lexicographically
    descending exponent tuples.
    """
    if not f.terms:
        return "0"
    keys = sorted(f.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
    pieces = []
    for n, e in enumerate(keys):
        c = f.terms[e]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = []
        for v, x in zip(f.variables, e):
            if x == 1:
                factors.append(v)
            elif x:
                factors.append(f"{v}^{x}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        body = "*".join(factors)
        if n == 0:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def ring_ops(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def substitute(f: LaurentPoly, assignment: Mapping[str, object]) -> LaurentPoly:
    """Image of ``f`` under the ring map sending each assigned variable to the
    given Laurent polynomial (or scalar); other variables are fixed.

    A variable that occurs with a negative exponent must go to a unit, i.e. a
    single nonzero term; otherwise :class:`NonInvertibleSubstitution`.
    """
    images = {v: LaurentPoly.coerce(x) for v, x in assignment.items()}
    kept = [v for v in f.variables if v not in images]
    for v in f.variables:
        if v in images and any(e[f.variables.index(v)] < 0 for e in f.terms):
            if not images[v].is_unit():
                raise NonInvertibleSubstitution(
                    f"{v} occurs with a negative power but maps to non-unit {images[v]}")
    powers: dict[tuple[str, int], LaurentPoly] = {}

    def power(v: str, n: int) -> LaurentPoly:
        key = (v, n)
        if key not in powers:
            powers[key] = images[v] ** n
        return powers[key]

    result = LaurentPoly.const(0, kept)
    for e, c in f.terms.items():
        term = LaurentPoly.monomial(c, {v: x for v, x in zip(f.variables, e) if v in kept})
        for v, x in zip(f.variables, e):
            if v in images and x:
                term = term * power(v, x)
        result = result + term
    return result


def evaluate(f: LaurentPoly, values: Mapping[str, Scalar]) -> Fraction:
    """Numeric value at a point; every variable of ``f`` must be assigned."""
    total = Fraction(0)
    for e, c in f.terms.items():
        term = c
        for v, x in zip(f.variables, e):
            if x:
                term *= Fraction(values[v]) ** x
        total += term
    return total


def homogeneous_components(f: LaurentPoly) -> dict[int, LaurentPoly]:
    comps: dict[int, dict] = {}
    for e, c in f.terms.items():
        comps.setdefault(sum(e), {})[e] = c
    return {d: LaurentPoly._raw(f.variables, t) for d, t in sorted(comps.items())}


@lru_cache(maxsize=None)
def binomial_polynomial(i: int, var: str = "w") -> LaurentPoly:
    """``w (w-1) ... (w-i+1) / i!``; the empty product gives 1."""
    if i < 0:
        raise ValueError("binomial polynomial index must be nonnegative")
    w = LaurentPoly.var(var)
    result = LaurentPoly.const(1, (var,))
    for j in range(i):
        result = result * (w - j) * Fraction(1, j + 1)
    return result


def binomial_expand(h: LaurentPoly) -> tuple[Fraction, ...]:
    """Coefficients ``(c_0, ..., c_d)`` with ``h = sum c_i P_i``.

    Computed from the forward-difference table of ``h`` at 0, 1, ..., d:
    ``c_i`` is the i-th difference at 0.
    """
    coeffs = h.univariate(_single_var(h))
    if any(e < 0 for e in coeffs):
        raise ValueError("binomial_expand needs a polynomial (no negative exponents)")
    if not coeffs:
        return ()
    d = max(coeffs)
    values = [sum((c * Fraction(k) ** e for e, c in coeffs.items()), Fraction(0))
              for k in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def binomial_combination(coeffs: Iterable[Scalar], var: str = "w") -> LaurentPoly:
    """Inverse of :func:`binomial_expand`."""
    result = LaurentPoly.const(0, (var,))
    for i, c in enumerate(coeffs):
        if c:
            result = result + binomial_polynomial(i, var) * Fraction(c)
    return result


def _single_var(h: LaurentPoly) -> str:
    used = h.support_variables()
    if len(used) > 1:
        raise ValueError(f"{h} is not univariate")
    if used:
        return used[0]
    return h.variables[0] if h.variables else "w"


class TruncSeries:
    """Power series in several variables, truncated above total degree ``order``.

    Coefficients may live in any commutative ring whose elements support
    ``+``, ``*`` and truthiness for zero (ints, Fractions, ``BetaPoly``).
    """

    __slots__ = ("variables", "order", "terms")

    def __init__(self, variables: Iterable[str], order: int,
                 terms: Mapping[tuple[int, ...], object] | None = None):
        self.variables = tuple(variables)
        if list(self.variables) != sorted(self.variables):
            raise ValueError("series variables must be given in sorted order")
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        clean = {}
        for e, c in (terms or {}).items():
            if any(x < 0 for x in e):
                raise ValueError("series exponents must be nonnegative")
            if sum(e) <= order and c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def from_poly(cls, f: LaurentPoly, order: int, variables=None) -> "TruncSeries":
        if variables is not None:
            f = f.embed(variables)
        return cls(f.variables, order, f.terms)

    @classmethod
    def from_coefficients(cls, var: str, order: int,
                          coeff: Callable[[int], object]) -> "TruncSeries":
        """One-variable series ``sum_i coeff(i) var^i`` through ``order``."""
        return cls((var,), order, {(i,): coeff(i) for i in range(order + 1)})

    def _aligned(self, other: "TruncSeries"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch {self.variables} vs {other.variables}")
        return min(self.order, other.order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        order = self._aligned(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return TruncSeries(self.variables, order, terms)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.variables, self.order,
                               {e: c * other for e, c in self.terms.items()})
        order = self._aligned(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                terms[e] = terms[e] + p if e in terms else p
        return TruncSeries(self.variables, order, terms)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative powers of series are not supported")
        result = TruncSeries(self.variables, self.order, {(0,) * len(self.variables): 1})
        for _ in range(n):
            result = result * self
        return result

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def compose(self, inner: Mapping[str, "TruncSeries"]) -> "TruncSeries":
        """Substitute series for this series' variables.

        Every inner series must have zero constant term and all of them must
        share one variable tuple; the result lives in those variables.
        """
        if set(inner) != set(self.variables):
            raise ValueError("compose needs an inner series for every variable")
        inner_vars = {s.variables for s in inner.values()}
        if len(inner_vars) != 1:
            raise ValueError("inner series must share their variables")
        (new_vars,) = inner_vars
        for name, s in inner.items():
            if s.constant_term():
                raise CompositionWithUnit(f"inner series for {name} has a nonzero constant term")
        order = min(s.order for s in inner.values())
        one = TruncSeries(new_vars, order, {(0,) * len(new_vars): 1})
        powers = {}
        for k, name in enumerate(self.variables):
            p = [one]
            top = max((e[k] for e in self.terms), default=0)
            for _ in range(min(top, order)):
                p.append(p[-1] * inner[name])
            powers[name] = p
        result = TruncSeries(new_vars, order, {})
        for e, c in self.terms.items():
            if sum(e) > order:
                continue
            term = one
            for name, x in zip(self.variables, e):
                term = term * powers[name][x]
            result = result + term * c
        return result

    def coefficient(self, exps: tuple[int, ...]):
        return self.terms.get(tuple(exps), 0)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.variables == other.variables and self.order == other.order
                and self.terms == other.terms)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(self.variables, self.terms)

    def __repr__(self):
        return f"TruncSeries({self.to_poly() if self._scalar() else self.terms}, order={self.order})"

    def _scalar(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    def __str__(self):
        if not self._scalar():
            return repr(self)
        f = self.to_poly()
        if not f.terms:
            return "0"
        # ascending degree reads naturally for series
        keys = sorted(f.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
        out = []
        for n, e in enumerate(keys):
            c = f.terms[e]
            mono = "*".join(v if x == 1 else f"{v}^{x}"
                            for v, x in zip(f.variables, e) if x)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}{mono}" if mono and mag.denominator == 1
                                                   else (f"{mag}*{mono}" if mono else str(mag)))
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)


def series_ops(a: TruncSeries, b, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "compose":
        # a is the outer series; b maps a's variables to inner series
        if isinstance(b, TruncSeries):
            if len(a.variables) != 1:
                raise ValueError("compose with a bare series needs a one-variable outer series")
            b = {a.variables[0]: b}
        return a.compose(b)
    raise ValueError(f"unknown series operation {op!r}")
