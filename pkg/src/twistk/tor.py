"""Tor over the truncated ring Lambda_D = K_*(CP^inf)/(b_i : i > D) with t -> 1.

Everything is linearized over Z: Lambda_D is free of rank D+1 on b_0..b_D,
and a ring element acts on coefficient vectors through the structure
constants. Kernels are then integer kernels, and a Z-generating set of a
submodule also generates it over Lambda_D.

Two kinds of resolution are offered:

* ``free``: Lambda_D^{n_s} terms, differentials are matrices over Lambda_D.
* ``relative``: terms ``U(X_p) (x)_Z Lambda_D`` with X_0 = M and X_{p+1} the
  kernel of the action map ``U(X_p) (x) Lambda_D -> X_p``; each term is
  relatively projective for the augmentation module because Lambda_D is
  Z-free.

Tensoring with the augmentation module Z (b_0, b_1 -> 1, b_{>=2} -> 0) turns
either into an integer chain complex. Higher Tor over Lambda_D is only a
proxy for Tor over the full ring (multiplication by b_1 is injective on the
full ring but has a kernel on Lambda_D), so reports carry D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cpring import TruncRing, truncate_ring
from .groups import AbelianGroup, GradedGroup
from .intlinalg import (Matrix, diagonal, hermite_rows, identity, kernel_basis, lattice_coordinates,
                        matmul, same_lattice, smith_with_inverse)
from .twist import MalformedPresentation, Presentation

TRUNCATION_CAVEAT = "higher Tor computed over truncated ring"

RingVec = tuple[int, ...]  # coefficients of b_0..b_D


class NotAComplex(ArithmeticError):
    pass


class ResolutionError(ArithmeticError):
    pass


# -- modules given by generators and relations ------------------------------------

@dataclass(frozen=True)
class TruncModule:
    """``Lambda_D^ngens / (relations)``; each relation lists one ring vector per generator."""

    ring: TruncRing
    ngens: int
    relations: tuple[tuple[RingVec, ...], ...] = ()

    @property
    def D(self) -> int:
        return self.ring.D

    def relation_lattice(self) -> Matrix:
        """Z-rows spanning the Lambda_D-submodule generated by the relations."""
        rows = []
        for rel in self.relations:
            for j in range(self.ring.rank):
                bj = _unit(self.ring.rank, j)
                rows.append([x for vec in rel for x in self.ring.mul_vec(bj, list(vec))])
        return rows

    def underlying(self) -> "FGModule":
        n = self.ngens * self.ring.rank
        return FGModule.quotient(self.ring, n, None, self.relation_lattice(), act_on_extended(self.ring))


def module_from_presentation(p: Presentation, parity: int, trunc: int | None = None) -> TruncModule:
    p.validate()
    D = p.truncation if trunc is None else trunc
    if D < p.max_index():
        raise MalformedPresentation(
            f"truncation {D} is below the largest b-index {p.max_index()} in the presentation")
    ring = truncate_ring(D)
    names = [g.name for g in p.generators if g.parity == parity]
    rels = []
    for row in p.relations:
        if p.relation_parity(row) != parity:
            continue
        rels.append(tuple(tuple(row[n].at_t_one(ring.rank)) if n in row
                          else (0,) * ring.rank for n in names))
    return TruncModule(ring, len(names), tuple(rels))


def extended_module(ring: TruncRing, orders: Sequence[int]) -> TruncModule:
    """``U (x)_Z Lambda_D`` for ``U = Z/orders[0] + ...`` (order 0 means Z)."""
    rels = []
    for g, d in enumerate(orders):
        if d:
            rels.append(tuple(tuple(d if (h == g and j == 0) else 0 for j in range(ring.rank))
                              for h in range(len(orders))))
    return TruncModule(ring, len(orders), tuple(rels))


def _unit(n: int, j: int) -> list[int]:
    return [1 if k == j else 0 for k in range(n)]


def act_on_extended(ring: TruncRing):
    """b_i acting on ``Z^a (x) Lambda_D`` through the right factor; coordinates
    are indexed ``c*(D+1) + j``."""
    R = ring.rank

    def act(i: int, x: Sequence[int]) -> list[int]:
        bi = _unit(R, i)
        out: list[int] = []
        for c in range(len(x) // R):
            block = list(x[c * R:(c + 1) * R])
            out += ring.mul_vec(bi, block) if any(block) else block
        return out
    return act


# -- Z-linearized modules -----------------------------------------------------------

@dataclass
class FGModule:
    """Finitely generated abelian group with a Lambda_D action.

    Coordinate k is cyclic of order ``orders[k]`` (0 = infinite cyclic).
    ``action[i]`` is the matrix of b_i (columns are images of basis vectors).
    ``reps`` records, for each coordinate, a representative vector in the
    ambient lattice the module was cut out of. The action is left empty when
    the module is only needed as a group.
    """

    ring: TruncRing
    orders: list[int]
    action: list[Matrix]
    reps: list[list[int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.orders)

    def reduce(self, x: Sequence[int]) -> list[int]:
        return [a % d if d else a for a, d in zip(x, self.orders)]

    def group(self) -> AbelianGroup:
        return AbelianGroup.from_factors(0, self.orders)

    @classmethod
    def quotient(cls, ring: TruncRing, n: int, basis: Matrix | None, relations: Matrix,
                 act=None) -> "FGModule":
        """The lattice spanned by ``basis`` (rows in HNF; None = Z^n) modulo ``relations``.

        ``act(i, x)`` computes b_i on Z^n; the lattice and the relations must
        be stable under it.
        """
        q = _Quotient(n, basis, relations)
        module = cls(ring, q.orders, [], q.reps)
        if act is not None:
            module.action = [
                _columns_to_matrix([q.coords(act(i, rep)) for rep in q.reps], q.size)
                for i in range(ring.rank)]
        return module


def _columns_to_matrix(cols: list[list[int]], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]


class _Quotient:
    """Coordinates on ``K / L`` for lattices ``L <= K <= Z^n``, via Smith form."""

    def __init__(self, n: int, basis: Matrix | None, relations: Matrix):
        self.n = n
        self.basis = basis
        k = n if basis is None else len(basis)
        rel = [self._lift(r) for r in relations if any(r)]
        U, S, V, Vinv = smith_with_inverse(rel, k) if rel else (None, [], identity(k), identity(k))
        d = diagonal(S) if rel else []
        d = d + [0] * (k - len(d))
        self._V = V
        self.keep = [i for i in range(k) if d[i] != 1]
        self.orders = [d[i] for i in self.keep]
        self.reps = [self._to_ambient(Vinv[i]) for i in self.keep]

    @property
    def size(self) -> int:
        return len(self.keep)

    def _lift(self, z: Sequence[int]) -> list[int]:
        if self.basis is None:
            return list(z)
        y = lattice_coordinates(self.basis, z)
        if y is None:
            raise ResolutionError("vector outside the lattice")
        return y

    def _to_ambient(self, y: Sequence[int]) -> list[int]:
        if self.basis is None:
            return list(y)
        out = [0] * self.n
        for c, b in zip(y, self.basis):
            if c:
                for j, x in enumerate(b):
                    if x:
                        out[j] += c * x
        return out

    def coords(self, z: Sequence[int]) -> list[int]:
        y = self._lift(z)
        V = self._V
        out = []
        for i, d in zip(self.keep, self.orders):
            a = sum(y[r] * V[r][i] for r in range(len(y)) if y[r])
            out.append(a % d if d else a)
        return out


# -- chain complexes ------------------------------------------------------------------

@dataclass
class ChainComplex:
    """``C_0 <- C_1 <- ...``; ``boundaries[s-1]`` is ``d_s : C_s -> C_{s-1}``
    as a ``dims[s-1] x dims[s]`` matrix. ``orders[s]`` optionally makes C_s a
    product of cyclic groups instead of a free group."""

    dims: list[int]
    boundaries: list[Matrix]
    orders: list[list[int]] | None = None

    def order(self, s: int) -> list[int]:
        if self.orders is None:
            return [0] * self.dims[s]
        return self.orders[s]

    def check(self):
        for s in range(1, len(self.boundaries)):
            prod = matmul(self.boundaries[s - 1], self.boundaries[s], self.dims[s])
            for i, row in enumerate(prod):
                d = self.order(s - 1)[i]
                if any((x % d if d else x) for x in row):
                    raise NotAComplex(f"d_{s} d_{s + 1} != 0")


def homology(C: ChainComplex) -> list[AbelianGroup]:
    """``H_s = ker d_s / im d_{s+1}`` for every degree; a missing d_{s+1} counts as zero."""
    C.check()
    return [_homology_at(C, s) for s in range(len(C.dims))]


def _homology_at(C: ChainComplex, s: int) -> AbelianGroup:
    n = C.dims[s]
    if n == 0:
        return AbelianGroup()
    orders_here = C.order(s)
    # cycles: {x : d_s x in L_{s-1}}
    if s == 0:
        cycles = identity(n)
    else:
        d = C.boundaries[s - 1]
        below = C.order(s - 1)
        m = len(d)
        tors_cols = [i for i in range(m) if below[i]]
        big = [list(d[i]) + [(-below[i] if i == c else 0) for c in tors_cols] for i in range(m)]
        ker = kernel_basis(big, n + len(tors_cols)) if m else identity(n)
        cycles = hermite_rows([row[:n] for row in ker], n)
    z = len(cycles)
    if z == 0:
        return AbelianGroup()
    gens = [[orders_here[i] if j == i else 0 for j in range(n)] for i in range(n) if orders_here[i]]
    if s < len(C.boundaries):
        up = C.boundaries[s]
        gens += [list(col) for col in zip(*up)] if up and up[0] else []
    rows = []
    for g in gens:
        if not any(g):
            continue
        y = lattice_coordinates(cycles, g)
        if y is None:
            raise NotAComplex(f"boundary not contained in cycles in degree {s}")
        rows.append(y)
    return AbelianGroup.cokernel(rows, z)


# -- free resolutions ----------------------------------------------------------------

def lambda_matrix_to_z(ring: TruncRing, columns: list[list[RingVec]], ntarget: int) -> Matrix:
    """Z-matrix of a Lambda_D-linear map ``Lambda^n -> Lambda^ntarget`` given by the
    images of the basis vectors (each image = one ring vector per target generator).
    Column ``c*(D+1)+j`` is the image of ``b_j e_c``."""
    R = ring.rank
    cols = []
    for img in columns:
        for j in range(R):
            bj = _unit(R, j)
            cols.append([x for vec in img for x in ring.mul_vec(bj, list(vec))])
    return _columns_to_matrix(cols, ntarget * R) if cols else [[] for _ in range(ntarget * R)]


def kernel(ring: TruncRing, columns: list[list[RingVec]], ntarget: int) -> list[list[RingVec]]:
    """Z-basis of the kernel of a map between free Lambda_D-modules, each
    element written as one ring vector per source generator."""
    R = ring.rank
    A = lambda_matrix_to_z(ring, columns, ntarget)
    nsrc = len(columns) * R
    K = kernel_basis(A if ntarget else [], nsrc)
    return [_split(x, R) for x in K]


def _split(x: Sequence[int], R: int) -> list[RingVec]:
    return [tuple(x[g * R:(g + 1) * R]) for g in range(len(x) // R)]


def _lambda_span(ring: TruncRing, elems: list[list[RingVec]]) -> Matrix:
    rows = []
    for e in elems:
        for j in range(ring.rank):
            bj = _unit(ring.rank, j)
            rows.append([x for vec in e for x in ring.mul_vec(bj, list(vec))])
    return rows


def minimal_generators(ring: TruncRing, zbasis: list[list[RingVec]], n: int) -> list[list[RingVec]]:
    """Greedy subset of a Z-basis that still generates over Lambda_D."""
    width = n * ring.rank
    flat = [[x for vec in e for x in vec] for e in zbasis]
    ordered = hermite_rows(flat, width)
    kept: list[list[RingVec]] = []
    span: Matrix = []
    for row in ordered:
        if span and lattice_coordinates(span, row) is not None:
            continue
        elem = _split(row, ring.rank)
        kept.append(elem)
        span = hermite_rows(span + _lambda_span(ring, [elem]), width)
    return kept


@dataclass
class FreeResolution:
    ring: TruncRing
    ranks: list[int]                              # n_0, n_1, ...
    differentials: list[list[list[RingVec]]]     # differentials[s-1] = images of C_s basis in C_{s-1}

    def z_matrix(self, s: int) -> Matrix:
        return lambda_matrix_to_z(self.ring, self.differentials[s - 1], self.ranks[s - 1])

    def check(self):
        R = self.ring.rank
        for s in range(2, len(self.differentials) + 1):
            prod = matmul(self.z_matrix(s - 1), self.z_matrix(s), self.ranks[s - 1] * R)
            if any(x for row in prod for x in row):
                raise NotAComplex(f"d_{s - 1} d_{s} != 0 in the free resolution")

    def tensor_hat(self) -> ChainComplex:
        mats = []
        for s, cols in enumerate(self.differentials, start=1):
            m = self.ranks[s - 1]
            mats.append([[_aug(cols[c][g]) for c in range(len(cols))] for g in range(m)])
        return ChainComplex(list(self.ranks), mats)


def _aug(vec: RingVec) -> int:
    return vec[0] + (vec[1] if len(vec) > 1 else 0)


def free_resolution(M: TruncModule, length: int) -> FreeResolution:
    """Free resolution with terms F_0..F_length (so Tor_s is available for s < length)."""
    ring = M.ring
    ranks = [M.ngens]
    diffs: list[list[list[RingVec]]] = []
    for s in range(1, length + 1):
        if s == 1:
            zgens = [list(r) for r in M.relations]
            target = M.relation_lattice()
        else:
            zgens = kernel(ring, diffs[-1], ranks[-2]) if ranks[-1] else []
            target = [[x for vec in e for x in vec] for e in zgens]
        gens = minimal_generators(ring, zgens, ranks[-1]) if zgens and ranks[-1] else []
        if zgens:
            _check_span(ring, gens, target, ranks[-1])
        diffs.append(gens)
        ranks.append(len(gens))
    res = FreeResolution(ring, ranks, diffs)
    res.check()
    return res


def _check_span(ring, gens, target_rows, n):
    if not same_lattice(_lambda_span(ring, gens), target_rows, n * ring.rank):
        raise ResolutionError("generators do not span the required submodule (exactness failure)")


# -- relative resolutions -------------------------------------------------------------

@dataclass
class RelativeStage:
    X: FGModule            # X_p
    E_size: int            # Z-rank of the ambient U(X_p) (x) Lambda_D coordinates
    action_map: Matrix     # E_p -> X_p on ambient coordinates (empty on the last stage)
    section: Matrix        # X_p -> E_p, m -> m (x) b_0


@dataclass
class RelativeResolution:
    ring: TruncRing
    stages: list[RelativeStage]
    boundaries: list[Matrix]    # after tensoring: d_{p+1}: U(X_{p+1}) -> U(X_p)

    def tensor_hat(self) -> ChainComplex:
        dims = [st.X.size for st in self.stages]
        return ChainComplex(dims, self.boundaries, [list(st.X.orders) for st in self.stages])

    def split_check(self) -> bool:
        """``action_map o section`` is the identity on X_0."""
        st = self.stages[0]
        comp = matmul(st.action_map, st.section, st.E_size)
        want = identity(st.X.size)
        return all(st.X.reduce([comp[i][j] - want[i][j] for i in range(st.X.size)]) == [0] * st.X.size
                   for j in range(st.X.size))


def relative_resolution(M: TruncModule, length: int) -> RelativeResolution:
    """Stages E_0..E_length; the last stage carries no action map."""
    if length < 1:
        raise ValueError("a relative resolution needs length >= 1")
    ring = M.ring
    R = ring.rank
    X = M.underlying()
    stages: list[RelativeStage] = []
    boundaries: list[Matrix] = []
    for p in range(length + 1):
        a = X.size
        n = a * R
        if p == length:
            stages.append(RelativeStage(X, n, [], []))
            break
        # action map e_c (x) b_j -> b_j e_c
        eps = [[0] * n for _ in range(a)]
        for c in range(a):
            for j in range(R):
                for r in range(a):
                    eps[r][c * R + j] = X.action[j][r][c]
        section = [[1 if (r == c * R) else 0 for c in range(a)] for r in range(n)]
        stages.append(RelativeStage(X, n, eps, section))
        # kernel lattice {x : eps x in L_X}
        tors = [c for c in range(a) if X.orders[c]]
        big = [eps[r] + [(-X.orders[r] if r == c else 0) for c in tors] for r in range(a)]
        ker = kernel_basis(big, n + len(tors)) if a else identity(n)
        K = hermite_rows([row[:n] for row in ker], n)
        L_E = [[X.orders[c] if k == c * R + j else 0 for k in range(n)]
               for c in range(a) if X.orders[c] for j in range(R)]
        Xn = FGModule.quotient(ring, n, K, L_E, act_on_extended(ring) if p + 1 < length else None)
        # tensored boundary U(X_{p+1}) -> U(X_p): x = sum x_{c,j} e_c (x) b_j -> sum aug(b_j) x_{c,j} e_c
        d = [[0] * Xn.size for _ in range(a)]
        for g, rep in enumerate(Xn.reps):
            img = X.reduce([rep[c * R] + (rep[c * R + 1] if R > 1 else 0) for c in range(a)])
            for c in range(a):
                d[c][g] = img[c]
        boundaries.append(d)
        X = Xn
    res = RelativeResolution(ring, stages, boundaries)
    res.tensor_hat().check()
    if not res.split_check():
        raise ResolutionError("stage-0 action map is not split by m -> m (x) b_0")
    return res


# -- Tor ---------------------------------------------------------------------------------

def tor(M: TruncModule, s_max: int, mode: str = "free") -> list[AbelianGroup]:
    """``Tor_s^{Lambda_D}(M, Z)`` for ``s = 0..s_max``."""
    if s_max < 0:
        raise ValueError("s_max must be nonnegative")
    if mode == "free":
        C = free_resolution(M, s_max + 1).tensor_hat()
    elif mode == "relative":
        C = relative_resolution(M, s_max + 1).tensor_hat()
    else:
        raise ValueError(f"unknown resolution mode {mode!r}")
    groups = homology(C)
    return groups[:s_max + 1]


def tor_graded(p: Presentation, s_max: int, mode: str = "free", trunc: int | None = None) -> list[GradedGroup]:
    per_parity = [tor(module_from_presentation(p, q, trunc), s_max, mode) for q in (0, 1)]
    return [GradedGroup(a, b) for a, b in zip(*per_parity)]


def tor_report(p: Presentation, s_max: int, mode: str = "free", trunc: int | None = None) -> dict:
    D = p.truncation if trunc is None else trunc
    groups = tor_graded(p, s_max, mode, trunc)
    return {
        "metadata": {"truncation": D, "mode": mode, "max_s": s_max, "caveat": TRUNCATION_CAVEAT},
        "tor": [{"s": s, **g.to_json()} for s, g in enumerate(groups)],
    }
