"""Finitely generated abelian groups and their Z/2-graded pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intlinalg import diagonal, smith_normal_form


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``1 < d_1 | d_2 | ... | d_k``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tors = tuple(self.torsion)
        if any(d < 2 for d in tors):
            raise ValueError(f"invariant factors must be >= 2, got {tors}")
        if any(b % a for a, b in zip(tors, tors[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {tors}")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_factors(cls, free_rank: int, factors) -> "AbelianGroup":
        """Canonicalize arbitrary cyclic orders (0 = Z, 1 dropped) to invariant factors."""
        free = free_rank + sum(1 for d in factors if d == 0)
        rest = [abs(d) for d in factors if abs(d) > 1]
        if not rest:
            return cls(free, ())
        _, S, _ = smith_normal_form([[d if i == j else 0 for j in range(len(rest))]
                                     for i, d in enumerate(rest)], transforms=False)
        return cls(free, tuple(d for d in diagonal(S) if d > 1))

    @classmethod
    def cokernel(cls, rows: Sequence[Sequence[int]], ncols: int) -> "AbelianGroup":
        """``Z^ncols / (row span)``."""
        if ncols == 0:
            return cls()
        if not rows:
            return cls(ncols)
        _, S, _ = smith_normal_form(rows, ncols, transforms=False)
        d = [x for x in diagonal(S) if x]
        return cls(ncols - len(d), tuple(x for x in d if x > 1))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GradedGroup:
    parity0: AbelianGroup = AbelianGroup()
    parity1: AbelianGroup = AbelianGroup()

    def __getitem__(self, parity: int) -> AbelianGroup:
        return (self.parity0, self.parity1)[parity]

    def is_zero(self) -> bool:
        return self.parity0.is_zero() and self.parity1.is_zero()

    def to_json(self) -> dict:
        return {"parity0": self.parity0.to_json(), "parity1": self.parity1.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "GradedGroup":
        return cls(AbelianGroup.from_json(data["parity0"]), AbelianGroup.from_json(data["parity1"]))

    def __str__(self):
        return f"parity 0: {self.parity0}, parity 1: {self.parity1}"
