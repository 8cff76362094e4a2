"""Rotation-invariant degree-n forms and eigenspaces of the rotation map.

A degree-n form invariant under u -> w u, v -> w^-1 v (w a primitive n-th
root of unity) that is monic in t is determined by floor(n/2) + 3 real
numbers: the coefficients c_r of t^(n-2r) (uv)^r, the coefficient c0 of
(u^n + v^n)/2 and the coefficient ct0 of (u^n - v^n)/(2i).
"""

import dataclasses
import math

from .poly import TrivariatePoly, monomials_of_degree


@dataclasses.dataclass(frozen=True)
class InvariantForm:
    """Monic rotation-invariant form in its real coefficient coordinates."""

    n: int
    c: tuple
    c0: float
    ct0: float

    def __init__(self, n, c, c0, ct0):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "c", tuple(float(x) for x in c))
        object.__setattr__(self, "c0", float(c0))
        object.__setattr__(self, "ct0", float(ct0))
        if self.n < 3:
            raise ValueError("degree must be at least 3")
        if len(self.c) != self.n // 2:
            raise ValueError(f"expected {self.n // 2} coefficients, got {len(self.c)}")
        vals = self.c + (self.c0, self.ct0)
        if not all(math.isfinite(x) for x in vals):
            raise ValueError("coefficients must be finite")

    @property
    def s(self) -> float:
        """Magnitude of the top coefficient pair, sqrt(c0^2 + ct0^2)."""
        return math.hypot(self.c0, self.ct0)

    def expand(self) -> TrivariatePoly:
        n = self.n
        terms = {(n, 0, 0): 1.0 + 0.0j}
        for r, cr in enumerate(self.c, start=1):
            if cr != 0.0:
                terms[(n - 2 * r, r, r)] = complex(cr)
        # (u^n + v^n)/2 and (u^n - v^n)/(2i) merged per monomial
        top_u = (self.c0 - 1j * self.ct0) / 2
        top_v = (self.c0 + 1j * self.ct0) / 2
        if top_u != 0:
            terms[(0, n, 0)] = terms.get((0, n, 0), 0.0) + top_u
        if top_v != 0:
            terms[(0, 0, n)] = terms.get((0, 0, n), 0.0) + top_v
        return TrivariatePoly(n, terms)

    def univariate(self) -> list:
        """Coefficients (leading first) of p(t) = t^n + sum_r c_r t^(n-2r)."""
        coeffs = [0.0] * (self.n + 1)
        coeffs[0] = 1.0
        for r, cr in enumerate(self.c, start=1):
            coeffs[2 * r] = cr
        return coeffs

    def coefficient_scale(self) -> float:
        return max([1.0] + [abs(x) for x in self.c] + [abs(self.c0), abs(self.ct0)])

    def to_json(self) -> dict:
        return {"n": self.n, "c": list(self.c), "c0": self.c0, "ct0": self.ct0}

    @classmethod
    def from_json(cls, data: dict) -> "InvariantForm":
        return cls(data["n"], data["c"], data["c0"], data["ct0"])


@dataclasses.dataclass(frozen=True)
class MonomialBasis:
    """Monomials of one degree lying in one rotation eigenspace, in global order."""

    k: int
    ell: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)


def eigenspace_basis(n: int, k: int, ell: int) -> MonomialBasis:
    """Monomials t^i u^j v^k' of degree k with j - k' = ell mod n.

    These span the eigenspace of the rotation map with eigenvalue w^ell
    restricted to forms of degree k.
    """
    if not 0 <= ell < n:
        raise ValueError("eigenvalue index out of range")
    mons = tuple(e for e in monomials_of_degree(k) if (e[1] - e[2]) % n == ell)
    return MonomialBasis(k, ell, mons)


def eigenspace_dim_formula(n: int, ell: int) -> int:
    """Closed-form dimension of the degree n-1 rotation eigenspaces."""
    if n < 3:
        raise ValueError("degree must be at least 3")
    if not 0 <= ell < n:
        raise ValueError("eigenvalue index out of range")
    if n % 2 == 1:
        return (n + 1) // 2
    return n // 2 if ell % 2 == 0 else n // 2 + 1


def invariant_dim(n: int) -> int:
    """Dimension of the space of degree-n rotation-invariant forms."""
    if n < 3:
        raise ValueError("degree must be at least 3")
    return n // 2 + 3
