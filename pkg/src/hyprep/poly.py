"""Sparse homogeneous polynomials in the three variables (t, u, v).

A polynomial is stored as a map from exponent triples (i, j, k) with
i + j + k = degree to complex coefficients.  The monomial order used
everywhere is graded lexicographic with t > u > v; within one degree this
is plain descending tuple order on (i, j, k), which pins down leading
coefficients and nullspace vectors deterministically.

The same module houses the group actions used downstream: the rotation
(t, u, v) -> (t, w u, w^-1 v) for w a primitive n-th root of unity, the
conjugation involution [t:u:v] -> [tbar:vbar:ubar], and the linear change
of variables between (t, x, y) and (t, u, v) = (t, x+iy, x-iy).
"""

import cmath
import math

DROP_TOL = 1e-12


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def monomials_of_degree(degree: int) -> list[tuple[int, int, int]]:
    """All exponent triples of the given total degree, in the global order."""
    out = [(i, j, degree - i - j)
           for i in range(degree, -1, -1)
           for j in range(degree - i, -1, -1)]
    return out


class TrivariatePoly:
    """Homogeneous polynomial; immutable by convention (never mutate .terms).

    The constructor keeps every nonzero coefficient: the relative drop
    tolerance is applied only where floating noise is actually created
    (products and variable substitutions), never to exact input data.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None,
                 drop_tol: float = 0.0):
        terms = dict(terms or {})
        for e in terms:
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValueError(f"exponent {e} not homogeneous of degree {degree}")
        if terms:
            biggest = max(abs(c) for c in terms.values())
            cutoff = drop_tol * biggest
            terms = {e: complex(c) for e, c in terms.items() if abs(c) > cutoff}
        self.degree = degree
        self.terms = terms

    @classmethod
    def zero(cls, degree: int) -> "TrivariatePoly":
        return cls(degree, {})

    @classmethod
    def monomial(cls, e: tuple[int, int, int], coeff: complex = 1.0) -> "TrivariatePoly":
        return cls(sum(e), {tuple(e): coeff})

    def coeff(self, e) -> complex:
        return self.terms.get(tuple(e), 0.0 + 0.0j)

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def leading(self) -> tuple[tuple[int, int, int], complex]:
        """Leading (exponent, coefficient) in the global monomial order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def monic(self) -> "TrivariatePoly":
        _, lc = self.leading()
        return self * (1.0 / lc)

    def __add__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("degree mismatch in addition")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0.0) + c
        return TrivariatePoly(self.degree, out)

    def __sub__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        return self + (-other)

    def __neg__(self) -> "TrivariatePoly":
        return TrivariatePoly(self.degree, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TrivariatePoly):
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    out[e] = out.get(e, 0.0) + c1 * c2
            return TrivariatePoly(self.degree + other.degree, out,
                                  drop_tol=DROP_TOL)
        return TrivariatePoly(self.degree,
                              {e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def evaluate(self, t: complex, u: complex, v: complex) -> complex:
        tp = _powers(t, self.degree)
        up = _powers(u, self.degree)
        vp = _powers(v, self.degree)
        return sum(c * tp[e[0]] * up[e[1]] * vp[e[2]]
                   for e, c in self.terms.items())

    def dt(self) -> "TrivariatePoly":
        """Partial derivative in t."""
        out = {}
        for (i, j, k), c in self.terms.items():
            if i > 0:
                out[(i - 1, j, k)] = out.get((i - 1, j, k), 0.0) + i * c
        return TrivariatePoly(max(self.degree - 1, 0), out)

    def distance(self, other: "TrivariatePoly") -> float:
        """Max absolute coefficient difference."""
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.coeff(e) - other.coeff(e)) for e in keys), default=0.0)

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), reverse=True)
        return {"degree": self.degree,
                "terms": [{"e": list(e), "re": c.real, "im": c.imag}
                          for e, c in items]}

    @classmethod
    def from_json(cls, data: dict) -> "TrivariatePoly":
        terms = {tuple(t["e"]): complex(t["re"], t["im"]) for t in data["terms"]}
        return cls(int(data["degree"]), terms)

    def __repr__(self):
        if not self.terms:
            return f"TrivariatePoly({self.degree}, 0)"
        bits = []
        for e, c in sorted(self.terms.items(), reverse=True)[:6]:
            bits.append(f"{c:.4g}*t^{e[0]}u^{e[1]}v^{e[2]}")
        more = "..." if len(self.terms) > 6 else ""
        return f"TrivariatePoly({self.degree}, {' + '.join(bits)}{more})"


def _powers(z: complex, upto: int) -> list[complex]:
    out = [1.0 + 0.0j]
    for _ in range(upto):
        out.append(out[-1] * z)
    return out


def rotate(p: TrivariatePoly, ell: int, n: int) -> TrivariatePoly:
    """Apply (t, u, v) -> (t, w^ell u, w^-ell v) with w = exp(2 pi i / n).

    The coefficient of t^i u^j v^k picks up the phase w^(ell (j - k)).
    """
    w = cmath.exp(2j * cmath.pi / n)
    out = {e: c * w ** (ell * (e[1] - e[2])) for e, c in p.terms.items()}
    return TrivariatePoly(p.degree, out)


def conj_involution(p: TrivariatePoly) -> TrivariatePoly:
    """Coefficient-conjugating involution that also swaps u and v.

    Its fixed points are exactly the polynomials that take real values on
    real (t, x, y) points; the conjugate of a form vanishing on a point set
    vanishes on the conjugated point set.
    """
    out = {}
    for (i, j, k), c in p.terms.items():
        out[(i, k, j)] = c.conjugate()
    return TrivariatePoly(p.degree, out)


def xy_to_uv(p: TrivariatePoly) -> TrivariatePoly:
    """Substitute x = (u + v)/2, y = (u - v)/(2i) into a form in (t, x, y)."""
    out: dict = {}
    half = 0.5
    i2inv = 1.0 / 2.0j
    for (i, j, k), c in p.terms.items():
        # ((u+v)/2)^j * ((u-v)/(2i))^k expanded by binomials
        for a in range(j + 1):
            ca = _binom(j, a) * half ** j
            for b in range(k + 1):
                cb = _binom(k, b) * ((-1) ** (k - b)) * i2inv ** k
                e = (i, a + b, (j - a) + (k - b))
                out[e] = out.get(e, 0.0) + c * ca * cb
    return TrivariatePoly(p.degree, out, drop_tol=DROP_TOL)


def uv_to_xy(p: TrivariatePoly) -> TrivariatePoly:
    """Substitute u = x + iy, v = x - iy into a form in (t, u, v)."""
    out: dict = {}
    for (i, j, k), c in p.terms.items():
        for a in range(j + 1):
            ca = _binom(j, a) * (1j) ** (j - a)
            for b in range(k + 1):
                cb = _binom(k, b) * (-1j) ** (k - b)
                e = (i, a + b, (j - a) + (k - b))
                out[e] = out.get(e, 0.0) + c * ca * cb
    return TrivariatePoly(p.degree, out, drop_tol=DROP_TOL)
