"""Hyperbolicity certification and the smooth/singular classification.

For an invariant form the full hyperbolicity condition collapses to a pair
of univariate checks: with p(t) = t^n + sum_r c_r t^(n-2r) and
s = sqrt(c0^2 + ct0^2), the form is hyperbolic iff p + s and p - s have
all real roots.  Repeated roots of either polynomial (or s = 0) flag the
singular pipeline route; the perturbation below produces a nearby strictly
smooth form from a singular one.
"""

import dataclasses
import enum
import math

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .errors import DegenerateInput, HypothesisViolated, NotHyperbolic, PerturbationFailed
from .invariants import InvariantForm


@dataclasses.dataclass(frozen=True)
class RootProfile:
    """Real roots with multiplicities, plus what was left over."""

    roots: tuple            # ((value, multiplicity), ...) sorted ascending
    residual: float         # max |p(root)| over reported roots
    n_complex: int          # count of root clusters judged non-real

    @property
    def all_real(self) -> bool:
        return self.n_complex == 0

    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def max_multiplicity(self) -> int:
        return max((m for _, m in self.roots), default=0)


class Kind(enum.Enum):
    SMOOTH = "Smooth"
    SINGULAR = "Singular"


@dataclasses.dataclass(frozen=True)
class Classification:
    kind: Kind
    s: float
    witnesses: dict  # {"plus": bool, "minus": bool} repeated-root flags


def _cluster(points: np.ndarray, radius_fn) -> list[list[int]]:
    """Single-linkage clustering of complex points, O(m^2) union-find."""
    m = len(points)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(m):
        for b in range(a + 1, m):
            if abs(points[a] - points[b]) <= radius_fn(points[a], points[b]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups: dict = {}
    for a in range(m):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def cluster_roots(roots: np.ndarray, radius: float) -> list[tuple[complex, int]]:
    """Cluster raw solver output into (centroid, multiplicity) pairs."""
    if len(roots) == 0:
        return []
    groups = _cluster(np.asarray(roots, dtype=complex),
                      lambda a, b: radius * (1.0 + max(abs(a), abs(b))))
    out = []
    for g in groups:
        pts = [roots[i] for i in g]
        out.append((sum(pts) / len(pts), len(pts)))
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def real_roots(coeffs, config: Config = DEFAULT_CONFIG) -> RootProfile:
    """Roots of a univariate polynomial via its companion matrix.

    Roots are clustered into multiplicities; a cluster counts as real when
    its centroid satisfies |Im| <= tol_root * (1 + |root|).
    """
    arr = np.asarray(list(coeffs), dtype=complex)
    if len(arr) == 0 or not np.all(np.isfinite(arr)):
        raise DegenerateInput("empty or non-finite coefficient list")
    biggest = np.max(np.abs(arr))
    if biggest == 0.0:
        raise DegenerateInput("all coefficients vanish")
    # strip negligible leading coefficients so the companion matrix is sane
    start = 0
    while start < len(arr) - 1 and abs(arr[start]) <= 1e-14 * biggest:
        start += 1
    arr = arr[start:]
    if len(arr) <= 1:
        raise DegenerateInput("polynomial is constant after stripping")
    raw = np.roots(arr)
    if np.any(~np.isfinite(raw)):
        raise DegenerateInput("root solve returned non-finite values")

    clusters = cluster_roots(raw, config.cluster_radius)
    reals, n_complex = [], 0
    for z, m in clusters:
        if abs(z.imag) <= config.tol_root * (1.0 + abs(z)):
            reals.append((z.real, m))
        else:
            n_complex += 1
    residual = 0.0
    for r, _ in reals:
        residual = max(residual, abs(np.polyval(arr, r)))
    return RootProfile(tuple(reals), residual, n_complex)


def _p_plus_const(form: InvariantForm, const: float) -> list:
    coeffs = form.univariate()
    coeffs[-1] += const
    return coeffs


def is_hyperbolic(form: InvariantForm, config: Config = DEFAULT_CONFIG) -> bool:
    """True iff both p(t) + s and p(t) - s have all real roots."""
    s = form.s
    for sign in (+1.0, -1.0):
        if not real_roots(_p_plus_const(form, sign * s), config).all_real:
            return False
    return True


def _discriminant_small(coeffs, threshold_scale: float) -> bool:
    """Resultant-based repeated-root test: |disc| below threshold."""
    p = np.asarray(coeffs, dtype=float)
    dp = np.polyder(p)
    n, m = len(p) - 1, len(dp) - 1
    if n < 1:
        return False
    size = n + m
    syl = np.zeros((size, size))
    for i in range(m):
        syl[i, i:i + n + 1] = p
    for i in range(n):
        syl[m + i, i:i + m + 1] = dp
    res = np.linalg.det(syl)
    scale = max(1.0, float(np.max(np.abs(p))))
    return abs(res) < threshold_scale * scale ** (2 * n - 2)


def classify(form: InvariantForm, config: Config = DEFAULT_CONFIG) -> Classification:
    """Smooth/singular routing decision.

    Singular when either endpoint polynomial p +/- s has a repeated root,
    or when c0 = ct0 = 0.  A third singular trigger (a real or repeated
    intersection point discovered downstream) is handled by the
    representation pipeline, not here.
    """
    if not is_hyperbolic(form, config):
        raise NotHyperbolic("form is not hyperbolic")
    s = form.s
    scale = form.coefficient_scale()
    witnesses = {}
    for name, sign in (("plus", +1.0), ("minus", -1.0)):
        coeffs = _p_plus_const(form, sign * s)
        profile = real_roots(coeffs, config)
        repeated = profile.max_multiplicity() > 1
        repeated = repeated or _discriminant_small(coeffs, 1e-10)
        witnesses[name] = bool(repeated)
    if s <= config.drop_tol * scale:
        kind = Kind.SINGULAR
    elif witnesses["plus"] or witnesses["minus"]:
        kind = Kind.SINGULAR
    else:
        kind = Kind.SMOOTH
    return Classification(kind, s, witnesses)


def interlace_check(coeffs, a: float, b: float, c: float,
                    config: Config = DEFAULT_CONFIG) -> bool:
    """Check that p + c has all real distinct roots for c strictly between
    endpoints a < b at which p + a and p + b are real rooted."""
    if not (a < c < b):
        raise ValueError("need a < c < b")
    base = list(np.asarray(list(coeffs), dtype=float))
    for endpoint in (a, b):
        shifted = list(base)
        shifted[-1] += endpoint
        if not real_roots(shifted, config).all_real:
            raise HypothesisViolated(f"p + {endpoint} is not real rooted")
    shifted = list(base)
    shifted[-1] += c
    profile = real_roots(shifted, config)
    return profile.all_real and profile.max_multiplicity() == 1


def _squared_roots(form: InvariantForm, config: Config) -> list[float]:
    """Roots of p viewed through T = t^2, clamped to be nonnegative.

    p(t) is t^k * P(t^2) with P monic of degree floor(n/2); for hyperbolic
    inputs the roots of P are real and nonnegative.
    """
    m = form.n // 2
    if m == 0:
        return []
    P = [1.0] + [0.0] * m
    for r, cr in enumerate(form.c, start=1):
        P[r] = cr
    prof = real_roots(P, config)
    if not prof.all_real:
        raise PerturbationFailed("even-part roots are not all real")
    mu = []
    for value, mult in prof.roots:
        mu.extend([max(value, 0.0)] * mult)
    mu.sort()
    return mu


def _zero_top_candidate(form: InvariantForm, eps: float,
                        config: Config) -> InvariantForm:
    """s = 0 branch: separate the squared roots, switch on a small top pair.

    The top coefficient must fit strictly beneath the extrema of the spread
    polynomial, which shrink much faster than the spread when roots were
    repeated, so it is chosen adaptively from the actual critical values.
    """
    mu = _squared_roots(form, config)
    scale = max([1.0] + mu)
    shifted = [x + (i + 1) * eps * scale for i, x in enumerate(mu)]
    coeffs = np.poly(shifted) if shifted else np.array([1.0])
    c = [float(coeffs[r]) for r in range(1, form.n // 2 + 1)]
    candidate = InvariantForm(form.n, c, 0.0, 0.0)
    p = np.array(candidate.univariate())
    crit = np.roots(np.polyder(p))
    crit = crit[np.abs(crit.imag) < 1e-6 * (1 + np.abs(crit))].real
    b = float(np.min(np.abs(np.polyval(p, crit)))) if len(crit) else eps
    eta = min(eps, 0.4 * b)
    if eta <= 0.0:
        raise PerturbationFailed("spread polynomial has vanishing extrema")
    return InvariantForm(form.n, c, eta, 0.0)


def _is_strictly_smooth(form: InvariantForm, config: Config) -> bool:
    """Validation for perturbation output: real rooted with simple roots.

    Deliberately uses only root clustering (not the discriminant heuristic
    of classify): honest tiny perturbations of very degenerate forms have
    tiny but nonzero discriminants.
    """
    if form.s <= 0.0:
        return False
    try:
        for sign in (+1.0, -1.0):
            profile = real_roots(_p_plus_const(form, sign * form.s), config)
            if not profile.all_real or profile.max_multiplicity() > 1:
                return False
    except DegenerateInput:
        return False
    return True


def perturb(form: InvariantForm, eps: float,
            config: Config = DEFAULT_CONFIG) -> InvariantForm:
    """Nearby strictly smooth hyperbolic form at distance O(eps).

    Requires a singular classification; raises PerturbationFailed when no
    candidate comes out strictly smooth (the caller halves eps and retries).
    """
    if classify(form, config).kind is not Kind.SINGULAR:
        raise ValueError("perturb requires a singular form")
    return smooth_neighbor(form, eps, config)


def smooth_neighbor(form: InvariantForm, eps: float,
                    config: Config = DEFAULT_CONFIG) -> InvariantForm:
    """The perturbation step itself, without the classification guard."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if form.s > 0.0:
        c0 = form.c0 - math.copysign(eps, form.c0) if form.c0 != 0.0 else 0.0
        ct0 = form.ct0 - math.copysign(eps, form.ct0) if form.ct0 != 0.0 else 0.0
        out = InvariantForm(form.n, form.c, c0, ct0)
        if _is_strictly_smooth(out, config):
            return out
        raise PerturbationFailed(f"eps={eps} did not produce a smooth form")
    out = _zero_top_candidate(form, eps, config)
    if _is_strictly_smooth(out, config):
        return out
    raise PerturbationFailed(f"eps={eps} did not produce a smooth form")
