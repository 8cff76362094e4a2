"""Numerical range sampling through support functions.

The numerical range of A is compact and convex, and its support function
in direction theta is the top eigenvalue of cos(theta) Re(A) +
sin(theta) Im(A); a maximizing unit eigenvector x touches the boundary at
the point x* A x.  Two matrices have equal ranges iff their support
functions agree.  The real points of the associated curve are sampled
separately in the t = 1 chart: along each ray the curve restricts to a
real univariate polynomial in the radius.
"""

import concurrent.futures
import dataclasses
import math

import numpy as np

from .config import Config, DEFAULT_CONFIG
from .hyperbolicity import real_roots
from .invariants import InvariantForm
from .shift import ShiftMatrix


@dataclasses.dataclass(frozen=True)
class BoundarySample:
    angles: tuple
    support: tuple
    points: tuple   # (x, y) touch points from maximizing eigenvectors


def _as_matrix(W) -> np.ndarray:
    if isinstance(W, ShiftMatrix):
        return W.matrix()
    return np.asarray(W, dtype=complex)


def support(W, theta: float) -> tuple[float, tuple[float, float]]:
    """Support value and a boundary touch point in direction theta."""
    A = _as_matrix(W)
    ReA = (A + A.conj().T) / 2
    ImA = (A - A.conj().T) / 2j
    H = math.cos(theta) * ReA + math.sin(theta) * ImA
    vals, vecs = np.linalg.eigh(H)
    x = vecs[:, -1]
    # deterministic eigenvector phase: first significant component positive real
    idx = int(np.argmax(np.abs(x) > 1e-12))
    phase = x[idx] / abs(x[idx])
    x = x / phase
    z = complex(x.conj() @ (A @ x))
    return float(vals[-1]), (z.real, z.imag)


def boundary_sample(W, m: int = 720, config: Config = DEFAULT_CONFIG) -> BoundarySample:
    """Support function and touch points on a uniform angle grid."""
    if m < 8:
        raise ValueError("need at least 8 angles")
    thetas = [2 * math.pi * k / m for k in range(m)]
    workers = config.effective_threads()
    if workers > 1 and m >= 64:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda th: support(W, th), thetas))
    else:
        results = [support(W, th) for th in thetas]
    return BoundarySample(
        angles=tuple(thetas),
        support=tuple(h for h, _ in results),
        points=tuple(p for _, p in results),
    )


def range_equal(W1, W2, m: int = 720, tol: float = 1e-9,
                config: Config = DEFAULT_CONFIG) -> bool:
    """Numerical ranges agree iff the sampled support functions agree."""
    s1 = boundary_sample(W1, m, config)
    s2 = boundary_sample(W2, m, config)
    return max(abs(a - b) for a, b in zip(s1.support, s2.support)) <= tol


def curve_sample(form: InvariantForm, m: int = 720, r_max: float | None = None,
                 config: Config = DEFAULT_CONFIG) -> list[tuple[float, float]]:
    """Real points of the curve in the t = 1 chart, sampled by angle.

    Restricting to the ray (1, rho e^(i theta), rho e^(-i theta)) gives the
    real polynomial 1 + sum_r c_r rho^(2r) + (c0 cos n theta +
    ct0 sin n theta) rho^n; its real roots are emitted as (x, y) points.
    """
    n = form.n
    pts = []
    for k in range(m):
        theta = 2 * math.pi * k / m
        coeffs = [0.0] * (n + 1)
        coeffs[0] = form.c0 * math.cos(n * theta) + form.ct0 * math.sin(n * theta)
        for r, cr in enumerate(form.c, start=1):
            # for even n the r = n/2 term shares the rho^n slot with the top pair
            coeffs[n - 2 * r] += cr
        coeffs[n] = 1.0
        if max(abs(c) for c in coeffs[:-1]) == 0.0:
            continue
        profile = real_roots(coeffs, config)
        for rho, mult in profile.roots:
            if r_max is not None and abs(rho) > r_max:
                continue
            pts.append((rho * math.cos(theta), rho * math.sin(theta)))
    return pts


def write_boundary_csv(sample: BoundarySample, path: str):
    with open(path, "w", newline="\n") as fh:
        fh.write("theta,h,x,y\n")
        for th, h, (x, y) in zip(sample.angles, sample.support, sample.points):
            fh.write(f"{th:.17g},{h:.17g},{x:.17g},{y:.17g}\n")


def write_curve_csv(points: list[tuple[float, float]], path: str):
    with open(path, "w", newline="\n") as fh:
        fh.write("x,y\n")
        for x, y in points:
            fh.write(f"{x:.17g},{y:.17g}\n")


def write_svg(point_sets: list[list[tuple[float, float]]], path: str,
              size: int = 600, colors: tuple = ("#1f77b4", "#d62728", "#2ca02c")):
    """Plain polyline/point rendering; no interactivity."""
    allpts = [p for ps in point_sets for p in ps]
    if not allpts:
        raise ValueError("nothing to draw")
    xs = [p[0] for p in allpts]
    ys = [p[1] for p in allpts]
    lo, hi = min(min(xs), min(ys)), max(max(xs), max(ys))
    span = max(hi - lo, 1e-12)
    pad = 0.05 * span

    def sx(x):
        return (x - lo + pad) / (span + 2 * pad) * size

    def sy(y):
        return size - (y - lo + pad) / (span + 2 * pad) * size

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    for ps, color in zip(point_sets, colors):
        for x, y in ps:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="1.5" '
                         f'fill="{color}"/>')
    parts.append("</svg>")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
