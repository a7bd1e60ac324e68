"""Metric tensors from potentials, curve lengths, and divergence fitting.

Conventions, fixed once and used by both the symbolic and numeric paths:

* the stored tensor is G = (g_{i jbar}) with g_{i jbar} = -d_i d_jbar log Q~,
  realized on real charts as (1/4)[H_xx + H_yy + i(H_xy - H_yx)];
* curve speeds use ds = sqrt(conj(v)^T M v) with M = 4 G, which for a pure
  y-polynomial p makes M the exact matrix ((d_i p d_j p - p d_i d_j p)/p^2)
  and gives the case (y2 + y1, diagonal ray) length log(T/t0) on the nose.

Divergence certification is a log-fit over geometrically spaced partial
lengths, a desk-scale stand-in for analytic "= infinity" statements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classifier import hessian_log
from .errors import (InsufficientSpan, NonPositivePotential, QuadratureBlowup)
from .limiting import LimitingExpansion, degree
from .potential import PotentialEvaluator, get_evaluator


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveSpec:
    """Path t -> z(t) in the cover coordinates, with analytic velocity."""

    kind: str                  # angular_slice | diagonal_ray | power_ray | spiral | custom
    t0: float
    T: float
    position: callable = field(compare=False)   # (M,) -> (M, k) complex
    velocity: callable = field(compare=False)   # (M,) -> (M, k) complex
    label: str = "curve"


def diagonal_ray(k: int = 2, x=(0.0, 0.0), slopes=None, t0: float = 2.0,
                 T: float = 2.0e4, label: str = "diagonal") -> CurveSpec:
    slopes = slopes or (1.0,) * k

    def pos(ts):
        ts = np.asarray(ts, dtype=float)
        return np.stack([x[i] + 1j * slopes[i] * ts for i in range(k)], axis=1)

    def vel(ts):
        ts = np.asarray(ts, dtype=float)
        return np.stack([np.full(ts.shape, 1j * slopes[i], dtype=np.complex128)
                         for i in range(k)], axis=1)

    return CurveSpec("diagonal_ray", t0, T, pos, vel, label)


def power_ray(alpha: float, x=(0.0, 0.0), t0: float = 2.0, T: float = 2.0e4,
              label=None) -> CurveSpec:
    """y1 = t, y2 = t^alpha; both coordinates still run to infinity."""

    def pos(ts):
        ts = np.asarray(ts, dtype=float)
        return np.stack([x[0] + 1j * ts, x[1] + 1j * ts ** alpha], axis=1)

    def vel(ts):
        ts = np.asarray(ts, dtype=float)
        return np.stack([np.full(ts.shape, 1j, dtype=np.complex128),
                         1j * alpha * ts ** (alpha - 1)], axis=1)

    return CurveSpec("power_ray", t0, T, pos, vel, label or f"power-{alpha}")


def angular_slice(x=(0.0, 0.0), slopes=(1.0, 1.0), t0: float = 2.0,
                  T: float = 2.0e4, label=None) -> CurveSpec:
    """Constant x-components; y moves along a ray."""
    base = diagonal_ray(len(x), x, slopes, t0, T)
    return CurveSpec("angular_slice", t0, T, base.position, base.velocity,
                     label or f"slice-x{tuple(round(c, 3) for c in x)}")


def spiral(amp=(0.25, 0.25), freq: float = 1.0, t0: float = 2.0, T: float = 2.0e4,
           label=None) -> CurveSpec:
    """Drifting x with y on the diagonal: x_i = amp_i sin(freq log t)."""

    def pos(ts):
        ts = np.asarray(ts, dtype=float)
        ph = freq * np.log(ts)
        return np.stack([amp[0] * np.sin(ph) + 1j * ts,
                         amp[1] * np.sin(ph) + 1j * ts], axis=1)

    def vel(ts):
        ts = np.asarray(ts, dtype=float)
        ph = freq * np.log(ts)
        dx = freq * np.cos(ph) / ts
        return np.stack([amp[0] * dx + 1j * np.ones_like(ts),
                         amp[1] * dx + 1j * np.ones_like(ts)], axis=1)

    return CurveSpec("spiral", t0, T, pos, vel, label or f"spiral-{freq}")


def custom_curve(position, velocity, t0: float, T: float, label="custom") -> CurveSpec:
    return CurveSpec("custom", t0, T, position, velocity, label)


# ---------------------------------------------------------------------------
# metric sources
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricSample:
    point: tuple
    tensor: np.ndarray          # k x k complex Hermitian (g_{i jbar})
    source: str                 # symbolic_poly | numeric_full | explicit_matrix


class PolyMetric:
    """Exact log-Hessian of a y-polynomial, evaluated in floats per point."""

    name = "symbolic_poly"

    def __init__(self, poly, k: int = 2):
        self.h = hessian_log(poly)
        self.k = k

    def tensor_batch(self, z: np.ndarray) -> np.ndarray:
        y1 = z[:, 0].imag
        y2 = z[:, 1].imag if self.k == 2 else np.zeros_like(y1)
        m = self.h.evaluate(y1, y2)
        return m[:, :self.k, :self.k].astype(np.complex128) / 4.0


class NumericMetric:
    """Finite-difference complex Hessian of -log Q~ (order h^4 stencils)."""

    name = "numeric_full"

    def __init__(self, evaluator: PotentialEvaluator, rel_step: float = 5e-3):
        self.ev = evaluator
        self.k = evaluator.k
        self.rel_step = rel_step

    def _log_values(self, z: np.ndarray) -> np.ndarray:
        vals = self.ev.values(z)
        if np.any(vals <= 0):
            bad = z[np.argmin(vals)]
            raise NonPositivePotential(f"potential <= 0 near z={bad}")
        return np.log(vals)

    def _steps(self, z: np.ndarray) -> np.ndarray:
        # x-coordinates are 1-periodic: fixed step; y-steps scale with y
        h = np.empty((len(z), 2 * self.k))
        for i in range(self.k):
            h[:, 2 * i] = self.rel_step
            h[:, 2 * i + 1] = self.rel_step * np.maximum(1.0, z[:, i].imag)
        return h

    def real_hessian(self, z: np.ndarray) -> np.ndarray:
        """(M, 2k, 2k) Hessian of -log Q~ in coords (x1, y1[, x2, y2])."""
        z = np.asarray(z, dtype=np.complex128)
        n, k = len(z), self.k
        h = self._steps(z)
        offsets = []              # (coord or pair, multiplier signature)
        for c in range(2 * k):
            for mult in (1, -1, 2, -2):
                offsets.append(((c,), (mult,)))
        pairs = [(c1, c2) for c1 in range(2 * k) for c2 in range(c1 + 1, 2 * k)]
        for c1, c2 in pairs:
            for m1 in (1, -1):
                for m2 in (1, -1):
                    offsets.append(((c1, c2), (m1, m2)))
                    offsets.append(((c1, c2), (2 * m1, 2 * m2)))

        pts = [z]
        for coords, mults in offsets:
            dz = np.zeros((n, k), dtype=np.complex128)
            for c, m in zip(coords, mults):
                step = m * h[:, c]
                dz[:, c // 2] += step * (1j if c % 2 else 1.0)
            pts.append(z + dz)
        flat = np.concatenate(pts, axis=0)
        f = -self._log_values(flat).reshape(len(pts), n)

        idx = {off: j + 1 for j, off in enumerate(offsets)}
        f0 = f[0]
        hess = np.zeros((n, 2 * k, 2 * k))
        for c in range(2 * k):
            f1p, f1m = f[idx[((c,), (1,))]], f[idx[((c,), (-1,))]]
            f2p, f2m = f[idx[((c,), (2,))]], f[idx[((c,), (-2,))]]
            hess[:, c, c] = (16 * (f1p + f1m) - (f2p + f2m) - 30 * f0) / (12 * h[:, c] ** 2)
        for c1, c2 in pairs:
            def cross(scale):
                pp = f[idx[((c1, c2), (scale, scale))]]
                mm = f[idx[((c1, c2), (-scale, -scale))]]
                pm = f[idx[((c1, c2), (scale, -scale))]]
                mp = f[idx[((c1, c2), (-scale, scale))]]
                return (pp + mm - pm - mp) / (4 * scale * scale * h[:, c1] * h[:, c2])
            d = (4 * cross(1) - cross(2)) / 3
            hess[:, c1, c2] = d
            hess[:, c2, c1] = d
        return hess

    def tensor_batch(self, z: np.ndarray) -> np.ndarray:
        hess = self.real_hessian(z)
        k = self.k
        g = np.zeros((len(z), k, k), dtype=np.complex128)
        for i in range(k):
            for j in range(k):
                xi, yi, xj, yj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
                g[:, i, j] = 0.25 * (hess[:, xi, xj] + hess[:, yi, yj]
                                     + 1j * (hess[:, xi, yj] - hess[:, yi, xj]))
        return g


class ExplicitMetric:
    name = "explicit_matrix"

    def __init__(self, fn, k: int = 2):
        self.fn = fn
        self.k = k

    def tensor_batch(self, z: np.ndarray) -> np.ndarray:
        return self.fn(np.asarray(z, dtype=np.complex128))


def metric_from_potential(source, z, rel_step: float = 5e-3) -> MetricSample:
    """Single-point tensor: a polynomial gives the exact symbolic path, an
    expansion or evaluator the finite-difference path."""
    from .polynomials import RealPolynomial2
    from .classifier import DominantPolynomial

    z = np.atleast_2d(np.asarray(z, dtype=np.complex128))
    if isinstance(source, (RealPolynomial2, DominantPolynomial)):
        m = PolyMetric(source, k=z.shape[1])
        return MetricSample(tuple(z[0]), m.tensor_batch(z)[0], m.name)
    ev = source if isinstance(source, PotentialEvaluator) else get_evaluator(source)
    m = NumericMetric(ev, rel_step=rel_step)
    return MetricSample(tuple(z[0]), m.tensor_batch(z)[0], m.name)


# ---------------------------------------------------------------------------
# curve length
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureConfig:
    checkpoints: int = 12
    rel_tol: float = 1e-8
    gl_order: int = 16
    max_panels: int = 64


@dataclass(frozen=True)
class LengthSeries:
    curve_id: str
    checkpoints: tuple           # ((T, L(T)), ...), L monotone nondecreasing
    integrand: tuple             # speed at each checkpoint T
    source: str


def _speed_factory(metric_source, curve: CurveSpec):
    def speed(ts):
        ts = np.asarray(ts, dtype=float)
        z = curve.position(ts)
        v = curve.velocity(ts)
        g = metric_source.tensor_batch(z)
        s2 = np.einsum("mi,mij,mj->m", np.conj(v), 4.0 * g, v).real
        if not np.all(np.isfinite(s2)):
            raise QuadratureBlowup(f"non-finite integrand near t={ts[np.argmax(~np.isfinite(s2))]}")
        floor = -1e-9 * max(float(np.abs(s2).max()), 1.0)
        if s2.min() < floor:
            raise QuadratureBlowup(f"negative quadratic form {s2.min()} at t={ts[np.argmin(s2)]}")
        return np.sqrt(np.clip(s2, 0.0, None))
    return speed


def _integrate(speed, a: float, b: float, cfg: QuadratureConfig) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(cfg.gl_order)
    prev = None
    panels = 1
    while True:
        edges = np.linspace(a, b, panels + 1)
        mid = (edges[:-1] + edges[1:]) / 2
        half = (edges[1:] - edges[:-1]) / 2
        ts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        vals = speed(ts).reshape(panels, cfg.gl_order)
        total = float(np.sum(vals @ weights * half))
        if prev is not None and abs(total - prev) <= cfg.rel_tol * max(abs(total), 1e-12):
            return total
        if panels >= cfg.max_panels:
            return total
        prev = total
        panels *= 2


def curve_length(metric_source, curve: CurveSpec,
                 quadrature: QuadratureConfig = QuadratureConfig()) -> LengthSeries:
    """Composite Gauss-Legendre length with geometrically spaced checkpoints."""
    speed = _speed_factory(metric_source, curve)
    ts = np.geomspace(curve.t0, curve.T, quadrature.checkpoints + 1)
    length = 0.0
    checkpoints = []
    for a, b in zip(ts[:-1], ts[1:]):
        length += _integrate(speed, float(a), float(b), quadrature)
        checkpoints.append((float(b), length))
    integrand = speed(ts[1:])
    return LengthSeries(curve.label, tuple(checkpoints), tuple(float(x) for x in integrand),
                        getattr(metric_source, "name", "unknown"))


# ---------------------------------------------------------------------------
# divergence fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitVerdict:
    diverges_log: bool
    c: float
    intercept: float
    residual: float
    bounded: bool
    sup_estimate: float | None


def divergence_fit(series: LengthSeries, residual_tol: float = 0.05) -> FitVerdict:
    """Least-squares L(T) ~ c log T + b over the checkpoint series.

    diverges_log requires c > 0 with small relative residual; the bounded
    verdict requires geometrically decaying increments.
    """
    pts = series.checkpoints
    if len(pts) < 6:
        raise InsufficientSpan(f"need >= 6 checkpoints, got {len(pts)}")
    ts = np.array([p[0] for p in pts])
    ls = np.array([p[1] for p in pts])
    if ts.max() / ts.min() < 1.0e3:
        raise InsufficientSpan("checkpoints must span >= 3 decades")

    inc = np.diff(ls)
    total = max(ls[-1], 1e-30)
    bounded = False
    if np.all(inc >= -1e-12):
        pos = inc[inc > 0]
        if len(pos) == 0:
            bounded = True
        else:
            ratios = pos[1:] / pos[:-1] if len(pos) > 1 else np.array([0.0])
            tail_small = inc[len(inc) // 2:].sum() <= 0.02 * total + 1e-12
            bounded = bool(tail_small and (len(ratios) == 0 or np.median(ratios) < 0.75))

    a = np.stack([np.ones_like(ts), np.log(ts)], axis=1)
    sol, *_ = np.linalg.lstsq(a, ls, rcond=None)
    intercept, c = float(sol[0]), float(sol[1])
    fitted = a @ sol
    span = max(ls.max() - ls.min(), 1e-30)
    residual = float(np.sqrt(np.mean((ls - fitted) ** 2)) / span)
    diverges = bool((c > 0) and (residual < residual_tol) and not bounded)
    sup_estimate = float(ls[-1] + inc[-1]) if bounded else None
    return FitVerdict(diverges, c, intercept, residual, bounded, sup_estimate)


# ---------------------------------------------------------------------------
# named scenarios
# ---------------------------------------------------------------------------

def angular_slice_length(exp: LimitingExpansion, curve: CurveSpec,
                         quadrature: QuadratureConfig = QuadratureConfig(),
                         decay_rate: float = 2 * np.pi):
    """Length along an angular slice of a mixed (infinite, finite) point.

    Returns (series, diagnostics); each diagnostic row carries the
    comparison value log|y1 - e^(-r y2) g / r| rebuilt from the sampled
    off-diagonal metric entry.
    """
    if curve.kind != "angular_slice":
        raise ValueError("curve must be an angular slice (constant x)")
    if exp.k != 2:
        raise ValueError("angular slices need a two-divisor expansion")
    d1 = degree(exp.nilpotents[0], exp.a0)
    d2 = degree(exp.nilpotents[1], exp.a0)
    if d1 < 1 or d2 != 0:
        raise ValueError(f"expected E1 infinite, E2 finite; got degrees ({d1}, {d2})")
    source = NumericMetric(get_evaluator(exp))
    series = curve_length(source, curve, quadrature)
    ts = np.array([p[0] for p in series.checkpoints])
    z = curve.position(ts)
    g = source.tensor_batch(z)
    y1 = z[:, 0].imag
    coupling = 4.0 * np.real(g[:, 0, 1]) * y1 ** 2   # e^(-r y2) g in the comparison
    diagnostics = tuple(
        {"T": float(t), "y1": float(y), "coupling": float(cp),
         "comparison": float(np.log(abs(y - cp / decay_rate)))}
        for t, y, cp in zip(ts, y1, coupling))
    return series, diagnostics


def perturbation_example(m_fn=None, e_fn=None, curve: CurveSpec | None = None,
                         t0: float = 1.0, T: float = 2.0e3, checkpoints: int = 12,
                         x1_const: float = 0.7, variant: str = "paper",
                         quadrature: QuadratureConfig = QuadratureConfig()) -> LengthSeries:
    """Finite-length perturbation scenario.

    Default data: M = (1/y1^2) diag(1, 0), E = [[0, i e^(-y2)], [-i e^(-y2),
    e^(-2 y2)]], curve t -> (x1_const, t, -e^t, t).  The perturbation rides
    the leading envelope of M (the completed-square bound), so the default
    speed is exactly e^(-t)/t and the length converges to the exponential
    integral of the lower limit.  Variants: "paper" (full E),
    "no-perturbation" (E = 0, speed 1/t), "frozen-slot2" (second coordinate
    pinned, speed 1/t).
    """
    if m_fn is None and e_fn is None and curve is None:
        ts_all = np.geomspace(t0, T, checkpoints + 1)

        def speed(ts):
            ts = np.asarray(ts, dtype=float)
            if variant == "paper":
                # |x1' - e^(-y2) y2'|^2 + |y1' + e^(-y2) x2'|^2 along the curve:
                # first term e^(-2t), second exactly 0 (dt - e^(-t) e^t dt)
                return np.exp(-ts) / ts
            if variant in ("no-perturbation", "frozen-slot2"):
                return 1.0 / ts
            raise ValueError(f"unknown variant {variant!r}")

        length = 0.0
        pts = []
        for a, b in zip(ts_all[:-1], ts_all[1:]):
            length += _integrate(speed, float(a), float(b), quadrature)
            pts.append((float(b), length))
        return LengthSeries(f"perturbation-{variant}", tuple(pts),
                            tuple(float(s) for s in speed(ts_all[1:])),
                            "explicit_matrix")

    if curve is None:
        raise ValueError("custom matrices need an explicit curve")

    def total(z):
        m = m_fn(z)
        env = m[:, 0, 0][:, None, None]
        e = e_fn(z) if e_fn is not None else 0.0
        return (m + e * env) / 4.0   # /4 undoes the M = 4 G speed convention

    series = curve_length(ExplicitMetric(total, k=2), curve, quadrature)
    return LengthSeries(series.curve_id, series.checkpoints, series.integrand,
                        "explicit_matrix")


def probe_catalog(t0: float = 2.0, T: float = 2.0e4) -> tuple:
    """Representative family for whole-point divergence verdicts: diagonal,
    two power rays, two angular slices, two drifting-x spirals."""
    return (
        diagonal_ray(2, t0=t0, T=T),
        power_ray(0.5, t0=t0, T=T),
        power_ray(2.0, t0=t0, T=T, label="power-2.0"),
        angular_slice((0.0, 0.0), t0=t0, T=T),
        angular_slice((0.3, -0.2), t0=t0, T=T),
        spiral((0.25, 0.25), 1.0, t0=t0, T=T),
        spiral((0.2, -0.3), 2.0, t0=t0, T=T, label="spiral-2.0"),
    )


@dataclass(frozen=True)
class CorollaryVerdict:
    degrees: tuple
    per_curve: dict
    all_diverge: bool


def corollary_strict_cases(exp: LimitingExpansion, probes=None,
                           quadrature: QuadratureConfig = QuadratureConfig(checkpoints=10),
                           residual_tol: float = 0.05) -> CorollaryVerdict:
    """Run the probe family against the full numeric potential and report a
    per-curve log-divergence verdict plus the overall conjunction."""
    d = tuple(degree(n, exp.a0) for n in exp.nilpotents)
    source = NumericMetric(get_evaluator(exp))
    probes = probes if probes is not None else probe_catalog()
    per_curve = {}
    for curve in probes:
        series = curve_length(source, curve, quadrature)
        per_curve[curve.label] = divergence_fit(series, residual_tol=residual_tol)
    return CorollaryVerdict(d, per_curve,
                            all(v.diverges_log for v in per_curve.values()))


# ---------------------------------------------------------------------------
# asymptotic checks (paper normalization: full Laplacian, no 1/4)
# ---------------------------------------------------------------------------

def asymptotic_lemma_check(exp: LimitingExpansion, y_values=None,
                           interior=complex(0.1, 0.35), x1: float = 0.07) -> dict:
    """Scaled second derivatives of -log Q~ along y1 -> infinity.

    Reports y1^2 * (-(dxx + dyy) log Q~) in the first slot, which tends to
    the divisor degree d, and the scaled mixed entries, which stay bounded.
    The stored tensor convention carries an extra 1/4 relative to these
    Laplacian-normalized quantities.
    """
    y_values = np.asarray(y_values if y_values is not None
                          else np.geomspace(10.0, 1.0e3, 7), dtype=float)
    ev = get_evaluator(exp)
    metric = NumericMetric(ev)
    if exp.k == 1:
        z = np.stack([x1 + 1j * y_values], axis=1)
    else:
        z = np.stack([x1 + 1j * y_values,
                      np.full_like(y_values, interior, dtype=np.complex128)], axis=1)
    g = metric.tensor_batch(z)
    d = degree(exp.nilpotents[0], exp.a0)
    out = {"d": d,
           "y": y_values,
           "diag_scaled": 4.0 * np.real(g[:, 0, 0]) * y_values ** 2}
    if exp.k == 2:
        out["cross_scaled"] = 4.0 * np.abs(g[:, 0, 1]) * y_values ** 2
    return out
