"""Supremum norms and energy norms on vertical lines and strips.

Two independent engines estimate the supremum of |G| along a vertical line:
a refined frequency grid (certified lower bound) and a bisection on the level
parameter of a Hamiltonian matrix whose imaginary-axis eigenvalues flag level
crossings (two-sided bracket).  A function bounded on a strip attains its
supremum on the boundary, so strip norms reduce to the two boundary lines
plus an interior spot check.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import matkernel
from .errors import (
    DivergentIntegral,
    ImproperTransferFunction,
    InvalidInput,
    NumericalFailure,
    PoleOnLine,
)
from .rational import Polynomial, RationalFunction, partial_fractions, pole_partition, recombine
from .regions import Line, Strip
from .statespace import StateSpace, modal_split, realize, require_siso

TAU_LINE = 1e-8
TAU_HAM = 1e-7

GRID_POINTS = 512
GRID_OMEGA_MIN = 1e-3
GRID_OMEGA_MAX = 1e3
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def maxmod_slack(value: float) -> float:
    """Allowed numerical excess of interior samples over a boundary max."""
    return 1e-9 + 1e-6 * value


@dataclass(frozen=True)
class NormResult:
    """Outcome of a norm computation.

    ``value`` is a lower bound for the grid method and the bracket midpoint
    for bisection.  ``peak_frequency`` is where the maximum was found
    (math.inf when the supremum is only approached as omega grows).
    """

    value: float
    method: str
    peak_frequency: float
    tolerance: float | None = None
    bracket: tuple[float, float] | None = None
    attaining_boundary: str | None = None
    boundary_values: tuple[float, float] | None = None


def _thread_count() -> int:
    raw = os.environ.get("STRIPGAIN_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _line_pole_guard(G: RationalFunction, line: Line) -> None:
    for p in G.poles:
        if abs(p.real + line.lam) <= TAU_LINE * (1.0 + abs(p.real)):
            raise PoleOnLine(
                "pole %s lies on the line Re(s) = %g" % (p, line.real_part)
            )


def _magnitudes(G: RationalFunction, lam: float, omegas: np.ndarray) -> np.ndarray:
    s = -lam + 1j * omegas
    workers = _thread_count()
    if workers > 1 and omegas.size >= 256:
        chunks = np.array_split(s, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: np.abs(G.eval_unchecked(c)), chunks))
        return np.concatenate(parts)
    return np.abs(G.eval_unchecked(s))


def default_grid(G: RationalFunction) -> np.ndarray:
    """Logarithmic frequency grid augmented with pole resonance frequencies."""
    pts = [np.array([0.0]), np.logspace(
        math.log10(GRID_OMEGA_MIN), math.log10(GRID_OMEGA_MAX), GRID_POINTS
    )]
    imag = np.abs(G.poles.imag)
    pts.append(imag[imag > 0.0])
    return np.unique(np.concatenate(pts))


def _golden_max(f, a: float, b: float):
    """Golden-section maximization; returns (omega, value) of the best point."""
    best_w, best_v = a, f(a)
    vb = f(b)
    if vb > best_v:
        best_w, best_v = b, vb
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(120):
        if b - a <= 1e-10 * (1.0 + abs(b)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    for w, v in ((c, fc), (d, fd)):
        if v > best_v:
            best_w, best_v = w, v
    return best_w, best_v


def line_norm_grid(
    G: RationalFunction, line: Line, grid: np.ndarray | None = None
) -> NormResult:
    """Grid estimate (lower bound) of sup |G| on a vertical line.

    Local maxima of the sampled magnitude are polished by golden-section
    search on their bracketing grid intervals; for a biproper G the limiting
    value at infinite frequency competes as a candidate as well.
    """
    if not G.is_proper:
        raise ImproperTransferFunction("|G| is unbounded on every vertical line")
    _line_pole_guard(G, line)
    omegas = default_grid(G) if grid is None else np.unique(
        np.abs(np.asarray(grid, dtype=float))
    )
    if omegas.size < 2:
        raise InvalidInput("frequency grid needs at least two points")
    vals = _magnitudes(G, line.lam, omegas)
    if not np.all(np.isfinite(vals)):
        raise NumericalFailure("magnitude overflow on the frequency grid")
    best_w = float(omegas[int(np.argmax(vals))])
    best_v = float(np.max(vals))

    def f(w: float) -> float:
        return float(np.abs(G.eval_unchecked(-line.lam + 1j * w)))

    n = omegas.size
    for k in range(n):
        left = vals[k - 1] if k > 0 else -math.inf
        right = vals[k + 1] if k < n - 1 else -math.inf
        if vals[k] >= left and vals[k] >= right:
            a = omegas[max(k - 1, 0)]
            b = omegas[min(k + 1, n - 1)]
            if b > a:
                w, v = _golden_max(f, float(a), float(b))
                if v > best_v:
                    best_w, best_v = w, v
    peak = best_w
    if G.num_degree == G.den_degree:
        limit = abs(G.num.lead / G.den.lead)
        if limit > best_v:
            best_v = limit
            peak = math.inf
    return NormResult(value=best_v, method="grid", peak_frequency=peak)


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Level-crossing test matrix for a shifted system at level gamma."""

    matrix: np.ndarray
    gamma: float
    rate: float


def build_hamiltonian(ss: StateSpace, gamma: float, line: Line) -> HamiltonianMatrix:
    """Assemble the Hamiltonian whose imaginary-axis eigenvalues mark the
    frequencies where |G(-lam + i omega)| crosses the level gamma."""
    require_siso(ss, "build_hamiltonian")
    if ss.n == 0:
        raise InvalidInput("Hamiltonian requires at least one state")
    d = float(ss.D[0, 0])
    R = d * d - gamma * gamma
    if abs(R) <= 1e-12 * max(1.0, gamma * gamma):
        raise InvalidInput(
            "level %g is too close to the feedthrough magnitude %g" % (gamma, abs(d))
        )
    At = ss.A + line.lam * np.eye(ss.n)
    F = At - (d / R) * (ss.B @ ss.C)
    top = np.hstack([F, -(gamma / R) * (ss.B @ ss.B.T)])
    bot = np.hstack([(gamma / R) * (ss.C.T @ ss.C), -F.T])
    return HamiltonianMatrix(matrix=np.vstack([top, bot]), gamma=gamma, rate=line.lam)


def _crossing_state(H: np.ndarray):
    """Classify Hamiltonian eigenvalues: 'cross', 'clear', or 'ambiguous'."""
    w = matkernel.eig(H)
    scale = max(1.0, float(np.linalg.norm(H)))
    re = np.abs(w.real)
    if np.any((re > 0.3 * TAU_HAM * scale) & (re < 3.0 * TAU_HAM * scale)):
        return "ambiguous", w
    if np.any(re <= TAU_HAM * scale):
        return "cross", w
    return "clear", w


def _ss_line_mag(ss: StateSpace, lam: float, omegas) -> np.ndarray:
    At = ss.A + lam * np.eye(ss.n)
    d = float(ss.D[0, 0])
    out = np.empty(len(omegas))
    for k, w in enumerate(omegas):
        if ss.n:
            x = np.linalg.solve(1j * w * np.eye(ss.n) - At, ss.B[:, 0])
            out[k] = abs(complex(ss.C[0, :] @ x) + d)
        else:
            out[k] = abs(d)
    return out


def line_norm_bisection(
    system: StateSpace | RationalFunction, line: Line, tol: float = 1e-6
) -> NormResult:
    """Bracket sup |G| on a line by bisection on the Hamiltonian level.

    A level gamma is crossed exactly when the Hamiltonian has imaginary-axis
    eigenvalues; a clear spectrum is resolved against a sampled magnitude to
    decide on which side of the range of |G| the level sits.  Ambiguous
    classifications are re-tested at gamma * (1 +/- 1e-6).
    """
    if isinstance(system, RationalFunction):
        ss = realize(system)
    else:
        ss = system
    require_siso(ss, "line_norm_bisection")
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidInput("tolerance must be positive and finite")
    d = abs(float(ss.D[0, 0]))
    if ss.n == 0:
        return NormResult(
            value=d, method="bisection", peak_frequency=0.0, tolerance=tol, bracket=(d, d)
        )
    eigs = matkernel.eig(ss.A)
    for mu in eigs:
        if abs(mu.real + line.lam) <= TAU_LINE * (1.0 + abs(mu.real)):
            raise PoleOnLine("system pole %s lies on the line Re(s) = %g" % (mu, -line.lam))

    coarse = np.unique(
        np.concatenate(
            [
                np.array([0.0]),
                np.logspace(math.log10(GRID_OMEGA_MIN), math.log10(GRID_OMEGA_MAX), 64),
                np.abs(eigs.imag[np.abs(eigs.imag) > 0]),
            ]
        )
    )
    vals = _ss_line_mag(ss, line.lam, coarse)
    probe_val = float(np.max(vals))
    probe_omega = float(coarse[int(np.argmax(vals))])
    est = max(probe_val, d)
    if est == 0.0:
        return NormResult(
            value=0.0, method="bisection", peak_frequency=0.0, tolerance=tol, bracket=(0.0, 0.0)
        )

    cross_omegas: list[np.ndarray] = []

    def crossing(gamma: float) -> bool:
        H = build_hamiltonian(ss, gamma, line).matrix
        state, w = _crossing_state(H)
        if state == "ambiguous":
            votes = []
            for g in (gamma * (1.0 - 1e-6), gamma * (1.0 + 1e-6)):
                s2, w2 = _crossing_state(build_hamiltonian(ss, g, line).matrix)
                votes.append(s2 == "cross" or s2 == "ambiguous")
                if votes[-1]:
                    w = w2
            state = "cross" if any(votes) else "clear"
        if state == "cross":
            scale = max(1.0, float(np.linalg.norm(H)))
            cross_omegas.append(w.imag[np.abs(w.real) <= 3.0 * TAU_HAM * scale])
            return True
        return False

    def feasible(gamma: float) -> bool:
        if crossing(gamma):
            return False
        return gamma > probe_val

    lo = max(d * (1.0 + 1e-9), 0.99 * est)
    hi = 2.0 * est + 1.0
    doublings = 0
    while not feasible(hi):
        lo = hi
        hi *= 2.0
        doublings += 1
        if doublings > 50:
            raise NumericalFailure("bisection could not find a feasible upper level")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    value = 0.5 * (lo + hi)

    if cross_omegas:
        cands = np.abs(np.concatenate(cross_omegas))
        mags = _ss_line_mag(ss, line.lam, cands)
        peak = float(cands[int(np.argmax(mags))])
    elif d >= probe_val and ss.D[0, 0] != 0.0:
        peak = math.inf
    else:
        peak = probe_omega
    return NormResult(
        value=value,
        method="bisection",
        peak_frequency=peak,
        tolerance=tol,
        bracket=(lo, hi),
    )


def singular_value_test(
    ss: StateSpace, gamma: float, omega0: float, line: Line
) -> bool:
    """Whether gamma is attained as |G(-lam + i omega0)| according to the
    Hamiltonian criterion: the shifted test matrix is singular at i omega0."""
    require_siso(ss, "singular_value_test")
    if not math.isfinite(omega0):
        raise InvalidInput("test frequency must be finite")
    H = build_hamiltonian(ss, gamma, line).matrix
    M = H - 1j * omega0 * np.eye(H.shape[0])
    smin = float(np.linalg.svd(M, compute_uv=False)[-1])
    return smin <= TAU_HAM * max(1.0, float(np.linalg.norm(H)))


def _line_norm(G: RationalFunction, line: Line, method: str, tol: float) -> NormResult:
    if method == "grid":
        return line_norm_grid(G, line)
    if method == "bisection":
        return line_norm_bisection(G, line, tol)
    raise InvalidInput("unknown method %r (expected 'grid' or 'bisection')" % method)


def strip_norm(
    G: RationalFunction, strip: Strip, method: str = "bisection", tol: float = 1e-6
) -> NormResult:
    """Supremum of |G| over a strip with no poles in its closure.

    Computed as the max of the two boundary line norms; a 5 x 5 interior
    sample grid then cross-checks the boundary-maximum principle to within
    maxmod_slack of the reported value.
    """
    if not G.is_proper:
        raise ImproperTransferFunction("|G| is unbounded on every vertical strip")
    pole_partition(G, strip)
    lo_res = _line_norm(G, strip.lower_line, method, tol)
    hi_res = _line_norm(G, strip.upper_line, method, tol)
    if lo_res.value >= hi_res.value:
        attaining, att_res = "lo", lo_res
    else:
        attaining, att_res = "hi", hi_res
    value = att_res.value

    peaks = [
        r.peak_frequency
        for r in (lo_res, hi_res)
        if math.isfinite(r.peak_frequency) and r.peak_frequency > 0
    ]
    base = max(peaks) if peaks else 1.0
    omegas = np.unique(np.array([0.0, 0.5 * base, base, 2.0 * base, 4.0 * base]))
    slack = maxmod_slack(value)
    for lam in strip.interior_rates(5):
        mags = _magnitudes(G, lam, omegas)
        worst = float(np.max(mags))
        if worst > value + slack:
            raise NumericalFailure(
                "interior magnitude %.6g exceeds boundary maximum %.6g at rate %g"
                % (worst, value, lam)
            )
    return NormResult(
        value=value,
        method=method,
        peak_frequency=att_res.peak_frequency,
        tolerance=att_res.tolerance,
        bracket=att_res.bracket,
        attaining_boundary=attaining,
        boundary_values=(lo_res.value, hi_res.value),
    )


def h2_line_norm(G: RationalFunction, line: Line) -> float:
    """Energy (L2) norm of G along a vertical line via split Gramians.

    The shifted system is separated into the stable part (integrated forward)
    and the antistable part (integrated backward); each contributes a
    controllability-Gramian term, and the two time supports are disjoint so
    there is no cross term.
    """
    if G.is_zero:
        return 0.0
    if not G.is_strictly_proper:
        raise DivergentIntegral("line energy norm diverges unless strictly proper")
    _line_pole_guard(G, line)
    ss = realize(G)
    shifted = StateSpace(ss.A + line.lam * np.eye(ss.n), ss.B, ss.C, ss.D)
    split = modal_split(shifted, Line(0.0))
    total = 0.0
    minus = split.minus
    if minus.n:
        P = matkernel.lyap_solve(minus.A.T, minus.B @ minus.B.T)
        total += float((minus.C @ P @ minus.C.T)[0, 0])
    plus = split.plus
    if plus.n:
        P = matkernel.lyap_solve(-plus.A.T, plus.B @ plus.B.T)
        total += float((plus.C @ P @ plus.C.T)[0, 0])
    if total < -1e-12:
        raise NumericalFailure("energy norm computed negative: %g" % total)
    return math.sqrt(max(total, 0.0))


def decompose_line(G: RationalFunction, line: Line):
    """Split G into the parts analytic right and left of a vertical line.

    Returns (g_minus, g_plus): g_minus collects the partial-fraction terms
    whose poles lie left of the line, g_plus those right of it; they sum back
    to G.
    """
    if not G.is_strictly_proper:
        raise ImproperTransferFunction("line decomposition needs a strictly proper G")
    _line_pole_guard(G, line)
    _, terms = partial_fractions(G)
    mterms = [t for t in terms if t.pole.real < -line.lam]
    pterms = [t for t in terms if t.pole.real > -line.lam]
    zero = Polynomial((0.0,))
    g_minus = recombine(zero, mterms) if mterms else RationalFunction([0.0], [1.0])
    g_plus = recombine(zero, pterms) if pterms else RationalFunction([0.0], [1.0])
    return g_minus, g_plus


def frequency_response_data(
    G: RationalFunction, line: Line, omegas, uncertainty: float = 0.0
) -> np.ndarray:
    """Tabulate G along a line: rows (omega, re, im, mag, uncertainty * mag)."""
    if uncertainty < 0:
        raise InvalidInput("uncertainty scale must be >= 0")
    _line_pole_guard(G, line)
    w = np.asarray(omegas, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise InvalidInput("omegas must be a non-empty 1-D array")
    if not np.all(np.isfinite(w)):
        raise InvalidInput("omegas must be finite")
    z = G.eval_unchecked(-line.lam + 1j * w)
    mag = np.abs(z)
    return np.column_stack([w, z.real, z.imag, mag, uncertainty * mag])
