"""Dominance certificates and exponentially weighted gain bounds.

A system is p-dominant at rate lam when exactly p eigenvalues of A + lam I
lie in the open right half plane; the certificate is a symmetric P with p
negative and n - p positive eigenvalues making A'P + PA + 2 lam P strictly
negative.  Gains at rate lam bound the weighted input-output map and combine
across a feedback loop by the small-gain product test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla

from . import matkernel
from .errors import (
    IllPosed,
    InvalidInput,
    MarginalRate,
    NotPDominant,
    NotPDominantAtSlope,
    NumericalFailure,
)
from .rational import RationalFunction
from .regions import Line, Strip
from .statespace import StateSpace, realize, require_siso
from .stripnorm import (
    _ss_line_mag,
    build_hamiltonian,
    line_norm_bisection,
    maxmod_slack,
)

TAU_LINE = 1e-8
TAU_INERTIA = 1e-8


class Inertia(NamedTuple):
    negative: int
    zero: int
    positive: int


def inertia(M) -> Inertia:
    """Signature of a symmetric matrix with a scale-relative zero band."""
    A = matkernel.as_square_matrix(M, "M")
    if A.shape[0] == 0:
        return Inertia(0, 0, 0)
    w = matkernel.sym_eig(A)
    tol = TAU_INERTIA * max(1.0, float(np.max(np.abs(w))))
    neg = int(np.count_nonzero(w < -tol))
    pos = int(np.count_nonzero(w > tol))
    return Inertia(neg, len(w) - neg - pos, pos)


@dataclass(frozen=True)
class DominanceCertificate:
    """Symmetric certificate for p-dominance at a rate."""

    P: np.ndarray
    epsilon: float
    lmi_residual: float
    p: int
    rate: float


def _shifted(ss: StateSpace, lam: float) -> np.ndarray:
    return ss.A + lam * np.eye(ss.n)


def dominance_check(ss: StateSpace, p: int, rate: float) -> DominanceCertificate:
    """Verify p-dominance at the given rate and build a certificate.

    Counts eigenvalues of A + rate*I right of the imaginary axis (an
    eigenvalue numerically on the axis raises MarginalRate, a count other
    than p raises NotPDominant) and assembles P from Lyapunov solutions of
    the two split blocks.
    """
    if not isinstance(ss, StateSpace):
        raise InvalidInput("dominance_check expects a StateSpace")
    if p < 0 or p > ss.n:
        raise InvalidInput("p must lie in [0, %d], got %d" % (ss.n, p))
    if not math.isfinite(rate) or rate < 0:
        raise InvalidInput("rate must be finite and >= 0")
    n = ss.n
    if n == 0:
        if p != 0:
            raise NotPDominant("static system has no dynamic modes", expected=p, actual=0)
        return DominanceCertificate(
            P=np.zeros((0, 0)), epsilon=0.0, lmi_residual=0.0, p=0, rate=rate
        )
    At = _shifted(ss, rate)
    eigs = matkernel.eig(At)
    for mu in eigs:
        if abs(mu.real) <= TAU_LINE * (1.0 + abs(mu.real)):
            raise MarginalRate(
                "eigenvalue %s of the shifted matrix sits on the axis; "
                "dominance at rate %g is marginal" % (mu, rate)
            )
    count = int(np.count_nonzero(eigs.real > 0))
    if count != p:
        raise NotPDominant(
            "expected %d eigenvalues right of the shifted axis, found %d" % (p, count),
            expected=p,
            actual=count,
        )
    T, A_plus, A_minus, psplit = matkernel.split_spectrum(At, 0.0, 0.0, TAU_LINE)
    if psplit != p:
        raise NumericalFailure("spectral split disagrees with eigenvalue count")
    blocks = []
    if p:
        P_plus = matkernel.lyap_solve(A_plus, -np.eye(p))
        blocks.append(-P_plus)
    if n - p:
        P_minus = matkernel.lyap_solve(A_minus, np.eye(n - p))
        blocks.append(P_minus)
    P_tilde = sla.block_diag(*blocks) if blocks else np.zeros((0, 0))
    Ti = np.linalg.inv(T)
    P = Ti.T @ P_tilde @ Ti
    P = 0.5 * (P + P.T)
    M0 = At.T @ P + P @ At
    M0 = 0.5 * (M0 + M0.T)
    mu_max = float(matkernel.sym_eig(M0)[-1])
    if mu_max >= 0:
        raise NumericalFailure("certificate residual is not negative: %g" % mu_max)
    eps = 0.5 * (-mu_max)
    residual = float(matkernel.sym_eig(M0 + eps * np.eye(n))[-1])
    sig = inertia(P)
    if sig != Inertia(p, 0, n - p):
        raise NumericalFailure(
            "certificate inertia %r does not match (%d, 0, %d)" % (sig, p, n - p)
        )
    if residual > 0:
        raise NumericalFailure("strict certificate residual is positive: %g" % residual)
    return DominanceCertificate(
        P=P, epsilon=eps, lmi_residual=residual, p=p, rate=rate
    )


@dataclass(frozen=True)
class GainLmiReport:
    """Largest eigenvalue of the gain matrix inequality plus the P signature."""

    residual: float
    p_inertia: Inertia

    @property
    def valid(self) -> bool:
        return self.residual <= 0.0


def verify_gain_lmi(
    ss: StateSpace, P, gamma: float, rate: float, eps: float = 0.0
) -> GainLmiReport:
    """Assemble the gain certificate inequality and report its largest
    eigenvalue (negative means P certifies the level gamma at this rate)."""
    Pm = matkernel.as_square_matrix(P, "P")
    if Pm.shape[0] != ss.n:
        raise InvalidInput("P must be %d x %d" % (ss.n, ss.n))
    if gamma < 0 or eps < 0:
        raise InvalidInput("gamma and eps must be >= 0")
    At = _shifted(ss, rate)
    m = ss.n_inputs
    TL = At.T @ Pm + Pm @ At + eps * np.eye(ss.n) + ss.C.T @ ss.C
    TR = Pm @ ss.B + ss.C.T @ ss.D
    BR = ss.D.T @ ss.D - gamma * gamma * np.eye(m)
    M = np.block([[TL, TR], [TR.T, BR]])
    M = 0.5 * (M + M.T)
    residual = float(matkernel.sym_eig(M)[-1])
    return GainLmiReport(residual=residual, p_inertia=inertia(Pm) if ss.n else Inertia(0, 0, 0))


@dataclass(frozen=True)
class GainCertificate:
    """Weighted-gain bound at one rate (or the worse of a strip's two edges).

    ``P`` (optional) certifies the slightly inflated level
    ``certified_gamma`` through the gain matrix inequality.
    """

    gamma: float
    rate: float
    p: int
    P: np.ndarray | None = None
    epsilon: float = 0.0
    lmi_residual: float | None = None
    certified_gamma: float | None = None
    bracket: tuple[float, float] | None = None
    boundary_gammas: tuple[float, float] | None = None


def _riccati_certificate(
    ss: StateSpace,
    gamma: float,
    line: Line,
    tol: float,
    p: int,
    gamma_hi: float | None = None,
):
    """Try to build a gain certificate P from the Hamiltonian's stable
    invariant subspace at an inflated level; return None when it cannot be
    completed reliably.

    Two ladders guard the construction.  The exact subspace solution at the
    build level leaves the certificate matrix only negative semidefinite
    (level inflation adds margin in the rank-one input direction alone), so
    the output weight is regularized to C^T C + eta I before extracting P
    and eta is walked down until the strict inequality verifies.  When the
    build level itself sits too close to the supremum for the subspace to be
    computed accurately, the inflation factor is walked up instead; the
    certified level is always reported, never assumed.
    """
    n = ss.n
    d = abs(float(ss.D[0, 0]))
    # The bisection bracket is an absolute enclosure, so for small gains the
    # returned midpoint may miss the supremum by more than a relative bump;
    # build from the bracket top when it is available.
    base_gamma = max(gamma, gamma_hi) if gamma_hi is not None else gamma
    c_scale = max(1.0, float(np.linalg.norm(ss.C) ** 2))
    for inflation in (10.0 * tol, 1e-4, 1e-3):
        gamma_build = base_gamma * (1.0 + inflation)
        if gamma_build <= d * (1.0 + 1e-9) or gamma_build <= 0.0:
            continue
        try:
            H0 = build_hamiltonian(ss, gamma_build, line).matrix
        except (InvalidInput, NumericalFailure, ValueError):
            continue
        R = d * d - gamma_build * gamma_build
        cert_gamma = gamma_build * (1.0 + inflation)
        for eta_rel in (tol, 1e-8, 1e-10):
            eta = eta_rel * c_scale
            H = H0.copy()
            H[n:, :n] += (gamma_build / R) * eta * np.eye(n)
            try:
                _, Z, sdim = sla.schur(H, output="real", sort=lambda re, im: re < 0)
            except (NumericalFailure, ValueError):
                continue
            if sdim != n:
                continue
            X1 = Z[:n, :n]
            X2 = Z[n:, :n]
            if np.linalg.cond(X1) > 1e10:
                continue
            P = gamma_build * (X2 @ np.linalg.inv(X1))
            P = 0.5 * (P + P.T)
            base = verify_gain_lmi(ss, P, cert_gamma, line.lam, 0.0)
            if base.residual >= 0 or base.p_inertia != Inertia(p, 0, n - p):
                continue
            eps = 0.5 * (-base.residual)
            strict = verify_gain_lmi(ss, P, cert_gamma, line.lam, eps)
            if strict.residual > 0:
                continue
            return P, eps, strict.residual, cert_gamma
    return None


def l2p_gain(
    system: StateSpace | RationalFunction,
    p: int,
    line: Line,
    tol: float = 1e-6,
    with_certificate: bool = False,
) -> GainCertificate:
    """Weighted gain of a p-dominant system at one rate.

    Dominance at the rate is checked first; the gain itself equals the
    supremum of |G| on the line, computed by Hamiltonian bisection.
    """
    ss = realize(system) if isinstance(system, RationalFunction) else system
    require_siso(ss, "l2p_gain")
    dominance_check(ss, p, line.lam)
    res = line_norm_bisection(ss, line, tol)
    P = None
    eps = 0.0
    lmi_residual = None
    cert_gamma = None
    if with_certificate and ss.n > 0 and res.value > 0:
        hi = res.bracket[1] if res.bracket is not None else None
        built = _riccati_certificate(ss, res.value, line, tol, p, gamma_hi=hi)
        if built is not None:
            P, eps, lmi_residual, cert_gamma = built
    return GainCertificate(
        gamma=res.value,
        rate=line.lam,
        p=p,
        P=P,
        epsilon=eps,
        lmi_residual=lmi_residual,
        certified_gamma=cert_gamma,
        bracket=res.bracket,
    )


def strip_gain(
    system: StateSpace | RationalFunction,
    p: int,
    strip: Strip,
    tol: float = 1e-6,
    with_certificate: bool = False,
) -> GainCertificate:
    """Worst weighted gain over a rate interval (attained at an endpoint).

    Both endpoint rates must agree on p-dominance; five interior rates are
    spot-checked for the same dominance count and for gain consistency with
    the boundary maximum.
    """
    ss = realize(system) if isinstance(system, RationalFunction) else system
    require_siso(ss, "strip_gain")
    lo_cert = l2p_gain(ss, p, strip.lower_line, tol, with_certificate)
    hi_cert = l2p_gain(ss, p, strip.upper_line, tol, with_certificate)
    if lo_cert.gamma >= hi_cert.gamma:
        best = lo_cert
    else:
        best = hi_cert
    gamma = best.gamma
    slack = maxmod_slack(gamma)
    eigs = matkernel.eig(ss.A) if ss.n else np.zeros(0, dtype=complex)
    omegas = np.unique(
        np.concatenate(
            [
                np.array([0.0]),
                np.logspace(-3, 3, 64),
                np.abs(eigs.imag[np.abs(eigs.imag) > 0]),
            ]
        )
    )
    for lam in strip.interior_rates(5):
        dominance_check(ss, p, lam)
        worst = float(np.max(_ss_line_mag(ss, lam, omegas))) if ss.n else abs(
            float(ss.D[0, 0])
        )
        if worst > gamma + slack:
            raise NumericalFailure(
                "interior gain %.6g exceeds endpoint maximum %.6g at rate %g"
                % (worst, gamma, lam)
            )
    return GainCertificate(
        gamma=gamma,
        rate=best.rate,
        p=p,
        P=best.P,
        epsilon=best.epsilon,
        lmi_residual=best.lmi_residual,
        certified_gamma=best.certified_gamma,
        bracket=best.bracket,
        boundary_gammas=(lo_cert.gamma, hi_cert.gamma),
    )


def feedback_compose(ss1: StateSpace, ss2: StateSpace) -> StateSpace:
    """Negative feedback interconnection u1 = w - y2, u2 = y1.

    The returned system maps the injection w at the first subsystem's input
    to the first subsystem's output y1 over the stacked state (x1, x2).
    """
    if ss1.n_inputs != ss2.n_outputs or ss2.n_inputs != ss1.n_outputs:
        raise InvalidInput(
            "feedback dimensions mismatch: (%d in, %d out) against (%d in, %d out)"
            % (ss1.n_inputs, ss1.n_outputs, ss2.n_inputs, ss2.n_outputs)
        )
    A1, B1, C1, D1 = ss1.A, ss1.B, ss1.C, ss1.D
    A2, B2, C2, D2 = ss2.A, ss2.B, ss2.C, ss2.D
    q1 = ss1.n_outputs
    loop = np.eye(q1) + D1 @ D2
    if np.linalg.cond(loop) > 1e12:
        raise IllPosed("algebraic loop I + D1 D2 is singular")
    Phi = np.linalg.inv(loop)
    n1, n2 = ss1.n, ss2.n
    K = np.eye(ss1.n_inputs) - D2 @ Phi @ D1  # equals inv(I + D2 D1)
    A = np.block(
        [
            [A1 - B1 @ D2 @ Phi @ C1, -B1 @ K @ C2],
            [B2 @ Phi @ C1, A2 - B2 @ Phi @ D1 @ C2],
        ]
    )
    B = np.vstack([B1 @ K, B2 @ Phi @ D1])
    C = np.hstack([Phi @ C1, -Phi @ D1 @ C2])
    D = Phi @ D1
    return StateSpace(A, B, C, D)


@dataclass(frozen=True)
class SmallGainReport:
    """Outcome of the feedback gain product test."""

    gamma1: float
    gamma2: float
    product: float
    conclusive: bool
    closed_p: int | None
    certificate_lo: DominanceCertificate | None
    certificate_hi: DominanceCertificate | None
    message: str


def small_gain_check(
    ss1: StateSpace,
    p1: int,
    ss2: StateSpace,
    p2: int,
    strip: Strip,
    tol: float = 1e-6,
) -> SmallGainReport:
    """Certify (p1 + p2)-dominance of a negative feedback loop.

    When the product of the two strip gains is below one, the closed loop is
    checked for p1 + p2 dominance at both boundary rates and the certificates
    are returned; a product at or above one yields a report marked
    inconclusive (the test proves nothing either way).
    """
    g1 = strip_gain(ss1, p1, strip, tol)
    g2 = strip_gain(ss2, p2, strip, tol)
    product = g1.gamma * g2.gamma
    if product >= 1.0:
        return SmallGainReport(
            gamma1=g1.gamma,
            gamma2=g2.gamma,
            product=product,
            conclusive=False,
            closed_p=None,
            certificate_lo=None,
            certificate_hi=None,
            message="gain product %.6g >= 1; small-gain test is inconclusive" % product,
        )
    closed = feedback_compose(ss1, ss2)
    cert_lo = dominance_check(closed, p1 + p2, strip.lo)
    cert_hi = dominance_check(closed, p1 + p2, strip.hi)
    return SmallGainReport(
        gamma1=g1.gamma,
        gamma2=g2.gamma,
        product=product,
        conclusive=True,
        closed_p=p1 + p2,
        certificate_lo=cert_lo,
        certificate_hi=cert_hi,
        message="closed loop is %d-dominant on both boundary rates" % (p1 + p2),
    )


def classify_attractors(p: int) -> str:
    """Qualitative limit-set description license for a p-dominant system."""
    if p < 0:
        raise InvalidInput("p must be >= 0")
    if p == 0:
        return "unique equilibrium point"
    if p == 1:
        return "a (possibly non-unique) equilibrium point"
    if p == 2:
        return "an equilibrium point, a set of equilibria with connected arcs, or a limit cycle"
    return "no classification available"


@dataclass(frozen=True)
class SlopeLoop:
    """Static-nonlinearity loop: linear path from the nonlinearity output
    (plus injection) back to its input, and the admissible slope interval."""

    linear: StateSpace
    slope_lo: float
    slope_hi: float

    def __post_init__(self):
        if not (math.isfinite(self.slope_lo) and math.isfinite(self.slope_hi)):
            raise InvalidInput("slope bounds must be finite")
        if self.slope_lo > self.slope_hi:
            raise InvalidInput("slope interval is empty")


def _minus_one() -> StateSpace:
    return StateSpace(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[-1.0]])


def slope_closed_loop(loop: SlopeLoop, slope: float) -> StateSpace:
    """Loop linearized at one slope: injection-to-nonlinearity-output map."""
    L = loop.linear
    scaled = StateSpace(L.A, L.B, slope * L.C, slope * L.D)
    return feedback_compose(scaled, _minus_one())


@dataclass(frozen=True)
class SectorGainResult:
    """Worst gain over a sampled slope interval."""

    gamma: float
    slope_at_max: float
    evaluations: tuple[tuple[float, float], ...]


def sector_slope_gain(
    loop: SlopeLoop,
    p: int,
    line: Line,
    tol: float = 1e-6,
    n_slopes: int = 11,
) -> SectorGainResult:
    """Largest weighted gain of the slope-linearized loop over a slope grid.

    Every sampled slope must keep the closed loop p-dominant at the rate;
    a failing slope raises NotPDominantAtSlope.  The returned gamma is the
    max of the per-slope gains (the slope grid stands in for a continuous
    sector search).
    """
    require_siso(loop.linear, "sector_slope_gain")
    if n_slopes < 1:
        raise InvalidInput("n_slopes must be >= 1")
    if loop.slope_lo == loop.slope_hi:
        slopes = np.array([loop.slope_lo])
    else:
        slopes = np.linspace(loop.slope_lo, loop.slope_hi, n_slopes)
    evaluations = []
    best_gamma = -1.0
    best_slope = slopes[0]
    for slope in slopes:
        closed = slope_closed_loop(loop, float(slope))
        try:
            dominance_check(closed, p, line.lam)
        except NotPDominant as exc:
            raise NotPDominantAtSlope(
                "closed loop at slope %g is not %d-dominant at rate %g (%s)"
                % (slope, p, line.lam, exc),
                slope=float(slope),
                expected=p,
                actual=exc.actual,
            ) from exc
        res = line_norm_bisection(closed, line, tol)
        evaluations.append((float(slope), res.value))
        if res.value > best_gamma:
            best_gamma = res.value
            best_slope = float(slope)
    return SectorGainResult(
        gamma=best_gamma, slope_at_max=best_slope, evaluations=tuple(evaluations)
    )
