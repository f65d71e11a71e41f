"""Rational and trigonometric graded R-matrices and their properties.

Both kinds share the structure

    R(u) = sum_AB f_AB(u) e_AA (x) e_BB + g_AB(u) e_AB (x) e_BA

with the gl(m|n) / U_q(gl(m|n)) Boltzmann weights

    trigonometric: f_AB = sinh(u),  f_AA = sinh(u + i*eta - 2i*eta*p(A)),
                   g_AA = 0,        g_AB = (-1)^p(B) sinh(i*eta) e^{sgn(B-A) u}
    rational:      f_AB = u,        f_AA = u + i(-1)^p(A),
                   g_AA = 0,        g_AB = i(-1)^p(B)

so that the rational R(u) equals u*Id + i*P with P the graded permutation.
The rational kind is the eta -> 0 limit of R_trig(eta*u)/eta.

Verified properties: the graded Yang-Baxter equation, unitarity,
PT-symmetry, cross-unitarity with the diagonal crossing matrix M, and
[R, M (x) M] = 0.  Scalar right-hand sides for the rational kind are the
same eta -> 0 limits (confirmed here by the vanishing residuals):
unitarity scalar (i - u)(i + u), cross-unitarity scalar u(-u - i*Delta)
with shift -u - i*Delta and M = diag((-1)^p(A)).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .supermatrix import (
    GradingProfile,
    SuperMatrix,
    gkron,
    graded_permutation,
    st1,
    st2,
)

RATIONAL = "rational"
TRIG = "trig"

#: sampling box half-width for spectral parameters and minimal distance
#: kept from Boltzmann-weight zeros
SAMPLE_BOX = 1.0
ZERO_GUARD = 1e-3


class SingularWeightError(ValueError):
    """A required Boltzmann weight is (numerically) singular at this point."""


@dataclass(frozen=True)
class RMatrixSpec:
    kind: str
    profile: GradingProfile
    eta: complex = 0.0
    # optional single-weight corruption ("f"|"g", A, B, amount), used by
    # negative controls
    perturb: tuple = None

    def __post_init__(self):
        if self.kind not in (RATIONAL, TRIG):
            raise ValueError(f"unknown R-matrix kind {self.kind!r}")
        if self.kind == TRIG and abs(cmath.sinh(1j * complex(self.eta))) == 0.0:
            raise ValueError("trigonometric kind needs sinh(i*eta) != 0")

    @property
    def eta_eff(self):
        """Crossing parameter: eta for trig, 1 for the rational limit."""
        return complex(self.eta) if self.kind == TRIG else 1.0 + 0j

    def perturbed(self, which, A, B, amount):
        return RMatrixSpec(self.kind, self.profile, self.eta, (which, A, B, amount))


def f_weight(spec, A, B, u):
    p = spec.profile.parity
    if spec.kind == TRIG:
        if A == B:
            val = cmath.sinh(u + 1j * spec.eta * (1 - 2 * p(A)))
        else:
            val = cmath.sinh(u)
    else:
        val = u + (1j if A == B and p(A) == 0 else 0)
        if A == B and p(A) == 1:
            val = u - 1j
    if spec.perturb is not None and spec.perturb[:3] == ("f", A, B):
        val += spec.perturb[3]
    return val


def g_weight(spec, A, B, u):
    if A == B:
        return 0j
    p = spec.profile.parity
    if spec.kind == TRIG:
        sgn = 1 if B > A else -1
        val = (-1) ** p(B) * cmath.sinh(1j * spec.eta) * cmath.exp(sgn * u)
    else:
        val = 1j * (-1) ** p(B)
    if spec.perturb is not None and spec.perturb[:3] == ("g", A, B):
        val += spec.perturb[3]
    return val


def ghat_weight(spec, A, B, u):
    """g with the graded-embedding sign, (-1)^{p(B)[p(A)+p(B)]} g_AB."""
    p = spec.profile.parity
    return (-1) ** (p(B) * (p(A) + p(B))) * g_weight(spec, A, B, u)


def eval_r(spec, lam):
    """R(lam) as an order-2 SuperMatrix with purely scalar entries."""
    d = spec.profile.dim
    arr = np.zeros((d * d, d * d), dtype=complex)
    for A in range(1, d + 1):
        for B in range(1, d + 1):
            row = (A - 1) * d + (B - 1)
            arr[row, row] += f_weight(spec, A, B, lam)
            col = (B - 1) * d + (A - 1)
            arr[row, col] += ghat_weight(spec, A, B, lam)
    return SuperMatrix(spec.profile, 2, None, {0: arr})


def r12_r21(spec, lam):
    """(R12(lam), R21(lam)) with R21 = P R12 P."""
    R = eval_r(spec, lam)
    P = graded_permutation(spec.profile)
    return R, P @ R @ P


def ybe_residual(spec, lam, mu, permutation=None):
    """Relative norm of R12(l)R13(l+m)R23(m) - R23(m)R13(l+m)R12(l).

    ``permutation`` overrides the graded permutation used to build the
    13-embedding (negative controls pass the ungraded one).
    """
    prof = spec.profile
    I1 = SuperMatrix.identity(prof, 1)
    P = permutation if permutation is not None else graded_permutation(prof)
    IP = gkron(I1, P)
    R12 = gkron(eval_r(spec, lam), I1)
    R23 = gkron(I1, eval_r(spec, mu))
    R13 = IP @ gkron(eval_r(spec, lam + mu), I1) @ IP
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    scale = max(R12.norm(), R13.norm(), R23.norm()) ** 3
    return (lhs - rhs).norm() / scale


def ungraded_permutation(profile):
    """Plain permutation matrix (all +1), for negative controls."""
    d = profile.dim
    arr = np.zeros((d * d, d * d), dtype=complex)
    for a in range(d):
        for b in range(d):
            arr[a * d + b, b * d + a] = 1.0
    return SuperMatrix(profile, 2, None, {0: arr})


def crossing_values(profile, eta_eff, kind):
    """Diagonal entries M_A of the crossing matrix.

    Trigonometric: M_A = e^{2i*eta(1-A)} on the bosonic block and
    -e^{2i*eta(A-2m)} on the fermionic one; the rational kind uses the
    eta -> 0 limit diag(1,...,1,-1,...,-1)."""
    m = profile.m
    vals = []
    for A in range(1, profile.dim + 1):
        if kind == RATIONAL:
            vals.append(1.0 + 0j if A <= m else -1.0 + 0j)
        elif A <= m:
            vals.append(cmath.exp(2j * eta_eff * (1 - A)))
        else:
            vals.append(-cmath.exp(2j * eta_eff * (A - 2 * m)))
    return np.array(vals, dtype=complex)


def crossing_matrix(profile, eta, kind=TRIG):
    vals = crossing_values(profile, complex(eta), kind)
    return SuperMatrix(profile, 1, None, {0: np.diag(vals)})


def crossing_matrix_for(spec):
    return crossing_matrix(spec.profile, spec.eta_eff, spec.kind)


def _unitarity_scalar(spec, lam):
    if spec.kind == TRIG:
        return cmath.sinh(lam + 1j * spec.eta) * cmath.sinh(-lam + 1j * spec.eta)
    return (1j - lam) * (1j + lam)


def _cross_unitarity_scalar(spec, lam):
    shift = -lam - 1j * spec.profile.delta * spec.eta_eff
    if spec.kind == TRIG:
        return cmath.sinh(lam) * cmath.sinh(shift)
    return lam * shift


def property_suite(spec, samples=5, seed=42, tol=1e-10):
    """Residuals of unitarity, PT-symmetry, cross-unitarity and the
    crossing symmetry [R, M (x) M] = 0 over seeded sample points."""
    prof = spec.profile
    delta = prof.delta
    eye2 = SuperMatrix.identity(prof, 2)
    P = graded_permutation(prof)
    M = crossing_matrix_for(spec)
    Minv = SuperMatrix(
        prof, 1, None, {0: np.diag(1.0 / np.diag(M.scalar_array()))})
    M1 = gkron(M, SuperMatrix.identity(prof, 1))
    M1inv = gkron(Minv, SuperMatrix.identity(prof, 1))
    MM = gkron(M, M)

    sampler = SpectralSampler(spec, seed)
    out = {"unitarity": 0.0, "pt_symmetry": 0.0,
           "cross_unitarity": 0.0, "crossing_symmetry": 0.0}
    for _ in range(samples):
        shift_fn = lambda l, m: (-l - 1j * delta * spec.eta_eff,)
        lam, _ = sampler.draw_pair(extra_args=shift_fn)
        R, R21m = eval_r(spec, lam), None
        Rm = eval_r(spec, -lam)
        R21m = P @ Rm @ P
        # unitarity
        resid = (R @ R21m) - eye2.scale(_unitarity_scalar(spec, lam))
        out["unitarity"] = max(out["unitarity"],
                               resid.norm() / (R.norm() * Rm.norm()))
        # PT-symmetry
        resid = (P @ R @ P) - st2(st1(R))
        out["pt_symmetry"] = max(out["pt_symmetry"], resid.norm() / R.norm())
        # cross-unitarity
        nu = -lam - 1j * delta * spec.eta_eff
        Rnu = eval_r(spec, nu)
        lhs = st1(R) @ M1 @ st2(Rnu) @ M1inv
        resid = lhs - eye2.scale(_cross_unitarity_scalar(spec, lam))
        out["cross_unitarity"] = max(out["cross_unitarity"],
                                     resid.norm() / (R.norm() * Rnu.norm()))
        # crossing symmetry
        resid = (R @ MM) - (MM @ R)
        out["crossing_symmetry"] = max(out["crossing_symmetry"],
                                       resid.norm() / (R.norm() * MM.norm()))
    return out


class SpectralSampler:
    """Seeded uniform draws of spectral parameters from the complex box
    [-1,1] x [-1,1]i, rejecting points too close to Boltzmann-weight zeros.

    ``extra_args(lam, mu)`` may return further evaluation arguments that
    must stay clear of the zeros (shifted reflection arguments etc.)."""

    def __init__(self, spec, seed=42):
        self.spec = spec
        self.rng = np.random.default_rng(seed)

    def _draw_complex(self):
        re, im = self.rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, size=2)
        return complex(re, im)

    def _is_clear(self, z):
        spec = self.spec
        if spec.kind == TRIG:
            probes = (cmath.sinh(z),
                      cmath.sinh(z + 1j * spec.eta),
                      cmath.sinh(z - 1j * spec.eta))
            return all(abs(p) > ZERO_GUARD for p in probes)
        return abs(z) > ZERO_GUARD

    def draw(self, extra_args=None):
        lam, _ = self.draw_pair(extra_args=extra_args)
        return lam

    def draw_pair(self, extra_args=None):
        for _ in range(1000):
            lam = self._draw_complex()
            mu = self._draw_complex()
            args = [lam, mu, lam - mu, lam + mu]
            if extra_args is not None:
                args.extend(extra_args(lam, mu))
            if all(self._is_clear(z) for z in args):
                return lam, mu
        raise SingularWeightError("could not sample away from weight zeros")
