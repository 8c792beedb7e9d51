"""Stockwell transform on a finite Gelfand pair.

Coefficients live on G x S+ with the product of counting measure and the
Plancherel weights.  The atom indexed by (t, phi) is

    theta_{alpha,phi,t}(x) = delta_alpha^(1/2) phi(x) theta(alpha(t^-1 x))

and the transform of f is the array of inner products <f, atom>.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import (
    DimensionMismatch,
    GelfandError,
    NotAUnit,
    WindowNotUnit,
    ZeroWindow,
)
from .groups import FiniteGroup, GroupAutomorphism, bi_invariant_project
from .spherical import GelfandPair, SphericalDual, require_bi_invariant

FACTORIZATION_TOL = 1e-12
UNIT_TOL = 1e-12


class FactorizationMismatch(GelfandError):
    """Direct coefficient formula disagrees with the operator factorization."""


@dataclass(frozen=True, eq=False)
class Window:
    values: np.ndarray
    l2norm: float
    bi_invariant: bool = True

    def normalized(self) -> "Window":
        if self.l2norm == 0:
            raise ZeroWindow("cannot normalize the zero window")
        return Window(self.values / self.l2norm, 1.0)


def make_window(pair: GelfandPair, values) -> Window:
    """Validate a bi-invariant window (raises NotBiInvariant otherwise)."""
    values = require_bi_invariant(pair, values, name="window").copy()
    values.setflags(write=False)
    return Window(values, float(np.linalg.norm(values)))


def _window(pair, theta):
    if isinstance(theta, Window):
        return theta
    return make_window(pair, theta)


def modulation(phi, f) -> np.ndarray:
    """(M_phi f)(x) = phi(x) f(x)."""
    phi = getattr(phi, "values", phi)
    return np.asarray(phi) * np.asarray(f)


def translation(group: FiniteGroup, t: int, f) -> np.ndarray:
    """(T_t f)(x) = f(t^-1 x)."""
    return np.asarray(f)[group.mul[group.inv[t]]]


def dilation(aut: GroupAutomorphism, f) -> np.ndarray:
    """(D_alpha f)(x) = delta_alpha^(1/2) f(alpha(x))."""
    return np.sqrt(aut.delta_alpha) * np.asarray(f)[aut.perm]


def atom(pair: GelfandPair, phi, t: int, theta, aut: GroupAutomorphism) -> np.ndarray:
    """M_phi T_t D_alpha theta, built from the three operators."""
    theta = _window(pair, theta)
    return modulation(phi, translation(pair.group, t, dilation(aut, theta.values)))


def shifted_windows(pair: GelfandPair, theta, aut: GroupAutomorphism) -> np.ndarray:
    """Row t holds x -> delta^(1/2) theta(alpha(t^-1 x))."""
    theta = _window(pair, theta)
    g = pair.group
    idx = aut.perm[g.mul[g.inv]]
    return np.sqrt(aut.delta_alpha) * theta.values[idx]


def atoms(pair: GelfandPair, dual: SphericalDual, theta, aut: GroupAutomorphism) -> np.ndarray:
    """All atoms as an array indexed [t, phi, x]."""
    return shifted_windows(pair, theta, aut)[:, None, :] * dual.table[None, :, :]


@dataclass(frozen=True, eq=False)
class TimePhaseCoefficients:
    matrix: np.ndarray  # [t, phi]
    weights: np.ndarray  # Plancherel weight per phi column

    def inner(self, other) -> complex:
        other = getattr(other, "matrix", other)
        return complex(np.sum(self.weights[None, :] * self.matrix * np.conj(other)))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.weights[None, :] * np.abs(self.matrix) ** 2)))

    def sup(self) -> float:
        return float(np.max(np.abs(self.matrix))) if self.matrix.size else 0.0

    @property
    def shape(self):
        return self.matrix.shape


def stockwell_forward(pair: GelfandPair, dual: SphericalDual, f, theta, aut: GroupAutomorphism,
                      verify: bool = True) -> TimePhaseCoefficients:
    """S f(t, phi) = delta^(1/2) sum_x f(x) conj(phi(x) theta(alpha(t^-1 x))).

    With ``verify`` the result is compared against inner products with
    explicitly built atoms and FactorizationMismatch is raised on disagreement.
    """
    f = require_bi_invariant(pair, f)
    theta = _window(pair, theta)
    shifted = shifted_windows(pair, theta, aut)
    coeffs = (np.conj(shifted) * f[None, :]) @ np.conj(dual.table).T
    if verify:
        other = np.einsum("tpx,x->tp", np.conj(atoms(pair, dual, theta, aut)), f)
        scale = max(1.0, float(np.linalg.norm(f)) * theta.l2norm)
        err = float(np.max(np.abs(coeffs - other))) if coeffs.size else 0.0
        if err > FACTORIZATION_TOL * scale:
            raise FactorizationMismatch("coefficient paths differ by %.3e" % err)
    return TimePhaseCoefficients(coeffs, dual.mu)


def synthesize_raw(pair: GelfandPair, dual: SphericalDual, c, theta, aut: GroupAutomorphism) -> np.ndarray:
    """Unprojected inversion sum (may leave the bi-invariant subspace)."""
    theta = _window(pair, theta)
    if theta.l2norm == 0:
        raise ZeroWindow("inversion needs a window with nonzero L2 norm")
    c = np.asarray(getattr(c, "matrix", c), dtype=complex)
    if c.shape != (pair.order, dual.size):
        raise DimensionMismatch("coefficients have shape %s, expected %s" % (c.shape, (pair.order, dual.size)))
    shifted = shifted_windows(pair, theta, aut)
    # sum_t sum_phi mu c(t,phi) phi(x) theta(alpha(t^-1 x))
    weighted = (c * dual.mu[None, :]) @ dual.table
    return np.sum(weighted * shifted, axis=0) / theta.l2norm ** 2


def stockwell_inverse(pair: GelfandPair, dual: SphericalDual, c, theta, aut: GroupAutomorphism,
                      return_leakage: bool = False):
    """Invert coefficients and project onto bi-invariant signals.

    If ``return_leakage`` is true, also return the L2 norm of the part of the
    raw inversion sum removed by the projection.
    """
    raw = synthesize_raw(pair, dual, c, theta, aut)
    out = bi_invariant_project(pair, raw)
    if return_leakage:
        return out, float(np.linalg.norm(raw - out))
    return out


def class_basis(pair: GelfandPair) -> np.ndarray:
    """Columns: orthonormal class indicators 1_{C_j} / sqrt(|C_j|)."""
    sizes = pair.cosets.sizes
    basis = np.zeros((pair.order, len(sizes)))
    basis[np.arange(pair.order), pair.cosets.class_of] = 1.0
    return basis / np.sqrt(sizes)[None, :]


def transform_matrix(pair: GelfandPair, dual: SphericalDual, theta, aut: GroupAutomorphism) -> np.ndarray:
    """The transform as a matrix from orthonormal class coordinates to [t, phi] (flattened)."""
    a = atoms(pair, dual, theta, aut).reshape(-1, pair.order)
    return np.conj(a) @ class_basis(pair)


@dataclass(frozen=True, eq=False)
class ReproducingKernel:
    tensor: np.ndarray  # [t, phi, tau, psi]
    weights: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        n, m = self.tensor.shape[:2]
        return self.tensor.reshape(n * m, n * m)

    def reproduce(self, F) -> np.ndarray:
        """sum_tau sum_psi mu(psi) k(t, phi, tau, psi) F(tau, psi)."""
        F = np.asarray(getattr(F, "matrix", F))
        return np.einsum("abcd,d,cd->ab", self.tensor, self.weights, F)


def reproducing_kernel(pair: GelfandPair, dual: SphericalDual, theta, aut: GroupAutomorphism) -> ReproducingKernel:
    """k(t, phi, tau, psi) = conj(<atom(t, phi), atom(tau, psi)>) for a unit window."""
    theta = _window(pair, theta)
    if abs(theta.l2norm - 1.0) > UNIT_TOL:
        raise WindowNotUnit("kernel needs ||theta|| = 1, got %.15g" % theta.l2norm)
    a = atoms(pair, dual, theta, aut)
    flat = a.reshape(-1, pair.order)
    gram = flat @ np.conj(flat).T  # <a_i, a_j>
    n, m = a.shape[:2]
    return ReproducingKernel(np.conj(gram).reshape(n, m, n, m), dual.mu)


def classic_stransform(signal, window, multiplier: int) -> np.ndarray:
    """Stockwell transform on the cyclic group Z_N with dilation x -> multiplier * x.

    Returns the N x N matrix c[t, k] = sum_x f(x) conj(e^{2 pi i k x / N} theta(m (x - t))),
    computed directly from the formula.
    """
    f = np.asarray(signal, dtype=complex)
    theta = np.asarray(window, dtype=complex)
    n = len(f)
    if theta.shape != (n,):
        raise DimensionMismatch("window length %d differs from signal length %d" % (len(theta), n))
    if gcd(int(multiplier), n) != 1:
        raise NotAUnit("%d is not invertible modulo %d" % (multiplier, n))
    x = np.arange(n)
    chars = np.exp(2j * np.pi * np.outer(x, x) / n)  # [k, x]
    win = theta[(multiplier * (x[None, :] - x[:, None])) % n]  # [t, x]
    return (f[None, :] * np.conj(win)) @ np.conj(chars).T
