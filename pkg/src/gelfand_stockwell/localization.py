"""Localization operators driven by the Stockwell transform.

For a symbol u on G x S+ the operator sends f to

    sum_phi mu(phi) sum_t u(t, phi) (S f)(t, phi) atom(t, phi)

followed by projection onto bi-invariant signals.  Operators are stored as
matrices in the orthonormal class basis 1_{C_j} / sqrt(|C_j|), so matrix
norms are L2(G//K) operator norms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadExponent, DimensionMismatch, WindowNotUnit
from .groups import GroupAutomorphism
from .spherical import GelfandPair, SphericalDual, require_bi_invariant
from .stockwell import (
    UNIT_TOL,
    Window,
    _window,
    atoms,
    class_basis,
    stockwell_forward,
)

P_GRID = (1.25, 1.5, 2.5, 4.0, 8.0)


@dataclass(frozen=True, eq=False)
class SymbolFunction:
    values: np.ndarray  # [t, phi]
    weights: np.ndarray

    def norm(self, p) -> float:
        return symbol_norm(self.values, p, self.weights)


def symbol_norm(u, p, weights=None) -> float:
    """(sum_t sum_phi mu(phi) |u(t, phi)|^p)^(1/p); max |u| for p = inf."""
    if isinstance(u, SymbolFunction):
        u, weights = u.values, u.weights
    p = float(p)
    if not p >= 1:
        raise BadExponent("exponent must lie in [1, inf], got %r" % p)
    a = np.abs(np.asarray(u))
    if a.size == 0:
        return 0.0
    if np.isinf(p):
        return float(a.max())
    w = np.ones(a.shape[1]) if weights is None else np.asarray(weights)
    return float(np.sum(w[None, :] * a ** p) ** (1.0 / p))


@dataclass(frozen=True, eq=False)
class LocalizationOperator:
    matrix: np.ndarray  # class coordinates, orthonormal basis
    full: np.ndarray  # unprojected action on L2(G)
    leakage: float
    basis: np.ndarray = field(repr=False)
    symbol: np.ndarray = field(repr=False)
    window: Window = field(repr=False)
    automorphism: GroupAutomorphism = field(repr=False)

    def apply(self, f) -> np.ndarray:
        """Action on a bi-invariant signal given on the whole group."""
        coords = self.basis.T @ np.asarray(f, dtype=complex)
        return self.basis @ (self.matrix @ coords)

    def adjoint(self) -> np.ndarray:
        return self.matrix.conj().T


def _check_symbol(pair, dual, u):
    u = np.asarray(getattr(u, "values", u), dtype=complex)
    if u.shape != (pair.order, dual.size):
        raise DimensionMismatch("symbol has shape %s, expected %s" % (u.shape, (pair.order, dual.size)))
    return u


def localize_raw(pair: GelfandPair, dual: SphericalDual, u, theta, aut: GroupAutomorphism, f) -> np.ndarray:
    """The defining sum applied to one signal, before projection."""
    u = _check_symbol(pair, dual, u)
    coeffs = stockwell_forward(pair, dual, f, theta, aut, verify=False).matrix
    a = atoms(pair, dual, theta, aut)
    return np.einsum("p,tp,tpx->x", dual.mu, u * coeffs, a)


def build_localization(pair: GelfandPair, dual: SphericalDual, u, theta, aut: GroupAutomorphism) -> LocalizationOperator:
    """Assemble L^u on the orthonormal class basis.

    Column j is the defining sum applied to the j-th basis signal; the
    unprojected action on all of L2(G) is kept in ``full`` and the norm of
    what projection discards is kept in ``leakage``.
    """
    u = _check_symbol(pair, dual, u)
    theta = _window(pair, theta)
    basis = class_basis(pair)
    a = atoms(pair, dual, theta, aut).reshape(-1, pair.order)
    w = (dual.mu[None, :] * u).reshape(-1)
    coeffs = np.conj(a) @ basis  # transform of every basis signal, [(t, phi), j]
    raw = a.T @ (w[:, None] * coeffs)
    matrix = basis.T @ raw
    full = (a.T * w[None, :]) @ np.conj(a)
    leak = raw - basis @ matrix
    leakage = float(np.linalg.norm(leak, 2)) if leak.size else 0.0
    return LocalizationOperator(matrix=matrix, full=full, leakage=leakage, basis=basis,
                                symbol=u, window=theta, automorphism=aut)


def operator_norm(op) -> float:
    m = getattr(op, "matrix", op)
    return float(np.linalg.norm(m, 2))


def adjoint_check(pair: GelfandPair, dual: SphericalDual, u, theta, aut: GroupAutomorphism) -> float:
    """Spectral norm of (L^u)* - L^conj(u), both assembled independently."""
    u = _check_symbol(pair, dual, u)
    lu = build_localization(pair, dual, u, theta, aut)
    lbar = build_localization(pair, dual, np.conj(u), theta, aut)
    return float(np.linalg.norm(lu.adjoint() - lbar.matrix, 2))


def pairing(pair: GelfandPair, dual: SphericalDual, u, theta, aut: GroupAutomorphism, f, g) -> complex:
    """sum_phi mu(phi) sum_t u (S f) conj(S g), the form every bound is proved from."""
    u = _check_symbol(pair, dual, u)
    sf = stockwell_forward(pair, dual, f, theta, aut, verify=False).matrix
    sg = stockwell_forward(pair, dual, g, theta, aut, verify=False).matrix
    return complex(np.sum(dual.mu[None, :] * u * sf * np.conj(sg)))


@dataclass
class OperatorReport:
    operator_norm: float
    symbol_norms: dict
    bound_margins: dict
    adjoint_residual: float
    leakage: float

    def as_dict(self) -> dict:
        def key(p):
            return "inf" if np.isinf(p) else ("%g" % p)
        margins = dict(self.bound_margins)
        margins["4.5"] = {key(p): v for p, v in margins["4.5"].items()}
        return {
            "operator_norm": self.operator_norm,
            "symbol_norms": {key(p): v for p, v in self.symbol_norms.items()},
            "bound_margins": margins,
            "adjoint_residual": self.adjoint_residual,
            "bi_invariance_leakage": self.leakage,
        }


def bound_suite(pair: GelfandPair, dual: SphericalDual, u, theta, aut: GroupAutomorphism,
                p_grid=P_GRID) -> OperatorReport:
    """Operator norm against the L1, L2, L-infinity and sampled L^p symbol norms.

    Margins are ``||u||_p - ||L||``; a negative margin is a violated bound.
    """
    u = _check_symbol(pair, dual, u)
    theta = _window(pair, theta)
    if abs(theta.l2norm - 1.0) > UNIT_TOL:
        raise WindowNotUnit("bounds assume ||theta|| = 1, got %.15g" % theta.l2norm)
    op = build_localization(pair, dual, u, theta, aut)
    lbar = build_localization(pair, dual, np.conj(u), theta, aut)
    norm = operator_norm(op)
    ps = (1.0, 2.0, np.inf) + tuple(float(p) for p in p_grid)
    norms = {p: symbol_norm(u, p, dual.mu) for p in ps}
    margins = {
        "4.1": norms[2.0] - norm,
        "4.3": norms[1.0] - norm,
        "4.4": norms[np.inf] - norm,
        "4.5": {float(p): norms[float(p)] - norm for p in p_grid},
    }
    return OperatorReport(
        operator_norm=norm,
        symbol_norms=norms,
        bound_margins=margins,
        adjoint_residual=float(np.linalg.norm(op.adjoint() - lbar.matrix, 2)),
        leakage=op.leakage,
    )


def apply_localization(pair: GelfandPair, dual: SphericalDual, u, theta, aut: GroupAutomorphism, f) -> np.ndarray:
    f = require_bi_invariant(pair, f)
    return build_localization(pair, dual, u, theta, aut).apply(f)
