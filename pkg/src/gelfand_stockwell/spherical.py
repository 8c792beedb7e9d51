"""Hecke algebras, spherical functions and the spherical Fourier transform.

Everything is computed from the Cayley table: the double-coset indicator
basis of the bi-invariant algebra, its structure constants, the characters of
that algebra (spherical functions) by simultaneous diagonalization, and the
Plancherel weights by solving the inversion formula as a linear system.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateDiagonalization,
    DimensionMismatch,
    NotBiInvariant,
    NotGelfand,
    SingularSystem,
)
from .groups import (
    DoubleCosetPartition,
    FiniteGroup,
    Subgroup,
    bi_invariance_deviation,
    double_cosets,
)

CONSTRUCTION_TOL = 1e-12
PROPERTY_TOL = 1e-10
COLLISION_TOL = 1e-8
MAX_RETRIES = 8
DIAGONALIZATION_SEED = 20240229


@dataclass(frozen=True, eq=False)
class GelfandPair:
    group: FiniteGroup
    k: Subgroup
    cosets: DoubleCosetPartition
    certified: bool
    structure: np.ndarray

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def n_classes(self) -> int:
        return self.cosets.count

    def hecke_matrices(self) -> np.ndarray:
        """Left-multiplication matrices L[i] with L[i][l, j] = c[i, j, l]."""
        return np.transpose(self.structure, (0, 2, 1))


def hecke_structure(group: FiniteGroup, cosets: DoubleCosetPartition) -> np.ndarray:
    """Integer tensor c with 1_{C_i} * 1_{C_j} = sum_l c[i, j, l] 1_{C_l}."""
    n = cosets.count
    c = np.zeros((n, n, n), dtype=np.int64)
    cls = cosets.class_of
    for l, rep in enumerate(cosets.representatives()):
        # (1_Ci * 1_Cj)(rep) = #{y in C_i : y^-1 rep in C_j}
        z = group.mul[group.inv, rep]
        np.add.at(c[:, :, l], (cls, cls[z]), 1)
    return c


def certify_gelfand(group: FiniteGroup, k: Subgroup) -> GelfandPair:
    """Build the pair and flag whether the bi-invariant algebra commutes.

    A non-Gelfand pair is returned with ``certified=False`` rather than raised.
    """
    cosets = double_cosets(group, k)
    structure = hecke_structure(group, cosets)
    mats = np.transpose(structure, (0, 2, 1))
    certified = True
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not np.array_equal(mats[i] @ mats[j], mats[j] @ mats[i]):
                certified = False
                break
        if not certified:
            break
    structure.setflags(write=False)
    return GelfandPair(group=group, k=k, cosets=cosets, certified=certified, structure=structure)


@dataclass(frozen=True, eq=False)
class SphericalFunction:
    class_values: np.ndarray
    class_of: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.class_values[self.class_of]

    def __call__(self, x):
        return self.class_values[self.class_of[x]]

    def conj(self) -> "SphericalFunction":
        return SphericalFunction(np.conj(self.class_values), self.class_of)


def spherical_functions(pair: GelfandPair, seed: int = DIAGONALIZATION_SEED) -> list:
    """One spherical function per double coset, trivial function first.

    A generic real combination of the (commuting) transposed Hecke matrices is
    diagonalized; each eigenvector is a character of the algebra.  Eigenvalue
    collisions trigger a resample, up to MAX_RETRIES times.
    """
    if not pair.certified:
        raise NotGelfand("bi-invariant algebra is not commutative")
    mats = pair.hecke_matrices().astype(float)
    n = pair.n_classes
    sizes = pair.cosets.sizes.astype(float)
    ksize = float(pair.k.order)
    rng = np.random.default_rng(seed)

    for _ in range(MAX_RETRIES + 1):
        coeffs = rng.standard_normal(n)
        combo = np.tensordot(coeffs, mats, axes=1).T
        evals, evecs = np.linalg.eig(combo)
        gaps = np.abs(evals[:, None] - evals[None, :])
        gaps[np.diag_indices(n)] = np.inf
        scale = max(1.0, float(np.max(np.abs(evals))))
        if n == 1 or gaps.min() > COLLISION_TOL * scale:
            break
    else:
        raise DegenerateDiagonalization("eigenvalue collision after %d retries" % MAX_RETRIES)

    funcs = []
    for col in range(n):
        v = _polish_character(mats, evecs[:, col])
        # v[l] = chi(1_{C_l}) = |C_l| * omega(C_l), normalised so omega(K) = 1
        v = v * (ksize / v[0])
        funcs.append(v / sizes)
    funcs.sort(key=_ordering_key)
    return [SphericalFunction(_freeze(f), pair.cosets.class_of) for f in funcs]


def _polish_character(mats, v):
    # refine the eigenvector as the common null vector of all (L_i^T - chi_i)
    v = v / np.linalg.norm(v)
    n = len(v)
    blocks = []
    for m in mats:
        lam = np.vdot(v, m.T @ v)
        blocks.append(m.T - lam * np.eye(n))
    _, _, vh = np.linalg.svd(np.vstack(blocks))
    w = np.conj(vh[-1])
    return w * (np.vdot(w, v) / abs(np.vdot(w, v)))


def _ordering_key(values):
    key = []
    for z in values[1:]:
        ang = float(np.angle(z)) % (2 * np.pi)
        if ang > 2 * np.pi - 1e-9:
            ang = 0.0
        key.append((round(ang, 9), round(-abs(z), 9)))
    return tuple(key)


def _freeze(a):
    a = np.asarray(a, dtype=complex)
    a.setflags(write=False)
    return a


def gram_matrix(group: FiniteGroup, phi) -> np.ndarray:
    """[phi(x_n^-1 x_m)]_{n,m} over all group elements."""
    phi = np.asarray(phi)
    return phi[group.mul[group.inv]]


def check_positive_definite(group: FiniteGroup, phi, tol: float = PROPERTY_TOL) -> bool:
    values = getattr(phi, "values", phi)
    gram = gram_matrix(group, np.asarray(values, dtype=complex))
    # a positive semidefinite form is necessarily hermitian
    if np.max(np.abs(gram - gram.conj().T)) > tol:
        return False
    return bool(np.linalg.eigvalsh((gram + gram.conj().T) / 2).min() >= -tol)


@dataclass(frozen=True, eq=False)
class SphericalDual:
    pair: GelfandPair
    functions: tuple
    weights: np.ndarray
    positive_definite: np.ndarray
    residual: float

    @cached_property
    def size(self) -> int:
        return int(self.positive_definite.sum())

    @cached_property
    def positive(self) -> list:
        return [f for f, m in zip(self.functions, self.positive_definite) if m]

    @cached_property
    def mu(self) -> np.ndarray:
        """Plancherel weights restricted to the positive-definite dual."""
        return self.weights[self.positive_definite]

    @cached_property
    def class_table(self) -> np.ndarray:
        """Rows: positive-definite spherical functions; columns: classes."""
        return np.array([f.class_values for f in self.positive])

    @cached_property
    def table(self) -> np.ndarray:
        """Rows: positive-definite spherical functions; columns: group elements."""
        return self.pair.cosets.expand(self.class_table)


def plancherel_weights(pair: GelfandPair, sphericals) -> SphericalDual:
    """Weights mu making f = sum_phi mu(phi) f^(phi) phi hold on every class.

    The square system comes from inverting the transform of 1_K; the full
    system on all class indicators is then checked to CONSTRUCTION_TOL.
    """
    table = np.array([f.class_values for f in sphericals])  # (phi, class)
    n = pair.n_classes
    if table.shape != (n, n):
        raise DimensionMismatch("need exactly %d spherical functions, got %d" % (n, len(table)))
    ksize = pair.k.order
    rhs = np.zeros(n)
    rhs[0] = 1.0
    try:
        mu = np.linalg.solve(ksize * table.T, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    if np.max(np.abs(mu.imag)) > CONSTRUCTION_TOL or np.min(mu.real) <= 0:
        raise SingularSystem("Plancherel weights are not strictly positive: %s" % mu)
    mu = mu.real

    sizes = pair.cosets.sizes
    inv_class = pair.cosets.class_of[pair.group.inv[pair.cosets.representatives()]]
    # fhat[j, phi] = transform of 1_{C_j}: |C_j| * phi(C_j^-1)
    fhat = sizes[:, None] * table.T[inv_class, :]
    recon = fhat @ (mu[:, None] * table)
    residual = float(np.max(np.abs(recon - np.eye(n))))
    if not residual <= CONSTRUCTION_TOL:
        raise SingularSystem("inversion residual %.3e exceeds %.0e" % (residual, CONSTRUCTION_TOL))

    mask = np.array([check_positive_definite(pair.group, f.values) for f in sphericals])
    mu.setflags(write=False)
    mask.setflags(write=False)
    return SphericalDual(pair=pair, functions=tuple(sphericals), weights=mu, positive_definite=mask, residual=residual)


def spherical_dual(pair: GelfandPair) -> SphericalDual:
    return plancherel_weights(pair, spherical_functions(pair))


def require_bi_invariant(pair: GelfandPair, f, name="signal", tol=CONSTRUCTION_TOL) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.shape != (pair.order,):
        raise DimensionMismatch("%s has shape %s, expected (%d,)" % (name, f.shape, pair.order))
    dev = bi_invariance_deviation(pair.cosets, f)
    if dev > tol:
        raise NotBiInvariant("%s deviates from its class means by %.3e" % (name, dev))
    return f


def spherical_ft(pair: GelfandPair, dual: SphericalDual, f) -> np.ndarray:
    """f^(phi) = sum_x f(x) phi(x^-1) for each positive-definite phi."""
    f = require_bi_invariant(pair, f)
    return dual.table[:, pair.group.inv] @ f


def spherical_ift(pair: GelfandPair, dual: SphericalDual, fhat) -> np.ndarray:
    """f(x) = sum_phi mu(phi) f^(phi) phi(x)."""
    fhat = np.asarray(fhat, dtype=complex)
    if fhat.shape != (dual.size,):
        raise DimensionMismatch("expected %d coefficients, got shape %s" % (dual.size, fhat.shape))
    return (dual.mu * fhat) @ dual.table


def random_bi_invariant(pair: GelfandPair, rng, size=None) -> np.ndarray:
    """Random complex bi-invariant signal(s) with standard normal class values."""
    shape = (pair.n_classes,) if size is None else (size, pair.n_classes)
    vals = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return pair.cosets.expand(vals)
