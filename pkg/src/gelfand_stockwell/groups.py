"""Finite groups given by Cayley tables, with counting Haar measure.

Elements are integer indices ``0 .. order-1``.  Functions on a group are plain
complex numpy vectors of length ``order``; all norms and sums use the counting
measure (weight one per element).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    MissingIdentity,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotBijective,
    NotClosed,
    NotHomomorphism,
    SchemaError,
)

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 512
SAMPLED_TRIPLES = 1_000_000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    identity: int
    inv: np.ndarray

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.order

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def conjugation(self, h: int) -> np.ndarray:
        """Permutation ``x -> h x h^-1``."""
        return self.mul[self.mul[h, :], self.inv[h]]

    def __repr__(self):
        return "FiniteGroup(order=%d)" % self.order


def build_group(mul_table) -> FiniteGroup:
    """Validate a Cayley table and compute identity and inverses.

    Raises NotAssociative / NoIdentity / NoInverse naming a witness.
    """
    mul = np.array(mul_table, dtype=np.intp)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise SchemaError("multiplication table must be a non-empty square array")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise SchemaError("table entries must lie in [0, %d)" % n)
    mul.setflags(write=False)

    _check_associative(mul)

    arange = np.arange(n)
    units = [e for e in range(n) if np.array_equal(mul[e], arange) and np.array_equal(mul[:, e], arange)]
    if not units:
        raise NoIdentity("no element acts as a two-sided unit")
    e = units[0]

    inv = np.empty(n, dtype=np.intp)
    for x in range(n):
        right = np.flatnonzero(mul[x] == e)
        candidates = [y for y in right if mul[y, x] == e]
        if not candidates:
            raise NoInverse(x)
        inv[x] = candidates[0]
    inv.setflags(write=False)
    return FiniteGroup(mul=mul, identity=int(e), inv=inv)


def _check_associative(mul):
    n = mul.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for a in range(n):
            # (a b) c  vs  a (b c) over all b, c at once
            left = mul[mul[a]]
            right = mul[a][mul]
            bad = np.argwhere(left != right)
            if bad.size:
                b, c = bad[0]
                raise NotAssociative((a, b, c))
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
        bad = np.flatnonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])
        if bad.size:
            i = bad[0]
            raise NotAssociative((a[i], b[i], c[i]))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return int(x) in self._member_set

    @property
    def _member_set(self):
        return frozenset(self.members)


def check_subgroup(g: FiniteGroup, members) -> Subgroup:
    members = sorted({int(m) for m in members})
    if not members:
        raise SchemaError("subgroup member list is empty")
    if members[0] < 0 or members[-1] >= g.order:
        raise SchemaError("subgroup member out of range")
    if g.identity not in members:
        raise MissingIdentity("identity %d is not a member" % g.identity)
    mask = np.zeros(g.order, dtype=bool)
    mask[members] = True
    idx = np.array(members)
    prods = g.mul[np.ix_(idx, idx)]
    bad = np.argwhere(~mask[prods])
    if bad.size:
        i, j = bad[0]
        raise NotClosed((idx[i], idx[j]), prods[i, j])
    # closure under products already forces closure under inverses for finite sets
    return Subgroup(parent=g, members=tuple(members))


@dataclass(frozen=True, eq=False)
class GroupAutomorphism:
    perm: np.ndarray
    delta_alpha: float = 1.0
    name: str = ""

    def __call__(self, x):
        return self.perm[x]

    def preserves(self, k: Subgroup) -> bool:
        return {int(self.perm[m]) for m in k.members} == set(k.members)


def check_automorphism(g: FiniteGroup, perm, name: str = "") -> GroupAutomorphism:
    perm = np.asarray(perm, dtype=np.intp)
    n = g.order
    if perm.shape != (n,) or perm.min() < 0 or perm.max() >= n:
        raise NotBijective("map must send each of the %d elements into the group" % n)
    if len(np.unique(perm)) != n:
        raise NotBijective("map is not injective")
    bad = np.argwhere(perm[g.mul] != g.mul[np.ix_(perm, perm)])
    if bad.size:
        raise NotHomomorphism(tuple(bad[0]))
    perm = perm.copy()
    perm.setflags(write=False)
    # counting measure is invariant under any bijection, so the modulus is 1
    return GroupAutomorphism(perm=perm, delta_alpha=1.0, name=name)


def identity_automorphism(g: FiniteGroup) -> GroupAutomorphism:
    return check_automorphism(g, np.arange(g.order), name="id")


@dataclass(frozen=True, eq=False)
class DoubleCosetPartition:
    class_of: np.ndarray
    classes: tuple = field(repr=False)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes])

    @property
    def count(self) -> int:
        return len(self.classes)

    def representatives(self) -> np.ndarray:
        return np.array([c[0] for c in self.classes])

    def expand(self, class_values) -> np.ndarray:
        """Lift per-class values to a function on the whole group."""
        class_values = np.asarray(class_values)
        if class_values.shape[-1] != self.count:
            raise DimensionMismatch("expected %d class values, got %d" % (self.count, class_values.shape[-1]))
        return class_values[..., self.class_of]

    def class_means(self, f) -> np.ndarray:
        f = np.asarray(f)
        if f.shape[-1] != len(self.class_of):
            raise DimensionMismatch("function has length %d, group order is %d" % (f.shape[-1], len(self.class_of)))
        out = np.zeros(f.shape[:-1] + (self.count,), dtype=np.result_type(f, float))
        for i, c in enumerate(self.classes):
            out[..., i] = f[..., list(c)].mean(axis=-1)
        return out


def double_cosets(g: FiniteGroup, k: Subgroup) -> DoubleCosetPartition:
    """Partition G into double cosets KxK.

    Class 0 is always K itself; the remaining classes are ordered by their
    smallest element index.
    """
    kk = np.array(k.members)
    class_of = np.full(g.order, -1, dtype=np.intp)
    classes = []
    order = [g.identity] + [x for x in range(g.order) if x != g.identity]
    for x in order:
        if class_of[x] >= 0:
            continue
        coset = np.unique(g.mul[g.mul[kk, x][:, None], kk[None, :]])
        class_of[coset] = len(classes)
        classes.append(tuple(int(c) for c in coset))
    class_of.setflags(write=False)
    return DoubleCosetPartition(class_of=class_of, classes=tuple(classes))


def _as_function(g, f, name="f"):
    f = np.asarray(f, dtype=complex)
    if f.shape != (g.order,):
        raise DimensionMismatch("%s has shape %s, expected (%d,)" % (name, f.shape, g.order))
    return f


def delta(g: FiniteGroup, a: int) -> np.ndarray:
    out = np.zeros(g.order, dtype=complex)
    out[a] = 1.0
    return out


def convolve(g: FiniteGroup, f, h) -> np.ndarray:
    """(f * h)(x) = sum_y f(y) h(y^-1 x) with counting measure."""
    f = _as_function(g, f)
    h = _as_function(g, h, "h")
    # row y holds h(y^-1 x) for all x
    shifted = h[g.mul[g.inv]]
    return f @ shifted


def bi_invariant_project(cosets, f) -> np.ndarray:
    """Average f over K x K; the result is constant on every double coset.

    ``cosets`` may be a DoubleCosetPartition, anything carrying a
    ``.cosets`` attribute (a GelfandPair), or a ``(group, subgroup)`` tuple.
    """
    if isinstance(cosets, tuple):
        cosets = double_cosets(*cosets)
    cosets = getattr(cosets, "cosets", cosets)
    # K x K acts transitively on each double coset, so the average is the class mean
    return cosets.expand(cosets.class_means(f))


def bi_invariance_deviation(cosets, f) -> float:
    cosets = getattr(cosets, "cosets", cosets)
    f = np.asarray(f)
    if f.size == 0:
        return 0.0
    return float(np.max(np.abs(f - bi_invariant_project(cosets, f))))


def l2_norm(f) -> float:
    return float(np.linalg.norm(f))


def inner(f, h) -> complex:
    """<f, h> = sum_x f(x) conj(h(x))."""
    return complex(np.vdot(h, f))
