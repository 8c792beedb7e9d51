"""Built-in finite Gelfand pairs.

Every group is generated programmatically (modular arithmetic or permutation
composition) and then validated through ``build_group``; nothing is an
embedded table.  Entries are built on first request and memoized.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .errors import UnknownPair
from .groups import (
    FiniteGroup,
    GroupAutomorphism,
    build_group,
    check_automorphism,
    check_subgroup,
    identity_automorphism,
)
from .spherical import GelfandPair, SphericalDual, certify_gelfand, spherical_dual


@dataclass(eq=False)
class CatalogEntry:
    name: str
    pair: GelfandPair
    automorphisms: dict
    abelian: bool
    notes: str
    labels: list = field(default_factory=list, repr=False)

    @cached_property
    def dual(self) -> SphericalDual:
        return spherical_dual(self.pair)


def cyclic_group(n: int) -> FiniteGroup:
    a = np.arange(n)
    return build_group((a[:, None] + a[None, :]) % n)


def group_from_permutations(perms):
    """Cayley table of a closed list of permutations under (p*q)(i) = p(q(i))."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    arr = np.array(perms)
    mul = np.empty((len(perms), len(perms)), dtype=np.intp)
    for i, p in enumerate(arr):
        for j, q in enumerate(arr):
            mul[i, j] = index[tuple(p[q])]
    return build_group(mul)


def _cycle_label(p):
    seen, cycles = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = p[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "id"


def _units(n):
    return [k for k in range(1, n + 1) if gcd(k % n, n) == 1 and k < n] or [1]


def _conjugations(g, k, perms):
    """The identity plus conjugation by every element of K whose permutation
    ``perms[h]`` is a transposition."""
    auts = {"id": identity_automorphism(g)}
    for h in k.members:
        p = perms[h]
        moved = [i for i in range(len(p)) if p[i] != i]
        if len(moved) == 2:
            name = "conj-(%d %d)" % tuple(moved)
            auts[name] = check_automorphism(g, g.conjugation(h), name=name)
    return dict(sorted(auts.items(), key=lambda kv: (kv[0] != "id", kv[0])))


def _cyclic(n):
    g = cyclic_group(n)
    k = check_subgroup(g, [0])
    auts = {}
    for u in _units(n):
        name = "mul-%d" % u
        auts[name] = check_automorphism(g, (u * np.arange(n)) % n, name=name)
    return g, k, auts, [str(x) for x in range(n)], "Z_%d with trivial K; automorphisms x -> kx for units k" % n


def _dihedral(n):
    # r^a s^b acting on polygon vertices: i -> a + (-1)^b i
    perms = [tuple((a + (1 - 2 * b) * i) % n for i in range(n)) for b in (0, 1) for a in range(n)]
    g = group_from_permutations(perms)
    k = check_subgroup(g, [0, n])
    auts = {}
    idx = np.arange(2 * n)
    a, b = idx % n, idx // n
    for u in _units(n):
        name = "mul-%d" % u
        auts[name] = check_automorphism(g, (u * a) % n + n * b, name=name)
    labels = ["r^%d" % a if b == 0 else "r^%d s" % a for b in (0, 1) for a in range(n)]
    return g, k, auts, labels, "D_%d (order %d) with K = {e, s}; automorphisms r -> r^k, s -> s" % (n, 2 * n)


def _symmetric(n, full=False):
    perms = list(itertools.permutations(range(n)))
    g = group_from_permutations(perms)
    members = range(len(perms)) if full else [i for i, p in enumerate(perms) if p[n - 1] == n - 1]
    k = check_subgroup(g, members)
    auts = _conjugations(g, k, perms)
    labels = [_cycle_label(p) for p in perms]
    if full:
        return g, k, auts, labels, "S_%d with K = S_%d (one double coset)" % (n, n)
    return g, k, auts, labels, "S_%d with K = stabilizer of %d; conjugations by transpositions of K" % (n, n - 1)


def _hypercube(n):
    # (v, sigma) acting on cube vertices x -> v xor sigma.x
    def act(v, sigma, x):
        y = 0
        for i in range(n):
            if x >> i & 1:
                y |= 1 << sigma[i]
        return y ^ v

    elems = [(v, s) for v in range(2 ** n) for s in itertools.permutations(range(n))]
    perms = [tuple(act(v, s, x) for x in range(2 ** n)) for v, s in elems]
    g = group_from_permutations(perms)
    k = check_subgroup(g, [i for i, p in enumerate(perms) if p[0] == 0])
    auts = _conjugations(g, k, [s for _, s in elems])
    labels = ["(%s,%s)" % (format(v, "0%db" % n), _cycle_label(s)) for v, s in elems]
    return g, k, auts, labels, "Z_2^%d x| S_%d (order %d) with K = S_%d; double cosets by Hamming weight" % (
        n, n, len(elems), n)


_BUILDERS = {
    "cyclic-4": lambda: _cyclic(4),
    "cyclic-8": lambda: _cyclic(8),
    "cyclic-16": lambda: _cyclic(16),
    "dihedral-4": lambda: _dihedral(4),
    "dihedral-6": lambda: _dihedral(6),
    "dihedral-8": lambda: _dihedral(8),
    "sym-3": lambda: _symmetric(3),
    "sym-4": lambda: _symmetric(4),
    "sym-5": lambda: _symmetric(5),
    "hypercube-2": lambda: _hypercube(2),
    "hypercube-3": lambda: _hypercube(3),
    "sym-3-full": lambda: _symmetric(3, full=True),
}

_cache = {}
_lock = threading.Lock()


def list_pairs() -> list:
    return list(_BUILDERS)


def get_pair(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise UnknownPair("unknown pair %r; known: %s" % (name, ", ".join(_BUILDERS)))
    with _lock:
        if name not in _cache:
            _cache[name] = _build(name)
        return _cache[name]


def _build(name):
    g, k, auts, labels, notes = _BUILDERS[name]()
    pair = certify_gelfand(g, k)
    if not pair.certified:
        raise AssertionError("catalog pair %s failed Gelfand certification" % name)
    for aut in auts.values():
        if not aut.preserves(k):
            raise AssertionError("automorphism %s of %s does not preserve K" % (aut.name, name))
    entry = CatalogEntry(name=name, pair=pair, automorphisms=auts, abelian=g.is_abelian(),
                         notes=notes, labels=labels)
    entry.dual  # spherical functions are part of construction
    return entry


def cyclic_pair(n: int):
    """(Z_n, {0}) and its dual, for any n >= 1 (not only catalog sizes)."""
    name = "cyclic-%d" % n
    if name in _BUILDERS:
        entry = get_pair(name)
        return entry.pair, entry.dual
    with _lock:
        if name not in _cache:
            g = cyclic_group(n)
            pair = certify_gelfand(g, check_subgroup(g, [0]))
            _cache[name] = (pair, spherical_dual(pair))
        return _cache[name]


def automorphism(entry: CatalogEntry, name: str) -> GroupAutomorphism:
    try:
        return entry.automorphisms[name]
    except KeyError:
        raise UnknownPair("pair %s has no automorphism %r; known: %s" % (
            entry.name, name, ", ".join(entry.automorphisms))) from None
