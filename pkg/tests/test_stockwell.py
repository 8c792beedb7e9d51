import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ABELIAN
from gelfand_stockwell import catalog
from gelfand_stockwell.errors import DimensionMismatch, NotAUnit, NotBiInvariant, WindowNotUnit, ZeroWindow
from gelfand_stockwell.groups import delta, inner
from gelfand_stockwell.spherical import random_bi_invariant
from gelfand_stockwell.stockwell import (
    atom,
    atoms,
    classic_stransform,
    dilation,
    make_window,
    modulation,
    reproducing_kernel,
    stockwell_forward,
    stockwell_inverse,
    synthesize_raw,
    translation,
)


def unit_window(pair, rng):
    return make_window(pair, random_bi_invariant(pair, rng)).normalized()


def test_operator_examples():
    e = catalog.get_pair("cyclic-8")
    g = e.pair.group
    np.testing.assert_array_equal(dilation(e.automorphisms["mul-3"], delta(g, 1)), delta(g, 3))
    np.testing.assert_array_equal(translation(g, 2, delta(g, 1)), delta(g, 3))
    chi = e.dual.table[1]
    np.testing.assert_allclose(modulation(chi, np.ones(8)), chi)
    theta = make_window(e.pair, delta(g, 0))
    a = atom(e.pair, chi, 5, theta, e.automorphisms["mul-3"])
    np.testing.assert_allclose(a, chi[5] * delta(g, 5))


def test_point_window_samples_the_signal():
    pair, dual = catalog.cyclic_pair(8)
    g = pair.group
    aut = catalog.get_pair("cyclic-8").automorphisms["mul-5"]
    f = np.random.default_rng(1).standard_normal(8) + 0j
    c = stockwell_forward(pair, dual, f, delta(g, 0), aut).matrix
    np.testing.assert_allclose(c, f[:, None] * np.conj(dual.table.T), atol=1e-14)


def test_classic_matches_general_path():
    e = catalog.get_pair("cyclic-16")
    rng = np.random.default_rng(3)
    f = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    th = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    for name, aut in e.automorphisms.items():
        m = int(name.split("-")[1])
        general = stockwell_forward(e.pair, e.dual, f, th, aut).matrix
        np.testing.assert_allclose(classic_stransform(f, th, m), general, rtol=0, atol=1e-12)


def test_classic_edge_cases():
    np.testing.assert_allclose(classic_stransform([2.0], [3.0], 1), [[6.0]])
    with pytest.raises(NotAUnit):
        classic_stransform(np.ones(8), np.ones(8), 2)
    with pytest.raises(DimensionMismatch):
        classic_stransform(np.ones(8), np.ones(4), 1)


@pytest.mark.parametrize("name", catalog.list_pairs())
def test_coefficients_are_atom_inner_products(name):
    e = catalog.get_pair(name)
    rng = np.random.default_rng(11)
    f, th = random_bi_invariant(e.pair, rng, 2)
    for aut in e.automorphisms.values():
        c = stockwell_forward(e.pair, e.dual, f, th, aut).matrix
        t, p = rng.integers(e.pair.order), rng.integers(e.dual.size)
        a = atom(e.pair, e.dual.table[p], t, th, aut)
        assert abs(c[t, p] - inner(f, a)) <= 1e-12 * max(1, np.linalg.norm(f) * np.linalg.norm(th))


def test_z8_round_trip():
    e = catalog.get_pair("cyclic-8")
    rng = np.random.default_rng(5)
    f, th = random_bi_invariant(e.pair, rng, 2)
    aut = e.automorphisms["mul-3"]
    c = stockwell_forward(e.pair, e.dual, f, th, aut)
    back, leak = stockwell_inverse(e.pair, e.dual, c, th, aut, return_leakage=True)
    np.testing.assert_allclose(back, f, rtol=0, atol=1e-10)
    assert leak <= 1e-12


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), name=st.sampled_from(ABELIAN))
def test_orthogonality_relation_abelian(seed, name):
    e = catalog.get_pair(name)
    rng = np.random.default_rng(seed)
    f, g, th, vt = random_bi_invariant(e.pair, rng, 4)
    for aut in e.automorphisms.values():
        sf = stockwell_forward(e.pair, e.dual, f, th, aut)
        sg = stockwell_forward(e.pair, e.dual, g, vt, aut)
        scale = np.prod([np.linalg.norm(v) for v in (f, g, th, vt)])
        assert abs(sf.inner(sg) - inner(f, g) * inner(vt, th)) <= 1e-12 * scale


@pytest.mark.parametrize("name", ABELIAN)
def test_kernel_abelian(name):
    e = catalog.get_pair(name)
    rng = np.random.default_rng(9)
    w = unit_window(e.pair, rng)
    for aut in e.automorphisms.values():
        k = reproducing_kernel(e.pair, e.dual, w, aut)
        np.testing.assert_allclose(np.diag(k.matrix), 1, atol=1e-12)
        f = random_bi_invariant(e.pair, rng)
        F = stockwell_forward(e.pair, e.dual, f, w, aut).matrix
        np.testing.assert_allclose(k.reproduce(F), F, rtol=0, atol=1e-10)


def test_kernel_hermitian_everywhere(entry):
    w = unit_window(entry.pair, np.random.default_rng(2))
    for aut in entry.automorphisms.values():
        m = reproducing_kernel(entry.pair, entry.dual, w, aut).matrix
        assert np.max(np.abs(m - m.conj().T)) <= 1e-12


def test_sup_bound(entry):
    rng = np.random.default_rng(4)
    for aut in entry.automorphisms.values():
        for _ in range(20):
            f, th = random_bi_invariant(entry.pair, rng, 2)
            c = stockwell_forward(entry.pair, entry.dual, f, th, aut, verify=False)
            assert c.sup() <= np.linalg.norm(f) * np.linalg.norm(th) + 1e-10


def test_atoms_tensor_shape():
    e = catalog.get_pair("dihedral-6")
    th = random_bi_invariant(e.pair, np.random.default_rng(0))
    a = atoms(e.pair, e.dual, th, e.automorphisms["mul-1"])
    assert a.shape == (e.pair.order, e.dual.size, e.pair.order)


def test_errors():
    e = catalog.get_pair("sym-3")
    aut = e.automorphisms["id"]
    f = random_bi_invariant(e.pair, np.random.default_rng(0))
    with pytest.raises(NotBiInvariant):
        stockwell_forward(e.pair, e.dual, f, delta(e.pair.group, 1), aut)
    with pytest.raises(ZeroWindow):
        synthesize_raw(e.pair, e.dual, np.zeros((6, 2)), np.zeros(6), aut)
    with pytest.raises(ZeroWindow):
        make_window(e.pair, np.zeros(6)).normalized()
    with pytest.raises(DimensionMismatch):
        stockwell_inverse(e.pair, e.dual, np.zeros((6, 3)), f, aut)
    with pytest.raises(WindowNotUnit):
        reproducing_kernel(e.pair, e.dual, 2 * f, aut)
