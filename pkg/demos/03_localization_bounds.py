"""
Localization operators and their norm bounds
============================================

A symbol u on (time, phase) space filters the Stockwell coefficients.  The
operator norm is bounded by the L1, L2, L-infinity and L^p norms of u.
"""

import numpy as np

from gelfand_stockwell import catalog
from gelfand_stockwell.localization import bound_suite, build_localization
from gelfand_stockwell.spherical import random_bi_invariant
from gelfand_stockwell.stockwell import make_window

rng = np.random.default_rng(1)

for name in ("cyclic-8", "hypercube-3"):
    entry = catalog.get_pair(name)
    pair, dual = entry.pair, entry.dual
    aut = next(iter(entry.automorphisms.values()))
    window = make_window(pair, random_bi_invariant(pair, rng)).normalized()
    u = rng.standard_normal((pair.order, dual.size))
    rep = bound_suite(pair, dual, u, window, aut)
    print(name)
    print("  operator norm        %.4f" % rep.operator_norm)
    for p in (1.0, 2.0, np.inf):
        print("  symbol norm p=%-5s  %.4f" % (p, rep.symbol_norms[p]))
    print("  adjoint residual     %.1e" % rep.adjoint_residual)

# The constant symbol recovers the identity on a commutative group.
entry = catalog.get_pair("cyclic-8")
window = make_window(entry.pair, random_bi_invariant(entry.pair, rng)).normalized()
one = build_localization(entry.pair, entry.dual, np.ones((8, 8)), window, entry.automorphisms["mul-5"])
print("u = 1 on Z_8 gives identity:", np.allclose(one.matrix, np.eye(8)))
