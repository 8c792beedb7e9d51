"""
Stockwell transform on a cyclic group
=====================================

On Z_16 with trivial K the general transform is the classical discrete
S-transform with a dilation x -> m x.  We analyze a chirp-like signal,
compare against the direct formula, and invert.
"""

import numpy as np

from gelfand_stockwell import catalog
from gelfand_stockwell.stockwell import classic_stransform, make_window, stockwell_forward, stockwell_inverse

entry = catalog.get_pair("cyclic-16")
pair, dual = entry.pair, entry.dual
aut = entry.automorphisms["mul-3"]

x = np.arange(16)
f = np.exp(2j * np.pi * x ** 2 / 32)
window = make_window(pair, np.exp(-0.5 * np.minimum(x, 16 - x) ** 2)).normalized()

c = stockwell_forward(pair, dual, f, window, aut)
print("coefficient array shape (t, phi):", c.shape)
print("largest |coefficient| per time:", np.round(np.abs(c.matrix).max(axis=1), 3))

# same numbers from the textbook formula
direct = classic_stransform(f, window.values, 3)
print("max difference from direct formula:", np.max(np.abs(direct - c.matrix)))

# with a unit window the transform is an isometry and inverts exactly
print("||S f|| =", c.norm(), " ||f|| =", np.linalg.norm(f))
back = stockwell_inverse(pair, dual, c, window, aut)
print("round-trip error:", np.max(np.abs(back - f)))
