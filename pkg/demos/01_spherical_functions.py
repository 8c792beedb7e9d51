"""
Spherical functions of a small Gelfand pair
===========================================

The symmetric group S_3 acting on three points, with K the stabilizer of
one point.  Bi-invariant signals are constant on the two double cosets, so
everything reduces to 2 x 2 linear algebra.
"""

import numpy as np

from gelfand_stockwell import catalog
from gelfand_stockwell.spherical import random_bi_invariant, spherical_ft, spherical_ift

entry = catalog.get_pair("sym-3")
pair, dual = entry.pair, entry.dual
print("double coset sizes:", pair.cosets.sizes.tolist())

# Each spherical function is listed by its value on each double coset.
for phi, mu in zip(dual.class_table, dual.mu):
    print("phi =", np.round(phi.real, 12), " Plancherel weight =", round(mu, 12))

# The Hecke algebra is commutative; its structure constants are integers.
print("certified Gelfand pair:", pair.certified)
print("1_C1 * 1_C1 in class coordinates:", pair.hecke_matrices()[1][:, 1].tolist())

# Transform a random bi-invariant signal and check the Plancherel identity.
f = random_bi_invariant(pair, np.random.default_rng(0))
fhat = spherical_ft(pair, dual, f)
print("||f||^2          =", np.linalg.norm(f) ** 2)
print("sum mu |f^|^2    =", np.sum(dual.mu * np.abs(fhat) ** 2))
print("inversion error  =", np.max(np.abs(spherical_ift(pair, dual, fhat) - f)))
