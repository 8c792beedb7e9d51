import json

import numpy as np
import pytest

from gelfand_stockwell.audit import THEOREMS, cell_rng, run_verify
from gelfand_stockwell.errors import GelfandError

ASSERTED_EVERYWHERE = {"2.2", "2.3", "4.2", "4.3", "adjoint", "eq8"}


def test_cyclic8_cells():
    rep = run_verify(["cyclic-8"])
    assert len(rep.records) == 4 * len(THEOREMS) == 52
    assert rep.ok
    assert all(r.status == "asserted-pass" for r in rep.records)
    assert [r.theorem for r in rep.records[:13]] == sorted(THEOREMS)


def test_nonabelian_rows_are_reported():
    rep = run_verify(["sym-4"])
    assert rep.ok
    by_thm = {}
    for r in rep.records:
        by_thm.setdefault(r.theorem, set()).add(r.status)
    for thm in ASSERTED_EVERYWHERE:
        assert by_thm[thm] == {"asserted-pass"}
    for thm in ("3.2", "4.1", "4.4", "4.5", "eq9-roundtrip"):
        assert by_thm[thm] == {"reported"}


def test_empty_selection():
    with pytest.raises(GelfandError):
        run_verify([])


def test_full_catalog_has_no_failures():
    rep = run_verify()
    assert rep.ok, [(r.pair, r.automorphism, r.theorem, r.residual) for r in rep.failures]
    data = json.loads(rep.to_json())
    assert data["summary"]["asserted-fail"] == 0
    assert sum(data["summary"].values()) == len(rep.records)


def test_cell_rng_is_stable():
    a = cell_rng(42, "sym-3", "id", "3.2").standard_normal(3)
    b = cell_rng(42, "sym-3", "id", "3.2").standard_normal(3)
    c = cell_rng(42, "sym-3", "id", "3.5").standard_normal(3)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
