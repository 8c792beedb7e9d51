"""Numerical audit of every identity and bound over catalog pairs.

Each (pair, automorphism) cell produces one record per theorem id.  A record
is ``asserted-pass`` / ``asserted-fail`` when the identity is provable for
that pair, and ``reported`` when only the residual is measured.
"""
from __future__ import annotations

import json
import platform
import sys
import zlib
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, catalog
from .errors import GelfandError
from .groups import inner
from .localization import P_GRID, adjoint_check, bound_suite, build_localization
from .spherical import random_bi_invariant, spherical_ft
from .stockwell import (
    FACTORIZATION_TOL,
    atom,
    make_window,
    reproducing_kernel,
    stockwell_forward,
    stockwell_inverse,
    transform_matrix,
)

THEOREMS = ("2.2", "2.3", "3.2", "3.3-rank", "3.5", "4.1", "4.2", "4.3", "4.4", "4.5",
            "adjoint", "eq8", "eq9-roundtrip")

DEFAULT_TOL = 1e-10
HERMITIAN_TOL = 1e-12
RANK_THRESHOLD = 1e-9

DRAWS = {
    "plancherel": 100,
    "orthogonality": 50,
    "bounds": 100,
    "adjoint": 20,
    "eq8": 5,
    "roundtrip": 20,
    "kernel": 10,
}

PASS, FAIL, REPORTED = "asserted-pass", "asserted-fail", "reported"


@dataclass
class AuditRecord:
    pair: str
    automorphism: str
    theorem: str
    status: str
    residual: float
    margin: float
    detail: dict = field(default_factory=dict)


@dataclass
class AuditReport:
    records: list
    seed: int
    tolerances: dict
    versions: dict

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "metadata": {"seed": self.seed, "tolerances": self.tolerances, "versions": self.versions,
                         "theorems": list(THEOREMS)},
            "records": [_clean(asdict(r)) for r in self.records],
            "summary": {s: sum(r.status == s for r in self.records) for s in (PASS, FAIL, REPORTED)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def table(self) -> str:
        lines = ["%-12s %-12s %-14s %-14s %12s %12s" % ("pair", "automorphism", "theorem", "status",
                                                      "residual", "margin")]
        for r in self.records:
            lines.append("%-12s %-12s %-14s %-14s %12.3e %12.3e" % (
                r.pair, r.automorphism, r.theorem, r.status, r.residual, r.margin))
        s = self.to_dict()["summary"]
        lines.append("%d asserted-pass, %d asserted-fail, %d reported" % (s[PASS], s[FAIL], s[REPORTED]))
        return "\n".join(lines)


def _fmt(x):
    # fixed precision keeps the JSON byte-stable across runs
    x = float(x)
    if not np.isfinite(x):
        return str(x)
    return float("%.10e" % x)


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    return obj


def cell_rng(seed: int, *names) -> np.random.Generator:
    key = zlib.crc32("|".join(names).encode())
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def _unit_window(pair, rng):
    return make_window(pair, random_bi_invariant(pair, rng)).normalized()


def _symbol(pair, dual, rng):
    shape = (pair.order, dual.size)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _status(asserted, ok):
    if not asserted:
        return REPORTED
    return PASS if ok else FAIL


def _plancherel_rows(entry, seed, tol):
    pair, dual = entry.pair, entry.dual
    rng = cell_rng(seed, entry.name, "2.2")
    res = 0.0
    for f in random_bi_invariant(pair, rng, DRAWS["plancherel"]):
        fh = spherical_ft(pair, dual, f)
        res = max(res, abs(np.sum(dual.mu * np.abs(fh) ** 2) - np.linalg.norm(f) ** 2))
    rng = cell_rng(seed, entry.name, "2.3")
    res2 = 0.0
    for _ in range(DRAWS["plancherel"]):
        f, g = random_bi_invariant(pair, rng, 2)
        lhs = np.sum(dual.mu * spherical_ft(pair, dual, f) * np.conj(spherical_ft(pair, dual, g)))
        res2 = max(res2, abs(lhs - inner(f, g)))
    return {
        "2.2": (_status(True, res <= tol), res, tol - res, {}),
        "2.3": (_status(True, res2 <= tol), res2, tol - res2, {}),
    }


def _orthogonality(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    res = iso = 0.0
    for _ in range(DRAWS["orthogonality"]):
        f, g, th, vt = random_bi_invariant(pair, rng, 4)
        sf = stockwell_forward(pair, dual, f, th, aut, verify=False)
        sg = stockwell_forward(pair, dual, g, vt, aut, verify=False)
        res = max(res, abs(sf.inner(sg) - inner(f, g) * inner(vt, th)))
        w = make_window(pair, th).normalized()
        iso = max(iso, abs(stockwell_forward(pair, dual, f, w, aut, verify=False).norm() - np.linalg.norm(f)))
    return _status(entry.abelian, res <= tol), res, tol - res, {"isometry_residual": iso}


def _rank(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    w = _unit_window(pair, rng)
    t = transform_matrix(pair, dual, w, aut)
    weights = np.tile(np.sqrt(dual.mu), pair.order)
    s = np.linalg.svd(weights[:, None] * t, compute_uv=False)
    rank = int(np.sum(s > RANK_THRESHOLD * max(s.max(), 1.0)))
    dim = pair.n_classes
    return (_status(entry.abelian, rank == dim), float(abs(rank - dim)), float(s.min()),
            {"rank": rank, "dimension": dim, "singular_min": float(s.min()), "singular_max": float(s.max())})


def _kernel(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    w = _unit_window(pair, rng)
    k = reproducing_kernel(pair, dual, w, aut)
    herm = float(np.max(np.abs(k.matrix - np.conj(k.matrix.T))))
    rep = 0.0
    for f in random_bi_invariant(pair, rng, DRAWS["kernel"]):
        F = stockwell_forward(pair, dual, f, w, aut, verify=False).matrix
        rep = max(rep, float(np.max(np.abs(k.reproduce(F) - F))))
    if herm > HERMITIAN_TOL:
        status = FAIL
    else:
        status = _status(entry.abelian, rep <= tol)
    return status, rep, tol - rep, {"hermitian_residual": herm}


def _bounds(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    sup_margin = np.inf
    for _ in range(DRAWS["bounds"]):
        f, th = random_bi_invariant(pair, rng, 2)
        c = stockwell_forward(pair, dual, f, th, aut, verify=False)
        sup_margin = min(sup_margin, np.linalg.norm(f) * np.linalg.norm(th) - c.sup())

    m = {"4.1": np.inf, "4.3": np.inf, "4.4": np.inf}
    lp = {p: np.inf for p in P_GRID}
    for _ in range(DRAWS["bounds"]):
        rep = bound_suite(pair, dual, _symbol(pair, dual, rng), _unit_window(pair, rng), aut)
        for key in m:
            m[key] = min(m[key], rep.bound_margins[key])
        for p, v in rep.bound_margins["4.5"].items():
            lp[p] = min(lp[p], v)

    one = build_localization(pair, dual, np.ones((pair.order, dual.size)), _unit_window(pair, rng), aut)
    ident = float(np.max(np.abs(one.matrix - np.eye(pair.n_classes))))
    ab = entry.abelian
    lp_min = min(lp.values())
    return {
        "4.1": (_status(ab, m["4.1"] >= -tol), max(0.0, -m["4.1"]), m["4.1"], {}),
        "4.2": (_status(True, sup_margin >= -tol), max(0.0, -sup_margin), sup_margin, {}),
        "4.3": (_status(True, m["4.3"] >= -tol), max(0.0, -m["4.3"]), m["4.3"], {}),
        "4.4": (_status(ab, m["4.4"] >= -tol and ident <= tol), ident, m["4.4"],
                {"unit_symbol_identity_residual": ident}),
        "4.5": (_status(ab, lp_min >= -tol), max(0.0, -lp_min), lp_min,
                {"margin_by_p": {"%g" % p: v for p, v in lp.items()}}),
    }


def _adjoint(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    res = 0.0
    for _ in range(DRAWS["adjoint"]):
        res = max(res, adjoint_check(pair, dual, _symbol(pair, dual, rng), _unit_window(pair, rng), aut))
    return _status(True, res <= tol), res, tol - res, {}


def _eq8(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    res = 0.0
    table = dual.positive
    for _ in range(DRAWS["eq8"]):
        f, th = random_bi_invariant(pair, rng, 2)
        c = stockwell_forward(pair, dual, f, th, aut, verify=False).matrix
        for t in range(pair.order):
            for j, phi in enumerate(table):
                res = max(res, abs(c[t, j] - inner(f, atom(pair, phi, t, th, aut))))
    return _status(True, res <= FACTORIZATION_TOL), res, FACTORIZATION_TOL - res, {}


def _roundtrip(entry, aut, rng, tol):
    pair, dual = entry.pair, entry.dual
    w = _unit_window(pair, rng)
    res = leak = 0.0
    for f in random_bi_invariant(pair, rng, DRAWS["roundtrip"]):
        c = stockwell_forward(pair, dual, f, w, aut, verify=False)
        back, lk = stockwell_inverse(pair, dual, c, w, aut, return_leakage=True)
        res = max(res, float(np.max(np.abs(back - f))))
        leak = max(leak, lk)
    return _status(entry.abelian, res <= tol), res, tol - res, {"leakage": leak}


def audit_cell(entry, aut_name, seed=42, tol=DEFAULT_TOL, pair_rows=None) -> list:
    """All audit records for one (pair, automorphism)."""
    aut = catalog.automorphism(entry, aut_name)
    rows = dict(pair_rows or _plancherel_rows(entry, seed, tol))

    def rng(thm):
        return cell_rng(seed, entry.name, aut_name, thm)

    rows["3.2"] = _orthogonality(entry, aut, rng("3.2"), tol)
    rows["3.3-rank"] = _rank(entry, aut, rng("3.3-rank"), tol)
    rows["3.5"] = _kernel(entry, aut, rng("3.5"), tol)
    rows.update(_bounds(entry, aut, rng("bounds"), tol))
    rows["adjoint"] = _adjoint(entry, aut, rng("adjoint"), tol)
    rows["eq8"] = _eq8(entry, aut, rng("eq8"), tol)
    rows["eq9-roundtrip"] = _roundtrip(entry, aut, rng("eq9-roundtrip"), tol)
    return [AuditRecord(entry.name, aut_name, thm, *rows[thm]) for thm in sorted(THEOREMS)]


def run_verify(selection=None, seed: int = 42, tol: float = DEFAULT_TOL) -> AuditReport:
    """Audit the named catalog pairs (all of them when ``selection`` is None)."""
    names = catalog.list_pairs() if selection is None else list(selection)
    if not names:
        raise GelfandError("pair selection is empty")
    entries = [catalog.get_pair(n) for n in names]
    records = []
    for entry in sorted(entries, key=lambda e: e.name):
        pair_rows = _plancherel_rows(entry, seed, tol)
        for aut_name in sorted(entry.automorphisms):
            records.extend(audit_cell(entry, aut_name, seed, tol, pair_rows))
    return AuditReport(
        records=records,
        seed=seed,
        tolerances={"assert": tol, "factorization": FACTORIZATION_TOL, "hermitian": HERMITIAN_TOL,
                    "rank_threshold": RANK_THRESHOLD},
        versions={"gelfand_stockwell": __version__, "numpy": np.__version__,
                  "python": "%d.%d" % sys.version_info[:2], "machine": platform.machine()},
    )
