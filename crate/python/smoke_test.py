#!/usr/bin/env python3
"""Smoke test for the sr_dmod_py extension module.

Build the extension first, then run this script:

    cargo build -p sr-dmod-py --release
    python3 python/smoke_test.py

The script copies the built cdylib next to itself under the importable name
and replays the worked four-vertex example end to end.
"""

import pathlib
import shutil
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
HERE = pathlib.Path(__file__).resolve().parent


def stage_module() -> None:
    candidates = [
        ROOT / "target" / profile / "libsr_dmod_py.so"
        for profile in ("release", "debug")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("extension not built; run: cargo build -p sr-dmod-py --release")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    dest = HERE / "sr_dmod_py.so"
    if not dest.exists() or dest.stat().st_mtime < newest.stat().st_mtime:
        shutil.copy2(newest, dest)


stage_module()
sys.path.insert(0, str(HERE))

import sr_dmod_py as sr  # noqa: E402

# --- the worked complex -----------------------------------------------------
tripp = sr.Complex.tripp()
assert tripp.n == 4
assert tripp.labels == ["x", "y", "z", "w"]
assert tripp.is_t_space() is True
assert sr.Complex.two_disjoint_edges().is_t_space() is False
assert sr.Complex.full_simplex(2).is_t_space() is None  # zero face ideal

assert set(tripp.face_ideal()) == {"x*w", "y*w", "z*w", "x*y*z"}
primes = {frozenset(p) for p in tripp.minimal_primes()}
assert primes == {
    frozenset({"x", "w"}),
    frozenset({"y", "w"}),
    frozenset({"z", "w"}),
    frozenset({"x", "y", "z"}),
}

# JSON round trip preserves identity
again = sr.Complex.from_json(tripp.to_json())
assert again == tripp and again.facets == [[0, 1], [0, 2], [1, 2], [3]]

# --- Hilbert data -----------------------------------------------------------
assert tripp.hilbert_values(5) == [1, 4, 7, 10, 13, 16]
assert tripp.hilbert_partial_sums(4) == [1, 5, 12, 22, 35]

# --- operator ring ----------------------------------------------------------
basis = tripp.dr_basis(2)
assert len(basis) == 16 and "1" in basis and "x d1^[1]" in basis
assert tripp.bernstein_dim(2) == 16
assert tripp.traves_member([1, 0, 0, 0], [1, 0, 0, 0])  # x d1 is an operator
assert not tripp.traves_member([0, 0, 0, 0], [1, 0, 0, 0])  # bare d1 is not

# Weyl-layer identities: d^[2](x^3) = C(3,2) x and the product rule
assert sr.divided_power_action(3, 2) == "3*x"
assert sr.apply_operator("d1^[2]", "x1^3", ["x1"]) == "3*x1"
assert sr.commutator("x1 d1^[1]", "x1", ["x1"]) == "x1"

# --- quotient by a rational point -------------------------------------------
inv = sr.find_inverse(tripp, "1,1,0,0", "x d1^[1]")
assert inv["invertible"] and inv["verified"] and inv["inverse"] == "-x + 1"

blocked = sr.find_inverse(tripp, "1,1,0,0", "z d3^[1]")
assert not blocked["invertible"]
assert blocked["witness"]["reduced"] == "0"

dims = sr.filtration_dims(tripp, "1,1,0,0", 4)
assert dims["order_dims"] == [1, 5, 12, 22, 35]
assert dims["order_dims"] == dims["hilbert_partial_sums"]
assert dims["order_matches_sums"]["verdict"] == "PASS"

# --- localization and the Čech probe ----------------------------------------
gens, exponent = tripp.saturation("w")
assert sorted(gens) == ["x", "y", "z"] and exponent == 1

acted = sr.act(tripp, "x", "x d1^[2]", "y/x^2")
assert acted["result"] == "3*y/(x)^3" and acted["denominator_exponent"] == 3

table = sr.cech(tripp, "w", lo=-4, hi=4)
h1 = [row for row in table["table"] if row["j"] == 1]
assert sorted(tuple(row["multidegree"]) for row in h1) == [
    (0, 0, 0, -k) for k in range(4, 0, -1)
]
assert all(row["dim"] == 1 for row in h1)
assert table["candidate_primes"][1]["primes"] == [["x", "y", "z", "w"]]

# --- growth -------------------------------------------------------------------
g = sr.growth(tripp, i_max=8)
assert g["r"] == 2 and g["leading"] == "3/2" and g["verdict"]["verdict"] == "PASS"
assert sr.localized_filtration(tripp, "w", i_max=3, t_max=3)["verdict"] == "PASS"

# --- generation ----------------------------------------------------------------
assert len(sr.exhaustive_complexes(2)) == 3
batch = sr.random_t_spaces(5, 10, seed=7)
assert len(batch) == 10 and all(c.is_t_space() for c in batch)

print("smoke test ok:", len(basis), "operator monomials,",
      len(h1), "top cohomology classes, inverse", inv["inverse"])
