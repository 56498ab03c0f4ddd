#!/usr/bin/env python3
"""Smoke test for the Python extension module.

Build and place the module first:

    cargo build --release -p matroid-census-py
    cp target/release/libmatroid_census_py.so python/matroid_census.so

then run:  python3 python/smoke_test.py
"""
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import matroid_census as mc

# exact combinatorics, with a value that overflows 64-bit floats
assert mc.binomial(6, 3) == 20
assert mc.binomial(64, 32) == 1832624140942590534
assert mc.bell_number(5) == 52
assert mc.bell_number(9) == 21147

# colex ranking round-trips
assert mc.colex_rank([2, 3], 4) == 5
assert mc.colex_unrank(4, 2, 5) == [2, 3]
assert mc.colex_rank([0, 1], 4) == 0

# set partitions of a 3-element universe: B(3) = 5
partitions = mc.set_partitions([0, 1, 2])
assert len(partitions) == 5
assert [[0, 1, 2]] in partitions
assert [[0], [1], [2]] in partitions

# the uniform family U_{2,3} satisfies the exchange axiom
u23 = mc.BasisFamily.from_members(3, 2, [[0, 1], [0, 2], [1, 2]])
assert u23.is_base_exchange()
assert u23.exchange_witness() is None
assert u23.member_count() == 3
assert u23.contains([0, 2])

# the minimal violation {{0,3},{1,2}} and its witness
bad = mc.BasisFamily.from_members(4, 2, [[0, 3], [1, 2]])
assert not bad.is_base_exchange()
assert bad.exchange_witness() == ([1, 2], [0, 3], 1)

# contraction re-numbers the surviving elements
minor = u23.contract([0])
assert minor.n == 2 and minor.r == 1
assert minor.members() == [[0], [1]]

# both enumeration routes, and their sizes
census8 = mc.enumerate_census(3, 2)
assert len(census8) == 8 and census8.matroid_count() == 7
census37 = mc.enumerate_census(4, 2, method="naive")
assert len(census37) == 37
assert census37.bit_vectors() == mc.enumerate_census(4, 2, workers=2).bit_vectors()
assert census37.bit_vectors()[0] == 0
assert census37.family(0).is_empty()
assert not census37.contains_bits(0b001100)  # the {03,12} pattern

# censuses survive the file round trip, including axiom re-validation
with tempfile.TemporaryDirectory() as tmp:
    path = str(Path(tmp) / "c42.census")
    mc.write_census(path, census37)
    loaded = mc.read_census(path)
    assert loaded.method == "file"
    assert loaded == census37

# the covering inequality is tight at (3,2,1)
check = mc.shearer_check(census8, 1)
assert check["holds"]
assert abs(check["lhs_bits"] - 3.0) < 1e-9
assert abs(check["rhs_bits"] - 3.0) < 1e-9
assert check["multiplicity"] == 2 and check["class_count"] == 3

# rank-2 structure: loops plus parallel blocks
fam = mc.BasisFamily.from_members(3, 2, [[0, 1], [0, 2]])
loops, blocks = fam.decompose_rank2()
assert loops == [] and blocks == [[0], [1, 2]]
assert mc.compose_rank2(3, loops, blocks) == fam
assert len({fam, fam}) == 1  # hashable

# counts and the exact bound rows
table = mc.count_table(4)
assert table[(4, 2)] == 36
assert sum(table[(4, r)] for r in range(5)) == 68
report = mc.full_report(3)
assert len(report) == 46
assert all(row["holds"] for row in report)
equality = next(
    r for r in report
    if r["name"] == "lemma2" and (r["n"], r["r"], r["t"]) == (3, 2, 1)
)
assert equality["lhs"] == equality["rhs"] == 64
assert equality["slack"] == 0
knuth3 = next(r for r in report if r["name"] == "knuth" and r["n"] == 3)
assert knuth3["interpretation"] == "floor"
assert isinstance(equality["lhs"], int)  # exact ints, not floats

print("smoke test: all assertions passed")
