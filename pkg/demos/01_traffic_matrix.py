#!/usr/bin/env python3
"""Building sparse traffic matrices from raw records.

A traffic matrix counts packets per (source, destination) pair.  Only the
nonzero cells are stored, which is what makes the representation practical
for network data where almost all pairs never talk.
"""

from tailscope import build_matrix, col_sum, row_sum, transpose, zero_norm

records = [
    ("alice", "web01", 3),
    ("alice", "web02", 2),
    ("bob", "web01", 7),
    ("alice", "web01", 1),   # same pair again: counts aggregate
]

A = build_matrix(records)
print("matrix:", A)
print("stored entries (row-major):")
for src, dst, packets in A.labeled_entries():
    print(f"  {src} -> {dst}: {packets} packets")

print("\nrow sums (packets sent per source):", row_sum(A).as_dict())
print("col sums (packets received per destination):", col_sum(A).as_dict())

# The zero-norm replaces every stored count with 1.  Row/column sums of the
# zero-normed matrix count partners instead of packets.
Z = zero_norm(A)
print("\nzero-normed entries:", dict(((s, d), v) for s, d, v in Z.labeled_entries()))
print("partners per source:", row_sum(Z).as_dict())

# Transposing swaps the roles of sources and destinations.
T = transpose(A)
print("\ntransposed row labels:", T.row_labels)
print("transpose twice gives the original back:", transpose(T) == A)
