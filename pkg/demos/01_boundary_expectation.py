"""Expected boundary size of a partition, by brute force and by block sizes.

Walks every subset of a 6-element set for a few partitions, then shows that
the same number falls out of the block sizes alone.
"""

from roughbound import SetPartition, WeightSpec, expected_boundary_exhaustive, f_via_lemma1
from roughbound._rational import format_decimal

PARTITIONS = [
    SetPartition(6, ((1, 2, 3, 4, 5, 6),)),
    SetPartition(6, ((1, 2, 3), (4, 5, 6))),
    SetPartition(6, ((1,), (2, 3), (4, 5, 6))),
    SetPartition(6, ((1,), (2,), (3,), (4,), (5,), (6,))),
]

for p in PARTITIONS:
    print(p.to_json())
    for j in (1, 2, 3):
        rep = expected_boundary_exhaustive(p, j)
        lemma = f_via_lemma1(p.block_sizes(), WeightSpec(j, p.n))
        same = "same" if lemma == rep.f_value else "DIFFERENT"
        print(f"  j={j}  E|boundary| = {rep.mu} ({format_decimal(rep.mu, 6)})  block-size formula: {same}")

# shuffling elements between blocks of the same sizes changes nothing
a = SetPartition(6, ((1, 4), (2, 3, 6), (5,)))
b = SetPartition(6, ((6, 1, 2), (3,), (4, 5)))
print("relabelled partitions agree:", expected_boundary_exhaustive(a, 2) == expected_boundary_exhaustive(b, 2))
