"""Exact checks of the subset-sum identities behind the closed forms."""

import random

from roughbound import SetPartition, SubsetMask, az_analogon_sum, az_identity_sum
from roughbound.weights import harmonic_tail, lemma_lower_sum, lemma_upper_sum, thu_closed, thu_sum

print("thu_sum(3, 2, 9) =", thu_sum(3, 2, 9), "closed form", thu_closed(3, 2, 9))
print("lower sum (n=10, a=4) =", lemma_lower_sum(10, 4))
print("upper sum (n=10, a=4) =", lemma_upper_sum(10, 4), "harmonic tail", harmonic_tail(10, 4))

rng = random.Random(1)
family = [SubsetMask(8, rng.randrange(1, 1 << 8)) for _ in range(5)]
print("family", [f.members() for f in family], "-> identity sum", az_identity_sum(family))

p = SetPartition(9, ((1, 5), (2, 3, 9), (4,), (6, 7, 8)))
print(f"partition with {p.m} blocks -> lower-approximation sum {az_analogon_sum(p)}")
