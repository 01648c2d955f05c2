"""
Matching resource descriptions
==============================

Every peer owns a description: three resource levels between 0 and 4.
Requests carry a description too, and a peer satisfies a request when the
Manhattan distance between the two is within the allowable error.
"""
import random

from overlaysim import ResourceDescription, distance, matches, random_description, similarity

a = ResourceDescription(1, 2, 3)
b = ResourceDescription(3, 0, 4)
print("distance", distance(a, b))              # |1-3| + |2-0| + |3-4| = 5
print("similarity %.2f%%" % similarity(a, b))  # (12 - 5) / 12

# The two extremes of the scale
print(similarity(a, a), similarity(ResourceDescription(0, 0, 0), ResourceDescription(4, 4, 4)))

# A threshold sweep: how often does a random peer satisfy a random request?
rng = random.Random(0)
pairs = [(random_description(rng), random_description(rng)) for _ in range(20000)]
for err in range(0, 7):
    hit = sum(matches(x, y, err) for x, y in pairs) / len(pairs)
    print(f"allowable error {err}: {hit:6.2%} of random pairs match")
