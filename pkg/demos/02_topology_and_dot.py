"""
Building an overlay and exporting it
====================================

A random spanning tree gives every peer at least one contact; extra random
links are then added under the degree cap.  The DOT text can be rendered
with Graphviz, e.g. ``neato -Tpng overlay.dot -o overlay.png``.
"""
import collections
import random
import sys

from overlaysim import generate_random_topology

net = generate_random_topology(50, 15, random.Random(1))
degrees = collections.Counter(net.degree(i) for i in range(len(net)))
print("links:", len(net.edges()))
print("degree histogram:", dict(sorted(degrees.items())))
print("mean distance across links: %.3f" % net.mean_neighbor_distance())
print("audit:", net.audit() or "ok")

out = sys.argv[1] if len(sys.argv) > 1 else None
if out:
    with open(out, "w") as fh:
        fh.write(net.export_dot())
    print("wrote", out)
else:
    print(net.export_dot()[:300], "...")
