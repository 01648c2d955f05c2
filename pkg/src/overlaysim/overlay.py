"""The overlay network: a symmetric, bounded-degree graph of described peers."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ConfigurationError, SelfLoopError, UnknownNodeError
from .semantic import DISTANCE_TABLE, ResourceDescription, random_description


class PeerCache:
    """Bounded map of peers a node has heard about, keyed by node id.

    When full, the entry semantically farthest from the owner is dropped.  A
    newcomer beats an equally far incumbent; among equally far incumbents the
    highest id goes first.
    """

    __slots__ = ("owner", "owner_code", "capacity", "entries")

    def __init__(self, owner: int, owner_desc: ResourceDescription, capacity: int):
        if capacity < 1:
            raise ConfigurationError("cache capacity must be positive")
        self.owner = owner
        self.owner_code = owner_desc.code
        self.capacity = capacity
        self.entries: dict[int, ResourceDescription] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, peer: int) -> bool:
        return peer in self.entries

    def observe(self, peer: int, desc: ResourceDescription) -> bool:
        """Insert or refresh ``peer``; returns False if the observation is rejected or evicted."""
        if peer == self.owner:
            return False
        entries = self.entries
        if peer in entries or len(entries) < self.capacity:
            entries[peer] = desc
            return True
        row = DISTANCE_TABLE[self.owner_code]
        worst_peer = max(entries, key=lambda p: (row[entries[p].code], p))
        if row[desc.code] > row[entries[worst_peer].code]:
            return False
        del entries[worst_peer]
        entries[peer] = desc
        return True


@dataclass(eq=False)
class NodeState:
    id: int
    description: ResourceDescription
    neighbors: set[int] = field(default_factory=set)
    cache: PeerCache | None = None

    def __post_init__(self):
        if self.cache is None:
            raise ConfigurationError("NodeState needs a PeerCache")

    @property
    def code(self) -> int:
        return self.description.code


class OverlayNetwork:
    """Undirected overlay graph with a per-node degree cap of ``max_connections``.

    Link mutations go through :meth:`add_link` and :meth:`remove_link`, which
    keep the adjacency symmetric and refuse to push any degree outside
    ``[1, max_connections]``.
    """

    def __init__(self, descriptions: list[ResourceDescription], max_connections: int):
        if max_connections < 1:
            raise ConfigurationError("max_connections must be >= 1")
        self.max_connections = max_connections
        cap = 2 * max_connections
        self.nodes = [
            NodeState(i, d, set(), PeerCache(i, d, cap)) for i, d in enumerate(descriptions)
        ]
        # parallel views used by the search loops
        self.adjacency = [node.neighbors for node in self.nodes]
        self.codes = [d.code for d in descriptions]

    def __len__(self) -> int:
        return len(self.nodes)

    def _check(self, a: int) -> None:
        if not 0 <= a < len(self.nodes):
            raise UnknownNodeError(f"node {a} not in network of {len(self.nodes)} nodes")

    def description(self, a: int) -> ResourceDescription:
        self._check(a)
        return self.nodes[a].description

    def neighbors(self, a: int) -> frozenset[int]:
        self._check(a)
        return frozenset(self.adjacency[a])

    def degree(self, a: int) -> int:
        self._check(a)
        return len(self.adjacency[a])

    def has_link(self, a: int, b: int) -> bool:
        self._check(a)
        self._check(b)
        return b in self.adjacency[a]

    def add_link(self, a: int, b: int) -> bool:
        """Connect ``a`` and ``b``.  Returns False, leaving the graph untouched,
        if the link exists or either endpoint is at the degree cap."""
        self._check(a)
        self._check(b)
        if a == b:
            raise SelfLoopError(f"cannot link node {a} to itself")
        adj = self.adjacency
        cap = self.max_connections
        if b in adj[a] or len(adj[a]) >= cap or len(adj[b]) >= cap:
            return False
        adj[a].add(b)
        adj[b].add(a)
        return True

    def remove_link(self, a: int, b: int) -> bool:
        """Disconnect ``a`` and ``b`` unless that would leave either one isolated."""
        self._check(a)
        self._check(b)
        adj = self.adjacency
        if b not in adj[a] or len(adj[a]) < 2 or len(adj[b]) < 2:
            return False
        adj[a].discard(b)
        adj[b].discard(a)
        return True

    def edges(self) -> list[tuple[int, int]]:
        """Every undirected link once, as sorted ``(low, high)`` pairs."""
        return [(a, b) for a, nbrs in enumerate(self.adjacency) for b in sorted(nbrs) if a < b]

    def mean_neighbor_distance(self) -> float:
        """Average semantic distance across links; 0.0 for an edgeless graph."""
        edges = self.edges()
        if not edges:
            return 0.0
        codes = self.codes
        return sum(DISTANCE_TABLE[codes[a]][codes[b]] for a, b in edges) / len(edges)

    def audit(self) -> list[str]:
        """Return a list of invariant violations (empty when healthy)."""
        problems = []
        for a, nbrs in enumerate(self.adjacency):
            if a in nbrs:
                problems.append(f"self-loop at {a}")
            if not 1 <= len(nbrs) <= self.max_connections:
                problems.append(f"degree {len(nbrs)} of node {a} outside [1, {self.max_connections}]")
            for b in nbrs:
                if not 0 <= b < len(self.adjacency):
                    problems.append(f"node {a} links to unknown {b}")
                elif a not in self.adjacency[b]:
                    problems.append(f"asymmetric link {a}->{b}")
            cache = self.nodes[a].cache
            if a in cache or len(cache) > cache.capacity:
                problems.append(f"cache invariant broken at {a}")
        return problems

    def copy(self) -> "OverlayNetwork":
        """Deep copy of topology and caches."""
        other = OverlayNetwork([n.description for n in self.nodes], self.max_connections)
        for src, dst in zip(self.nodes, other.nodes):
            dst.neighbors.update(src.neighbors)
            dst.cache.entries.update(src.cache.entries)
        return other

    def export_dot(self, name: str = "overlay") -> str:
        """Render as an undirected DOT graph.  Output is byte-stable for a given topology."""
        lines = [f"graph {name} {{"]
        for node in self.nodes:
            lines.append(f'  {node.id} [label="{node.id} {node.description.label()}"];')
        for a, b in self.edges():
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate_random_topology(n: int, max_connections: int, rng: random.Random) -> OverlayNetwork:
    """Build a random connected overlay of ``n`` nodes.

    A random tree is grown first (each node, in shuffled order, attaches to a
    uniformly chosen earlier node with spare capacity), which gives every node
    at least one link.  Then ``n`` uniformly random extra links are attempted;
    attempts that duplicate a link or break the degree cap are skipped.
    """
    if n < 2:
        raise ConfigurationError(f"num_nodes must be >= 2, got {n}")
    if max_connections < 1:
        raise ConfigurationError(f"max_connections must be >= 1, got {max_connections}")
    if max_connections < 2 and n > 2:
        raise ConfigurationError("max_connections must be >= 2 to connect more than two nodes")

    net = OverlayNetwork([random_description(rng) for _ in range(n)], max_connections)

    order = list(range(n))
    rng.shuffle(order)
    open_slots = [order[0]]  # placed nodes with spare capacity
    for node in order[1:]:
        i = rng.randrange(len(open_slots))
        parent = open_slots[i]
        net.add_link(node, parent)
        if net.degree(parent) >= max_connections:
            open_slots[i] = open_slots[-1]
            open_slots.pop()
        if net.degree(node) < max_connections:
            open_slots.append(node)

    for _ in range(n):
        a, b = rng.sample(range(n), 2)
        net.add_link(a, b)
    return net
