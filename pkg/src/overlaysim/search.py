"""Hop-limited flooding (BFS) and greedy guided search over an overlay."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .errors import ConfigurationError
from .overlay import NodeState, OverlayNetwork
from .semantic import DISTANCE_TABLE, ResourceDescription, check_allowable_error

if TYPE_CHECKING:
    from .adaptation import AdaptationPolicy


class SearchConfig(str, enum.Enum):
    BFS = "config1"
    GUIDED = "config2"
    ADAPTIVE = "config3"

    def __str__(self) -> str:
        return self.value


@dataclass
class SearchRequest:
    originator: int
    target: ResourceDescription
    allowable_error: float
    hop_limit: int = 10
    visited: set[int] = field(default_factory=set)

    def __post_init__(self):
        self.allowable_error = check_allowable_error(self.allowable_error)
        if self.hop_limit < 1:
            raise ConfigurationError(f"hop_limit must be >= 1, got {self.hop_limit}")
        self.visited.add(self.originator)


@dataclass(frozen=True)
class SearchOutcome:
    success: bool
    matched_node: Optional[int]
    hops: int
    achieved_distance: Optional[int]
    messages_sent: int


def bfs_search(net: OverlayNetwork, req: SearchRequest) -> SearchOutcome:
    """Flood outward level by level, stopping at the first level holding a match.

    The originator is never a candidate.  Within the matching level the
    lowest id wins.  ``messages_sent`` counts every node reached; on failure
    ``hops`` is the deepest level that was reached.
    """
    net.description(req.originator)  # bounds check
    row = DISTANCE_TABLE[req.target.code]
    codes = net.codes
    adj = net.adjacency
    limit = req.allowable_error
    visited = req.visited
    frontier = [req.originator]
    messages = 0
    reached = 0
    for depth in range(1, req.hop_limit + 1):
        level = []
        for u in frontier:
            for v in adj[u]:
                if v not in visited:
                    visited.add(v)
                    level.append(v)
        if not level:
            break
        messages += len(level)
        reached = depth
        hits = [v for v in level if row[codes[v]] <= limit]
        if hits:
            m = min(hits)
            return SearchOutcome(True, m, depth, row[codes[m]], messages)
        frontier = level
    return SearchOutcome(False, None, reached, None, messages)


def record_observation(node: NodeState, peer: int, desc: ResourceDescription) -> bool:
    """Remember that ``peer`` holds ``desc``.  Returns False for a rejected observation
    (the node's own id, or a peer too far away to survive eviction)."""
    return node.cache.observe(peer, desc)


def guided_search(
    net: OverlayNetwork, req: SearchRequest, adapt: Optional["AdaptationPolicy"] = None
) -> SearchOutcome:
    """Walk a single message greedily toward the target.

    Each hop the current node first learns the originator and previous hop,
    then looks at its unvisited neighbours: a matching neighbour (lowest id
    first) ends the search, otherwise the message moves to the neighbour
    closest to the target.  There is no backtracking; a node with no
    unvisited neighbour is a dead end.  With ``adapt`` set the current node
    may rewire itself just before forwarding, never dropping the chosen hop.
    """
    nodes = net.nodes
    origin = req.originator
    net.description(origin)  # bounds check
    origin_desc = nodes[origin].description
    row = DISTANCE_TABLE[req.target.code]
    codes = net.codes
    adj = net.adjacency
    limit = req.allowable_error
    visited = req.visited

    current, previous, hops = origin, None, 0
    while True:
        node = nodes[current]
        if current != origin:
            node.cache.observe(origin, origin_desc)
        if previous is not None:
            node.cache.observe(previous, nodes[previous].description)

        best = best_d = None
        for v in adj[current]:
            if v in visited:
                continue
            d = row[codes[v]]
            if best is None:
                best, best_d = v, d
                continue
            # matches outrank non-matches; otherwise closest, then lowest id
            if d <= limit:
                if best_d > limit or v < best:
                    best, best_d = v, d
            elif best_d > limit and (d < best_d or (d == best_d and v < best)):
                best, best_d = v, d
        if best is None or hops >= req.hop_limit:
            return SearchOutcome(False, None, hops, None, hops)

        if adapt is not None:
            adapt(net, current, best)
        visited.add(best)
        hops += 1
        if best_d <= limit:
            return SearchOutcome(True, best, hops, best_d, hops)
        previous, current = current, best
