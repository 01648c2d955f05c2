"""Local topology rewiring used by the adaptive search configuration.

A forwarding node swaps its semantically worst contact for the closest
non-neighbour it has learned about, provided the swap strictly improves its
neighbourhood.  Swaps conserve the node's degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ConfigurationError
from .overlay import OverlayNetwork
from .semantic import DISTANCE_TABLE


@dataclass(frozen=True)
class RewiringAction:
    node: int
    dropped: Optional[int] = None
    added: Optional[int] = None

    def __post_init__(self):
        if (self.dropped is None) != (self.added is None):
            raise ConfigurationError("dropped and added must be both present or both absent")
        if self.dropped is not None and self.dropped == self.added:
            raise ConfigurationError("dropped and added must differ")


def worst_neighbor(net: OverlayNetwork, a: int, exclude: Optional[int] = None) -> Optional[int]:
    """Neighbour farthest from ``a`` semantically; ties go to the highest id."""
    net.description(a)
    row = DISTANCE_TABLE[net.codes[a]]
    codes = net.codes
    pool = [v for v in net.adjacency[a] if v != exclude]
    if not pool:
        return None
    return max(pool, key=lambda v: (row[codes[v]], v))


def best_candidate(net: OverlayNetwork, a: int) -> Optional[int]:
    """Closest cached peer that ``a`` could link to right now; ties go to the lowest id."""
    net.description(a)
    node = net.nodes[a]
    row = DISTANCE_TABLE[node.code]
    adj = net.adjacency
    cap = net.max_connections
    best = best_d = None
    for peer, desc in node.cache.entries.items():
        if peer == a or peer in adj[a] or len(adj[peer]) >= cap:
            continue
        d = row[desc.code]
        if best is None or d < best_d or (d == best_d and peer < best):
            best, best_d = peer, d
    return best


def adapt_node(net: OverlayNetwork, a: int, protected: int) -> Optional[RewiringAction]:
    """Swap ``a``'s worst contact (other than ``protected``) for its best candidate.

    All-or-nothing: returns None and leaves the graph untouched unless the
    candidate is strictly closer than the dropped contact and both link
    updates succeed.
    """
    worst = worst_neighbor(net, a, exclude=protected)
    cand = best_candidate(net, a)
    if worst is None or cand is None:
        return None
    row = DISTANCE_TABLE[net.codes[a]]
    if row[net.codes[cand]] >= row[net.codes[worst]]:
        return None
    if not net.remove_link(a, worst):
        return None
    if not net.add_link(a, cand):
        net.adjacency[a].add(worst)
        net.adjacency[worst].add(a)
        return None
    return RewiringAction(a, worst, cand)


class AdaptationPolicy:
    """Callable hook for :func:`~overlaysim.search.guided_search` that rewires
    the forwarding node and keeps a log of the swaps it performed."""

    def __init__(self):
        self.actions: list[RewiringAction] = []

    def __call__(self, net: OverlayNetwork, node: int, next_hop: int) -> Optional[RewiringAction]:
        action = adapt_node(net, node, next_hop)
        if action is not None:
            self.actions.append(action)
        return action

    def __len__(self) -> int:
        return len(self.actions)
