"""Half-window reachability labels for transitively closed DAGs.

Label = topological index I(u) plus a floor(n/2)-bit window B_u, where
B_u[j] says whether u is comparable with the node at topological index
(I(u)+j+1) mod n. Any two nodes land in at least one of their two windows,
and comparability plus topological order decides reachability.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import LayeredDag


@dataclass(frozen=True)
class WarmupLabel:
    n: int
    index: int
    table: int  # floor(n/2) bits; bit j is (table >> j) & 1

    @property
    def table_len(self) -> int:
        return self.n // 2

    def bit(self, j: int) -> int:
        if not 0 <= j < self.table_len:
            raise ValueError(f"window probe {j} out of range {self.table_len}")
        return self.table >> j & 1


def encode_warmup(layered: LayeredDag) -> list[WarmupLabel]:
    """One label per node; expects a transitively closed, layered DAG."""
    n = layered.dag.n
    rows = layered.dag.rows
    inv = layered.inv_topo
    half = n // 2
    labels = []
    for u in range(n):
        iu = layered.topo[u]
        t = 0
        for j in range(half):
            x = inv[(iu + j + 1) % n]
            if rows[u] >> x & 1 or rows[x] >> u & 1:
                t |= 1 << j
        labels.append(WarmupLabel(n, iu, t))
    return labels


def decode_warmup(lu, lv) -> bool:
    """Reachability u -> v from two labels (objects with .n/.index/.bit)."""
    n = lu.n
    if n != lv.n:
        raise ValueError("labels come from different encodings")
    iu, iv = lu.index, lv.index
    if iu == iv:
        return True
    if iu > iv:
        return False
    d = iv - iu
    if d <= n // 2:
        return bool(lu.bit(d - 1))
    return bool(lv.bit(n + iu - iv - 1))
