"""Simple graphs on vertex set {1..n}: graph6 I/O, induced paths, enumeration.

Vertices are 1-based at every interface; storage is 0-based adjacency
bitmasks.  Graph values are immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import FormatError, GuardError

MAX_VERTICES = 16
_CANONICAL_MAX = 10
_ENUMERATE_MAX = 7


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph as a tuple of neighbor bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("adjacency row count does not match n")
        for i, row in enumerate(self.rows):
            if row >> self.n:
                raise ValueError("adjacency bits outside vertex range")
            if (row >> i) & 1:
                raise ValueError("self-loop found; graphs are irreflexive")
            for j in range(self.n):
                if ((row >> j) & 1) != ((self.rows[j] >> i) & 1):
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise ValueError(f"bad edge ({i},{j}) for n={n}")
            rows[i - 1] |= 1 << (j - 1)
            rows[j - 1] |= 1 << (i - 1)
        return cls(n, tuple(rows))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i - 1] >> (j - 1)) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges {i,j} with i < j, lexicographically sorted."""
        out = []
        for i in range(self.n):
            row = self.rows[i] >> (i + 1)
            j = i + 1
            while row:
                if row & 1:
                    out.append((i + 1, j + 1))
                row >>= 1
                j += 1
        return out

    @property
    def edge_count(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return bin(self.rows[v - 1]).count("1")

    def neighbors(self, v: int) -> list[int]:
        row = self.rows[v - 1]
        return [j + 1 for j in range(self.n) if (row >> j) & 1]

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for i in range(self.n):
                if (frontier >> i) & 1:
                    nxt |= self.rows[i]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def relabel(self, perm: tuple[int, ...]) -> "Graph":
        """Relabel with perm[old-1] = new (a 1-based bijection on [n])."""
        rows = [0] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if (self.rows[i] >> j) & 1:
                    rows[perm[i] - 1] |= 1 << (perm[j] - 1)
        return Graph(self.n, tuple(rows))


@dataclass(frozen=True)
class InducedPathWitness:
    """A longest induced path: its edge count and one witnessing vertex sequence."""

    length: int
    vertices: tuple[int, ...]


# ---------------------------------------------------------------------------
# graph6


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 record (n <= 62, single-byte length)."""
    line = line.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<") :]
    if not line:
        raise FormatError("empty graph6 record")
    for offset, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(
                f"non-printable graph6 byte {ch!r} at offset {offset}"
            )
    n = ord(line[0]) - 63
    if not 1 <= n <= 62:
        raise FormatError(
            f"length byte at offset 0 encodes n={n}, outside 1..62"
        )
    if n > MAX_VERTICES:
        raise GuardError(f"graph6 record has n={n} > {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    data = line[1:]
    if len(data) != nbytes:
        raise FormatError(
            f"bit field holds {len(data)} bytes, expected {nbytes}"
            f" (truncated at offset {1 + len(data)})"
        )
    bits = []
    for ch in data:
        v = ord(ch) - 63
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("non-zero padding bits in graph6 record")
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(rows))


def encode_graph6(g: Graph) -> str:
    """Encode as a canonical graph6 record (inverse of parse_graph6)."""
    if g.n > 62:
        raise ValueError("graph6 single-byte encoding requires n <= 62")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append((g.rows[i] >> j) & 1)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def read_graph6_file(path) -> Iterator[Graph]:
    """Yield graphs from a graph6 file, skipping header lines and blanks."""
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line == ">>graph6<<":
                continue
            yield parse_graph6(line)


# ---------------------------------------------------------------------------
# induced subgraphs and induced paths


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the given vertices, relabeled 1..|W|.

    Returns the graph together with the old-label -> new-label map.
    """
    w = sorted(set(vertices))
    if not w:
        raise ValueError("vertex subset must be nonempty")
    if w[0] < 1 or w[-1] > g.n:
        raise ValueError("vertex subset out of range")
    mapping = {old: new + 1 for new, old in enumerate(w)}
    edges = [
        (mapping[a], mapping[b])
        for a, b in itertools.combinations(w, 2)
        if g.has_edge(a, b)
    ]
    return Graph.from_edges(len(w), edges), mapping


def masked_graph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Graph on the same vertex set keeping only edges inside the given subset."""
    keep = 0
    for v in vertices:
        keep |= 1 << (v - 1)
    rows = tuple((row & keep) if (keep >> i) & 1 else 0 for i, row in enumerate(g.rows))
    return Graph(g.n, rows)


def longest_induced_path(g: Graph) -> InducedPathWitness:
    """Longest induced path by depth-first extension with inducedness pruning.

    An extension is rejected when it is adjacent to any path vertex other
    than the current endpoint.  Edgeless graphs give length 0.
    """
    best_len = 0
    best_path = (1,)
    rows = g.rows
    n = g.n

    def extend(path: list[int], used: int, blocked: int) -> None:
        nonlocal best_len, best_path
        last = path[-1]
        if len(path) - 1 > best_len:
            best_len = len(path) - 1
            best_path = tuple(v + 1 for v in path)
        candidates = rows[last] & ~used & ~blocked
        v = 0
        while candidates:
            if candidates & 1:
                # vertices adjacent to the old endpoint become forbidden chords
                extend(path + [v], used | (1 << v), blocked | (rows[last] & ~(1 << v)))
            candidates >>= 1
            v += 1

    for start in range(n):
        extend([start], 1 << start, 0)
    return InducedPathWitness(best_len, best_path)


def is_path_graph(g: Graph) -> bool:
    """True iff the graph is a path on all n vertices."""
    if not g.is_connected():
        return False
    if g.edge_count != g.n - 1:
        return False
    return all(g.degree(v) <= 2 for v in range(1, g.n + 1))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(itertools.combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# canonical forms and enumeration


@lru_cache(maxsize=8)
def _perm_array(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8)


def canonical_form(g: Graph) -> int:
    """Label-invariant key: minimal upper-triangle bit string over all relabelings.

    Bit order matches graph6 (column-major pairs, first pair most significant),
    so smaller keys correspond to lexicographically smaller graph6 records.
    """
    if g.n > _CANONICAL_MAX:
        raise GuardError(
            f"canonical_form brute-forces all n! labelings; n={g.n} > {_CANONICAL_MAX}"
        )
    if g.n == 1:
        return 0
    rows = np.array(g.rows, dtype=np.uint16)
    return kernels.min_label_key(rows, _perm_array(g.n))


def graph_from_key(n: int, key: int) -> Graph:
    """Rebuild a graph from its upper-triangle bit key (column-major, MSB first)."""
    nbits = n * (n - 1) // 2
    rows = [0] * n
    idx = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (key >> idx) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx -= 1
    return Graph(n, tuple(rows))


def enumerate_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """One representative per isomorphism class, ordered by minimal canonical key.

    Built in by breadth-first edge addition over class representatives;
    every class with k+1 edges is reachable from one with k edges, so the
    sweep is exhaustive.  For n beyond the guard, supply a graph6 file.
    """
    if not 1 <= n <= _ENUMERATE_MAX:
        raise GuardError(
            f"built-in enumeration covers 1 <= n <= {_ENUMERATE_MAX};"
            " supply a graph6 file for larger n"
        )
    if n == 1:
        yield Graph(1, (0,))
        return
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    all_keys: set[int] = set()
    level = {canonical_form(Graph(n, tuple([0] * n)))}
    while level:
        all_keys |= level
        nxt: set[int] = set()
        for key in level:
            g = graph_from_key(n, key)
            for a, b in pairs:
                if not g.has_edge(a, b):
                    h = Graph.from_edges(n, g.edges() + [(a, b)])
                    ck = canonical_form(h)
                    if ck not in all_keys:
                        nxt.add(ck)
        level = nxt
    for key in sorted(all_keys):
        g = graph_from_key(n, key)
        if connected_only and not g.is_connected():
            continue
        yield g
