"""Binomial edge ideals and their lex initial ideals via admissible paths.

A path s = v_0 -> ... -> v_r = t with s < t is admissible when every inner
vertex lies outside the closed interval [s, t].  Each admissible path carries
the squarefree monomial x_s y_t * prod(y_v : inner v < s) * prod(x_v : inner
v > t); together these monomials generate the initial ideal of the edge
binomials under the lexicographic order x_1 > ... > x_n > y_1 > ... > y_n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GuardError
from .graphs import Graph
from .monomials import Monomial, MonomialIdeal, minimalize

_PATH_ENUM_MAX_N = 12


@dataclass(frozen=True)
class AdmissiblePath:
    """Vertex sequence of an admissible path, stored from its smaller end."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 2:
            raise ValueError("a path needs at least two vertices")
        if len(set(vs)) != len(vs):
            raise ValueError("path vertices must be distinct")
        s, t = vs[0], vs[-1]
        if s >= t:
            raise ValueError(f"path ends must satisfy s < t, got {s} >= {t}")
        for v in vs[1:-1]:
            if s <= v <= t:
                raise ValueError(f"inner vertex {v} lies inside [{s}, {t}]")

    @property
    def s(self) -> int:
        return self.vertices[0]

    @property
    def t(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def inner(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def inner_below(self) -> tuple[int, ...]:
        return tuple(v for v in self.inner if v < self.s)

    def inner_above(self) -> tuple[int, ...]:
        return tuple(v for v in self.inner if v > self.t)

    def validate_in(self, g: Graph) -> None:
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"{a} and {b} are not adjacent")

    def text(self) -> str:
        return "->".join(str(v) for v in self.vertices)

    @classmethod
    def parse(cls, text: str) -> "AdmissiblePath":
        return cls(tuple(int(part) for part in text.split("->")))


@dataclass(frozen=True)
class Binomial:
    """Difference of two monomials; for an edge {i,j} with i<j: x_i y_j - x_j y_i."""

    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError("binomial terms must be distinct monomials")

    @classmethod
    def from_edge(cls, i: int, j: int, n: int) -> "Binomial":
        if i > j:
            i, j = j, i
        e1 = bytearray(2 * n)
        e1[i - 1] = 1
        e1[n + j - 1] = 1
        e2 = bytearray(2 * n)
        e2[j - 1] = 1
        e2[n + i - 1] = 1
        return cls(Monomial(e1), Monomial(e2))

    def text(self) -> str:
        return f"{self.plus.text()} - {self.minus.text()}"


def binomial_edge_generators(g: Graph) -> list[Binomial]:
    """One generator per edge, i < j normalized, edges in lexicographic order."""
    return [Binomial.from_edge(i, j, g.n) for i, j in g.edges()]


def admissible_paths(g: Graph, max_n: int = _PATH_ENUM_MAX_N) -> list[AdmissiblePath]:
    """All admissible paths, sorted by length then lexicographic vertex sequence.

    Depth-first search from each start vertex s; a partial path with current
    endpoint u is emitted when s < u and u is below every inner vertex that
    exceeds s.  A branch dies once no endpoint value strictly between s and
    that minimum can exist.
    """
    if g.n > max_n:
        raise GuardError(f"admissible path enumeration guarded at n <= {max_n}")
    rows = g.rows
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], used: int, inner_above_min: int) -> None:
        s = path[0]
        u = path[-1]
        if len(path) >= 2 and s < u < inner_above_min:
            found.append(tuple(v + 1 for v in path))
        # u joins the inner set on extension
        bound = min(inner_above_min, u) if u > s else inner_above_min
        if bound <= s + 1:
            return
        candidates = rows[u] & ~used
        v = 0
        while candidates:
            if candidates & 1:
                extend(path + [v], used | (1 << v), bound)
            candidates >>= 1
            v += 1

    for start in range(g.n):
        big = g.n + 2
        candidates = rows[start]
        v = 0
        while candidates:
            if candidates & 1:
                extend([start, v], (1 << start) | (1 << v), big)
            candidates >>= 1
            v += 1
    found.sort(key=lambda vs: (len(vs), vs))
    return [AdmissiblePath(vs) for vs in found]


def path_monomial(p: AdmissiblePath, n: int) -> Monomial:
    """The squarefree monomial attached to an admissible path."""
    e = bytearray(2 * n)
    e[p.s - 1] = 1
    e[n + p.t - 1] = 1
    for v in p.inner:
        if v < p.s:
            e[n + v - 1] = 1
        else:
            e[v - 1] = 1
    return Monomial(e)


def admissible_path_monomials(
    g: Graph, max_n: int = _PATH_ENUM_MAX_N
) -> tuple[list[AdmissiblePath], list[Monomial]]:
    """The full ordered generator list (one monomial per path, duplicates kept)."""
    paths = admissible_paths(g, max_n=max_n)
    return paths, [path_monomial(p, g.n) for p in paths]


def initial_ideal(g: Graph, max_n: int = _PATH_ENUM_MAX_N) -> MonomialIdeal:
    """Minimal generators of the lex initial ideal, length-then-lex order preserved."""
    _, monomials = admissible_path_monomials(g, max_n=max_n)
    return minimalize(monomials)


def wedge(p: AdmissiblePath, k: int) -> AdmissiblePath:
    """Shorter admissible subpath extracted at the k-th inner vertex (1-based).

    For an inner vertex below s the subpath runs forward to the first later
    vertex inside (v_k, t]; for one above t it runs backward from the last
    earlier vertex inside [s, v_k).  The resulting monomial divides x_{v_k} *
    m_P respectively y_{v_k} * m_P.
    """
    r = p.length
    if not 1 <= k <= r - 1:
        raise ValueError(f"inner index {k} outside 1..{r - 1}")
    vs = p.vertices
    v = vs[k]
    if v < p.s:
        ell = next(
            (i for i in range(k + 1, r + 1) if v < vs[i] <= p.t), None
        )
        assert ell is not None, "admissibility guarantees a forward cut"
        return AdmissiblePath(vs[k : ell + 1])
    ell = next(
        (i for i in range(k - 1, -1, -1) if p.s <= vs[i] < v), None
    )
    assert ell is not None, "admissibility guarantees a backward cut"
    return AdmissiblePath(vs[ell : k + 1])


def colon_membership_violations(
    g: Graph, max_n: int = _PATH_ENUM_MAX_N
) -> list[tuple[int, int]]:
    """Scan the full length-ordered generator list for colon membership failures.

    For every path P_j (j >= 2, 1-based) and inner vertex v, the variable x_v
    (v below s) or y_v (v above t) must lie in (m_1..m_{j-1}) : m_j.  Returns
    the failing (j, v) pairs; the expected result is an empty list.
    """
    paths, monomials = admissible_path_monomials(g, max_n=max_n)
    n = g.n
    masks = [m.mask for m in monomials]
    violations = []
    for j in range(1, len(paths)):
        p = paths[j]
        for v in p.inner:
            var_bit = 1 << (v - 1) if v < p.s else 1 << (n + v - 1)
            target = masks[j] | var_bit
            if not any(masks[i] & ~target == 0 for i in range(j)):
                violations.append((j + 1, v))
    return violations
