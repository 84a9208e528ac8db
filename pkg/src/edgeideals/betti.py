"""Multigraded Betti numbers of squarefree monomial ideals via simplicial homology.

Betti numbers are stored in the quotient convention: the table of S/I with
beta_{0,0} = 1.  For a squarefree multidegree sigma, beta_{i,sigma}(S/I) is
the dimension of reduced homology in degree |sigma| - i - 1 of the restriction
of the Stanley-Reisner complex to sigma, and only multidegrees in the lcm
lattice of the minimal generators can contribute.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GuardError
from .monomials import Monomial, MonomialIdeal, minimalize

_HOMOLOGY_GROUND_MAX = 24


# ---------------------------------------------------------------------------
# Betti tables


class BettiTable:
    """Map (homological index, multidegree) -> dimension, quotient convention."""

    __slots__ = ("nvars", "field", "entries")

    def __init__(self, nvars: int, field: int, entries: dict[tuple[int, bytes], int]):
        self.nvars = nvars
        self.field = field
        self.entries = dict(entries)
        self.entries.setdefault((0, bytes(nvars)), 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BettiTable)
            and self.nvars == other.nvars
            and self.entries == other.entries
        )

    def total(self) -> dict[tuple[int, int], int]:
        """Coarsen multidegrees to total degree: (i, j) -> beta_{i,j}."""
        out: dict[tuple[int, int], int] = {}
        for (i, deg), val in self.entries.items():
            key = (i, sum(deg))
            out[key] = out.get(key, 0) + val
        return out

    def coarsen(self) -> "BettiTable":
        """Collapse an N^2n table to N^n: x_k and y_k both land on coordinate k."""
        n = self.nvars // 2
        out: dict[tuple[int, bytes], int] = {}
        for (i, deg), val in self.entries.items():
            a = bytes(deg[k] + deg[n + k] for k in range(n))
            key = (i, a)
            out[key] = out.get(key, 0) + val
        return BettiTable(n, self.field, out)

    def nonzero_beyond_constant(self) -> bool:
        return any(i > 0 for (i, _) in self.entries)

    def regularity_of_ideal(self) -> int | None:
        """Regularity in the ideal convention; None for the zero ideal."""
        values = [
            sum(deg) - i for (i, deg), val in self.entries.items() if i >= 1 and val
        ]
        if not values:
            return None
        return max(values) + 1

    def projective_dimension(self) -> int:
        """Largest homological index with a nonzero entry (quotient convention)."""
        return max((i for (i, _), val in self.entries.items() if val), default=0)

    def depth_of_quotient(self, num_vars: int) -> int:
        if num_vars != self.nvars:
            raise ValueError("depth must be taken over the ambient variable count")
        return num_vars - self.projective_dimension()

    def ideal_entries(self) -> dict[tuple[int, bytes], int]:
        """The same table in the ideal convention: beta_{i,d}(I) = beta_{i+1,d}(S/I)."""
        return {
            (i - 1, deg): val for (i, deg), val in self.entries.items() if i >= 1
        }

    def dump(self) -> str:
        """One line per entry, "i=<i> deg=<monomial> dim=<d>", sorted by (i, degree)."""
        lines = []
        for (i, deg), val in sorted(
            self.entries.items(), key=lambda kv: (kv[0][0], Monomial(kv[0][1]).text())
        ):
            lines.append(f"i={i} deg={Monomial(deg).text()} dim={val}")
        reg = self.regularity_of_ideal()
        reg_text = "undefined" if reg is None else str(reg)
        pd = self.projective_dimension()
        lines.append(
            f"# reg={reg_text} pd={pd} depth={self.nvars - pd} field={self.field}"
        )
        return "\n".join(lines) + "\n"


def multiplicity_vanishing_violations(table: BettiTable) -> list[tuple[int, bytes]]:
    """Entries beta_{p,w} != 0 with p > 0 and #mult(w) >= p; expected empty.

    mult(w) collects the vertices k with x_k y_k dividing w.
    """
    n = table.nvars // 2
    bad = []
    for (i, deg), val in sorted(table.entries.items()):
        if i <= 0 or not val:
            continue
        mult = sum(1 for k in range(n) if deg[k] and deg[n + k])
        if mult >= i:
            bad.append((i, deg))
    return bad


# ---------------------------------------------------------------------------
# simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed face family on a ground set of variable indices.

    Facets are stored as bitmasks over positions in the sorted ground tuple.
    """

    ground: tuple[int, ...]
    facets: tuple[int, ...]

    def __post_init__(self):
        if len(self.ground) > _HOMOLOGY_GROUND_MAX:
            raise GuardError(
                f"ground set of {len(self.ground)} exceeds {_HOMOLOGY_GROUND_MAX}"
            )

    @classmethod
    def from_facets(cls, ground: tuple[int, ...], facets) -> "SimplicialComplex":
        ground = tuple(sorted(ground))
        uniq = sorted(set(int(f) for f in facets), key=lambda m: (-bin(m).count("1"), m))
        kept: list[int] = []
        for f in uniq:
            if not any(f & ~g == 0 for g in kept):
                kept.append(f)
        return cls(ground, tuple(sorted(kept)))

    def face_masks(self) -> np.ndarray:
        """All faces as local masks, ascending (the empty face included)."""
        seen: set[int] = {0}
        for f in self.facets:
            sub = f
            while True:
                seen.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return np.array(sorted(seen), dtype=np.uint32)

    def facet_vertex_sets(self) -> list[frozenset[int]]:
        return [
            frozenset(self.ground[k] for k in range(len(self.ground)) if (f >> k) & 1)
            for f in self.facets
        ]


def stanley_reisner(ideal: MonomialIdeal, nvars: int | None = None) -> SimplicialComplex:
    """Complex whose minimal non-faces are the supports of the minimal generators.

    Facets are complements of the minimal transversals of the generator
    supports.  Requires a proper squarefree ideal.
    """
    if nvars is None:
        nvars = ideal.nvars
    for g in ideal.gens:
        if not g.is_squarefree:
            raise ValueError(f"non-squarefree generator {g.text()}")
    if ideal.is_unit:
        raise ValueError("the unit ideal has no Stanley-Reisner complex")
    masks = [g.mask for g in minimalize(ideal.gens).gens]
    universe = (1 << nvars) - 1
    transversals = _minimal_transversals(masks)
    facets = [universe & ~t for t in transversals]
    return SimplicialComplex.from_facets(tuple(range(nvars)), facets)


def _minimal_transversals(masks: list[int]) -> list[int]:
    """Minimal hitting sets of a family of bitmasks (Berge expansion)."""
    trans = [0]
    for nf in masks:
        new: list[int] = []
        for t in trans:
            if t & nf:
                new.append(t)
            else:
                bit = 1
                rest = nf
                while rest:
                    if rest & 1:
                        new.append(t | bit)
                    rest >>= 1
                    bit <<= 1
        new.sort(key=lambda m: (bin(m).count("1"), m))
        kept: list[int] = []
        for t in new:
            if not any(s & ~t == 0 for s in kept):
                kept.append(t)
        trans = kept
    return trans


# ---------------------------------------------------------------------------
# homology over GF(p)


def reduced_homology_dims(complex_: SimplicialComplex, p: int) -> list[int]:
    """dim H~_i(complex; GF(p)) for i = -1 .. dim, via boundary-matrix ranks."""
    faces = complex_.face_masks()
    return kernels.homology_dims_from_faces(faces, len(complex_.ground), p)


# ---------------------------------------------------------------------------
# Hochster-style Betti computation on the lcm lattice


def _lcm_lattice(masks: list[int]) -> list[int]:
    result: set[int] = set(masks)
    frontier = set(masks)
    while frontier:
        new: set[int] = set()
        for s in frontier:
            for g in masks:
                t = s | g
                if t not in result:
                    new.add(t)
        result |= new
        frontier = new
    return sorted(result, key=lambda m: (bin(m).count("1"), m))


def _localize(sigma: int, masks: list[int]) -> tuple[list[int], list[int]]:
    """Vertices of sigma and the contained generator masks remapped to local bits."""
    verts = []
    v = 0
    s = sigma
    while s:
        if s & 1:
            verts.append(v)
        s >>= 1
        v += 1
    position = {vertex: k for k, vertex in enumerate(verts)}
    local = []
    for g in masks:
        if g & ~sigma == 0:
            lm = 0
            gg = g
            v = 0
            while gg:
                if gg & 1:
                    lm |= 1 << position[v]
                gg >>= 1
                v += 1
            local.append(lm)
    return verts, local


def _mask_to_exps(mask: int, nvars: int) -> bytes:
    return bytes(1 if (mask >> i) & 1 else 0 for i in range(nvars))


def hochster_betti(ideal: MonomialIdeal, p: int) -> BettiTable:
    """Full multigraded Betti table of S/I for a squarefree monomial ideal I."""
    for g in ideal.gens:
        if not g.is_squarefree:
            raise ValueError(f"non-squarefree generator {g.text()}")
    nvars = ideal.nvars
    gens = minimalize(ideal.gens).gens
    entries: dict[tuple[int, bytes], int] = {}
    if not gens:
        return BettiTable(nvars or 0, p, entries)
    masks = [g.mask for g in gens]
    for sigma in _lcm_lattice(masks):
        verts, local = _localize(sigma, masks)
        size = len(verts)
        dims = kernels.homology_vector(size, local, p)
        for d, val in zip(range(-1, len(dims) - 1), dims):
            if val > 0:
                i = size - d - 1
                entries[(i, _mask_to_exps(sigma, nvars))] = int(val)
    return BettiTable(nvars, p, entries)


def initial_ideal_regularity(ideal: MonomialIdeal, p: int) -> int | None:
    """Regularity (ideal convention) without assembling the full table.

    Walks the lcm lattice by decreasing support size and searches each
    restricted complex top-down, stopping at the first nonvanishing homology;
    lattice elements too small to beat the current best are skipped outright.
    """
    gens = minimalize(ideal.gens).gens
    if not gens:
        return None
    masks = [g.mask for g in gens]
    best = max(g.degree for g in gens) - 1  # generators contribute degree - 1
    lattice = _lcm_lattice(masks)
    lattice.sort(key=lambda m: (-bin(m).count("1"), m))
    for sigma in lattice:
        size = bin(sigma).count("1")
        if size - 1 <= best:
            break
        verts, local = _localize(sigma, masks)
        d = kernels.top_homology(size, local, p, best)
        if d >= 0:
            best = d + 1
    return best + 1
