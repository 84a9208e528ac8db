"""Independent ground truth on tiny instances.

Buchberger Groebner bases of edge-binomial ideals over GF(p), normal forms,
Taylor-complex Betti numbers for monomial ideals, and Koszul-homology Betti
numbers of S/J_G itself.  Everything here recomputes its inputs from scratch
(lead terms come from the Buchberger output, standard monomials from lead
divisibility), so the admissible-path machinery can be checked against it.

The Koszul scan is windowed: Tor_{i,a} is computed for |a| <= i + cap.  By
upper semicontinuity under Groebner degeneration the support of the Betti
table of S/J_G sits inside the support bound given by its lead-term ideal, so
taking cap = reg(lead ideal) makes the windowed scan exact; the projective
dimension cutoff then follows from the no-gap property of minimal
resolutions.  A user-supplied smaller cap may end inconclusive, which is
reported explicitly instead of a truncated number.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .betti import BettiTable
from .errors import GuardError
from .graphs import Graph
from .monomials import Monomial, MonomialIdeal, minimalize

_BUCHBERGER_MAX_VARS = 12
_TAYLOR_MAX_GENS = 10
_KOSZUL_MAX_N = 4
_SAT = 255


# ---------------------------------------------------------------------------
# polynomials over GF(p), lex order x_1 > ... > x_n > y_1 > ... > y_n


class Polynomial:
    """Sparse polynomial: exponent bytes -> nonzero coefficient mod p."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[bytes, int]):
        self.terms = terms

    @classmethod
    def from_pairs(cls, pairs, p: int) -> "Polynomial":
        terms: dict[bytes, int] = {}
        for exps, coeff in pairs:
            c = (terms.get(exps, 0) + coeff) % p
            if c:
                terms[exps] = c
            else:
                terms.pop(exps, None)
        return cls(terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def lead(self) -> tuple[bytes, int]:
        """Lex-leading (exponents, coefficient); bytes order is the lex order."""
        m = max(self.terms)
        return m, self.terms[m]

    def monic(self, p: int) -> "Polynomial":
        _, c = self.lead()
        if c == 1:
            return self
        inv = pow(c, p - 2, p)
        return Polynomial({e: (v * inv) % p for e, v in self.terms.items()})

    def text(self, p: int) -> str:
        """Terms in descending lex order, leading term first, signed coefficients."""
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            signed = c if c <= p // 2 else c - p
            mono = Monomial(e).text()
            mag = abs(signed)
            body = mono if mag == 1 else (f"{mag}*{mono}" if mono != "1" else str(mag))
            if not parts:
                parts.append(body if signed > 0 else f"-{body}")
            else:
                parts.append(("+ " if signed > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"


def _mul_exps(a: bytes, b: bytes) -> bytes:
    return bytes(min(_SAT, x + y) for x, y in zip(a, b))


def _divides(a: bytes, b: bytes) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(f: Polynomial, g: Polynomial, shift: bytes, c: int, p: int) -> Polynomial:
    """f - c * x^shift * g, all mod p."""
    terms = dict(f.terms)
    for e, v in g.terms.items():
        key = _mul_exps(e, shift)
        nv = (terms.get(key, 0) - c * v) % p
        if nv:
            terms[key] = nv
        else:
            terms.pop(key, None)
    return Polynomial(terms)


def normal_form(f: Polynomial, basis: list[Polynomial], p: int) -> Polynomial:
    """Remainder of f on division by the basis; no term divisible by any lead."""
    leads = [g.lead() for g in basis]
    current = Polynomial(dict(f.terms))
    while True:
        target = None
        for e in sorted(current.terms, reverse=True):
            for gi, (le, lc) in enumerate(leads):
                if _divides(le, e):
                    target = (e, gi, le, lc)
                    break
            if target:
                break
        if target is None:
            return current
        e, gi, le, lc = target
        shift = bytes(a - b for a, b in zip(e, le))
        c = (current.terms[e] * pow(lc, p - 2, p)) % p
        current = _sub_scaled(current, basis[gi], shift, c, p)


def _spoly(f: Polynomial, g: Polynomial, p: int) -> Polynomial:
    lf, _ = f.lead()
    lg, _ = g.lead()
    lcm = bytes(max(a, b) for a, b in zip(lf, lg))
    sf = bytes(a - b for a, b in zip(lcm, lf))
    sg = bytes(a - b for a, b in zip(lcm, lg))
    left = _sub_scaled(Polynomial({}), f, sf, p - 1, p)  # + x^sf * f
    return _sub_scaled(left, g, sg, 1, p)


def buchberger(gens: list[Polynomial], p: int) -> list[Polynomial]:
    """Reduced lex Groebner basis, deterministic normal selection strategy.

    Pairs are processed by smallest lcm total degree, ties by lex order of the
    lcm then by index; coprime lead pairs are skipped.  Output is monic,
    fully inter-reduced, sorted by ascending lead term.
    """
    basis = [g.monic(p) for g in gens if not g.is_zero]
    if basis and basis[0].terms and len(next(iter(basis[0].terms))) > _BUCHBERGER_MAX_VARS:
        raise GuardError(
            f"Buchberger workload guarded at {_BUCHBERGER_MAX_VARS} variables"
        )
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_key(pair):
        i, j = pair
        li, _ = basis[i].lead()
        lj, _ = basis[j].lead()
        lcm = bytes(max(a, b) for a, b in zip(li, lj))
        return (sum(lcm), lcm, i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.remove((i, j))
        li, _ = basis[i].lead()
        lj, _ = basis[j].lead()
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leads: S-polynomial reduces to zero
        r = normal_form(_spoly(basis[i], basis[j], p), basis, p)
        if r.is_zero:
            continue
        basis.append(r.monic(p))
        new = len(basis) - 1
        pairs.update((k, new) for k in range(new))

    # minimal: drop elements whose lead is divisible by another surviving lead
    order = sorted(range(len(basis)), key=lambda k: basis[k].lead()[0])
    kept: list[int] = []
    for k in order:
        lk = basis[k].lead()[0]
        if not any(_divides(basis[m].lead()[0], lk) for m in kept):
            kept.append(k)
    minimal = [basis[k] for k in kept]
    # reduced: tails rewritten against the rest
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        reduced.append(normal_form(g, others, p).monic(p) if others else g)
    reduced.sort(key=lambda g: g.lead()[0])
    return reduced


def edge_binomial_polynomials(g: Graph, p: int) -> list[Polynomial]:
    """x_i y_j - x_j y_i over the edges, i < j, as GF(p) polynomials."""
    n = g.n
    out = []
    for i, j in g.edges():
        e1 = bytearray(2 * n)
        e1[i - 1] = 1
        e1[n + j - 1] = 1
        e2 = bytearray(2 * n)
        e2[j - 1] = 1
        e2[n + i - 1] = 1
        out.append(Polynomial({bytes(e1): 1, bytes(e2): p - 1}))
    return out


def groebner_basis(g: Graph, p: int) -> list[Polynomial]:
    return buchberger(edge_binomial_polynomials(g, p), p)


def lead_ideal(basis: list[Polynomial]) -> MonomialIdeal:
    """Minimalized lead-term ideal of a Groebner basis."""
    return minimalize([Monomial(f.lead()[0]) for f in basis])


def verify_buchberger_criterion(basis: list[Polynomial], p: int) -> bool:
    """Post-hoc check: every S-polynomial of the basis reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(_spoly(basis[i], basis[j], p), basis, p).is_zero:
                return False
    return True


def groebner_dump(basis: list[Polynomial], p: int) -> str:
    return "\n".join(f.text(p) for f in basis) + "\n"


# ---------------------------------------------------------------------------
# Taylor complex oracle for monomial ideals


def taylor_betti(
    ideal: MonomialIdeal, p: int, max_gens: int = _TAYLOR_MAX_GENS
) -> BettiTable:
    """Minimal Betti numbers via the multigraded strands of the Taylor complex.

    The strand at a multidegree has one basis element per generator subset
    with that lcm; the surviving differentials are the subset inclusions that
    keep the lcm.  Works for any generating list, 2^g subsets.
    """
    gens = list(ideal.gens)
    g = len(gens)
    if g > max_gens:
        raise GuardError(f"{g} generators exceeds the Taylor guard of {max_gens}")
    nvars = ideal.nvars
    if g == 0:
        return BettiTable(nvars or 0, p, {})
    exps = [m.exps for m in gens]
    lcms: list[bytes] = [b""] * (1 << g)
    lcms[0] = bytes(nvars)
    for t in range(1, 1 << g):
        low = t & (-t)
        k = low.bit_length() - 1
        prev = lcms[t ^ low]
        ge = exps[k]
        lcms[t] = bytes(max(a, b) for a, b in zip(prev, ge))
    groups: dict[bytes, list[int]] = {}
    for t in range(1 << g):
        groups.setdefault(lcms[t], []).append(t)
    entries: dict[tuple[int, bytes], int] = {}
    for sigma, subsets in sorted(groups.items()):
        by_size: dict[int, list[int]] = {}
        for t in subsets:
            by_size.setdefault(bin(t).count("1"), []).append(t)
        position = {
            t: (size, idx)
            for size, ts in by_size.items()
            for idx, t in enumerate(ts)
        }
        ranks: dict[int, int] = {}
        for size, ts in sorted(by_size.items()):
            if size == 0 or size - 1 not in by_size:
                ranks[size] = 0
                continue
            rows = len(by_size[size - 1])
            mat = np.zeros((rows, len(ts)), dtype=np.int64)
            for ci, t in enumerate(ts):
                sign = 1
                for k in range(g):
                    if (t >> k) & 1:
                        sub = t ^ (1 << k)
                        if lcms[sub] == sigma:
                            mat[position[sub][1], ci] = sign
                        sign = -sign
            ranks[size] = kernels.rank_mod(mat, p)
        for size, ts in sorted(by_size.items()):
            h = len(ts) - ranks.get(size, 0) - ranks.get(size + 1, 0)
            if h > 0:
                entries[(size, sigma)] = h
    return BettiTable(nvars, p, entries)


# ---------------------------------------------------------------------------
# Koszul homology of S/J_G


@dataclass(frozen=True)
class KoszulResult:
    """Betti table of S/J_G over GF(p) with its certification metadata."""

    table: BettiTable  # N^n-graded, quotient convention
    field: int
    n: int
    cap: int
    cap_source: str  # "lead-ideal" or "user"
    lead_regularity: int | None
    certified: bool
    inconclusive: bool

    @property
    def regularity_of_ideal(self) -> int | None:
        if self.inconclusive:
            return None
        return self.table.regularity_of_ideal()

    @property
    def projective_dimension(self) -> int:
        return self.table.projective_dimension()

    @property
    def depth(self) -> int:
        """depth(S/J_G) over the ambient 2n variables (Auslander-Buchsbaum)."""
        return 2 * self.n - self.projective_dimension


def _compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to `total`, lex order."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


class _KoszulScanner:
    def __init__(self, g: Graph, p: int):
        self.n = g.n
        self.p = p
        self.basis = groebner_basis(g, p)
        self.lead_exps = [m.exps for m in lead_ideal(self.basis).gens]
        self.std_cache: dict[tuple[int, ...], list[bytes]] = {}
        self.nf_cache: dict[tuple[int, bytes], list[tuple[bytes, int]]] = {}
        n2 = 2 * self.n
        # N^n degree of each Koszul subset of the 2n variables
        self.subset_deg: list[tuple[int, ...]] = []
        for t in range(1 << n2):
            deg = [0] * self.n
            for v in range(n2):
                if (t >> v) & 1:
                    deg[v % self.n] += 1
            self.subset_deg.append(tuple(deg))

    def std_monomials(self, b: tuple[int, ...]) -> list[bytes]:
        """Monomials of N^n-degree b not divisible by any lead term, sorted."""
        hit = self.std_cache.get(b)
        if hit is not None:
            return hit
        n = self.n
        out = []
        for alpha in itertools.product(*(range(v + 1) for v in b)):
            exps = bytes(alpha) + bytes(v - a for v, a in zip(b, alpha))
            if not any(_divides(le, exps) for le in self.lead_exps):
                out.append(exps)
        out.sort()
        self.std_cache[b] = out
        return out

    def multiply_var(self, v: int, u: bytes) -> list[tuple[bytes, int]]:
        """x_v * u expanded in the standard monomial basis of S/J_G."""
        key = (v, u)
        hit = self.nf_cache.get(key)
        if hit is not None:
            return hit
        prod = bytearray(u)
        prod[v] = min(_SAT, prod[v] + 1)
        prod_b = bytes(prod)
        if not any(_divides(le, prod_b) for le in self.lead_exps):
            result = [(prod_b, 1)]
        else:
            nf = normal_form(Polynomial({prod_b: 1}), self.basis, self.p)
            result = sorted(nf.terms.items())
        self.nf_cache[key] = result
        return result

    def strand(self, a: tuple[int, ...]) -> dict[int, int]:
        """beta_{i,a}(S/J_G) for every homological index i at multidegree a."""
        n2 = 2 * self.n
        bases: dict[int, list[tuple[int, bytes]]] = {}
        for t in range(1 << n2):
            dt = self.subset_deg[t]
            b = tuple(x - y for x, y in zip(a, dt))
            if any(v < 0 for v in b):
                continue
            stds = self.std_monomials(b)
            if stds:
                size = bin(t).count("1")
                bases.setdefault(size, []).extend((t, u) for u in stds)
        if not bases:
            return {}
        index: dict[int, dict[tuple[int, bytes], int]] = {
            i: {key: pos for pos, key in enumerate(items)}
            for i, items in bases.items()
        }
        ranks: dict[int, int] = {}
        for i in sorted(bases):
            if i == 0 or i - 1 not in bases:
                ranks[i] = 0
                continue
            rows = len(bases[i - 1])
            cols = bases[i]
            mat = np.zeros((rows, len(cols)), dtype=np.int64)
            row_index = index[i - 1]
            for ci, (t, u) in enumerate(cols):
                sign = 1
                for v in range(n2):
                    if (t >> v) & 1:
                        tt = t ^ (1 << v)
                        for w, c in self.multiply_var(v, u):
                            ri = row_index.get((tt, w))
                            if ri is not None:
                                mat[ri, ci] = (mat[ri, ci] + sign * c) % self.p
                        sign = -sign
            ranks[i] = kernels.rank_mod(mat, self.p)
        out: dict[int, int] = {}
        for i, items in bases.items():
            h = len(items) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if h > 0:
                out[i] = h
        return out


def koszul_betti(
    g: Graph,
    p: int,
    reg_cap: int | None = None,
    allow_n5: bool = False,
    taylor_max_gens: int = _TAYLOR_MAX_GENS,
) -> KoszulResult:
    """N^n-graded Betti numbers of S/J_G via Koszul homology over GF(p).

    See the module docstring for the windowing argument.  With the default
    cap (the regularity of the Buchberger lead ideal) the table, regularity,
    projective dimension and depth are exact.
    """
    limit = 5 if allow_n5 else _KOSZUL_MAX_N
    if g.n > limit:
        raise GuardError(f"Koszul oracle guarded at n <= {limit}")
    n = g.n
    if g.edge_count == 0:
        table = BettiTable(n, p, {})
        return KoszulResult(table, p, n, 0, "lead-ideal", None, True, False)
    scanner = _KoszulScanner(g, p)
    lead_table = taylor_betti(
        minimalize([Monomial(e) for e in scanner.lead_exps]), p, max_gens=taylor_max_gens
    )
    lead_reg = lead_table.regularity_of_ideal()
    if reg_cap is None:
        cap = lead_reg
        cap_source = "lead-ideal"
        certified = True
    else:
        cap = reg_cap
        cap_source = "user"
        certified = cap >= lead_reg
    entries: dict[tuple[int, bytes], int] = {}
    pd_frontier = 0
    max_gap = 0
    j = 1
    while j <= pd_frontier + 1 + cap and j <= 2 * n + cap:
        for a in _compositions(j, n):
            for i, val in scanner.strand(a).items():
                entries[(i, bytes(a))] = val
                pd_frontier = max(pd_frontier, i)
                max_gap = max(max_gap, j - i)
        j += 1
    table = BettiTable(n, p, entries)
    inconclusive = (not certified) and max_gap >= cap
    return KoszulResult(
        table, p, n, cap, cap_source, lead_reg, certified, inconclusive
    )


def restricted_entries_match(
    full: BettiTable, sub: BettiTable, subset
) -> tuple[bool, list[tuple[int, bytes, int, int]]]:
    """Compare two N^n tables on the multidegrees supported inside the subset."""
    wset = set(subset)
    keys = set(full.entries) | set(sub.entries)
    mismatches = []
    for i, a in sorted(keys):
        support = {k + 1 for k, v in enumerate(a) if v}
        if not support <= wset:
            continue
        va = full.entries.get((i, a), 0)
        vb = sub.entries.get((i, a), 0)
        if va != vb:
            mismatches.append((i, a, va, vb))
    return not mismatches, mismatches


def restriction_betti_match(
    g: Graph, subset: tuple[int, ...], p: int, allow_n5: bool = False
) -> tuple[bool, list[tuple[int, bytes, int, int]]]:
    """Compare the tables of J_G and J_{G_W} on multidegrees supported in W.

    G_W keeps the vertex set and drops edges leaving W, so both ideals live
    in the same ring.  Returns (match, mismatches).
    """
    from .graphs import masked_graph

    full = koszul_betti(g, p, allow_n5=allow_n5)
    sub = koszul_betti(masked_graph(g, subset), p, allow_n5=allow_n5)
    return restricted_entries_match(full.table, sub.table, subset)
