"""Monomial arithmetic in K[x_1..x_n, y_1..y_n] with a squarefree fast path.

Exponent vectors are stored as bytes of length 2n: entry i is the exponent of
x_{i+1} for i < n and of y_{i-n+1} for i >= n.  Comparing the raw bytes is
exactly the lexicographic order induced by x_1 > ... > x_n > y_1 > ... > y_n.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import FormatError, GuardError

_SAT = 255  # exponents saturate at the byte ceiling; never reached in this domain


class Monomial:
    """Immutable monomial over 2n variables."""

    __slots__ = ("exps",)

    def __init__(self, exps: bytes | bytearray | Iterable[int]):
        self.exps = bytes(exps)

    # -- constructors ------------------------------------------------------

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return cls(bytes(nvars))

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Monomial":
        e = bytearray(nvars)
        e[index] = 1
        return cls(e)

    @classmethod
    def from_mask(cls, mask: int, nvars: int) -> "Monomial":
        e = bytearray(nvars)
        for i in range(nvars):
            if (mask >> i) & 1:
                e[i] = 1
        return cls(e)

    # -- basic queries -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    @property
    def mask(self) -> int:
        """Support bitmask (bit i set iff variable i occurs)."""
        m = 0
        for i, e in enumerate(self.exps):
            if e:
                m |= 1 << i
        return m

    @property
    def is_one(self) -> bool:
        return not any(self.exps)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(
            bytes(min(_SAT, a + b) for a, b in zip(self.exps, other.exps))
        )

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(bytes(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(bytes(min(a, b) for a, b in zip(self.exps, other.exps)))

    def div(self, other: "Monomial") -> "Monomial":
        """Exact division; requires other | self."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(bytes(a - b for a, b in zip(self.exps, other.exps)))

    def colon(self, other: "Monomial") -> "Monomial":
        """self / gcd(self, other), the colon-ideal contribution of self."""
        return Monomial(
            bytes(max(0, a - b) for a, b in zip(self.exps, other.exps))
        )

    def mult_support(self) -> frozenset[int]:
        """Vertices k (1-based) with both x_k and y_k dividing the monomial."""
        n = self.nvars // 2
        return frozenset(
            k + 1 for k in range(n) if self.exps[k] and self.exps[n + k]
        )

    # -- text form ---------------------------------------------------------

    def text(self) -> str:
        """Canonical text form: x-factors then y-factors, ascending; "1" for units."""
        n = self.nvars // 2
        parts = []
        for i, e in enumerate(self.exps):
            if not e:
                continue
            name = f"x{i + 1}" if i < n else f"y{i - n + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    _FACTOR_RE = re.compile(r"^([xy])(\d+)(?:\^(\d+))?$")

    @classmethod
    def parse(cls, text: str, n: int) -> "Monomial":
        """Parse the text form over n x-variables and n y-variables; accepts unsorted factors."""
        text = text.strip()
        e = bytearray(2 * n)
        if text == "1":
            return cls(e)
        for factor in text.split("*"):
            m = cls._FACTOR_RE.match(factor.strip())
            if not m:
                raise FormatError(f"bad monomial factor {factor!r}")
            block, idx, power = m.group(1), int(m.group(2)), m.group(3)
            if not 1 <= idx <= n:
                raise FormatError(f"variable index {idx} out of range 1..{n}")
            pos = idx - 1 if block == "x" else n + idx - 1
            e[pos] = min(_SAT, e[pos] + (int(power) if power else 1))
        return cls(e)

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return hash(self.exps)

    def __repr__(self) -> str:
        return f"Monomial({self.text()})"


class MonomialIdeal:
    """Monomial ideal with an ordered generator list.

    The order is meaningful: mapping cones and Lyubeznik subsets read it.
    """

    __slots__ = ("gens",)

    def __init__(self, gens: Sequence[Monomial]):
        self.gens = tuple(gens)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialIdeal) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        return "MonomialIdeal(" + ", ".join(g.text() for g in self.gens) + ")"

    @property
    def nvars(self) -> int:
        return self.gens[0].nvars if self.gens else 0

    def gen_set(self) -> frozenset[Monomial]:
        return frozenset(self.gens)

    def contains(self, m: Monomial) -> bool:
        """Monomial membership: some generator divides m."""
        return any(g.divides(m) for g in self.gens)

    @property
    def is_unit(self) -> bool:
        return any(g.is_one for g in self.gens)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        """Colon ideal (self : m), minimalized, order inherited from the generators."""
        return minimalize([g.colon(m) for g in self.gens])

    def text_lines(self) -> list[str]:
        return [g.text() for g in self.gens]


def minimalize(gens: Sequence[Monomial]) -> MonomialIdeal:
    """Drop divisibility-redundant generators, keeping the surviving order stable.

    Among equal monomials the earliest survives.
    """
    kept = []
    for i, m in enumerate(gens):
        redundant = False
        for j, other in enumerate(gens):
            if j == i:
                continue
            if other.divides(m) and (other.exps != m.exps or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(m)
    return MonomialIdeal(kept)


# ---------------------------------------------------------------------------
# Lyubeznik subsets


def is_lyubeznik_subset(indices: Sequence[int], gens: Sequence[Monomial]) -> bool:
    """Check the Lyubeznik condition for 1-based generator indices i_1 < ... < i_k.

    For every position j, no generator strictly before i_j may divide the lcm
    of the tail m_{i_j}, ..., m_{i_k}.
    """
    k = len(indices)
    if k == 0:
        return True
    idx = [i - 1 for i in indices]
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError("indices must be strictly increasing")
    if idx[0] < 0 or idx[-1] >= len(gens):
        raise IndexError("generator index out of range")
    tails: list[Monomial] = [gens[idx[-1]]] * k
    for j in range(k - 2, -1, -1):
        tails[j] = tails[j + 1].lcm(gens[idx[j]])
    for j in range(k):
        t = tails[j]
        for l in range(idx[j]):
            if gens[l].divides(t):
                return False
    return True


def lyubeznik_subsets(
    gens: Sequence[Monomial],
    max_size: int,
    max_gens: int = 20,
) -> list[tuple[int, ...]]:
    """All Lyubeznik subsets of size <= max_size, as 1-based index tuples in lex order.

    Extension pruning is sound because tail lcms only grow when an index is
    appended, so a violated condition stays violated.
    """
    g = len(gens)
    if g > max_gens:
        raise GuardError(f"{g} generators exceeds the guard of {max_gens}")
    squarefree = all(m.is_squarefree for m in gens)
    if squarefree:
        masks = [m.mask for m in gens]
        return _lyubeznik_masks(masks, max_size)
    results: list[tuple[int, ...]] = []

    def dfs(prefix: list[int]) -> None:
        start = prefix[-1] + 1 if prefix else 0
        for q in range(start, g):
            cand = prefix + [q]
            if is_lyubeznik_subset([i + 1 for i in cand], gens):
                results.append(tuple(i + 1 for i in cand))
                if len(cand) < max_size:
                    dfs(cand)

    if max_size >= 1:
        dfs([])
    return results


def _lyubeznik_masks(masks: list[int], max_size: int) -> list[tuple[int, ...]]:
    """Squarefree fast path: divisibility is mask containment."""
    g = len(masks)
    results: list[tuple[int, ...]] = []

    def ok(idx: list[int]) -> bool:
        tail = 0
        tails = [0] * len(idx)
        for j in range(len(idx) - 1, -1, -1):
            tail |= masks[idx[j]]
            tails[j] = tail
        for j, i in enumerate(idx):
            t = tails[j]
            for l in range(i):
                if masks[l] & ~t == 0:
                    return False
        return True

    def dfs(prefix: list[int]) -> None:
        start = prefix[-1] + 1 if prefix else 0
        for q in range(start, g):
            cand = prefix + [q]
            if ok(cand):
                results.append(tuple(i + 1 for i in cand))
                if len(cand) < max_size:
                    dfs(cand)

    if max_size >= 1:
        dfs([])
    return results


# ---------------------------------------------------------------------------
# mapping cone Poincare bound


class PoincareBound:
    """Coefficient-wise upper bound for the Betti numbers of a monomial quotient.

    Terms map (homological index, multidegree bytes) to a non-negative count;
    the constant term (0, zero degree) is exactly 1.
    """

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: dict[tuple[int, bytes], int], nvars: int):
        self.terms = terms
        self.nvars = nvars

    def coefficient(self, k: int, degree: bytes) -> int:
        return self.terms.get((k, degree), 0)

    def max_index(self) -> int:
        return max(k for k, _ in self.terms)

    def dominates_entries(
        self, entries: dict[tuple[int, bytes], int]
    ) -> list[tuple[int, bytes]]:
        """Entries exceeding the bound; empty means the bound dominates."""
        return [
            key
            for key, value in entries.items()
            if value > self.terms.get(key, 0)
        ]


def mapping_cone_bound(
    gens: Sequence[Monomial],
    nvars: int | None = None,
    max_gens: int = 15,
) -> PoincareBound:
    """Iterated mapping-cone upper bound on the Poincare series of S/(gens).

    Evaluates 1 + sum over non-redundant generators m_j of
    bound((m_1..m_{j-1}) : m_j) * m_j shifted one homological step, recursing
    until the zero ideal.  Valid coefficient-wise for any generator order; the
    order passed in is respected.
    """
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required for an empty generator list")
        nvars = gens[0].nvars
    if len(gens) > max_gens:
        raise GuardError(f"{len(gens)} generators exceeds the guard of {max_gens}")
    zero = bytes(nvars)
    memo: dict[tuple[bytes, ...], dict[tuple[int, bytes], int]] = {}

    def bound(items: tuple[Monomial, ...]) -> dict[tuple[int, bytes], int]:
        key = tuple(m.exps for m in items)
        hit = memo.get(key)
        if hit is not None:
            return hit
        result: dict[tuple[int, bytes], int] = {(0, zero): 1}
        for j, m in enumerate(items):
            if any(earlier.divides(m) for earlier in items[:j]):
                continue
            # m_j outside the earlier ideal, so the colon below is proper
            colon_gens = minimalize([g.colon(m) for g in items[:j]])
            sub = bound(colon_gens.gens)
            for (k, d), c in sub.items():
                shifted = (
                    k + 1,
                    bytes(min(_SAT, a + b) for a, b in zip(d, m.exps)),
                )
                result[shifted] = result.get(shifted, 0) + c
        memo[key] = result
        return result

    return PoincareBound(bound(tuple(gens)), nvars)
