"""Partition combinatorics and closed-form degree bookkeeping.

A partition of n encodes a root-multiplicity pattern of a degree-n binary
form.  Everything in this module is exact integer arithmetic: Hilbert and
Oeding degrees, hook duality, the refinement order, ED degrees and polar
classes for hooks, and the embedded census of all strata up to n = 7.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    NotHook,
    NotHypersurface,
    NotHypersurfaceCase,
    OutOfRange,
    OutOfTable,
    SizeMismatch,
)

_MAX_PARTS = 20  # guard for the exhaustive refinement search


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            parts = tuple(sorted(parts, reverse=True))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse '3,2,1,1' or exponent notation '1^3 4'."""
        text = text.strip()
        if "^" in text:
            parts = []
            for token in text.replace(",", " ").split():
                if "^" in token:
                    base, exp = token.split("^")
                    # '1^3' means the part 1 repeated 3 times
                    parts.extend([int(base)] * int(exp))
                else:
                    parts.append(int(token))
            return cls(tuple(parts))
        tokens = [t for t in re.split(r"[,\s]+", text) if t]
        return cls(tuple(int(t) for t in tokens))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def d(self) -> int:
        """Number of parts."""
        return len(self.parts)

    def multiplicity(self, j: int) -> int:
        """m_j, the number of parts equal to j."""
        return sum(1 for p in self.parts if p == j)

    @property
    def multiplicities(self) -> dict[int, int]:
        """Map j -> m_j over the occurring part sizes."""
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def is_hook(self) -> bool:
        """At most one part exceeds 1."""
        return sum(1 for p in self.parts if p > 1) <= 1

    def hook_params(self) -> tuple[int, int]:
        """Return (n, a) for a hook {1^(n-a), a}; a = 1 for all-ones."""
        if not self.is_hook():
            raise NotHook(f"{self} is not a hook")
        a = self.parts[0] if self.parts else 0
        return self.n, a

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def _partitions_of(n: int) -> list[tuple[int, ...]]:
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, acc + [p])

    rec(n, n, [])
    return out


def all_partitions(n: int) -> list[Partition]:
    """All partitions of n, in reverse lexicographic order."""
    return [Partition(p) for p in _partitions_of(n)]


def hilbert_degree(lam: Partition) -> int:
    """Degree of the multiple-root locus: d!/(m_1!...m_p!) * prod(parts)."""
    denom = 1
    for m in lam.multiplicities.values():
        denom *= math.factorial(m)
    return math.factorial(lam.d) // denom * math.prod(lam.parts)


def oeding_dual_degree(lam: Partition) -> int:
    """Degree of the dual hypersurface; requires no part equal to 1."""
    if lam.multiplicity(1) > 0:
        raise NotHypersurface(f"dual of {lam} is not a hypersurface (m_1 > 0)")
    denom = 1
    for j, m in lam.multiplicities.items():
        if j >= 2:
            denom *= math.factorial(m)
    return math.factorial(lam.d + 1) // denom * math.prod(p - 1 for p in lam.parts)


def hook_dual(lam: Partition) -> Partition:
    """Dual of the hook {1^(n-a), a} is the hook {1^(a-2), n-a+2}."""
    n, a = lam.hook_params()
    if a < 2:
        raise NotHook(f"{lam} has largest part < 2; its dual is not a root locus")
    return Partition((n - a + 2,) + (1,) * (a - 2))


def dual_hooks(lam: Partition) -> tuple[Partition, ...]:
    """Hook shapes whose join makes up the dual variety, one per part >= 2."""
    n = lam.n
    hooks = [
        Partition((n - p + 2,) + (1,) * (p - 2)) for p in lam.parts if p >= 2
    ]
    return tuple(sorted(hooks, reverse=True))


def _grouped_sums(mu_parts: tuple[int, ...], targets: tuple[int, ...]) -> bool:
    """Can mu_parts be split into disjoint groups summing to the targets?"""
    if not targets:
        return not mu_parts
    target = targets[0]
    pool = list(mu_parts)
    seen = set()
    # subsets of the pool (by index) summing to the first target
    for size in range(1, len(pool) + 1):
        for idx in itertools.combinations(range(len(pool)), size):
            chosen = tuple(pool[i] for i in idx)
            if sum(chosen) != target or chosen in seen:
                continue
            seen.add(chosen)
            rest = tuple(pool[i] for i in range(len(pool)) if i not in idx)
            if _grouped_sums(rest, targets[1:]):
                return True
    return False


def refines(mu: Partition, lam: Partition) -> bool:
    """True iff every part of lam is a sum of parts of mu (disjointly)."""
    if mu.n != lam.n:
        raise SizeMismatch(f"|{mu}| = {mu.n} != {lam.n} = |{lam}|")
    if mu.d > _MAX_PARTS or lam.d > _MAX_PARTS:
        raise OutOfRange(f"refinement search limited to {_MAX_PARTS} parts")
    return _grouped_sums(mu.parts, tuple(sorted(lam.parts, reverse=True)))


def _reduced(lam: Partition) -> tuple[int, ...]:
    """lam' : subtract 1 from every part and drop the zeros."""
    return tuple(p - 1 for p in lam.parts if p >= 2)


def dual_contains(lam: Partition, mu: Partition) -> bool:
    """Containment of dual varieties, decided on the reduced partitions.

    (dual of lam) is inside (dual of mu) iff |lam'| <= |mu'| and lam' can be
    grown, by adding to its parts, into a partition refined by mu'.
    """
    if lam.n != mu.n:
        raise SizeMismatch(f"|{lam}| = {lam.n} != {mu.n} = |{mu}|")
    lam_r, mu_r = _reduced(lam), _reduced(mu)
    slack = sum(mu_r) - sum(lam_r)
    if slack < 0:
        return False
    if not lam_r:
        return not mu_r
    mu_part = Partition(mu_r)
    # distribute the slack over the parts of lam' in all ways
    for comp in itertools.combinations_with_replacement(range(len(lam_r)), slack):
        grown = list(lam_r)
        for i in comp:
            grown[i] += 1
        if refines(mu_part, Partition(tuple(grown))):
            return True
    return False


@dataclass(frozen=True)
class EdDegrees:
    """Pair of Euclidean distance degrees (invariant and generic metric)."""

    special: int
    generic: int


def ed_degrees_hook(n: int, a: int) -> EdDegrees:
    """ED degrees of the locus of forms with an a-fold root: (n, (2a-1)n - 2(a-1)^2)."""
    if not 2 <= a <= n:
        raise IndexError(f"need 2 <= a <= n, got a={a}, n={n}")
    return EdDegrees(special=n, generic=(2 * a - 1) * n - 2 * (a - 1) ** 2)


def polar_classes_hook(n: int, a: int) -> tuple[int, int]:
    """The two nonzero polar classes (delta_{a-1}, delta_a) of a hook locus."""
    if not 2 <= a <= n:
        raise IndexError(f"need 2 <= a <= n, got a={a}, n={n}")
    return (a * (n - a + 1), (n - a + 2) * (a - 1))


# Census of multiple root loci for n <= 7: partition -> (polar classes
# delta_1..delta_n, special ED degree, generic ED degree, hook shapes of the
# dual join).  Degrees of ideal generators are intentionally not carried.
_TABLE1_RAW: dict[str, tuple[str, int, int, str]] = {
    "2": ("2,2", 2, 4, "2"),
    "3": ("0,3,4", 3, 7, "21"),
    "21": ("4,3,0", 3, 7, "3"),
    "4": ("0,0,4,6", 4, 10, "211"),
    "31": ("0,6,6,0", 4, 12, "31"),
    "211": ("6,4,0,0", 4, 10, "4"),
    "22": ("0,4,6,3", 7, 13, "4|4"),
    "5": ("0,0,0,5,8", 5, 13, "2111"),
    "41": ("0,0,8,9,0", 5, 17, "311"),
    "311": ("0,9,8,0,0", 5, 17, "41"),
    "2111": ("8,5,0,0,0", 5, 13, "5"),
    "221": ("0,12,16,6,0", 16, 34, "5|5"),
    "32": ("0,0,12,21,12", 21, 45, "41|5"),
    "6": ("0,0,0,0,6,10", 6, 16, "21111"),
    "51": ("0,0,0,10,12,0", 6, 22, "3111"),
    "411": ("0,0,12,12,0,0", 6, 24, "411"),
    "3111": ("0,12,10,0,0,0", 6, 22, "51"),
    "21111": ("10,6,0,0,0,0", 6, 16, "6"),
    "2211": ("0,24,30,10,0,0", 28, 64, "6|6"),
    "222": ("0,0,8,16,12,4", 20, 40, "6|6|6"),
    "33": ("0,0,0,9,18,12", 19, 39, "51|51"),
    "321": ("0,0,36,56,24,0", 44, 116, "51|6"),
    "42": ("0,0,0,16,30,18", 26, 64, "411|6"),
    "7": ("0,0,0,0,0,7,12", 7, 19, "211111"),
    "61": ("0,0,0,0,12,15,0", 7, 27, "31111"),
    "511": ("0,0,0,15,16,0,0", 7, 31, "4111"),
    "4111": ("0,0,16,15,0,0,0", 7, 31, "511"),
    "31111": ("0,15,12,0,0,0,0", 7, 27, "61"),
    "211111": ("12,7,0,0,0,0,0", 7, 19, "7"),
    "22111": ("0,40,48,15,0,0,0", 43, 103, "7|7"),
    "2221": ("0,0,32,60,40,10,0", 62, 142, "7|7|7"),
    "3211": ("0,0,72,105,40,0,0", 73, 217, "61|7"),
    "322": ("0,0,0,36,80,66,24", 94, 206, "61|7|7"),
    "331": ("0,0,0,27,48,24,0", 39, 99, "61|61"),
    "421": ("0,0,0,48,80,36,0", 52, 164, "511|7"),
    "43": ("0,0,0,0,24,51,36", 51, 111, "511|61"),
    "52": ("0,0,0,0,20,39,24", 31, 83, "4111|7"),
}


@dataclass(frozen=True)
class TableRow:
    partition: Partition
    multidegree: tuple[int, ...]
    ed_special: int
    ed_generic: int
    hooks: tuple[Partition, ...]


def _parse_digit_partition(text: str) -> Partition:
    # census keys use single-digit parts ("211111"), valid since n <= 7
    return Partition(tuple(int(ch) for ch in text))


@lru_cache(maxsize=1)
def _table1() -> dict[Partition, TableRow]:
    table = {}
    for key, (multi, special, generic, hooks) in _TABLE1_RAW.items():
        lam = _parse_digit_partition(key)
        row = TableRow(
            partition=lam,
            multidegree=tuple(int(x) for x in multi.split(",")),
            ed_special=special,
            ed_generic=generic,
            hooks=tuple(
                sorted((_parse_digit_partition(h) for h in hooks.split("|")), reverse=True)
            ),
        )
        table[lam] = row
    return table


def table1_lookup(lam: Partition) -> TableRow:
    """Census row for a partition with n <= 7."""
    if lam.n > 7:
        raise OutOfTable(f"census covers n <= 7, got n = {lam.n}")
    return _table1()[lam]


def secant_hypersurface_degree(k: int, n: int, a: int) -> int:
    """Degree (k+1)(n-a+1)^k of the k-th secant hypersurface; needs n = k(n-a+2)."""
    if n != k * (n - a + 2):
        raise NotHypersurfaceCase(f"n = {n} != k(n-a+2) = {k * (n - a + 2)}")
    return (k + 1) * (n - a + 1) ** k


@dataclass(frozen=True)
class BoundaryDegrees:
    """Components of the real-rank boundary hypersurface for degree n."""

    components: tuple[tuple[Partition, int], ...]
    hankel_degree: int | None  # excluded factor, even n only


def real_rank_boundary_degrees(n: int) -> BoundaryDegrees:
    """Partitions and degrees of the real-rank boundary components."""
    if n < 5:
        raise OutOfRange(f"boundary machinery needs n >= 5, got {n}")
    if n % 2 == 1:
        k = (n + 1) // 2
        lam = Partition((3,) + (2,) * (k - 2))
        return BoundaryDegrees(components=((lam, 2 * k * (k - 1)),), hankel_degree=None)
    k = n // 2
    nodes = Partition((3, 3) + (2,) * (k - 3))
    cusps = Partition((4,) + (2,) * (k - 2))
    return BoundaryDegrees(
        components=(
            (nodes, 2 * k * (k - 1) * (k - 2)),
            (cusps, 3 * k * (k - 1)),
        ),
        hankel_degree=k + 1,
    )
