"""Binary forms: coefficient bases, apolarity calculus, and root structure.

A degree-n binary form is stored by its monomial coefficients c_0..c_n,

    f(x, y) = sum_i c_i x^i y^(n-i).

The scaled view a_i = c_i / binom(n, i) is what the invariant inner product
contracts: <f, g> = sum_i binom(n, i) a_i b_i.  All arithmetic stays exact
(int / Fraction) whenever the inputs are rational; floats propagate as usual.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import AmbiguousStructure, DegreeMismatch
from .partitions import Partition

COS, SIN = "COS", "SIN"


def is_exact(value) -> bool:
    return isinstance(value, Rational)


def _as_fraction(value):
    return value if isinstance(value, (int, Fraction)) else Fraction(value)


@dataclass(frozen=True)
class BinaryForm:
    """Immutable binary form of fixed degree (zero coefficients allowed)."""

    degree: int
    monomial_coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.monomial_coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "monomial_coeffs", coeffs)

    @classmethod
    def from_scaled(cls, scaled) -> "BinaryForm":
        """Build from the scaled coefficients a_i (c_i = binom(n,i) a_i)."""
        scaled = tuple(scaled)
        n = len(scaled) - 1
        return cls(n, tuple(math.comb(n, i) * a for i, a in enumerate(scaled)))

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, i: int, coeff=1) -> "BinaryForm":
        c = [0] * (degree + 1)
        c[i] = coeff
        return cls(degree, tuple(c))

    @property
    def scaled_coeffs(self) -> tuple:
        n = self.degree
        out = []
        for i, c in enumerate(self.monomial_coeffs):
            b = math.comb(n, i)
            out.append(Fraction(c, b) if isinstance(c, (int, Fraction)) else c / b)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.monomial_coeffs)

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.monomial_coeffs)

    def map_coeffs(self, fn) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(fn(c) for c in self.monomial_coeffs))

    def to_float(self) -> "BinaryForm":
        return self.map_coeffs(float)

    def to_exact(self) -> "BinaryForm":
        return self.map_coeffs(_as_fraction)

    def coeff_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.monomial_coeffs])

    def evaluate(self, x, y):
        """Evaluate sum_i c_i x^i y^(n-i)."""
        return _eval_homog(self.monomial_coeffs, x, y)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_degree(other)
        return BinaryForm(
            self.degree,
            tuple(a + b for a, b in zip(self.monomial_coeffs, other.monomial_coeffs)),
        )

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        self._check_degree(other)
        return BinaryForm(
            self.degree,
            tuple(a - b for a, b in zip(self.monomial_coeffs, other.monomial_coeffs)),
        )

    def __neg__(self) -> "BinaryForm":
        return self.map_coeffs(lambda c: -c)

    def scale(self, alpha) -> "BinaryForm":
        return self.map_coeffs(lambda c: alpha * c)

    def multiply(self, other: "BinaryForm") -> "BinaryForm":
        """Polynomial product (degrees add)."""
        n, m = self.degree, other.degree
        out = [0] * (n + m + 1)
        for i, a in enumerate(self.monomial_coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.monomial_coeffs):
                if b != 0:
                    out[i + j] += a * b
        return BinaryForm(n + m, tuple(out))

    def substitute_rotation(self) -> "BinaryForm":
        """The form f(-y, x)."""
        n = self.degree
        # x^i y^(n-i) -> (-y)^i x^(n-i): coefficient of x^(n-i) y^i
        out = [0] * (n + 1)
        for i, c in enumerate(self.monomial_coeffs):
            out[n - i] = (-1) ** i * c
        return BinaryForm(n, tuple(out))

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.monomial_coeffs), default=0.0)

    def _check_degree(self, other: "BinaryForm"):
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def __str__(self) -> str:
        terms = []
        n = self.degree
        for i, c in enumerate(self.monomial_coeffs):
            if c == 0:
                continue
            xs = f"x^{i}" if i > 1 else ("x" if i == 1 else "")
            ys = f"y^{n - i}" if n - i > 1 else ("y" if n - i == 1 else "")
            mono = "".join(filter(None, [xs, ys])) or "1"
            terms.append(f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


def _eval_homog(coeffs, x, y):
    n = len(coeffs) - 1
    acc = 0
    for i, c in enumerate(coeffs):
        if c != 0:
            acc += c * x**i * y ** (n - i)
    return acc


def linear_power(s, t, exponent: int) -> BinaryForm:
    """Expand (t*x - s*y)^exponent, the factor carrying a root at (s : t)."""
    a = exponent
    return BinaryForm(
        a, tuple(math.comb(a, m) * t**m * (-s) ** (a - m) for m in range(a + 1))
    )


def dual_linear_power(s, t, exponent: int) -> BinaryForm:
    """Expand (s*x + t*y)^exponent, the perpendicular factor."""
    e = exponent
    return BinaryForm(
        e, tuple(math.comb(e, m) * s**m * t ** (e - m) for m in range(e + 1))
    )


def apolar_pairing(f: BinaryForm, g: BinaryForm):
    """Invariant pairing sum_i binom(n,i) a_i b_i (exact over rationals)."""
    if f.degree != g.degree:
        raise DegreeMismatch(f"degree {f.degree} vs {g.degree}")
    n = f.degree
    total = 0
    for i, (cf, cg) in enumerate(zip(f.monomial_coeffs, g.monomial_coeffs)):
        if cf == 0 or cg == 0:
            continue
        b = math.comb(n, i)
        if isinstance(cf, (int, Fraction)) and isinstance(cg, (int, Fraction)):
            total += Fraction(cf * cg, b)
        else:
            total += cf * cg / b
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def bombieri_norm_sq(f: BinaryForm):
    """Squared invariant norm <f, f> >= 0."""
    return apolar_pairing(f, f)


def apply_L(k: int, f: BinaryForm) -> BinaryForm:
    """Order-k rotation-equivariant endomorphism of degree-n forms.

    Normalized so that k = 1 gives (1/n)(x d/dy - y d/dx) and k = n gives the
    quarter-turn substitution f(-y, x).  In scaled coordinates,

        b_j = (1/binom(n,j)) * sum_i (-1)^i binom(k,i) binom(n-k, i+j-k) a_(2i+j-k).
    """
    n = f.degree
    if not 0 <= k <= n:
        raise IndexError(f"need 0 <= k <= deg(f) = {n}, got k = {k}")
    a = f.scaled_coeffs
    out = []
    for j in range(n + 1):
        # the sum equals binom(n,j) * b_j, i.e. the monomial coefficient
        acc = 0
        for i in range(max(0, k - j), min(k, n - j) + 1):
            coeff = (-1) ** i * math.comb(k, i) * math.comb(n - k, i + j - k)
            if coeff != 0:
                acc += coeff * a[2 * i + j - k]
        out.append(acc)
    return BinaryForm(n, tuple(out))


def special_form(n: int, kind: str) -> BinaryForm:
    """Rotation-invariant test forms: COS is Re(x+iy)^n, SIN is Im(x+iy)^n."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    coeffs = [0] * (n + 1)
    for j in range(n + 1):
        # coefficient of x^(n-j) y^j in (x + i y)^n is binom(n,j) i^j
        if kind == COS and j % 2 == 0:
            coeffs[n - j] = (-1) ** (j // 2) * math.comb(n, j)
        elif kind == SIN and j % 2 == 1:
            coeffs[n - j] = (-1) ** ((j - 1) // 2) * math.comb(n, j)
    return BinaryForm(n, tuple(coeffs))


def apply_apolarity_operator(op: BinaryForm, f: BinaryForm) -> BinaryForm:
    """Apply op(d/dx, d/dy) to f; degree drops by deg(op)."""
    m, n = op.degree, f.degree
    if m > n:
        raise DegreeMismatch(f"operator degree {m} exceeds form degree {n}")
    out = [0] * (n - m + 1)
    for k, d in enumerate(op.monomial_coeffs):
        if d == 0:
            continue
        # d * d^k/dx^k d^(m-k)/dy^(m-k) applied to c_i x^i y^(n-i)
        for i, c in enumerate(f.monomial_coeffs):
            if c == 0 or i < k or n - i < m - k:
                continue
            falling = math.perm(i, k) * math.perm(n - i, m - k)
            out[i - k] += d * c * falling
    return BinaryForm(n - m, tuple(out))


@dataclass(frozen=True)
class ProjectivePoint:
    """Point (s : t) normalized so max(|s|,|t|) = 1, first nonzero positive."""

    s: float
    t: float

    def __post_init__(self):
        s, t = float(self.s), float(self.t)
        scale = max(abs(s), abs(t))
        if scale == 0.0:
            raise ValueError("(0, 0) is not a projective point")
        s, t = s / scale, t / scale
        lead = s if s != 0.0 else t
        if lead < 0:
            s, t = -s, -t
        object.__setattr__(self, "s", s + 0.0)  # normalize -0.0
        object.__setattr__(self, "t", t + 0.0)

    def affine(self) -> float:
        """The ratio s/t (inf at the point (1 : 0))."""
        return math.inf if self.t == 0 else self.s / self.t

    def is_infinity(self) -> bool:
        return self.t == 0

    def chordal_distance(self, other: "ProjectivePoint") -> float:
        cross = abs(self.s * other.t - self.t * other.s)
        return cross / (math.hypot(self.s, self.t) * math.hypot(other.s, other.t))


def _chordal(p, q) -> float:
    """Chordal distance between complex projective points (s, t) tuples."""
    cross = abs(p[0] * q[1] - p[1] * q[0])
    return cross / (math.hypot(abs(p[0]), abs(p[1])) * math.hypot(abs(q[0]), abs(q[1])))


def complex_projective_roots(f: BinaryForm) -> list[tuple[complex, complex]]:
    """All n roots of f on the complex projective line, with repetition."""
    if f.is_zero():
        raise ValueError("zero form has no well-defined roots")
    coeffs = [complex(c) for c in f.monomial_coeffs]
    n = f.degree
    # roots at (1 : 0) correspond to vanishing leading (x^n-side) coefficients
    top = n
    while top > 0 and abs(coeffs[top]) == 0.0:
        top -= 1
    roots = [(1.0 + 0j, 0j)] * (n - top)
    if top > 0:
        finite = np.roots(np.array(coeffs[: top + 1][::-1]))
        roots.extend((complex(r), 1.0 + 0j) for r in finite)
    return roots


def _cluster(points: list, tol: float) -> list[list[int]]:
    """Single-linkage clusters of projective points at chordal tolerance."""
    m = len(points)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if _chordal(points[i], points[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def clustered_roots(
    f: BinaryForm, cluster_tol: float = 1e-6
) -> list[tuple[tuple[complex, complex], int]]:
    """Cluster the complex roots; return normalized representatives with multiplicity.

    Each representative (s, t) has max(|s|, |t|) = 1.  Raises
    AmbiguousStructure when the cluster sizes change between the given
    tolerance and twice the tolerance.
    """
    pts = complex_projective_roots(f)
    clusters = _cluster(pts, cluster_tol)
    clusters2 = _cluster(pts, 2 * cluster_tol)
    if sorted(len(c) for c in clusters) != sorted(len(c) for c in clusters2):
        raise AmbiguousStructure(
            f"clustering unstable between tol and 2*tol ({cluster_tol})"
        )
    out = []
    for group in clusters:
        # average in the chart of the larger coordinate, then renormalize
        s = sum(pts[i][0] for i in group) / len(group)
        t = sum(pts[i][1] for i in group) / len(group)
        scale = max(abs(s), abs(t))
        out.append(((s / scale, t / scale), len(group)))
    return out


def cluster_is_real(rep: tuple[complex, complex], tol: float = 1e-6) -> bool:
    """Whether a normalized cluster representative lies on the real line."""
    s, t = rep
    cross = abs(s * t.conjugate() - s.conjugate() * t)
    return cross <= 2 * tol


def multiplicity_structure(f: BinaryForm, cluster_tol: float = 1e-6) -> Partition:
    """Partition of root multiplicities detected at the clustering tolerance."""
    clusters = clustered_roots(f, cluster_tol)
    return Partition(tuple(sorted((m for _, m in clusters), reverse=True)))
