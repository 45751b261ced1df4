"""Numerical and exact kernels.

Univariate real-root isolation runs on a Sturm chain over exact rationals
(float inputs are rationalized at 1e-12 relative granularity first), so every
returned root list is certified against the exact count.  Resultants and
discriminants are computed exactly by integer Bareiss elimination.  Dense
linear algebra (left kernels, Hessian spectra) uses numpy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import CertificationFailure, DegenerateKernel

RATIONALIZE_GRANULARITY = 10**12
DEFAULT_KERNEL_TOL = 1e-8
DEFAULT_SINGULAR_TOL = 1e-6


class StationaryClass(enum.Enum):
    MIN = "min"
    MAX = "max"
    SADDLE = "saddle"
    UNDECIDED = "undecided"

    def flipped(self) -> "StationaryClass":
        if self is StationaryClass.MIN:
            return StationaryClass.MAX
        if self is StationaryClass.MAX:
            return StationaryClass.MIN
        return self


@dataclass(frozen=True)
class UnivariatePoly:
    """Polynomial with ascending coefficients; trailing zeros are stripped.

    ``inf_mult`` records the multiplicity of the root at infinity when the
    polynomial arose by dehomogenizing a binary form whose leading
    coefficients vanish.
    """

    coeffs: tuple
    inf_mult: int = 0

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if coeffs == [0]:
            coeffs = []
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_binary_form(cls, form) -> "UnivariatePoly":
        """Dehomogenize at y = 1; vanishing top coefficients go to inf_mult."""
        coeffs = list(form.monomial_coeffs)
        inf = 0
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
            inf += 1
        if not coeffs:
            raise ValueError("zero form")
        return cls(tuple(coeffs), inf_mult=inf)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(isinstance(c, Rational) for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


# ---------------------------------------------------------------------------
# exact polynomial helpers on ascending Fraction lists


def _strip(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _divmod_poly(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        factor = a[k + len(b) - 1] / lb
        q[k] = factor
        if factor:
            for i, bc in enumerate(b):
                a[k + i] -= factor * bc
    return _strip(q), _strip(a[: len(b) - 1])


def _primitive(p: list[Fraction]) -> list[Fraction]:
    """Scale by a positive rational to a primitive integer vector."""
    if not p:
        return p
    denom_lcm = 1
    for c in p:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in p]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return [Fraction(v, g) for v in ints] if g else list(p)


def _gcd_poly(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _primitive(list(a)), _primitive(list(b))
    while b:
        _, r = _divmod_poly(a, b)
        a, b = b, _primitive(r)
    return a


def _exact_coeffs(p: UnivariatePoly) -> list[Fraction]:
    """Exact coefficients; floats rationalized at 1e-12 relative granularity."""
    if p.is_exact():
        return [Fraction(c) for c in p.coeffs]
    scale = max(abs(float(c)) for c in p.coeffs)
    return [
        Fraction(round(float(c) / scale * RATIONALIZE_GRANULARITY), RATIONALIZE_GRANULARITY)
        for c in p.coeffs
    ]


def _zip_pad(a, b):
    la, lb = len(a), len(b)
    for i in range(max(la, lb)):
        yield (a[i] if i < la else Fraction(0), b[i] if i < lb else Fraction(0))


def square_free_decomposition(p: UnivariatePoly) -> list[tuple[UnivariatePoly, int]]:
    """Yun decomposition: exact factors (q, m) with p ~ prod q^m, q square-free."""
    coeffs = _exact_coeffs(p)
    out = []
    g = _gcd_poly(coeffs, _deriv(coeffs))
    if len(g) <= 1:
        return [(UnivariatePoly(tuple(coeffs)), 1)]
    c, _ = _divmod_poly(coeffs, g)
    d = _strip([x - y for x, y in _zip_pad(_divmod_poly(_deriv(coeffs), g)[0], _deriv(c))])
    m = 1
    while len(c) > 1:
        q = _gcd_poly(c, d)
        if len(q) > 1:
            out.append((UnivariatePoly(tuple(_primitive(q))), m))
        c, _ = _divmod_poly(c, q)
        d = _strip([x - y for x, y in _zip_pad(_divmod_poly(d, q)[0], _deriv(c))])
        m += 1
    return out


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [_primitive(list(p)), _primitive(_deriv(p))]
    while chain[-1]:
        _, r = _divmod_poly(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-c for c in r]))
    return [c for c in chain if c]


def _sign_at(p: list[Fraction], x) -> int:
    if x == math.inf:
        v = p[-1]
    elif x == -math.inf:
        v = p[-1] * (-1) ** (len(p) - 1)
    else:
        acc = Fraction(0)
        for c in reversed(p):
            acc = acc * x + c
        v = acc
    return (v > 0) - (v < 0)


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: UnivariatePoly, a=-math.inf, b=math.inf) -> int:
    """Exact number of distinct real roots in (a, b] of the square-free part."""
    coeffs = _exact_coeffs(p)
    if len(coeffs) <= 1:
        return 0
    g = _gcd_poly(coeffs, _deriv(coeffs))
    if len(g) > 1:
        coeffs, _ = _divmod_poly(coeffs, g)
    if len(coeffs) <= 1:
        return 0
    chain = _sturm_chain(coeffs)
    a = a if a in (-math.inf, math.inf) else Fraction(a)
    b = b if b in (-math.inf, math.inf) else Fraction(b)
    return _variations(chain, a) - _variations(chain, b)


def _cauchy_bound(p: list[Fraction]) -> Fraction:
    lead = abs(p[-1])
    return 1 + max(abs(c) for c in p) / lead


def _isolate_square_free(chain, bound: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each containing exactly one real root."""
    intervals = []
    total = _variations(chain, -bound) - _variations(chain, bound)

    def rec(lo, hi, count):
        if count == 0:
            return
        if count == 1:
            intervals.append((lo, hi))
            return
        mid = (lo + hi) / 2
        left = _variations(chain, lo) - _variations(chain, mid)
        rec(lo, mid, left)
        rec(mid, hi, count - left)

    rec(-bound, bound, total)
    return intervals


def _refine_root(q: UnivariatePoly, lo: float, hi: float, tol: float) -> float:
    """Bisection bracket then Newton polish on the float polynomial."""
    qf = UnivariatePoly(tuple(float(c) for c in q.coeffs))
    dq = UnivariatePoly(tuple(i * c for i, c in enumerate(qf.coeffs))[1:])
    # the isolation interval is open at lo; nudge off an exact endpoint root
    eps = (hi - lo) * 1e-12
    while qf(lo) == 0.0 and lo + eps < hi:
        lo += eps
        eps *= 2
    flo = qf(lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fmid = qf(mid)
        if fmid == 0.0:
            lo = hi = mid
            break
        if (flo < 0) != (fmid < 0):
            hi = mid
        else:
            lo, flo = mid, fmid
        if hi - lo < 1e-9 * (1 + abs(mid)):
            break
    x = 0.5 * (lo + hi)
    for _ in range(60):
        d = dq(x)
        if d == 0:
            break
        step = qf(x) / d
        if not math.isfinite(step):
            break
        x_new = x - step
        if abs(step) <= 1e-17 * (1 + abs(x)):
            x = x_new
            break
        x = x_new
    scale = max(abs(c) for c in qf.coeffs)
    if abs(qf(x)) > tol * scale * max(1.0, abs(x)) ** qf.degree:
        raise CertificationFailure(
            f"root refinement stalled at x = {x}, |q(x)| = {abs(qf(x))}"
        )
    return x


def real_roots(p: UnivariatePoly, tol: float = 1e-10) -> list[tuple[float, int]]:
    """All real roots with multiplicities, Sturm-certified, ascending order."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    out = []
    for factor, mult in square_free_decomposition(p):
        if factor.degree < 1:
            continue
        coeffs = [Fraction(c) for c in factor.coeffs]
        chain = _sturm_chain(coeffs)
        bound = _cauchy_bound(coeffs)
        for lo, hi in _isolate_square_free(chain, bound):
            root = _refine_root(factor, float(lo), float(hi), tol)
            out.append((root, mult))
    return sorted(out)


# ---------------------------------------------------------------------------
# resultants and discriminants (exact)


def _int_bareiss_det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_exact(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant; rows are scaled to integers first."""
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        fr = [Fraction(c) for c in row]
        denom_lcm = 1
        for c in fr:
            denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
        scale /= denom_lcm
        int_rows.append([int(c * denom_lcm) for c in fr])
    return scale * _int_bareiss_det(int_rows)


def resultant(p: UnivariatePoly, q: UnivariatePoly):
    """Resultant via the Sylvester determinant (exact; floats are exact rationals)."""
    pc = [Fraction(c) for c in p.coeffs]
    qc = [Fraction(c) for c in q.coeffs]
    value = _sylvester_resultant(pc, len(pc) - 1, qc, len(qc) - 1)
    return value if p.is_exact() and q.is_exact() else float(value)


def _sylvester_resultant(pc, dp, qc, dq) -> Fraction:
    """Resultant of polynomials with FORMAL degrees dp, dq (ascending coeffs)."""
    if dp < 0 or dq < 0:
        return Fraction(0)
    if dp == 0 and dq == 0:
        return Fraction(1)
    size = dp + dq
    if size == 0:
        return Fraction(1)
    pc = list(pc) + [Fraction(0)] * (dp + 1 - len(pc))
    qc = list(qc) + [Fraction(0)] * (dq + 1 - len(qc))
    rows = []
    desc_p = pc[::-1]
    desc_q = qc[::-1]
    for i in range(dq):
        rows.append([Fraction(0)] * i + desc_p + [Fraction(0)] * (size - i - dp - 1))
    for i in range(dp):
        rows.append([Fraction(0)] * i + desc_q + [Fraction(0)] * (size - i - dq - 1))
    return _det_exact(rows)


def discriminant(p: UnivariatePoly):
    """Classical discriminant (-1)^(m(m-1)/2) Res(p, p') / lc.

    When p carries roots at infinity (inf_mult from dehomogenization) the
    discriminant of the underlying binary form is used instead, so a doubled
    root at infinity correctly yields zero.
    """
    m = p.degree + p.inf_mult
    if m < 2:
        raise ValueError(f"discriminant needs degree >= 2, got {m}")
    if p.inf_mult:
        full = list(p.coeffs) + [0] * p.inf_mult
        value = binary_discriminant(full)
    else:
        pc = [Fraction(c) for c in p.coeffs]
        res = _sylvester_resultant(pc, m, _deriv(pc), m - 1)
        value = (-1) ** (m * (m - 1) // 2) * res / pc[-1]
    return value if p.is_exact() else float(value)


def binary_discriminant(coeffs):
    """Discriminant of a binary form, up to a fixed degree-dependent scale.

    Computed as the resultant of the two partial derivatives on their full
    formal degree, so repeated roots at infinity are detected.  Vanishes iff
    the form has a repeated projective root.
    """
    c = [Fraction(x) for x in coeffs]
    d = len(c) - 1
    if d < 2:
        raise ValueError("binary discriminant needs degree >= 2")
    fu = [i * c[i] for i in range(1, d + 1)]          # coeff of u^(i-1) v^(d-i)
    fv = [(d - i) * c[i] for i in range(0, d)]        # coeff of u^i v^(d-1-i)
    value = _sylvester_resultant(fu, d - 1, fv, d - 1)
    exact = all(isinstance(x, Rational) for x in coeffs)
    return value if exact else float(value)


# ---------------------------------------------------------------------------
# dense linear algebra


def left_kernel(M: np.ndarray, tol: float = DEFAULT_KERNEL_TOL):
    """Unit left-null vector of M, or None when the smallest singular value
    is above tol * max|M|.  Raises DegenerateKernel for kernels of dim > 1."""
    M = np.asarray(M, dtype=float)
    rows = M.shape[0]
    scale = np.max(np.abs(M)) if M.size else 0.0
    if scale == 0.0:
        if rows > 1:
            raise DegenerateKernel("zero matrix has full left kernel")
        return np.array([1.0])
    U, S, _ = np.linalg.svd(M)
    sigma = np.zeros(rows)
    sigma[: S.size] = S
    small = np.flatnonzero(sigma <= tol * scale)
    if small.size == 0:
        return None
    if small.size > 1:
        raise DegenerateKernel(f"left kernel dimension {small.size} at tol {tol}")
    v = U[:, small[0]]
    residual = float(np.linalg.norm(v @ M))
    assert residual <= tol * scale * max(1.0, math.sqrt(M.size)), (
        f"left kernel post-check failed: residual {residual}"
    )
    return v


def classify_stationary(
    H: np.ndarray, singular_tol: float = DEFAULT_SINGULAR_TOL
) -> StationaryClass:
    """Signature-based classification with a conservative dead zone."""
    H = np.asarray(H, dtype=float)
    scale = np.max(np.abs(H)) if H.size else 0.0
    if scale == 0.0:
        return StationaryClass.UNDECIDED
    asym = np.max(np.abs(H - H.T))
    if asym > 1e-6 * scale:
        raise ValueError(f"matrix is not symmetric (defect {asym / scale:.2e})")
    w = np.linalg.eigvalsh(0.5 * (H + H.T))
    cutoff = singular_tol * np.max(np.abs(w))
    if np.any(np.abs(w) <= cutoff):
        return StationaryClass.UNDECIDED
    if np.all(w > 0):
        return StationaryClass.MIN
    if np.all(w < 0):
        return StationaryClass.MAX
    return StationaryClass.SADDLE
