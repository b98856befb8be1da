"""Exact-rational combinatorics for quadruples of distinct-slope lines on the
flat torus: ideals, the rank-2 lattice of closed quadrangle edge vectors, its
finite-index sublattice, the indefinite quadratic form, and the summation cone.

All lattice and coset computations are exact (fractions.Fraction); floating
point enters only when series are evaluated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .core import BoundaryProximity, DomainError, GUARD

#: Exact rational scalar used throughout the lattice layer.
Rational = Fraction


@dataclass(frozen=True)
class LineOnTorus:
    """A geodesic circle of rational slope with a shift and a monodromy.

    The line is {((y + t) / slope, t)} projected to R^2/Z^2; equivalently the
    graph t = slope * x - y.  ``monodromy_beta`` is the holonomy exponent per
    unit x-displacement along the line.
    """

    slope: Rational
    shift_y: float = 0.0
    monodromy_beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))


class ConeRegion(Enum):
    IN_PLUS = 1
    IN_MINUS = -1
    OUTSIDE = 0


def ideal_of(lam: Rational) -> int:
    """Generator of {n in Z : n * lam in Z}; q for lam = p/q in lowest terms."""
    return Fraction(lam).denominator


def _frac_lcm(a: Fraction, b: Fraction) -> Fraction:
    """Generator of aZ intersected with bZ for positive rationals a, b."""
    return Fraction(
        math.lcm(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Generator of the subgroup aZ + bZ of (Q, +)."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def triple_ideal(l1: Rational, l2: Rational, l3: Rational) -> int:
    """Generator of I_{l2} intersected with ((l3-l1)/(l3-l2)) I_{l1}."""
    l1, l2, l3 = Fraction(l1), Fraction(l2), Fraction(l3)
    if len({l1, l2, l3}) != 3:
        raise DomainError("triple_ideal requires three distinct slopes")
    c = (l3 - l1) / (l3 - l2)
    g = _frac_lcm(Fraction(ideal_of(l2)), abs(c) * ideal_of(l1))
    if g.denominator != 1:
        raise AssertionError("triple ideal generator must be an integer")
    return g.numerator


def hom_degree(li: Rational, lj: Rational) -> int:
    """Degree of the morphism between lines of slopes li, lj: 0 iff li < lj."""
    if li == lj:
        raise DomainError("hom_degree requires distinct slopes")
    return 0 if li < lj else 1


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _hnf_2x2(rows: list[tuple[int, int]]) -> tuple[int, int, int]:
    """Row HNF (p, 0), (r, s) of the lattice spanned by integer rows.

    Returns (p, r, s) with p > 0, s > 0, 0 <= r < p; lattice index in Z^2
    is p * s.
    """
    rows = [r for r in rows if r != (0, 0)]
    # reduce second column to a single pivot by gcd elimination
    while True:
        nz = [r for r in rows if r[1] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[1]))
        a, b = nz[0], nz[1]
        k = b[1] // a[1]
        rows.remove(b)
        rows.append((b[0] - k * a[0], b[1] - k * a[1]))
        rows = [r for r in rows if r != (0, 0)]
    pivot = next((r for r in rows if r[1] != 0), None)
    firsts = [r[0] for r in rows if r[1] == 0]
    p = math.gcd(*firsts) if firsts else 0
    if pivot is None or p == 0:
        raise AssertionError("expected a full-rank sublattice of Z^2")
    r, s = pivot
    if s < 0:
        r, s = -r, -s
    r %= p
    return p, r, s


class QuadLatticeConfig:
    """Lattice data attached to four distinct rational slopes.

    The lattice of closed quadrangle edge vectors is rank 2, parameterized by
    its slot-2 and slot-3 components; the sublattice adds an integrality
    condition on slot 1 (equivalently slot 4).
    """

    def __init__(self, slopes: Sequence[Rational], plus_signs: Optional[Sequence[int]] = None):
        slopes = tuple(Fraction(s) for s in slopes)
        if len(slopes) != 4 or len(set(slopes)) != 4:
            raise DomainError("need four pairwise distinct slopes")
        self.slopes = slopes
        l1, l2, l3, l4 = slopes
        self._q = tuple(ideal_of(s) for s in slopes)

        q2, q3 = self._q[1], self._q[2]
        self.basis_Lambda = (self.embed(q2, 0), self.embed(0, q3))

        # slot-1 integrality: n1 / q1 = r*a + s*b must be an integer, where
        # (a, b) are coordinates along basis_Lambda
        q1 = self._q[0]
        r = (l4 - l2) * q2 / (q1 * (l1 - l4))
        s = (l4 - l3) * q3 / (q1 * (l1 - l4))
        d = math.lcm(r.denominator, s.denominator)
        u = (r.numerator * (d // r.denominator)) % d
        v = (s.numerator * (d // s.denominator)) % d
        self._plus_hnf = self._congruence_kernel_hnf(u, v, d)
        p, roff, sdiag = self._plus_hnf
        self.index = p * sdiag
        self.basis_LambdaPlus = (
            self.embed(p * q2, 0),
            self.embed(roff * q2, sdiag * q3),
        )
        for vec in self.basis_LambdaPlus:
            if vec[0].denominator not in (1,) or vec[0] % q1 != 0:
                raise AssertionError("sublattice basis must satisfy the slot-1 condition")
            if vec[3] % self._q[3] != 0:
                raise AssertionError("slot-4 characterization must agree with slot-1")
        self.coset_reps = [
            self.embed(a * q2, b * q3) for b in range(sdiag) for a in range(p)
        ]

        if plus_signs is not None:
            signs = tuple(int(x) for x in plus_signs)
            if not self._signs_consistent(signs):
                raise DomainError(f"sign pattern {signs} is not realized by the cone")
            self.plus_signs: Optional[tuple] = signs
        else:
            self.plus_signs = self._canonical_plus_signs()
        self.plus_component_witness = (
            self._find_witness(self.plus_signs) if self.plus_signs else None
        )
        if self.plus_signs is not None and self.plus_component_witness is None:
            if plus_signs is not None:
                raise DomainError(f"sign pattern {plus_signs} bounds an empty cone")
            self.plus_signs = None

    @staticmethod
    def _congruence_kernel_hnf(u: int, v: int, d: int) -> tuple[int, int, int]:
        """HNF of {(a, b) in Z^2 : u a + v b = 0 mod d}."""
        if u % d == 0 and v % d == 0:
            return 1, 0, 1
        g1 = math.gcd(u, v)
        rows = [(d, 0), (0, d)]
        if g1 != 0:
            x, y = _xgcd(u, v)
            g2 = math.gcd(g1, d)
            rows.append((v // g1, -(u // g1)))
            rows.append((-(d // g2) * x, -(d // g2) * y))
        return _hnf_2x2(rows)

    def embed(self, n2, n3) -> tuple:
        """Lift slot-2/slot-3 components to the full 4-vector on the subspace."""
        l1, l2, l3, l4 = self.slopes
        n2 = Fraction(n2)
        n3 = Fraction(n3)
        n1 = ((l4 - l2) * n2 + (l4 - l3) * n3) / (l1 - l4)
        n4 = -(n1 + n2 + n3)
        return (n1, n2, n3, n4)

    def contains(self, vec: Sequence[Fraction], plus: bool = False) -> bool:
        """Exact membership of a rational 4-vector in the lattice (or sublattice)."""
        n1, n2, n3, n4 = (Fraction(x) for x in vec)
        if self.embed(n2, n3) != (n1, n2, n3, n4):
            return False
        q1, q2, q3, _ = self._q
        if n2 % q2 != 0 or n3 % q3 != 0:
            return False
        if plus:
            return n1.denominator == 1 and n1 % q1 == 0
        return True

    def _signs_consistent(self, signs: Sequence[int]) -> bool:
        l = self.slopes
        prev = (l[3], signs[3])
        for i in range(4):
            li, si = l[i], signs[i]
            if _sign(prev[0] - li) * si * prev[1] <= 0:
                return False
            prev = (li, si)
        return True

    def _canonical_plus_signs(self) -> Optional[tuple]:
        l1, l2, l3, l4 = self.slopes
        s1 = 1
        s2 = s1 * _sign(l1 - l2)
        s3 = s2 * _sign(l2 - l3)
        s4 = s3 * _sign(l3 - l4)
        signs = (s1, s2, s3, s4)
        return signs if self._signs_consistent(signs) else None

    def _find_witness(self, signs: Sequence[int]) -> Optional[tuple]:
        """An exact interior point of the plus component, or None if empty."""
        # each sign constraint is an open half-plane in (x2, x3); candidate
        # interior directions combine boundary-line directions pairwise
        l1, l2, l3, l4 = self.slopes
        kernels = [
            (l4 - l3, -(l4 - l2)),  # boundary of the slot-1 functional
            (Fraction(0), Fraction(1)),  # x2 = 0
            (Fraction(1), Fraction(0)),  # x3 = 0
            (l1 - l3, -(l1 - l2)),  # boundary of the slot-4 functional
        ]
        dirs = []
        for kx, ky in kernels:
            dirs.extend([(kx, ky), (-ky, kx)])
        candidates = []
        for i, di in enumerate(dirs):
            for dj in dirs[i:]:
                for si in (1, -1):
                    for sj in (1, -1):
                        candidates.append(
                            (si * di[0] + sj * dj[0], si * di[1] + sj * dj[1])
                        )
        for x2, x3 in candidates:
            if x2 == 0 and x3 == 0:
                continue
            vec = self.embed(x2, x3)
            if all(_sign(v) == s for v, s in zip(vec, signs)):
                return vec
        return None

    def cone_products(self, x: Sequence) -> list:
        """The four defining products (l_{i-1} - l_i) x_i x_{i-1}, i = 1..4."""
        l = self.slopes
        out = []
        for i in range(4):
            j = (i - 1) % 4
            out.append((l[j] - l[i]) * x[i] * x[j])
        return out


def _xgcd(a: int, b: int) -> tuple[int, int]:
    """(x, y) with a x + b y = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
        old_y, y = y, old_y - qt * y
    return old_x, old_y


def build_quad_config(
    slopes: Sequence[Rational], plus_signs: Optional[Sequence[int]] = None
) -> QuadLatticeConfig:
    """Exact lattice, sublattice, cosets and cone data for four distinct slopes."""
    return QuadLatticeConfig(slopes, plus_signs)


def _on_subspace(cfg: QuadLatticeConfig, x: Sequence, tol: float = 1e-12) -> bool:
    scale = max(1.0, max(abs(float(v)) for v in x))
    s1 = sum(float(v) for v in x)
    s2 = sum(float(l) * float(v) for l, v in zip(cfg.slopes, x))
    return abs(s1) <= tol * scale and abs(s2) <= tol * scale * max(
        1.0, max(abs(float(l)) for l in cfg.slopes)
    )


def quadratic_Q(cfg: QuadLatticeConfig, x: Sequence):
    """Q(x) = (l3 - l4) x3 x4 + (l1 - l2) x1 x2 on the lattice subspace."""
    if not _on_subspace(cfg, x):
        raise DomainError("vector does not satisfy the two linear relations")
    l1, l2, l3, l4 = cfg.slopes
    return (l3 - l4) * x[2] * x[3] + (l1 - l2) * x[0] * x[1]


def cone_membership(cfg: QuadLatticeConfig, x: Sequence) -> ConeRegion:
    """Classify x against the two components of the summation cone."""
    if not _on_subspace(cfg, x):
        raise DomainError("vector does not satisfy the two linear relations")
    if cfg.plus_signs is None:
        raise DomainError("the cone for these slopes is empty")
    norm2 = max(float(v) * float(v) for v in x)
    products = [float(p) for p in cfg.cone_products(x)]
    if any(abs(p) <= GUARD * norm2 for p in products):
        raise BoundaryProximity("point within guard distance of the cone boundary")
    if any(p < 0 for p in products):
        return ConeRegion.OUTSIDE
    pattern = tuple(_sign(float(v)) for v in x)
    if pattern == cfg.plus_signs:
        return ConeRegion.IN_PLUS
    return ConeRegion.IN_MINUS


def shift_vector(y: Sequence, slopes: Sequence[Rational]) -> tuple:
    """The cone shift (y14 - y12, y12 - y23, y23 - y34, y34 - y14).

    Exact when the inputs are rational; float otherwise.  Lies on the lattice
    subspace for any y.
    """
    slopes = [Fraction(s) for s in slopes]
    if len(set(slopes)) != 4:
        raise DomainError("need four pairwise distinct slopes")

    def yij(i, j):
        d = slopes[j] - slopes[i]
        num = y[j] - y[i]
        if isinstance(num, float):
            return num / float(d)
        return Fraction(num) / d

    y12, y23, y34, y14 = yij(0, 1), yij(1, 2), yij(2, 3), yij(0, 3)
    return (y14 - y12, y12 - y23, y23 - y34, y34 - y14)


def intersection_point(
    line_i: LineOnTorus, line_j: LineOnTorus, a: int = 0, b: int = 0
) -> tuple[float, float]:
    """The (a, b)-labelled intersection point of two lines, mod Z^2."""
    li, lj = line_i.slope, line_j.slope
    if li == lj:
        raise DomainError("intersection requires distinct slopes")
    yi, yj = line_i.shift_y, line_j.shift_y
    d = float(lj - li)
    yij = (yj - yi) / d
    ypij = (float(li) * yj - float(lj) * yi) / d
    shift = (float(a * lj) + b) / d
    x = yij + shift
    t = ypij + shift * float(li)
    return (x % 1.0, t % 1.0)
