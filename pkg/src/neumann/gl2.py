"""Exact arithmetic in GL(2,Z), its projective quotient, and the projective
integer line.

Everything runs on plain Python integers, so products of long generator words
never overflow.  Group elements come in two layers: sign-tracked unimodular
matrices (``IntMat2``) and their projective classes (``ProjMat2``).  A class
{A, -A} is stored by a canonical sign representative, so equality, hashing and
set membership are structural.

The distinguished elements are

    tau:   z -> z + 1      [[1, 1], [0, 1]]
    omega: z -> -1/z       [[0, -1], [1, 0]]
    nu:    z -> -z         [[-1, 0], [0, 1]]

which generate the extended modular group; tau and omega alone generate the
modular group.  Matrices act on coprime columns by left multiplication, the
same action as the fractional linear map z -> (az + b)/(cz + d) written in
homogeneous coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "NotUnimodular",
    "IntMat2",
    "ProjMat2",
    "PVertex",
    "mat",
    "compose",
    "invert",
    "act",
    "first_column",
    "base_generator",
    "tau_power",
    "vertices_up_to",
    "TAU",
    "OMEGA",
    "NU",
    "IDENTITY",
    "I_STAR",
    "TAU_STAR",
    "OMEGA_STAR",
    "NU_STAR",
]


class NotUnimodular(ValueError):
    """Raised when a would-be group element has determinant other than +-1."""


@dataclass(frozen=True, slots=True)
class IntMat2:
    """Unimodular 2x2 integer matrix, row-major: an element of GL(2,Z).

    Unimodularity is enforced at construction; arithmetic never leaves the
    group, so the check only ever trips on bad external input.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c not in (-1, 1):
            raise NotUnimodular(
                f"det of [[{self.a}, {self.b}], [{self.c}, {self.d}]] is "
                f"{self.a * self.d - self.b * self.c}, expected +1 or -1"
            )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: IntMat2) -> IntMat2:
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> IntMat2:
        return IntMat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> IntMat2:
        # adjugate divided by det; det is +-1 so this stays integral
        if self.det == 1:
            return IntMat2(self.d, -self.b, -self.c, self.a)
        return IntMat2(-self.d, self.b, self.c, -self.a)

    def apply(self, p: int, q: int) -> tuple[int, int]:
        """Left action on the column (p, q)."""
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def is_identity(self) -> bool:
        return self.a == 1 and self.d == 1 and self.b == 0 and self.c == 0

    def is_pm_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d and abs(self.a) == 1


def mat(a: int, b: int, c: int, d: int) -> IntMat2:
    """Build a sign-tracked matrix, raising NotUnimodular on bad input."""
    return IntMat2(a, b, c, d)


def signed(eps: int, m: IntMat2) -> IntMat2:
    """Scale by eps in {-1, +1}."""
    return m if eps == 1 else -m


@dataclass(frozen=True, slots=True)
class ProjMat2:
    """Projective class {A, -A} of a unimodular matrix: an element of the
    quotient of GL(2,Z) by its center.

    The stored representative has c > 0, or c == 0 and a > 0 (one of a, c is
    always nonzero for a unimodular matrix, so the rule picks exactly one of
    the two signs).  Construct directly from any representative; the sign is
    normalized on the way in.
    """

    rep: IntMat2

    def __post_init__(self) -> None:
        r = self.rep
        if r.c < 0 or (r.c == 0 and r.a < 0):
            object.__setattr__(self, "rep", -r)

    @property
    def det(self) -> int:
        # det(-A) == det(A) in dimension 2, so this is class-invariant
        return self.rep.det


def compose(x: ProjMat2, y: ProjMat2) -> ProjMat2:
    """Group product; (compose(x, y))(v) = x(y(v))."""
    return ProjMat2(x.rep @ y.rep)


def invert(x: ProjMat2) -> ProjMat2:
    return ProjMat2(x.rep.inverse())


@dataclass(frozen=True, slots=True)
class PVertex:
    """Coprime integer column up to sign: a point of the projective line
    over Z, i.e. a rational p/q or the point at infinity (1, 0).

    Canonical sign: q > 0, or q == 0 and p > 0.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not a coprime pair")
        if self.q < 0 or (self.q == 0 and self.p < 0):
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)

    @property
    def height(self) -> int:
        return max(abs(self.p), abs(self.q))

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def label(self) -> str:
        return "∞" if self.q == 0 else f"{self.p}/{self.q}"


def act(x: ProjMat2, v: PVertex) -> PVertex:
    """Action on the projective line; the image column is again coprime."""
    p, q = x.rep.apply(v.p, v.q)
    return PVertex(p, q)


def first_column(x: ProjMat2) -> PVertex:
    """Image of infinity: the first column of the canonical representative."""
    return PVertex(x.rep.a, x.rep.c)


def vertices_up_to(height: int) -> list[PVertex]:
    """All canonical vertices of height <= height, sorted by (q, p)."""
    if height < 1:
        raise ValueError("height bound must be at least 1")
    out = [PVertex(1, 0)]
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            if math.gcd(p, q) == 1:
                out.append(PVertex(p, q))
    return out


I_STAR = IntMat2(1, 0, 0, 1)
TAU_STAR = IntMat2(1, 1, 0, 1)
OMEGA_STAR = IntMat2(0, -1, 1, 0)
NU_STAR = IntMat2(-1, 0, 0, 1)

IDENTITY = ProjMat2(I_STAR)
TAU = ProjMat2(TAU_STAR)
OMEGA = ProjMat2(OMEGA_STAR)
NU = ProjMat2(NU_STAR)

_BASE = {"tau": TAU, "omega": OMEGA, "nu": NU}


def base_generator(name: str) -> ProjMat2:
    """One of the distinguished generators by name: tau, omega or nu."""
    try:
        return _BASE[name]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}, expected tau, omega or nu") from None


def tau_power(n: int) -> ProjMat2:
    """The translation z -> z + n."""
    return ProjMat2(IntMat2(1, n, 0, 1))
