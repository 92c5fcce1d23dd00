"""Membership checks for the subgroup generated by a window's sigma family.

The subgroup is a Neumann subgroup exactly when it contains one element per
vertex of the projective line (sending infinity there).  Existence is
decided constructively by ``element_for_vertex``, a Stern-Brocot descent:
starting from the edge between infinity and sigma_0(infinity), repeatedly
take the mediant child of the current edge and descend into the half that
still contains the target.  Every step multiplies one more sign-tracked
generator onto the accumulated matrix, and only the final answer is
projectivized.

Uniqueness cannot be decided by descent alone, so ``check_neumann`` cross
checks against ``bfs_enumerate``, a blind enumeration of generator words.
Uniqueness holds within the enumerated ball only and reports say so; the
ball is optionally pruned by column height, without which windows with many
generators are out of enumeration reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .gl2 import (
    I_STAR,
    IDENTITY,
    NU,
    IntMat2,
    ProjMat2,
    PVertex,
    act,
    compose,
    first_column,
    invert,
    signed,
    tau_power,
    vertices_up_to,
)
from .involution import InvolutionWindow, OutOfWindow, sigma, sigma_star

__all__ = [
    "EdgeState",
    "element_for_vertex",
    "bfs_enumerate",
    "FailureReason",
    "NeumannFailure",
    "NeumannReport",
    "check_neumann",
    "max_supported_height",
    "CosetKind",
    "CosetDecomposition",
    "NotInCoset",
    "coset_decompose",
]


def _cross(a: tuple[int, int], b: tuple[int, int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True, slots=True)
class EdgeState:
    """Ordered edge {alpha, alpha(eps sigma_k)} of the descent tree.

    The child vertex hanging below the edge is the column of
    ``alpha (eps sigma_{k+eps})``, which equals the exact mediant of the
    two endpoint columns.  ``alpha`` stays in GL form; signs matter until
    the very end of the descent.
    """

    alpha: IntMat2
    eps: int
    k: int

    def endpoint_columns(self, w: InvolutionWindow) -> tuple[tuple[int, int], tuple[int, int]]:
        a = self.alpha
        head = (a.a, a.c)
        # first column of alpha @ (eps sigma_k) without forming the product:
        # sigma_k's first column is (k, 1)
        tail = (self.eps * (a.a * self.k + a.b), self.eps * (a.c * self.k + a.d))
        return head, tail

    def child_star(self, w: InvolutionWindow) -> IntMat2:
        return self.alpha @ signed(self.eps, sigma_star(w, self.k + self.eps))

    def keep_alpha(self) -> EdgeState:
        return EdgeState(self.alpha, self.eps, self.k + self.eps)

    def keep_other(self, w: InvolutionWindow) -> EdgeState:
        d = w.delta_of(self.k)
        nk = w.iota_of(self.k) - self.eps * d
        if nk not in w:
            raise OutOfWindow(nk, w.lo, w.hi)
        return EdgeState(
            self.alpha @ signed(self.eps, sigma_star(w, self.k)),
            -self.eps * d,
            nk,
        )


def element_for_vertex(w: InvolutionWindow, v: PVertex) -> ProjMat2:
    """The unique candidate element whose first column is (the class of) v.

    Infinity maps to the identity and integer vertices (n, 1) straight to
    sigma_n.  Everything else descends the Stern-Brocot tree rooted at the
    edge between infinity and sigma_0(infinity), on the side matching the
    sign of v.  Raises OutOfWindow (with the index) as soon as a required
    generator index leaves the window.
    """
    if v.is_infinity:
        return IDENTITY
    if v.q == 1:
        return sigma(w, v.p)
    if 0 not in w:
        raise OutOfWindow(0, w.lo, w.hi)
    eps = 1 if v.p > 0 else -1
    st = EdgeState(I_STAR, eps, 0)
    t = (v.p, v.q)
    while True:
        child = st.child_star(w)
        col = (child.a, child.c)
        if col == t or col == (-t[0], -t[1]):
            return ProjMat2(child)
        head, tail = st.endpoint_columns(w)
        den = _cross(head, tail)
        a = _cross(t, tail) * den
        b = _cross(head, t) * den
        if a < 0:
            a, b = -a, -b
        # v lies strictly inside the current edge's cone, so both
        # coordinates are positive and unequal (equality would mean v is
        # the child, handled above)
        if a <= 0 or b <= 0 or a == b:
            raise AssertionError(f"descent invariant broken at {st} for {v}")
        st = st.keep_alpha() if a > b else st.keep_other(w)


def bfs_enumerate(
    w: InvolutionWindow, max_len: int, height_cap: int | None = None
) -> set[ProjMat2]:
    """Distinct projective elements reachable as words of <= max_len sigmas.

    With ``height_cap`` set, products whose first column exceeds that
    height are discarded as they appear, shrinking the ball to enumeration
    scale; the capped ball is a subset of the true one (every member is
    still a genuine word) but may miss elements whose every short word
    passes through tall columns.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    gens = [sigma(w, n) for n in w.indices()]
    seen: set[ProjMat2] = {IDENTITY}
    frontier: list[ProjMat2] = [IDENTITY]
    for _ in range(max_len):
        nxt: list[ProjMat2] = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y in seen:
                    continue
                if height_cap is not None and max(abs(y.rep.a), abs(y.rep.c)) > height_cap:
                    continue
                seen.add(y)
                nxt.append(y)
        if not nxt:
            break
        frontier = nxt
    return seen


class FailureReason(Enum):
    MISSING = "missing"
    DUPLICATE = "duplicate"
    OUT_OF_WINDOW = "out-of-window"


@dataclass(frozen=True, slots=True)
class NeumannFailure:
    vertex: PVertex
    reason: FailureReason
    index: int | None = None  # offending generator index, out-of-window only


@dataclass(frozen=True)
class NeumannReport:
    """check_neumann outcome.  oracle_cap == 0 means the ball was uncapped;
    uniqueness is only ever asserted within the enumerated ball."""

    height_bound: int
    targets_checked: int
    failures: tuple[NeumannFailure, ...]
    oracle_len: int
    oracle_cap: int
    ball_size: int

    @property
    def verified(self) -> bool:
        return not self.failures


def check_neumann(
    w: InvolutionWindow,
    height: int,
    oracle_len: int | None = None,
    oracle_cap: int | None = None,
) -> NeumannReport:
    """Existence and in-ball uniqueness for every target of height <= height.

    Per target v: descent must succeed (OutOfWindow failures carry the
    index) and land on first column +-v (Missing otherwise); no element of
    the word ball may share v's column with a different element (Duplicate).
    Defaults: words of length <= 2*height, ball capped at column height
    2*height.  Pass oracle_cap=0 to disable the cap; feasible only for
    small windows.
    """
    if height < 1:
        raise ValueError("height bound must be at least 1")
    if oracle_len is None:
        oracle_len = 2 * height
    if oracle_cap is None:
        oracle_cap = 2 * height
    targets = vertices_up_to(height)

    found: dict[PVertex, ProjMat2] = {}
    failures: list[NeumannFailure] = []
    for v in targets:
        try:
            x = element_for_vertex(w, v)
        except OutOfWindow as e:
            failures.append(NeumannFailure(v, FailureReason.OUT_OF_WINDOW, e.index))
            continue
        if first_column(x) != v:
            failures.append(NeumannFailure(v, FailureReason.MISSING))
            continue
        found[v] = x

    ball = bfs_enumerate(w, oracle_len, None if oracle_cap == 0 else oracle_cap)
    by_column: dict[PVertex, set[ProjMat2]] = {}
    for x in ball:
        by_column.setdefault(first_column(x), set()).add(x)
    for v in targets:
        hits = by_column.get(v, set())
        if len(hits) > 1 or (v in found and hits and found[v] not in hits):
            failures.append(NeumannFailure(v, FailureReason.DUPLICATE))

    return NeumannReport(
        height_bound=height,
        targets_checked=len(targets),
        failures=tuple(failures),
        oracle_len=oracle_len,
        oracle_cap=oracle_cap,
        ball_size=len(ball),
    )


def max_supported_height(w: InvolutionWindow, limit: int) -> int:
    """Largest H <= limit with descent succeeding on every height-H shell.

    Existence only; no uniqueness ball.  Returns 0 when even the height-1
    shell fails.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    shells: dict[int, list[PVertex]] = {}
    for v in vertices_up_to(limit):
        shells.setdefault(v.height, []).append(v)
    for h in range(1, limit + 1):
        for v in shells.get(h, []):
            try:
                element_for_vertex(w, v)
            except OutOfWindow:
                return h - 1
    return limit


class CosetKind(Enum):
    TAU_POWER = "tau^n"
    TAU_POWER_NU = "tau^n*nu"


class NotInCoset(Exception):
    """The residue after stripping the subgroup part is not tau^n or tau^n nu."""


@dataclass(frozen=True, slots=True)
class CosetDecomposition:
    """g = compose(s, coset_rep()) with s in the subgroup and the rep a
    translation, possibly followed by the reflection nu."""

    s: ProjMat2
    kind: CosetKind
    n: int

    def coset_rep(self) -> ProjMat2:
        t = tau_power(self.n)
        if self.kind is CosetKind.TAU_POWER_NU:
            t = compose(t, NU)
        return t


def coset_decompose(w: InvolutionWindow, g: ProjMat2) -> CosetDecomposition:
    """Split g into subgroup part times right coset representative.

    The subgroup part is the descent element for g(infinity); what remains
    fixes infinity, hence is upper triangular, hence tau^n or tau^n nu.
    OutOfWindow propagates from the descent when the window is too small
    for g's image of infinity.
    """
    v = act(g, PVertex(1, 0))
    s = element_for_vertex(w, v)
    t = compose(invert(s), g).rep
    if t.c != 0:
        raise NotInCoset(f"residue {t} does not fix infinity")
    # canonical rep with c == 0 has a == 1, so d alone carries the det
    if t.d == 1:
        return CosetDecomposition(s, CosetKind.TAU_POWER, t.b)
    return CosetDecomposition(s, CosetKind.TAU_POWER_NU, -t.b)
