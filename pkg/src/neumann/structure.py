"""Free product structure of a window's subgroup.

Each building block contributes a fixed multiset of free factors: a C2, a
C3, or infinite cyclic factors split by determinant sign.  This module
classifies the designated independent generators of each block, sums the
per-block contributions into a structure report with the two finite
constraints, verifies the elimination identities behind the designation,
searches for short relations among supposedly independent generators, and
runs the construction backwards (from target counts to a block sequence).

Torsion detection needs matrix powers up to 3 only: projective element
orders here are 1, 2, 3 or infinite.  Independence is checked by
exhaustive reduced-word enumeration up to a length bound, which can refute
but never fully confirm freeness; reports state the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from .gl2 import I_STAR, IDENTITY, ProjMat2, compose, invert, signed
from .involution import CASE_IDS, BadCase, BuildingBlock, InvolutionWindow, sigma, sigma_star
from .verify import bfs_enumerate

__all__ = [
    "GenClass",
    "classify_element",
    "BLOCK_CONTRIBUTIONS",
    "StructureReport",
    "structure_report",
    "UnknownBlock",
    "DesignatedGenerator",
    "independent_generators",
    "check_relations",
    "check_generator_products",
    "check_tietze",
    "check_independence",
    "SIntersectionReport",
    "s_intersection_report",
    "Unrealizable",
    "TooFewBlocks",
    "SynthesisResult",
    "synthesize_blocks",
]


class GenClass(Enum):
    ORDER2 = "order2"
    ORDER3 = "order3"
    INFINITE_PLUS = "infinite+"
    INFINITE_MINUS = "infinite-"


class UnknownBlock(ValueError):
    """Block is not one of the six cases or not part of the given window."""


def classify_element(x: ProjMat2) -> GenClass:
    sq = compose(x, x)
    if sq == IDENTITY:
        return GenClass.ORDER2
    if compose(sq, x) == IDENTITY:
        return GenClass.ORDER3
    return GenClass.INFINITE_PLUS if x.det == 1 else GenClass.INFINITE_MINUS


# free factors contributed by one block: (r2, r3, rinf_plus, rinf_minus)
BLOCK_CONTRIBUTIONS: dict[int, tuple[int, int, int, int]] = {
    1: (1, 0, 0, 0),
    2: (0, 1, 0, 0),
    3: (0, 0, 2, 0),
    4: (1, 0, 0, 1),
    5: (0, 1, 0, 1),
    6: (0, 0, 2, 1),
}


@dataclass(frozen=True)
class StructureReport:
    """Factor counts summed over a block sequence, with the two finite
    constraints evaluated.  The infinitude constraint cannot be judged
    from a finite prefix; ``note`` says so."""

    r2: int
    r3: int
    rinf_plus: int
    rinf_minus: int
    per_block: tuple[tuple[int, tuple[int, int, int, int]], ...]
    cond2_ok: bool
    cond3_ok: bool
    note: str

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.r2, self.r3, self.rinf_plus, self.rinf_minus)

    def lines(self) -> list[str]:
        out = [
            f"r2 {self.r2}",
            f"r3 {self.r3}",
            f"rinf_plus {self.rinf_plus}",
            f"rinf_minus {self.rinf_minus}",
            f"constraint2 {'ok' if self.cond2_ok else 'fail'}",
            f"constraint3 {'ok' if self.cond3_ok else 'fail'}",
        ]
        for cid, (a, b, c, d) in self.per_block:
            out.append(f"block {cid} {a} {b} {c} {d}")
        out.append(f"note {self.note}")
        return out


def structure_report(cases: Iterable[int]) -> StructureReport:
    per_block = []
    totals = [0, 0, 0, 0]
    for cid in cases:
        try:
            contrib = BLOCK_CONTRIBUTIONS[cid]
        except KeyError:
            raise UnknownBlock(f"no block case {cid!r}") from None
        per_block.append((cid, contrib))
        for i in range(4):
            totals[i] += contrib[i]
    r2, r3, rp, rm = totals
    needs_minus = any(cid in (4, 5, 6) for cid, _ in per_block)
    cond2 = rp % 2 == 0 and (rm >= 1 if needs_minus else True)
    cond3 = r2 + r3 + rp // 2 >= rm
    return StructureReport(
        r2=r2,
        r3=r3,
        rinf_plus=rp,
        rinf_minus=rm,
        per_block=tuple(per_block),
        cond2_ok=cond2,
        cond3_ok=cond3,
        note="finite prefix only; the infinitude constraint needs the whole sequence",
    )


class DesignatedGenerator(NamedTuple):
    index: int
    gen_class: GenClass
    expected: GenClass
    matches: bool
    elliptic: bool


# offsets of the independent generators each case designates, with the
# class each one must come out as
_DESIGNATED: dict[int, tuple[tuple[int, GenClass], ...]] = {
    1: ((0, GenClass.ORDER2),),
    2: ((0, GenClass.ORDER3),),
    3: ((1, GenClass.INFINITE_PLUS), (2, GenClass.INFINITE_PLUS)),
    4: ((1, GenClass.INFINITE_MINUS), (2, GenClass.ORDER2)),
    5: ((1, GenClass.INFINITE_MINUS), (2, GenClass.ORDER3)),
    6: ((1, GenClass.INFINITE_MINUS), (3, GenClass.INFINITE_PLUS), (4, GenClass.INFINITE_PLUS)),
}


def independent_generators(
    w: InvolutionWindow, block: BuildingBlock
) -> list[DesignatedGenerator]:
    """The block's designated free generators, with classes verified.

    A mismatch between the computed class and the designation is flagged
    in the result rather than raised.
    """
    if block not in w.provenance:
        raise UnknownBlock(f"block at base {block.base} is not part of this window")
    try:
        spec = _DESIGNATED[block.case_id]
    except KeyError:
        raise UnknownBlock(f"no block case {block.case_id!r}") from None
    out = []
    for off, expected in spec:
        idx = block.base + off
        x = sigma(w, idx)
        cls = classify_element(x)
        elliptic = (
            cls in (GenClass.ORDER2, GenClass.ORDER3)
            and x.det == 1
            and abs(x.rep.trace) < 2
        )
        out.append(DesignatedGenerator(idx, cls, expected, cls == expected, elliptic))
    return out


def check_relations(w: InvolutionWindow) -> bool:
    """Exact sign-level check of the two generator relations.

        sigma_n sigma_{iota(n)} = -delta_n I
        sigma_n sigma_{iota(n) - eps delta_n} sigma_{iota(n + eps)}
            = eps delta_n delta_{n+eps} I

    The second is checked for both eps wherever all three indices stay in
    the window; off-window instances are skipped, not failed.
    """
    for n in w.indices():
        i = w.iota_of(n)
        if i not in w:
            return False
        if sigma_star(w, n) @ sigma_star(w, i) != signed(-w.delta_of(n), I_STAR):
            return False
    for n in w.indices():
        for eps in (1, -1):
            m = n + eps
            if m not in w:
                continue
            mid = w.iota_of(n) - eps * w.delta_of(n)
            last = w.iota_of(m)
            if mid not in w or last not in w:
                continue
            prod = sigma_star(w, n) @ sigma_star(w, mid) @ sigma_star(w, last)
            if prod != signed(eps * w.delta_of(n) * w.delta_of(m), I_STAR):
                return False
    return True


def check_generator_products(w: InvolutionWindow) -> bool:
    """Membership scan: sigma_k^-1 sigma_l is again a generator exactly for
    |k - l| = 1, and then equals sigma at iota(k) -+ delta_k."""
    gens = {sigma(w, n): n for n in w.indices()}
    inverses = {n: invert(sigma(w, n)) for n in w.indices()}
    for k in w.indices():
        for l in w.indices():
            q = compose(inverses[k], sigma(w, l))
            hit = q in gens
            if hit != (abs(k - l) == 1):
                return False
            if l == k + 1 and gens.get(q) != w.iota_of(k) - w.delta_of(k):
                return False
            if l == k - 1 and gens.get(q) != w.iota_of(k) + w.delta_of(k):
                return False
    return True


# elimination identities per case: lhs offset, then the rhs word as
# (offset, exponent) pairs
_TIETZE: dict[int, tuple[tuple[int, tuple[tuple[int, int], ...]], ...]] = {
    1: (),
    2: (),
    3: (
        (3, ((1, -1), (2, 1))),
        (5, ((2, -1), (1, -1), (2, 1))),
        (0, ((1, 1), (2, -1), (1, -1), (2, 1))),
    ),
    4: (
        (3, ((2, 1), (1, 1))),
        (0, ((1, 1), (2, 1), (1, 1))),
    ),
    5: (
        (4, ((2, -1), (1, 1))),
        (0, ((1, 1), (2, -1), (1, 1))),
    ),
    6: (
        (12, ((2, -1), (1, 1))),
        (0, ((1, 1), (12, 1))),
    ),
}


def check_tietze(block: BuildingBlock, w: InvolutionWindow) -> list[tuple[str, bool]]:
    """Evaluate the block's elimination identities exactly.

    Returns (printed identity, holds) pairs; discrepancies are reported
    verbatim, never corrected.  Cases 1 and 2 designate their only
    generator directly and have nothing to eliminate.
    """
    try:
        idents = _TIETZE[block.case_id]
    except KeyError:
        raise UnknownBlock(f"no block case {block.case_id!r}") from None
    k = block.base
    out = []
    for lhs_off, word in idents:
        lhs = sigma(w, k + lhs_off)
        rhs = IDENTITY
        parts = []
        for off, e in word:
            g = sigma(w, k + off)
            rhs = compose(rhs, g if e == 1 else invert(g))
            parts.append(f"sigma({k + off})" + ("^-1" if e == -1 else ""))
        text = f"sigma({k + lhs_off}) = " + " ".join(parts)
        out.append((text, lhs == rhs))
    return out


def _canon_tuple(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    if c < 0 or (c == 0 and a < 0):
        return (-a, -b, -c, -d)
    return (a, b, c, d)


def _mul_tuple(
    x: tuple[int, int, int, int], y: tuple[int, int, int, int]
) -> tuple[int, int, int, int]:
    return _canon_tuple(
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


_ID_TUPLE = (1, 0, 0, 1)


def check_independence(
    gens: Sequence[tuple[ProjMat2, GenClass]], max_len: int
) -> bool:
    """No nonempty reduced word of length <= max_len evaluates to the
    identity.

    Reduced means adjacent letters never come from the same finite-order
    generator (such letters merge inside their factor), and an infinite
    order letter is never followed by its own inverse.  Order-3 letters
    range over exponents {1, 2}, infinite ones over {1, -1}.  A True
    verdict refutes relations up to the bound only; it is not a proof of
    freeness.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    letters: list[tuple[int, tuple[int, int, int, int], int]] = []
    torsion: list[bool] = []
    for i, (g, cls) in enumerate(gens):
        r = g.rep
        t = (r.a, r.b, r.c, r.d)
        torsion.append(cls in (GenClass.ORDER2, GenClass.ORDER3))
        if cls is GenClass.ORDER2:
            letters.append((i, t, 1))
        elif cls is GenClass.ORDER3:
            letters.append((i, t, 1))
            letters.append((i, _mul_tuple(t, t), 2))
        else:
            ri = invert(g).rep
            letters.append((i, t, 1))
            letters.append((i, (ri.a, ri.b, ri.c, ri.d), -1))

    def extend(prod: tuple[int, int, int, int], last: tuple[int, int] | None, depth: int) -> bool:
        for gi, m, e in letters:
            if last is not None and last[0] == gi:
                if torsion[gi] or last[1] + e == 0:
                    continue
            p = _mul_tuple(prod, m)
            if p == _ID_TUPLE:
                return False
            if depth + 1 < max_len and not extend(p, (gi, e), depth + 1):
                return False
        return True

    return extend(_ID_TUPLE, None, 0)


@dataclass(frozen=True)
class SIntersectionReport:
    """Index-2 evidence for the determinant +1 part of the subgroup."""

    index_two: bool
    sample_generators: tuple[ProjMat2, ...]
    note: str


def s_intersection_report(w: InvolutionWindow, max_len: int) -> SIntersectionReport:
    """Determinant character on the word ball, plus a generating sample
    for its kernel.

    With no determinant -1 generator the whole subgroup sits inside the
    modular group and there is nothing to split.  Otherwise the ball must
    contain both determinant classes, the character must be multiplicative
    on every product that lands back in the ball, and the +1 class must be
    closed the same way.  The sample generators follow the conjugation
    recipe with alpha = first in-window generator of determinant -1.
    """
    minus = [n for n in w.indices() if w.delta_of(n) == -1]
    if not minus:
        return SIntersectionReport(
            False, (), "all generators have determinant 1; subgroup contained in the modular group"
        )
    alpha = sigma(w, minus[0])
    sample: list[ProjMat2] = []
    seen: set[ProjMat2] = set()
    for n in w.indices():
        s = sigma(w, n)
        if w.delta_of(n) == 1:
            cands = (s, compose(compose(alpha, s), invert(alpha)))
        else:
            cands = (compose(alpha, s), compose(s, invert(alpha)))
        for c in cands:
            if c != IDENTITY and c not in seen:
                seen.add(c)
                sample.append(c)

    ball = bfs_enumerate(w, max_len)
    items = []
    dets = {}
    for x in ball:
        r = x.rep
        t = (r.a, r.b, r.c, r.d)
        items.append((t, x.det))
        dets[t] = x.det
    surjective = any(d == 1 for _, d in items) and any(d == -1 for _, d in items)
    multiplicative = True
    plus_closed = True
    for xt, xd in items:
        for yt, yd in items:
            zd = dets.get(_mul_tuple(xt, yt))
            if zd is None:
                continue
            if zd != xd * yd:
                multiplicative = False
            if xd == 1 and yd == 1 and zd != 1:
                plus_closed = False
    ok = surjective and multiplicative and plus_closed
    note = (
        f"ball of {len(items)} words, both determinant classes present"
        if ok
        else "determinant character failed on the enumerated ball"
    )
    return SIntersectionReport(ok, tuple(sample), note)


class Unrealizable(ValueError):
    """Targets violate the finite structure constraints."""


class TooFewBlocks(ValueError):
    """The requested block budget cannot hold the exact prefix."""


@dataclass(frozen=True)
class SynthesisResult:
    """cases[:exact_len] realizes the targets exactly; the rest is padding."""

    cases: tuple[int, ...]
    exact_len: int


def synthesize_blocks(
    targets: tuple[int, int, int, int], pad_case: int, n_blocks: int
) -> SynthesisResult:
    """Greedy block sequence whose structure matches the targets.

    Each determinant -1 factor is produced by a case 4, 5 or 6 block,
    chosen to consume a needed C2, C3 or pair of determinant +1 factors at
    the same time; leftovers become pure blocks 1, 2, 3.  The result is
    padded to n_blocks with pad_case; the exact prefix length is recorded.
    """
    r2, r3, rp, rm = targets
    if min(targets) < 0:
        raise Unrealizable("negative factor counts")
    if rp % 2 != 0:
        raise Unrealizable(f"rinf_plus must be even, got {rp}")
    if r2 + r3 + rp // 2 < rm:
        raise Unrealizable(
            f"r2 + r3 + rinf_plus/2 = {r2 + r3 + rp // 2} cannot cover rinf_minus = {rm}"
        )
    if pad_case not in CASE_IDS:
        raise BadCase(f"no building block case {pad_case!r}")
    prefix: list[int] = []
    a2, a3, ap = r2, r3, rp
    for _ in range(rm):
        if a2 > 0:
            prefix.append(4)
            a2 -= 1
        elif a3 > 0:
            prefix.append(5)
            a3 -= 1
        else:
            prefix.append(6)
            ap -= 2
    prefix += [1] * a2 + [2] * a3 + [3] * (ap // 2)
    if len(prefix) > n_blocks:
        raise TooFewBlocks(f"need {len(prefix)} blocks, only {n_blocks} allowed")
    cases = tuple(prefix) + (pad_case,) * (n_blocks - len(prefix))
    return SynthesisResult(cases=cases, exact_len=len(prefix))
