"""Marked involutions of an integer window and the generators they define.

A window stores a finite involution iota together with marks delta_n in
{-1, +1}, subject (wherever all referenced indices stay inside the window) to

    delta_n = delta_{iota(n)}
    iota(iota(n) - delta_n) = iota(n + 1) + delta_{n+1}            (up variant)
    iota(iota(n) + delta_n) = iota(n - 1) - delta_{n-1}            (down variant)

These are exactly the constraints under which the matrices

    sigma_n = [[n, -n*iota(n) - delta_n], [1, -iota(n)]]

(one per index, det sigma_n = delta_n) generate a Neumann subgroup: a
subgroup of the extended modular group containing exactly one element
sending infinity to each extended rational.

Windows are produced from six hard-coded building blocks and a join that
splices two adjacent windows inside a fresh outer swap.  Construction never
validates the compatibility conditions; ``validate`` is a separate pass so
that deliberately corrupted windows can be fed to it in tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .gl2 import IDENTITY, NU, OMEGA, IntMat2, ProjMat2, compose, tau_power

__all__ = [
    "BadCase",
    "NotAdjacent",
    "OutOfWindow",
    "BlockSpecError",
    "BuildingBlock",
    "InvolutionWindow",
    "ValidationReport",
    "make_block",
    "join",
    "assemble",
    "validate",
    "sigma",
    "sigma_star",
    "check_sigma_decomposition",
    "window_lines",
    "parse_block_spec",
    "CASE_IDS",
]


class BadCase(ValueError):
    """Unknown building block case id (valid ids are 1 through 6)."""


class NotAdjacent(ValueError):
    """Join called on windows whose index ranges are not contiguous."""


class OutOfWindow(Exception):
    """An operation needed an index outside the window; carries the index."""

    def __init__(self, index: int, lo: int | None = None, hi: int | None = None):
        self.index = index
        self.lo = lo
        self.hi = hi
        where = f" (window {lo}..{hi})" if lo is not None else ""
        super().__init__(f"index {index} out of window{where}")


class BlockSpecError(ValueError):
    """Malformed block spec text."""


# The six building blocks, as (pair offsets, offsets carrying delta = -1,
# span).  An entry (i, j) pairs base+i with base+j; i == j is a fixed point.
# Every block pairs its endpoints with delta = +1, which is what keeps the
# compatibility conditions alive across joins.
_CASES: dict[int, tuple[tuple[tuple[int, int], ...], frozenset[int], int]] = {
    1: (((0, 0),), frozenset(), 1),
    2: (((0, 1),), frozenset(), 2),
    3: (((0, 9), (1, 4), (2, 6), (3, 7), (5, 8)), frozenset(), 10),
    4: (((0, 6), (1, 4), (2, 2), (3, 5)), frozenset({1, 3, 4, 5}), 7),
    5: (((0, 7), (1, 5), (2, 3), (4, 6)), frozenset({1, 4, 5, 6}), 8),
    # case 6 wraps a copy of case 3 (shifted by 2) in three outer swaps
    6: (
        ((0, 15), (1, 13), (12, 14), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)),
        frozenset({1, 12, 13, 14}),
        16,
    ),
}

CASE_IDS = tuple(sorted(_CASES))


@dataclass(frozen=True, slots=True)
class BuildingBlock:
    """One of the six involution blocks, placed at a concrete base index.

    ``iota[i]`` and ``delta[i]`` describe index base + i; iota values are
    absolute indices, not offsets.
    """

    case_id: int
    base: int
    iota: tuple[int, ...]
    delta: tuple[int, ...]

    @property
    def lo(self) -> int:
        return self.base

    @property
    def hi(self) -> int:
        return self.base + len(self.iota) - 1

    @property
    def span(self) -> int:
        return len(self.iota)

    def as_window(self) -> InvolutionWindow:
        return InvolutionWindow(
            lo=self.lo,
            hi=self.hi,
            iota=self.iota,
            delta=self.delta,
            provenance=(self,),
            outer_pairs=(),
        )


def make_block(case_id: int, k: int) -> BuildingBlock:
    """Instantiate block ``case_id`` on the domain {k, ..., k + span - 1}."""
    try:
        pairs, minus, span = _CASES[case_id]
    except KeyError:
        raise BadCase(f"no building block case {case_id!r}") from None
    iota = [0] * span
    for i, j in pairs:
        iota[i] = k + j
        iota[j] = k + i
    delta = tuple(-1 if i in minus else 1 for i in range(span))
    return BuildingBlock(case_id=case_id, base=k, iota=tuple(iota), delta=delta)


@dataclass(frozen=True, slots=True)
class InvolutionWindow:
    """Finite marked involution on the index range {lo, ..., hi}.

    Immutable data holder; invalid tables are representable on purpose and
    only ``validate`` passes judgement.  ``provenance`` keeps the building
    blocks a window was assembled from, ``outer_pairs`` the swaps added by
    joins (outermost last).
    """

    lo: int
    hi: int
    iota: tuple[int, ...]
    delta: tuple[int, ...]
    provenance: tuple[BuildingBlock, ...] = ()
    outer_pairs: tuple[tuple[int, int], ...] = ()

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def iota_of(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise OutOfWindow(n, self.lo, self.hi)
        return self.iota[n - self.lo]

    def delta_of(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise OutOfWindow(n, self.lo, self.hi)
        return self.delta[n - self.lo]

    @classmethod
    def from_maps(
        cls,
        lo: int,
        hi: int,
        iota: Mapping[int, int],
        delta: Mapping[int, int],
        provenance: tuple[BuildingBlock, ...] = (),
        outer_pairs: tuple[tuple[int, int], ...] = (),
    ) -> InvolutionWindow:
        """Build a window from explicit maps (handy for corrupted test data)."""
        try:
            it = tuple(iota[n] for n in range(lo, hi + 1))
            dt = tuple(delta[n] for n in range(lo, hi + 1))
        except KeyError as exc:
            raise ValueError(f"missing table entry for index {exc.args[0]}") from None
        return cls(lo=lo, hi=hi, iota=it, delta=dt, provenance=provenance, outer_pairs=outer_pairs)


def join(w0: InvolutionWindow, w1: InvolutionWindow) -> InvolutionWindow:
    """Splice two adjacent windows and swap the two fresh outer indices.

    Requires w1.lo == w0.hi + 1.  The new outer pair carries delta = +1 on
    both sides; anything else would break the compatibility conditions at
    the seam, as validate demonstrates on hand-built counterexamples.
    """
    if w1.lo != w0.hi + 1:
        raise NotAdjacent(f"window {w0.lo}..{w0.hi} does not touch window {w1.lo}..{w1.hi}")
    lo = w0.lo - 1
    hi = w1.hi + 1
    iota = (hi,) + w0.iota + w1.iota + (lo,)
    delta = (1,) + w0.delta + w1.delta + (1,)
    return InvolutionWindow(
        lo=lo,
        hi=hi,
        iota=iota,
        delta=delta,
        provenance=w0.provenance + w1.provenance,
        outer_pairs=w0.outer_pairs + w1.outer_pairs + ((lo, hi),),
    )


def assemble(cases: Iterable[int]) -> InvolutionWindow:
    """Fold a sequence of block cases into one window, joining left to right.

    The first block lands at base -1 and each later block lands flush
    against the current window's right edge, so n + 1 blocks produce the
    window {-n-1, ..., base_n + span_n}.  Single-block sequences are
    returned as-is, with no outer pair.
    """
    cases = list(cases)
    if not cases:
        raise ValueError("assemble needs at least one block case")
    w = make_block(cases[0], -1).as_window()
    for cid in cases[1:]:
        w = join(w, make_block(cid, w.hi + 1).as_window())
    return w


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a window against the involution conditions.

    Failure tuples: involution (n, iota(n)); delta (n, delta_n,
    delta_{iota(n)} or 0 when the mark itself is bad); up/down condition
    (n, lhs, rhs).  Counts separate instances actually checked from those
    skipped because a referenced index fell off the window edge.
    """

    involution_failures: tuple[tuple[int, int], ...]
    delta_failures: tuple[tuple[int, int, int], ...]
    iota_failures: tuple[tuple[int, int, int], ...]
    iotaeq_failures: tuple[tuple[int, int, int], ...]
    iota_checked: int
    iota_skipped: int
    iotaeq_checked: int
    iotaeq_skipped: int

    @property
    def ok(self) -> bool:
        return not (
            self.involution_failures
            or self.delta_failures
            or self.iota_failures
            or self.iotaeq_failures
        )


def validate(w: InvolutionWindow) -> ValidationReport:
    """Check the involution property, mark symmetry, and both variants of
    the compatibility condition on every in-window instance."""
    inv_fail: list[tuple[int, int]] = []
    delta_fail: list[tuple[int, int, int]] = []

    def entry_ok(n: int) -> bool:
        m = w.iota[n - w.lo]
        return m in w and w.iota[m - w.lo] == n

    for n in w.indices():
        m = w.iota[n - w.lo]
        if m not in w or w.iota[m - w.lo] != n:
            inv_fail.append((n, m))
        d = w.delta[n - w.lo]
        if d not in (-1, 1):
            delta_fail.append((n, d, 0))
        elif m in w and w.delta[m - w.lo] != d:
            delta_fail.append((n, d, w.delta[m - w.lo]))

    iota_fail: list[tuple[int, int, int]] = []
    checked = skipped = 0
    for n in range(w.lo, w.hi):
        if not (entry_ok(n) and entry_ok(n + 1)):
            skipped += 1
            continue
        j = w.iota_of(n) - w.delta_of(n)
        if j not in w:
            skipped += 1
            continue
        checked += 1
        lhs = w.iota_of(j)
        rhs = w.iota_of(n + 1) + w.delta_of(n + 1)
        if lhs != rhs:
            iota_fail.append((n, lhs, rhs))

    iotaeq_fail: list[tuple[int, int, int]] = []
    eq_checked = eq_skipped = 0
    for n in range(w.lo + 1, w.hi + 1):
        if not (entry_ok(n) and entry_ok(n - 1)):
            eq_skipped += 1
            continue
        j = w.iota_of(n) + w.delta_of(n)
        if j not in w:
            eq_skipped += 1
            continue
        eq_checked += 1
        lhs = w.iota_of(j)
        rhs = w.iota_of(n - 1) - w.delta_of(n - 1)
        if lhs != rhs:
            iotaeq_fail.append((n, lhs, rhs))

    return ValidationReport(
        involution_failures=tuple(inv_fail),
        delta_failures=tuple(delta_fail),
        iota_failures=tuple(iota_fail),
        iotaeq_failures=tuple(iotaeq_fail),
        iota_checked=checked,
        iota_skipped=skipped,
        iotaeq_checked=eq_checked,
        iotaeq_skipped=eq_skipped,
    )


def sigma_star(w: InvolutionWindow, n: int) -> IntMat2:
    """Sign-tracked generator for index n; first column (n, 1), det delta_n."""
    i = w.iota_of(n)
    return IntMat2(n, -n * i - w.delta_of(n), 1, -i)


def sigma(w: InvolutionWindow, n: int) -> ProjMat2:
    """Projective generator for index n."""
    return ProjMat2(sigma_star(w, n))


def check_sigma_decomposition(w: InvolutionWindow, n: int) -> bool:
    """Every generator factors over the base generators as

        sigma_n = tau^n  omega  nu^((1 - delta_n)/2)  tau^(-iota(n))

    True when the factorization reproduces sigma(w, n) projectively.
    """
    i = w.iota_of(n)
    rhs = compose(tau_power(n), OMEGA)
    if w.delta_of(n) == -1:
        rhs = compose(rhs, NU)
    rhs = compose(rhs, tau_power(-i))
    return rhs == sigma(w, n)


def window_lines(w: InvolutionWindow) -> list[str]:
    """Canonical serialization: one ``n iota delta`` line per index."""
    return [f"{n} {w.iota_of(n)} {w.delta_of(n)}" for n in w.indices()]


_BLOCK_LINE = re.compile(r"^block\s+(\d+)\s*$")


def parse_block_spec(text: str) -> list[int]:
    """Parse block spec text: one ``block <case>`` per line, ``#`` comments.

    Raises BlockSpecError on anything else, including unknown case ids.
    """
    cases: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _BLOCK_LINE.match(line)
        if not m:
            raise BlockSpecError(f"line {lineno}: expected 'block <case>', got {raw!r}")
        cid = int(m.group(1))
        if cid not in _CASES:
            raise BlockSpecError(f"line {lineno}: unknown block case {cid}")
        cases.append(cid)
    if not cases:
        raise BlockSpecError("spec contains no blocks")
    return cases
