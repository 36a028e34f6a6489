"""Solutions of M_n(a_1..a_n) = +-Id, their sum, equivalence and reducibility.

A solution of size n >= 3 is reducible when it is equivalent (up to rotation
and reversal) to a sum a (+) b of two solutions of sizes >= 3. The decision
procedure used here is a window scan: t is reducible iff some cyclic window of
length 1 <= j <= (n-2)/2 has continuant +-1. The window becomes the interior of
the summand b, and a is what remains once b's boundary entries are removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .continuant import extend_to_solution, m_matrix, scalar_sign
from .errors import NotASolution, QuiddityError, TooShort
from .ring_core import Element, FiniteRing


@dataclass(frozen=True)
class QuiddityTuple:
    ring: FiniteRing
    entries: tuple
    sign: int

    @classmethod
    def of(cls, ring: FiniteRing, entries: Sequence[Element]) -> QuiddityTuple:
        entries = tuple(ring.check(a) for a in entries)
        sign = is_quiddity(ring, entries)
        if sign is None:
            raise NotASolution(f"{_fmt(ring, entries)} is not a solution over {ring}")
        return cls(ring, entries, sign)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ReductionWitness:
    """t rotated to start at ``start + window_len`` equals complement (+) summand.

    ``start`` is the 0-based index in t of the window's first entry.
    """

    start: int
    window_len: int
    summand: QuiddityTuple
    complement: QuiddityTuple


def _fmt(ring: FiniteRing, entries: Sequence[Element]) -> str:
    return "(" + ", ".join(ring.format(a) for a in entries) + ")"


def is_quiddity(ring: FiniteRing, entries: Sequence[Element]) -> int | None:
    """The sign e with M_n = e Id, or None when the tuple is not a solution."""
    if not entries:
        raise TooShort("a solution has at least one entry")
    return scalar_sign(ring, m_matrix(ring, entries))


def oplus(ring: FiniteRing, a: Sequence[Element], b: Sequence[Element]) -> tuple:
    """(a_1+b_l, a_2..a_{m-1}, a_m+b_1, b_2..b_{l-1})."""
    if len(a) < 2 or len(b) < 2:
        raise TooShort("both operands need at least two entries")
    return (
        ring.add(a[0], b[-1]),
        *a[1:-1],
        ring.add(a[-1], b[0]),
        *b[1:-1],
    )


def rotations_and_reversals(t: Sequence[Element]) -> list[tuple]:
    t = tuple(t)
    r = t[::-1]
    n = len(t)
    return [t[i:] + t[:i] for i in range(n)] + [r[i:] + r[:i] for i in range(n)]


def equivalent(t1: Sequence[Element], t2: Sequence[Element]) -> bool:
    """Whether t2 is a cyclic rotation of t1 or of t1 reversed."""
    if len(t1) != len(t2):
        return False
    return tuple(t2) in rotations_and_reversals(t1)


def _window(entries: tuple, start: int, length: int) -> tuple:
    doubled = entries + entries
    return doubled[start : start + length]


def _unit_windows(ring: FiniteRing, entries: tuple) -> tuple[int, int] | None:
    n = len(entries)
    max_len = (n - 2) // 2
    if max_len < 1:
        return None
    targets = {ring.one, ring.neg(ring.one)}
    doubled = entries + entries
    # k[i][j] = K_j of the window starting at i; filled row by row so the
    # search order (increasing j, then increasing start) is exact.
    mul, sub = ring.mul, ring.sub
    prev = [ring.zero] * n
    cur = [ring.one] * n
    for j in range(1, max_len + 1):
        nxt = [sub(mul(doubled[i + j - 1], cur[i]), prev[i]) for i in range(n)]
        for i, value in enumerate(nxt):
            if value in targets:
                return i, j
        prev, cur = cur, nxt
    return None


def is_reducible(ring: FiniteRing, entries: Sequence[Element]) -> ReductionWitness | None:
    """A reduction witness, or None if the solution is irreducible.

    Raises NotASolution if the tuple is not a solution and TooShort below size
    3, where reducibility is not defined.
    """
    solution = QuiddityTuple.of(ring, entries)
    n = len(solution)
    if n < 3:
        raise TooShort("reducibility is only defined for solutions of size >= 3")
    hit = _unit_windows(ring, solution.entries)
    if hit is None:
        return None
    start, j = hit
    window = _window(solution.entries, start, j)
    summand = extend_to_solution(ring, window)
    x, y = summand[0], summand[-1]
    rotated = _window(solution.entries, (start + j) % n, n)
    rest = rotated[: n - j]
    complement = (ring.sub(rest[0], y), *rest[1:-1], ring.sub(rest[-1], x))
    return ReductionWitness(
        start, j, QuiddityTuple.of(ring, summand), QuiddityTuple.of(ring, complement)
    )


def is_irreducible(ring: FiniteRing, entries: Sequence[Element]) -> bool:
    return is_reducible(ring, entries) is None


def verify_witness(solution: QuiddityTuple, witness: ReductionWitness) -> bool:
    """Recheck a witness from scratch; any inconsistency yields False."""
    try:
        ring = solution.ring
        entries = solution.entries
        n, j = len(entries), witness.window_len
        summand, complement = witness.summand.entries, witness.complement.entries
        if not (1 <= j <= n - 3 and 0 <= witness.start < n):
            return False
        if len(summand) != j + 2 or len(complement) != n - j:
            return False
        if summand[1:-1] != _window(entries, witness.start, j):
            return False
        if is_quiddity(ring, summand) is None or is_quiddity(ring, complement) is None:
            return False
        return equivalent(entries, oplus(ring, complement, summand))
    except QuiddityError:
        return False


def classify(ring: FiniteRing, entries: Sequence[Element]) -> dict:
    """Solution status, sign and reducibility as a JSON-ready dict."""
    entries = tuple(ring.check(a) for a in entries)
    sign = is_quiddity(ring, entries)
    out: dict = {"solution": sign is not None, "sign": sign}
    if sign is None:
        out.update(reducible=None, witness=None)
    elif len(entries) < 3:
        out.update(reducible=None, witness=None, note="reducibility is not defined below size 3")
    else:
        witness = is_reducible(ring, entries)
        out["reducible"] = witness is not None
        out["witness"] = None if witness is None else witness_to_json(ring, witness)
    return out


def witness_to_json(ring: FiniteRing, witness: ReductionWitness) -> dict:
    return {
        "start": witness.start,
        "window_len": witness.window_len,
        "summand": [ring.to_json(a) for a in witness.summand.entries],
        "complement": [ring.to_json(a) for a in witness.complement.entries],
    }
