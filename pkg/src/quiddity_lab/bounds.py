"""Bounds on the largest irreducible solution size, and the prime-range scans.

Lower bounds come from explicit irreducible witnesses (monomial, trinomial,
2-monomial, the size-4 zero solution).  The upper bound comes from an
exhaustive search for tuples with no contiguous window of continuant +-1:
once no such tuple of length n exists, every solution of size >= n + 3 has a
reducible window, so no irreducible solution is longer than n + 2.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .arith import euler_phi, factorize, is_prime, moebius
from .continuant import sl2_order
from .errors import NotAField, PEven, PNotPrime, QuiddityError, RangeTooLarge, TooLarge
from .families import (
    FamilyReport,
    monomial_bound_witness,
    monomial_minimal,
    quadrinomial_minimal,
    trinomial_minimal,
    trinomial_size,
)
from .ring_core import GF, STANDARD_MODPOLYS, Element, FiniteRing

LOWER_BOUND_MAX_Q = 1 << 20
SURVIVOR_BUDGET = 10**7
DYNOMIAL_SCAN_MAX_P = 3000
TRINOMIAL_SCAN_MAX_P = 5000
CONJECTURE_MAX = 2 * 10**6


@dataclass(frozen=True)
class EllBound:
    ring: FiniteRing
    lower: int
    lower_witness: FamilyReport
    strategy: str
    upper: int | None = None
    upper_method: str = "none"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.spec,
            "lower": self.lower,
            "strategy": self.strategy,
            "lower_witness": self.lower_witness.to_json(),
            "upper": self.upper,
            "upper_method": self.upper_method,
        }


@dataclass(frozen=True)
class SurvivorSearch:
    """Per-length counts of tuples with no window of continuant +-1."""

    counts: dict[int, int]
    cutoff: int | None
    budget_exhausted: bool = False
    survivors: dict[int, list[tuple]] = field(default_factory=dict, repr=False)

    @property
    def upper(self) -> int | None:
        return None if self.cutoff is None else self.cutoff + 2


def _require_field(ring: FiniteRing) -> None:
    if not ring.is_field:
        raise NotAField(f"{ring} is not a field")


def ell_theoretic_upper(ring: FiniteRing) -> int:
    """|SL_2(A)| / (2|A|) + 2, or |SL_2(A)| / |A| + 2 in characteristic 2."""
    scale = 1 if ring.characteristic == 2 else 2
    return sl2_order(ring) // (scale * ring.cardinality) + 2


# -- lower bound ----------------------------------------------------------------


def _trinomial_candidates(field_: FiniteRing) -> Iterator[FamilyReport]:
    """Irreducible trinomial solutions for units of order q-1 or (q-1)/2, longest first."""
    q = field_.cardinality
    orders = {q - 1, (q - 1) // 2}
    ranked = []
    for u in field_.units():
        if field_.element_order(u) in orders:
            ranked.append((-trinomial_size(field_, u), field_.index(u), u))
    for _, _, u in sorted(ranked):
        report = trinomial_minimal(field_, u)
        if report.irreducible:
            yield report


def ell_lower_bound(field_: FiniteRing) -> EllBound:
    """Best lower bound among the available irreducible witnesses."""
    _require_field(field_)
    if field_.cardinality > LOWER_BOUND_MAX_Q:
        raise TooLarge(f"lower-bound scans are limited to {LOWER_BOUND_MAX_Q} elements")
    candidates: list[tuple[str, FamilyReport]] = []

    y, _ = monomial_bound_witness(field_)
    mono = monomial_minimal(field_, y)
    if mono.irreducible:
        candidates.append(("monomial", mono))

    trino = next(_trinomial_candidates(field_), None)
    if trino is not None:
        candidates.append(("trinomial", trino))

    two = monomial_minimal(field_, field_.from_int(2))
    if two.irreducible:
        candidates.append(("two-monomial", two))

    floor = quadrinomial_minimal(field_, field_.zero, field_.zero)
    assert floor.irreducible and floor.size == 4
    candidates.append(("zero-quadrinomial", floor))

    # first strategy wins ties, so the order above is the preference order
    strategy, best = max(candidates, key=lambda c: c[1].size)
    return EllBound(field_, best.size, best, strategy)


# -- upper bound ----------------------------------------------------------------


def _extends_cleanly(ring: FiniteRing, cand: tuple, targets: set) -> bool:
    # suffix windows (c_j..c_p) via the reversed recurrence; prefixes were checked earlier
    prev, cur = ring.zero, ring.one
    mul, sub = ring.mul, ring.sub
    for c in reversed(cand):
        prev, cur = cur, sub(mul(c, cur), prev)
        if cur in targets:
            return False
    return True


def ell_upper_bound_search(
    field_: FiniteRing, n_max: int, budget: int = SURVIVOR_BUDGET, keep: bool = False
) -> SurvivorSearch:
    """Breadth-first search for tuples over A minus {0, +-1} with no +-1 window.

    ``counts[n]`` is the number of such tuples of length n.  The search stops
    at the first empty level (the cutoff) or at ``n_max``.  If a level would
    hold more than ``budget`` tuples the partial counts are returned with
    ``budget_exhausted`` set and no cutoff.
    """
    _require_field(field_)
    targets = {field_.one, field_.neg(field_.one)}
    alphabet = [a for a in field_.elements() if a != field_.zero and a not in targets]
    level = [(a,) for a in alphabet]
    counts = {1: len(level)}
    kept = {1: level} if keep else {}
    if not level:
        return SurvivorSearch(counts, 1, survivors=kept)
    for n in range(2, n_max + 1):
        nxt = []
        for t in level:
            for a in alphabet:
                cand = t + (a,)
                if _extends_cleanly(field_, cand, targets):
                    nxt.append(cand)
            if len(nxt) > budget:
                return SurvivorSearch(counts, None, True, kept)
        counts[n] = len(nxt)
        if keep:
            kept[n] = nxt
        if not nxt:
            return SurvivorSearch(counts, n, survivors=kept)
        level = nxt
    return SurvivorSearch(counts, None, survivors=kept)


def ell_bounds(field_: FiniteRing, n_max: int | None = None) -> EllBound:
    """Lower bound, plus the search upper bound when ``n_max`` is given."""
    low = ell_lower_bound(field_)
    if n_max is None:
        return low
    search = ell_upper_bound_search(field_, n_max)
    if search.cutoff is None:
        return low
    upper = search.upper
    assert upper is not None and low.lower <= upper
    return EllBound(field_, low.lower, low.lower_witness, low.strategy, upper, "window-free-search")


# -- prime-range scans ------------------------------------------------------------


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0:
        raise PEven(f"p must be odd, got {p}")
    if not is_prime(p):
        raise PNotPrime(f"{p} is not prime")


def _dynomial_rows(p: int, a_values: range) -> list[tuple[int, int]]:
    half = (p - 1) // 2
    out = []
    for a in a_values:
        a_inv = pow(a, -1, p)
        for b in range(a + 1, p - 1):
            r = a * pow(b, -1, p) % p
            s = b * a_inv % p
            d1 = (a * a + 4 * r * (r - 1)) % p
            d2 = (b * b + 4 * s * (s - 1)) % p
            if pow(d1, half, p) == p - 1 and pow(d2, half, p) == p - 1:
                out.append((a, b))
    return out


def _chunks(values: range, workers: int) -> list[range]:
    n = max(1, workers)
    step = max(1, math.ceil(len(values) / n))
    return [values[i : i + step] for i in range(0, len(values), step)]


def _parallel(fn, args_list: list[tuple], workers: int) -> list:
    if workers <= 1 or len(args_list) <= 1:
        return [fn(*args) for args in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*args_list)))


def scan_dynomial_pairs(p: int, workers: int = 1) -> list[tuple[int, int]]:
    """Pairs 1 < a < b < p-1 whose two deltas are both non-squares mod p."""
    _require_odd_prime(p)
    if p > DYNOMIAL_SCAN_MAX_P:
        raise RangeTooLarge(f"dynomial scan limited to p <= {DYNOMIAL_SCAN_MAX_P}")
    parts = _parallel(_dynomial_rows, [(p, r) for r in _chunks(range(2, p - 2), workers)], workers)
    return [pair for part in parts for pair in part]


def _trinomial_survives(p: int, x: int) -> bool:
    o = p - 1
    for r, _ in factorize(p - 1).pairs if p > 2 else ():
        while o % r == 0 and pow(x, o // r, p) == 1:
            o //= r
    m = 3 * o // 2 if o % 2 == 0 else 3 * o
    xl = x
    for _ in range(m // 6):
        x2l = xl * xl % p
        xl1 = xl * x % p
        if (x2l + xl1 - 1) % p == 0 or (x2l - xl1 - 1) % p == 0:
            return False
        xl = xl1
    return True


def scan_trinomial(p: int) -> list[int]:
    """x in [2, (p-1)/2] whose x-trinomial solution over Z/p is irreducible."""
    _require_odd_prime(p)
    if p < 5:
        raise PNotPrime("the trinomial scan needs p >= 5")
    if p > TRINOMIAL_SCAN_MAX_P:
        raise RangeTooLarge(f"trinomial scan limited to p <= {TRINOMIAL_SCAN_MAX_P}")
    return [x for x in range(2, (p - 1) // 2 + 1) if _trinomial_survives(p, x)]


def _conjecture_rows(lo: int, hi: int) -> list[tuple[int, int | None]]:
    """(p, first generator j with j^2 + 4 a non-square, or None) for primes in (lo, hi]."""
    out = []
    for p in range(max(lo + 1, 5), hi + 1):
        if not is_prime(p):
            continue
        exponents = [(p - 1) // r for r, _ in factorize(p - 1).pairs]
        half = (p - 1) // 2
        found = None
        for j in range(2, p - 1):
            if pow((j * j + 4) % p, half, p) == p - 1 and all(pow(j, e, p) != 1 for e in exponents):
                found = j
                break
        out.append((p, found))
    return out


def conjecture_witnesses(a: int, b: int, workers: int = 1) -> list[tuple[int, int | None]]:
    """Per prime in (a, b], the smallest generator j >= 2 with j^2 + 4 a non-square."""
    if not 2 < a < b:
        raise QuiddityError(f"need 2 < a < b, got ({a}, {b})")
    if b > CONJECTURE_MAX:
        raise RangeTooLarge(f"conjecture harness limited to b <= {CONJECTURE_MAX}")
    step = max(1, math.ceil((b - a) / max(1, workers)))
    spans = [(lo, min(lo + step, b)) for lo in range(a, b, step)]
    parts = _parallel(_conjecture_rows, spans, workers)
    return [row for part in parts for row in part]


def verify_generator_conjecture(a: int, b: int, workers: int = 1) -> list[int]:
    """Primes in (a, b] with no generator j such that j^2 + 4 is a non-square."""
    return [p for p, j in conjecture_witnesses(a, b, workers) if j is None]


# -- characteristic 2 -------------------------------------------------------------


@dataclass(frozen=True)
class Char2Bound:
    n: int
    field: FiniteRing
    generator: Element | None
    bound: int | None
    odd_and_squarefree: bool
    phi_condition: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ring": self.field.spec,
            "generator": None if self.generator is None else self.field.to_json(self.generator),
            "bound": self.bound,
            "odd_and_squarefree": self.odd_and_squarefree,
            "phi_condition": self.phi_condition,
        }


def char2_generator_bound(n: int, modpoly: tuple[int, ...] | None = None) -> Char2Bound:
    """Search GF(2^n) for a generator whose trinomial solution is irreducible.

    Such a generator gives an irreducible solution of size 3(2^n - 1).  The
    two flags report sufficient conditions under which one must exist.
    """
    if not 2 <= n <= 16:
        raise QuiddityError(f"n must lie in [2, 16], got {n}")
    field_ = GF(2, n, tuple(modpoly) if modpoly is not None else STANDARD_MODPOLYS[(2, n)])
    m = (1 << n) - 1
    squarefree = moebius(m) != 0
    odd_sf = n % 2 == 1 and squarefree
    phi_ok = euler_phi(m) >= 1 << (n - 1)
    for g in field_.generators():
        report = trinomial_minimal(field_, g)
        if report.irreducible:
            return Char2Bound(n, field_, g, report.size, odd_sf, phi_ok)
    return Char2Bound(n, field_, None, None, odd_sf, phi_ok)
