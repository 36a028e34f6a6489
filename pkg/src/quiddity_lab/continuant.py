"""Continuants K_n and the matrices M_n.

    K_{-1} = 0,  K_0 = 1,  K_n(a_1..a_n) = a_n K_{n-1}(a_1..a_{n-1}) - K_{n-2}(a_1..a_{n-2})

    M_n(a_1..a_n) = M(a_n) ... M(a_1),   M(a) = [[a, -1], [1, 0]]

and M_n(a_1..a_n) = [[K_n(a_1..a_n),      -K_{n-1}(a_2..a_n)],
                     [K_{n-1}(a_1..a_{n-1}), -K_{n-2}(a_2..a_{n-1})]].
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from .arith import factorize
from .errors import ContinuantNotUnitSign
from .ring_core import Element, FiniteRing, Mat2


class ContinuantTriple(NamedTuple):
    k_n: Element  # K_n(a_1..a_n)
    k_n1_left: Element  # K_{n-1}(a_1..a_{n-1})
    k_n1_right: Element  # K_{n-1}(a_2..a_n)


def continuant(ring: FiniteRing, seq: Sequence[Element]) -> Element:
    prev, cur = ring.zero, ring.one
    mul, sub = ring.mul, ring.sub
    for a in seq:
        prev, cur = cur, sub(mul(a, cur), prev)
    return cur


def continuant_prefixes(ring: FiniteRing, seq: Sequence[Element]) -> list[Element]:
    """[K_0, K_1(a_1), K_2(a_1, a_2), ..., K_n(a_1..a_n)]."""
    out = [ring.one]
    prev, cur = ring.zero, ring.one
    for a in seq:
        prev, cur = cur, ring.sub(ring.mul(a, cur), prev)
        out.append(cur)
    return out


def continuant_triple(ring: FiniteRing, seq: Sequence[Element]) -> ContinuantTriple:
    if not seq:
        raise ValueError("continuant_triple needs at least one entry")
    return ContinuantTriple(
        continuant(ring, seq), continuant(ring, seq[:-1]), continuant(ring, seq[1:])
    )


def m_matrix(ring: FiniteRing, seq: Sequence[Element]) -> Mat2:
    """M_n(a_1..a_n); the empty product is the identity."""
    one, zero = ring.one, ring.zero
    a11, a12, a21, a22 = one, zero, zero, one
    mul, sub = ring.mul, ring.sub
    for a in seq:
        # [[a, -1], [1, 0]] @ current
        a11, a12, a21, a22 = sub(mul(a, a11), a21), sub(mul(a, a12), a22), a11, a12
    return Mat2(a11, a12, a21, a22)


def mat_mul(ring: FiniteRing, x: Mat2, y: Mat2) -> Mat2:
    add, mul = ring.add, ring.mul
    return Mat2(
        add(mul(x.a11, y.a11), mul(x.a12, y.a21)),
        add(mul(x.a11, y.a12), mul(x.a12, y.a22)),
        add(mul(x.a21, y.a11), mul(x.a22, y.a21)),
        add(mul(x.a21, y.a12), mul(x.a22, y.a22)),
    )


def mat_pow(ring: FiniteRing, x: Mat2, k: int) -> Mat2:
    result = Mat2(ring.one, ring.zero, ring.zero, ring.one)
    while k:
        if k & 1:
            result = mat_mul(ring, result, x)
        x = mat_mul(ring, x, x)
        k >>= 1
    return result


def sl2_order_factorization(ring: FiniteRing) -> dict[int, int]:
    """Prime factorisation of |SL_2(A)|.

    q(q^2 - 1) for GF(q); N^3 prod_{p | N} (1 - p^-2) for Z/N.
    """
    counts: dict[int, int] = {}

    def absorb(n: int, times: int = 1) -> None:
        if n > 1:
            for p, e in factorize(n).pairs:
                counts[p] = counts.get(p, 0) + e * times

    p = ring.characteristic
    if ring.is_field:
        q = ring.cardinality
        counts[p] = counts.get(p, 0) + ring.degree
        absorb(q - 1)
        absorb(q + 1)
        return counts
    for r, e in factorize(ring.cardinality).pairs:
        counts[r] = counts.get(r, 0) + 3 * e - 2
        absorb(r - 1)
        absorb(r + 1)
    return counts


def sl2_order(ring: FiniteRing) -> int:
    out = 1
    for p, e in sl2_order_factorization(ring).items():
        out *= p**e
    return out


def projective_order(ring: FiniteRing, m: Mat2) -> int:
    """Smallest k >= 1 with m^k = +-Id, for m in SL_2(A).

    The exponents k with m^k in {Id, -Id} form a subgroup of Z containing
    |SL_2(A)|, so the answer is found by stripping prime factors from that
    group order.
    """
    counts = sl2_order_factorization(ring)
    t = sl2_order(ring)
    for r in sorted(counts):
        while t % r == 0 and scalar_sign(ring, mat_pow(ring, m, t // r)) is not None:
            t //= r
    assert scalar_sign(ring, mat_pow(ring, m, t)) is not None
    return t


def determinant(ring: FiniteRing, m: Mat2) -> Element:
    return ring.sub(ring.mul(m.a11, m.a22), ring.mul(m.a12, m.a21))


def scalar_sign(ring: FiniteRing, m: Mat2) -> int | None:
    """e if m = e*Id with e in {+1, -1} (characteristic 2 reports +1), else None."""
    if m.a12 != ring.zero or m.a21 != ring.zero or m.a11 != m.a22:
        return None
    return ring.sign_of(m.a11)


def constant_continuant(ring: FiniteRing, x: Element, n: int) -> Element:
    """K_n(x, ..., x) = sum_{i <= n/2} (-1)^i C(n-i, i) x^(n-2i)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = ring.zero
    x2 = ring.mul(x, x)
    power = ring.pow(x, n % 2)  # x^(n-2i), walked from i = n//2 downwards
    for i in range(n // 2, -1, -1):
        coeff = ring.from_int((-1) ** i * math.comb(n - i, i))
        total = ring.add(total, ring.mul(coeff, power))
        power = ring.mul(power, x2)
    return total


def extend_to_solution(ring: FiniteRing, seq: Sequence[Element]) -> tuple:
    """Wrap a tuple with continuant e = +-1 into the solution (x, a_1..a_n, y).

    x = e K_{n-1}(a_2..a_n) and y = e K_{n-1}(a_1..a_{n-1}); the result has
    M_{n+2} = -e Id.
    """
    seq = tuple(seq)
    k = continuant(ring, seq)
    sign = ring.sign_of(k)
    if sign is None:
        raise ContinuantNotUnitSign(f"continuant is {ring.format(k)}, not +-1")
    if not seq:
        return (ring.zero, ring.zero)  # K_{-1} = 0
    x = continuant(ring, seq[1:])
    y = continuant(ring, seq[:-1])
    if sign == -1:
        x, y = ring.neg(x), ring.neg(y)
    return (x, *seq, y)
