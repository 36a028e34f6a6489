"""Quadratic residues, factorisation and multiplicative functions.

Integer routines (``is_prime``, ``factorize``, ``euler_phi``, ``moebius``) work
on plain Python ints below 2**64.  The field routines take a ring object from
:mod:`quiddity_lab.ring_core` and only use its public methods.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

from .errors import (
    AZero,
    CharTwo,
    NotAField,
    OutOfRange,
    PEven,
    PNotPrime,
    TooLarge,
    WrongCharacteristic,
)

if TYPE_CHECKING:
    from .ring_core import Element, FiniteRing

LIMIT_64 = 1 << 64
TRIAL_BOUND = 10**6
SQUARE_TABLE_MAX = 10**6
SZYMICZEK_MAX = 512
MERSENNE_MAX = 64

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_BOUND + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(TRIAL_BOUND) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, TRIAL_BOUND + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 2**64 (and far beyond)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    value: int
    pairs: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)


def _merge(counts: dict[int, int], value: int) -> Factorization:
    return Factorization(value, tuple(sorted(counts.items())))


def factorize(n: int) -> Factorization:
    """Prime factorisation of 2 <= n < 2**64.

    >>> factorize(4095).as_dict()
    {3: 2, 5: 1, 7: 1, 13: 1}
    """
    if not 2 <= n < LIMIT_64:
        raise OutOfRange(f"factorize needs 2 <= n < 2^64, got {n}")
    counts: dict[int, int] = {}
    rest = n
    for p in _small_primes():
        if p * p > rest:
            break
        while rest % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rest //= p
    if rest > 1:
        rng = random.Random(rest)
        stack = [rest]
        while stack:
            m = stack.pop()
            if is_prime(m):
                counts[m] = counts.get(m, 0) + 1
            else:
                d = _brent(m, rng)
                stack += [d, m // d]
    return _merge(counts, n)


def _phi_from(fac: Factorization) -> int:
    out = 1
    for p, e in fac.pairs:
        out *= (p - 1) * p ** (e - 1)
    return out


def euler_phi(n: int) -> int:
    if not 1 <= n < LIMIT_64:
        raise OutOfRange(f"euler_phi needs 1 <= n < 2^64, got {n}")
    return 1 if n == 1 else _phi_from(factorize(n))


def moebius(n: int) -> int:
    if not 1 <= n < LIMIT_64:
        raise OutOfRange(f"moebius needs 1 <= n < 2^64, got {n}")
    if n == 1:
        return 1
    fac = factorize(n)
    if any(e > 1 for _, e in fac.pairs):
        return 0
    return -1 if len(fac.pairs) % 2 else 1


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion; 0 when p divides a."""
    if p % 2 == 0:
        raise PEven(f"p must be odd, got {p}")
    if not is_prime(p):
        raise PNotPrime(f"{p} is not prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _mersenne_factor_counts(n: int, memo: dict[int, dict[int, int]]) -> dict[int, int]:
    # 2^(r*m) - 1 = (2^m - 1) * sum_{i<r} 2^(m*i); recurse on the first factor.
    if n in memo:
        return memo[n]
    if n == 1:
        return {}
    r = factorize(n).pairs[0][0]
    if r == n:
        counts = factorize((1 << n) - 1).as_dict()
    else:
        m = n // r
        counts = dict(_mersenne_factor_counts(m, memo))
        cofactor = sum(1 << (m * i) for i in range(r))
        for p, e in factorize(cofactor).pairs:
            counts[p] = counts.get(p, 0) + e
    memo[n] = counts
    return counts


def mersenne_factorization(n: int) -> Factorization:
    """Factor 2^n - 1 (1 < n <= 64) by splitting along divisors of n first."""
    if not 2 <= n <= MERSENNE_MAX:
        raise OutOfRange(f"Mersenne exponent must be in [2, {MERSENNE_MAX}], got {n}")
    return _merge(_mersenne_factor_counts(n, {}), (1 << n) - 1)


def mersenne_phi_deficit(a: int, b: int) -> list[int]:
    """All n in [a, b] with phi(2^n - 1) < 2^(n-1)."""
    if not 2 <= a <= b <= MERSENNE_MAX:
        raise OutOfRange(f"need 2 <= a <= b <= {MERSENNE_MAX}, got ({a}, {b})")
    memo: dict[int, dict[int, int]] = {}
    out = []
    for n in range(a, b + 1):
        phi = _phi_from(_merge(_mersenne_factor_counts(n, memo), (1 << n) - 1))
        if phi < 1 << (n - 1):
            out.append(n)
    return out


# -- field routines ---------------------------------------------------------


def _require_field(ring: FiniteRing) -> None:
    if not ring.is_field:
        raise NotAField(f"{ring} is not a field")


def is_square(field: FiniteRing, x: Element) -> bool:
    """Whether x has a square root in the field.

    Extension fields of odd characteristic are reduced to the prime field:
    x is a square in F_q exactly when x^((q-1)/(p-1)), which lies in F_p,
    is a square there.
    """
    _require_field(field)
    if field.is_zero(x) or field.characteristic == 2:
        return True
    p, q = field.characteristic, field.cardinality
    if q != p:
        x = field.pow(x, (q - 1) // (p - 1))
    c = field.to_prime_field(x)
    return pow(c, (p - 1) // 2, p) == 1


def square_table(ring: FiniteRing) -> frozenset:
    """{y^2 : y in ring}."""
    if ring.cardinality > SQUARE_TABLE_MAX:
        raise TooLarge(f"square table limited to {SQUARE_TABLE_MAX} elements")
    return frozenset(ring.mul(y, y) for y in ring.elements())


def count_x_with_square_shift(field: FiniteRing, a: Element) -> int:
    """|{x : x^2 + a is a square}| in a field of odd characteristic."""
    _require_field(field)
    if field.characteristic == 2:
        raise CharTwo("count_x_with_square_shift needs odd characteristic")
    if field.is_zero(a):
        raise AZero("a must be nonzero")
    squares = square_table(field)
    return sum(field.add(field.mul(x, x), a) in squares for x in field.elements())


def _require_char2(field: FiniteRing) -> None:
    if field.characteristic != 2 or not field.is_field:
        raise WrongCharacteristic(f"{field} is not a field of characteristic 2")


def trace_char2(field: FiniteRing, x: Element) -> int:
    """Absolute trace x + x^2 + x^4 + ... of a characteristic-2 field, as 0 or 1."""
    _require_char2(field)
    total, y = field.zero, x
    for _ in range(field.degree):
        total = field.add(total, y)
        y = field.mul(y, y)
    assert total in (field.zero, field.one), "trace must land in F_2"
    return 0 if total == field.zero else 1


def splits_char2(field: FiniteRing, a: Element, b: Element) -> bool:
    """Whether X^2 + aX + b has a root in the characteristic-2 field."""
    _require_char2(field)
    if field.is_zero(a):
        return True  # every element is a square
    a_inv = field.inv(a)
    return trace_char2(field, field.mul(b, field.mul(a_inv, a_inv))) == 0


def szymiczek_sum_check(field: FiniteRing, m: int) -> bool:
    """Compare the sum of g^m over all generators g with its closed form.

    The closed form is mu(e) * phi(q-1) / phi(e) with e = (q-1) / gcd(m, q-1).
    """
    _require_field(field)
    q = field.cardinality
    if q > SZYMICZEK_MAX:
        raise TooLarge(f"generator sum limited to fields with at most {SZYMICZEK_MAX} elements")
    if m < 0:
        raise OutOfRange("m must be nonnegative")
    total = field.zero
    for g in field.generators():
        total = field.add(total, field.pow(g, m))
    e = (q - 1) // math.gcd(m, q - 1)
    closed = moebius(e) * euler_phi(q - 1) // euler_phi(e)
    return total == field.from_int(closed)
