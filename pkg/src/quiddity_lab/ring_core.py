"""Finite rings Z/NZ and GF(p^n).

Elements are plain immutable Python values so they hash, compare and
serialise without ceremony:

* ``ZMod(N)``: an ``int`` in ``[0, N)``;
* ``GF(p, n, modpoly)``: a ``tuple`` ``(c0, ..., c_{n-1})`` of ints in
  ``[0, p)``, ascending powers of X.

Arithmetic methods assume canonical inputs and do not re-validate them on
every call; use :meth:`FiniteRing.check` or :meth:`FiniteRing.element` at
API boundaries.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Union

from .arith import LIMIT_64, euler_phi, factorize, is_prime
from .errors import (
    CompositeP,
    MalformedElement,
    MalformedSpec,
    NotAField,
    NotAUnit,
    NTooSmall,
    ReduciblePolynomial,
    RingMismatch,
)

Element = Union[int, tuple]

LOG_TABLE_MAX = 1 << 16  # GF fields up to this size get log/antilog tables
EXHAUSTIVE_IRRED_MAX = 10**5  # candidate-divisor budget for brute-force irreducibility


class Mat2(NamedTuple):
    a11: Element
    a12: Element
    a21: Element
    a22: Element


class FiniteRing(ABC):
    cardinality: int
    characteristic: int
    degree: int
    zero: Element
    one: Element

    @property
    @abstractmethod
    def is_field(self) -> bool: ...

    @property
    @abstractmethod
    def spec(self) -> str:
        """Canonical ring-spec string, accepted back by :func:`parse_ring`."""

    @abstractmethod
    def add(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def sub(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def neg(self, x: Element) -> Element: ...

    @abstractmethod
    def mul(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def inv(self, x: Element) -> Element: ...

    @abstractmethod
    def is_unit(self, x: Element) -> bool: ...

    @abstractmethod
    def from_int(self, k: int) -> Element: ...

    @abstractmethod
    def index(self, x: Element) -> int:
        """Position of x in :meth:`elements`."""

    @abstractmethod
    def element_at(self, i: int) -> Element: ...

    @abstractmethod
    def check(self, x: object) -> Element:
        """Return x unchanged if it is a canonical element, else raise RingMismatch."""

    @abstractmethod
    def element(self, raw: object) -> Element:
        """Coerce user input (int, list, tuple) into a canonical element."""

    @abstractmethod
    def to_json(self, x: Element) -> object: ...

    @abstractmethod
    def format(self, x: Element) -> str: ...

    @property
    @abstractmethod
    def unit_group_order(self) -> int: ...

    def __str__(self) -> str:
        return self.spec

    def is_zero(self, x: Element) -> bool:
        return x == self.zero

    def pow(self, x: Element, k: int) -> Element:
        if k < 0:
            x, k = self.inv(x), -k
        result, base = self.one, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def elements(self) -> Iterator[Element]:
        """All elements in the fixed enumeration order."""
        return (self.element_at(i) for i in range(self.cardinality))

    def units(self) -> Iterator[Element]:
        return (x for x in self.elements() if self.is_unit(x))

    def sign_of(self, x: Element) -> int | None:
        """+1 or -1 if x is that element (characteristic 2 reports +1), else None."""
        if x == self.one:
            return 1
        if x == self.neg(self.one):
            return -1
        return None

    def element_order(self, x: Element) -> int:
        """Multiplicative order of the unit x.

        Works down from the exponent of the unit group (q-1 for fields,
        phi(N) for Z/N) by stripping prime factors, so the cost is
        O(log^2) multiplications instead of a linear walk.
        """
        if not self.is_unit(x):
            raise NotAUnit(f"{self.format(x)} is not a unit of {self}")
        t = self.unit_group_order
        if t == 1:
            return 1
        for r, _ in factorize(t).pairs:
            while t % r == 0 and self.pow(x, t // r) == self.one:
                t //= r
        assert self.pow(x, t) == self.one
        return t

    def is_generator(self, x: Element) -> bool:
        """Whether x generates the multiplicative group of the field."""
        if not self.is_field:
            raise NotAField(f"{self} is not a field")
        if not self.is_unit(x):
            return False
        t = self.cardinality - 1
        if t == 1:
            return True
        return all(self.pow(x, t // r) != self.one for r, _ in factorize(t).pairs)

    def generators(self) -> Iterator[Element]:
        return (x for x in self.units() if self.is_generator(x))

    def parse_tuple(self, text: str) -> tuple:
        """Parse ``1,2,3`` (Z/N) or ``[1,0],[0,1]`` (GF) into a tuple of elements."""
        text = text.strip()
        if not text:
            return ()
        try:
            raw = json.loads(f"[{text}]")
        except json.JSONDecodeError as exc:
            raise MalformedElement(f"cannot parse tuple {text!r}") from exc
        return tuple(self.element(v) for v in raw)


@dataclass(frozen=True)
class ZMod(FiniteRing):
    N: int

    def __post_init__(self) -> None:
        if self.N < 2:
            raise NTooSmall(f"modulus must be at least 2, got {self.N}")
        if self.N >= LIMIT_64:
            raise MalformedSpec("cardinality must fit in 64 bits")

    @property
    def cardinality(self) -> int:  # type: ignore[override]
        return self.N

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.N

    degree = 1
    one = 1
    zero = 0

    @cached_property
    def is_field(self) -> bool:  # type: ignore[override]
        return is_prime(self.N)

    @property
    def spec(self) -> str:
        return f"Z/{self.N}"

    @cached_property
    def unit_group_order(self) -> int:  # type: ignore[override]
        return euler_phi(self.N)

    def add(self, x, y):
        return (x + y) % self.N

    def sub(self, x, y):
        return (x - y) % self.N

    def neg(self, x):
        return -x % self.N

    def mul(self, x, y):
        return x * y % self.N

    def pow(self, x, k):
        if k < 0:
            x, k = self.inv(x), -k
        return pow(x, k, self.N)

    def inv(self, x):
        try:
            return pow(x, -1, self.N)
        except ValueError:
            raise NotAUnit(f"{x} is not a unit of {self}") from None

    def is_unit(self, x):
        return math.gcd(x, self.N) == 1

    def from_int(self, k):
        return k % self.N

    def to_prime_field(self, x):
        return x

    def index(self, x):
        return x

    def element_at(self, i):
        return i

    def elements(self):
        return iter(range(self.N))

    def check(self, x):
        if type(x) is not int or not 0 <= x < self.N:
            raise RingMismatch(f"{x!r} is not a canonical element of {self}")
        return x

    def element(self, raw):
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise MalformedElement(f"{raw!r} is not an integer residue")
        return raw % self.N

    def to_json(self, x):
        return x

    def format(self, x):
        return str(x)


# -- polynomials over F_p as ascending coefficient lists ----------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return q, a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    return _poly_divmod(_poly_mul(a, b, p), f, p)[1]


def _poly_powmod(a: list[int], k: int, f: list[int], p: int) -> list[int]:
    result, base = [1], _poly_divmod(a, f, p)[1]
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        k >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def rabin_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test: f of degree n is irreducible over F_p iff X^(p^n) = X mod f
    and gcd(X^(p^(n/d)) - X, f) = 1 for every prime d dividing n."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]

    def frobenius_iterate(k: int) -> list[int]:
        y = x
        for _ in range(k):
            y = _poly_powmod(y, p, f, p)
        return y

    if _poly_sub(frobenius_iterate(n), x, p):
        return False
    for d, _ in factorize(n).pairs:
        g = _poly_gcd(_poly_sub(frobenius_iterate(n // d), x, p), f, p)
        if len(g) > 1:
            return False
    return True


def exhaustive_irreducible(f: list[int], p: int) -> bool:
    """Trial division of f by every monic polynomial of degree <= deg(f)/2."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_divmod(f, list(low) + [1], p)[1]:
                return False
    return True


@dataclass(frozen=True)
class GF(FiniteRing):
    """GF(p^n) = F_p[X]/(modpoly); modpoly given ascending and monic."""

    p: int
    n: int
    modpoly: tuple[int, ...]

    def __post_init__(self) -> None:
        p, n, f = self.p, self.n, self.modpoly
        if n < 1:
            raise MalformedSpec(f"degree must be at least 1, got {n}")
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        if p**n >= LIMIT_64:
            raise MalformedSpec("cardinality must fit in 64 bits")
        if len(f) != n + 1 or any(not 0 <= c < p for c in f) or f[-1] != 1:
            raise MalformedSpec(f"modpoly must be {n + 1} residues mod {p} ending in 1")
        if not _is_irreducible(list(f), p):
            raise ReduciblePolynomial(f"{_format_poly(f, p)} is reducible over F_{p}")

    @property
    def cardinality(self) -> int:  # type: ignore[override]
        return self.p**self.n

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.n

    @cached_property
    def zero(self):  # type: ignore[override]
        return (0,) * self.n

    @cached_property
    def one(self):  # type: ignore[override]
        return (1,) + (0,) * (self.n - 1)

    @property
    def is_field(self) -> bool:  # type: ignore[override]
        return True

    @property
    def spec(self) -> str:
        return f"GF({self.p}^{self.n}):" + ",".join(map(str, self.modpoly))

    @property
    def unit_group_order(self) -> int:  # type: ignore[override]
        return self.cardinality - 1

    # -- log tables ---------------------------------------------------------

    @cached_property
    def _tables(self) -> tuple[list[tuple], dict[tuple, int]] | None:
        q = self.cardinality
        if q > LOG_TABLE_MAX:
            return None
        g = next(x for x in self._slow_units() if self._slow_is_generator(x))
        exp = [self.one]
        for _ in range(q - 2):
            exp.append(self._slow_mul(exp[-1], g))
        log = {x: i for i, x in enumerate(exp)}
        assert len(log) == q - 1
        return exp, log

    def _slow_units(self):
        return (self.element_at(i) for i in range(1, self.cardinality))

    def _slow_is_generator(self, x) -> bool:
        t = self.cardinality - 1
        return all(
            self._slow_pow(x, t // r) != self.one for r, _ in factorize(t).pairs
        ) if t > 1 else True

    def _lift(self, coeffs: list[int]) -> tuple:
        return tuple(coeffs) + (0,) * (self.n - len(coeffs))

    def _slow_mul(self, x, y):
        return self._lift(_poly_mulmod(list(x), list(y), list(self.modpoly), self.p))

    def _slow_pow(self, x, k):
        return self._lift(_poly_powmod(list(x), k, list(self.modpoly), self.p))

    def _slow_inv(self, x):
        # extended Euclid on (x, modpoly)
        p, f = self.p, list(self.modpoly)
        r0, r1 = f, _trim(list(x))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quo, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1, p), p)
        c = pow(r1[0], -1, p)
        return self._lift(_poly_divmod([a * c % p for a in s1], f, p)[1])

    # -- arithmetic ---------------------------------------------------------

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def mul(self, x, y):
        tables = self._tables
        if tables is None:
            return self._slow_mul(x, y)
        zero = self.zero
        if x == zero or y == zero:
            return zero
        exp, log = tables
        return exp[(log[x] + log[y]) % (self.cardinality - 1)]

    def pow(self, x, k):
        if k == 0:
            return self.one
        if x == self.zero:
            if k < 0:
                raise NotAUnit(f"0 is not a unit of {self}")
            return x
        tables = self._tables
        if tables is None:
            return self._slow_pow(self.inv(x), -k) if k < 0 else self._slow_pow(x, k)
        exp, log = tables
        return exp[log[x] * k % (self.cardinality - 1)]

    def inv(self, x):
        if x == self.zero:
            raise NotAUnit(f"0 is not a unit of {self}")
        tables = self._tables
        if tables is None:
            return self._slow_inv(x)
        exp, log = tables
        return exp[-log[x] % (self.cardinality - 1)]

    def is_unit(self, x):
        return x != self.zero

    def from_int(self, k):
        return self._lift([k % self.p])

    def to_prime_field(self, x) -> int:
        assert all(c == 0 for c in x[1:]), f"{self.format(x)} is not in the prime field"
        return x[0]

    def index(self, x):
        return sum(c * self.p**i for i, c in enumerate(x))

    def element_at(self, i):
        out = []
        for _ in range(self.n):
            i, c = divmod(i, self.p)
            out.append(c)
        return tuple(out)

    def check(self, x):
        if (
            type(x) is not tuple
            or len(x) != self.n
            or any(type(c) is not int or not 0 <= c < self.p for c in x)
        ):
            raise RingMismatch(f"{x!r} is not a canonical element of {self}")
        return x

    def element(self, raw):
        if isinstance(raw, bool):
            raise MalformedElement(f"{raw!r} is not an element")
        if isinstance(raw, int):
            return self.from_int(raw)
        if isinstance(raw, (list, tuple)) and all(
            isinstance(c, int) and not isinstance(c, bool) for c in raw
        ):
            if len(raw) > self.n:
                raise MalformedElement(f"{list(raw)} has degree >= {self.n}")
            return self._lift([c % self.p for c in raw])
        raise MalformedElement(f"{raw!r} is not a coefficient list")

    def to_json(self, x):
        return list(x)

    def format(self, x):
        return _format_poly(x, self.p)

    @property
    def X(self):
        """The class of the indeterminate."""
        return self.element([0, 1])


def _format_poly(coeffs: Iterable[int], p: int) -> str:
    terms = []
    for i, c in reversed(list(enumerate(coeffs))):
        if not c:
            continue
        mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        if i == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _is_irreducible(f: list[int], p: int) -> bool:
    n = len(f) - 1
    if n <= 4 and p ** (n // 2) <= EXHAUSTIVE_IRRED_MAX:
        return exhaustive_irreducible(f, p)
    return rabin_irreducible(f, p)


_ZMOD_RE = re.compile(r"Z/(\d+)")
_GF_RE = re.compile(r"GF\((\d+)\^(\d+)\):(\d+(?:,\d+)*)")


def parse_ring(text: str) -> FiniteRing:
    """Parse ``Z/<N>`` or ``GF(<p>^<n>):<c0>,...,<cn>``.

    >>> parse_ring("Z/11")
    ZMod(N=11)
    >>> parse_ring("GF(2^2):1,1,1").cardinality
    4
    """
    if m := _ZMOD_RE.fullmatch(text):
        return ZMod(int(m.group(1)))
    if m := _GF_RE.fullmatch(text):
        p, n = int(m.group(1)), int(m.group(2))
        coeffs = tuple(int(c) for c in m.group(3).split(","))
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        if len(coeffs) != n + 1:
            raise MalformedSpec(f"expected {n + 1} coefficients, got {len(coeffs)}")
        if coeffs[-1] != 1:
            raise MalformedSpec("modpoly must be monic (last coefficient 1)")
        if any(c >= p for c in coeffs):
            raise MalformedSpec(f"coefficients must lie in [0, {p})")
        return GF(p, n, coeffs)
    raise MalformedSpec(f"cannot parse ring spec {text!r}")


def enumerate_elements(ring: FiniteRing) -> list:
    return list(ring.elements())


def element_order(ring: FiniteRing, x: Element) -> int:
    return ring.element_order(x)


def is_generator(ring: FiniteRing, x: Element) -> bool:
    return ring.is_generator(x)


# Presentations used throughout the tests, CLI help and bounds harnesses.
STANDARD_MODPOLYS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    (2, 15): (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (2, 0, 1, 1),
    (5, 2): (1, 1, 1),
    (7, 2): (1, 0, 1),
}


def standard_field(p: int, n: int = 1) -> FiniteRing:
    """Z/p for n = 1, otherwise GF(p^n) with the presentation in STANDARD_MODPOLYS."""
    if n == 1:
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        return ZMod(p)
    try:
        return GF(p, n, STANDARD_MODPOLYS[(p, n)])
    except KeyError:
        raise MalformedSpec(f"no standard presentation stored for GF({p}^{n})") from None
