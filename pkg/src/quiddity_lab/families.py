"""Special solution families and their irreducibility criteria.

Each constructor returns a :class:`FamilyReport`.  ``decided_by`` names the
rule that settled irreducibility: either a family-specific criterion or
``"general-scan"`` (the window scan of :mod:`quiddity_lab.quiddity`).  The
test-suite re-runs the general scan on every criterion-based verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .arith import is_prime, is_square
from .continuant import (
    constant_continuant,
    m_matrix,
    mat_mul,
    projective_order,
    scalar_sign,
)
from .errors import (
    ABNotInvertible,
    BadU,
    CharTwo,
    InvalidParameters,
    NotAField,
    NotAUnit,
    NotUnits,
    OrderCapExceeded,
    PNotPrime,
    PTooSmall,
    SizeCapExceeded,
    WitnessNotFound,
    XZero,
)
from .quiddity import QuiddityTuple, is_reducible
from .ring_core import Element, FiniteRing, Mat2, ZMod

DEFAULT_CAP = 10**7
QUADRINOMIAL_SIZE_CAP = 10**4

GENERAL_SCAN = "general-scan"
SIZE_BELOW_3 = "size-below-3"


class Verdict(str, enum.Enum):
    IRREDUCIBLE_CERTIFIED = "IRREDUCIBLE_CERTIFIED"
    REDUCIBLE_CERTIFIED = "REDUCIBLE_CERTIFIED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class CriterionResult:
    verdict: Verdict
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FamilyReport:
    kind: str
    params: tuple
    size: int
    tuple: QuiddityTuple
    irreducible: bool
    decided_by: str
    criterion_data: dict = field(default_factory=dict)

    @property
    def entries(self) -> tuple:
        return self.tuple.entries

    def to_json(self) -> dict:
        ring = self.tuple.ring
        return {
            "kind": self.kind,
            "ring": ring.spec,
            "params": [ring.to_json(p) for p in self.params],
            "size": self.size,
            "tuple": [ring.to_json(a) for a in self.entries],
            "sign": self.tuple.sign,
            "irreducible": self.irreducible,
            "decided_by": self.decided_by,
            "criterion_data": jsonify(ring, self.criterion_data),
        }


def jsonify(ring: FiniteRing, value):
    if isinstance(value, dict):
        return {k: jsonify(ring, v) for k, v in value.items()}
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, tuple) and len(value) == getattr(ring, "n", -1):
        return ring.to_json(value)
    if isinstance(value, (list, tuple)):
        return [jsonify(ring, v) for v in value]
    return value


def _scan_verdict(ring: FiniteRing, entries: tuple) -> tuple[bool, str, dict]:
    if len(entries) < 3:
        return False, SIZE_BELOW_3, {}
    witness = is_reducible(ring, entries)
    data = {}
    if witness is not None:
        data["witness_start"] = witness.start
        data["witness_window_len"] = witness.window_len
    return witness is None, GENERAL_SCAN, data


def _report(
    kind: str,
    ring: FiniteRing,
    params: Sequence[Element],
    entries: tuple,
    irreducible: bool | None = None,
    decided_by: str | None = None,
    data: dict | None = None,
) -> FamilyReport:
    data = dict(data or {})
    if irreducible is None:
        irreducible, decided_by, extra = _scan_verdict(ring, entries)
        data.update(extra)
    return FamilyReport(
        kind,
        tuple(params),
        len(entries),
        QuiddityTuple.of(ring, entries),
        irreducible,
        decided_by or GENERAL_SCAN,
        data,
    )


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise OrderCapExceeded(f"minimal size {size} exceeds the cap {cap}")


def _require_field(ring: FiniteRing) -> None:
    if not ring.is_field:
        raise NotAField(f"{ring} is not a field")


def _is_pm_one(ring: FiniteRing, x: Element) -> bool:
    return ring.sign_of(x) is not None


# -- monomial -----------------------------------------------------------------


def monomial_size(ring: FiniteRing, x: Element) -> int:
    """Smallest n >= 1 with M_1(x)^n = +-Id."""
    return projective_order(ring, m_matrix(ring, (x,)))


def monomial_minimal(ring: FiniteRing, x: Element, cap: int = DEFAULT_CAP) -> FamilyReport:
    x = ring.check(x)
    n = monomial_size(ring, x)
    _check_cap(n, cap)
    entries = (x,) * n
    if ring.is_field and not ring.is_zero(x):
        return _report("monomial", ring, [x], entries, True, "nonzero-monomial-over-field")
    return _report("monomial", ring, [x], entries)


def monomial_bound_witness(field_: FiniteRing) -> tuple[Element, int]:
    """An element whose monomial solution has size q+1 (char 2) or (q+1)/2."""
    _require_field(field_)
    q = field_.cardinality
    target = q + 1 if field_.characteristic == 2 else (q + 1) // 2
    for y in field_.elements():
        if monomial_size(field_, y) == target:
            return y, target
    raise WitnessNotFound(f"no monomial solution of size {target} over {field_}")


# -- dynomial -----------------------------------------------------------------


def dynomial_deltas(ring: FiniteRing, a: Element, b: Element) -> tuple[Element, Element]:
    """(a^2 + 4 r (r - 1), b^2 + 4 s (s - 1)) with r = a/b, s = b/a."""
    four = ring.from_int(4)
    r = ring.mul(a, ring.inv(b))
    s = ring.mul(b, ring.inv(a))
    d1 = ring.add(ring.mul(a, a), ring.mul(four, ring.mul(r, ring.sub(r, ring.one))))
    d2 = ring.add(ring.mul(b, b), ring.mul(four, ring.mul(s, ring.sub(s, ring.one))))
    return d1, d2


def dynomial_minimal(
    ring: FiniteRing, a: Element, b: Element, cap: int = DEFAULT_CAP
) -> FamilyReport:
    a, b = ring.check(a), ring.check(b)
    if a == b:
        raise InvalidParameters("dynomial parameters must differ")
    half = projective_order(ring, m_matrix(ring, (a, b)))
    _check_cap(2 * half, cap)
    data: dict = {}
    if ring.is_field and ring.characteristic != 2 and ring.is_unit(a) and ring.is_unit(b):
        d1, d2 = dynomial_deltas(ring, a, b)
        data = {
            "delta1": d1,
            "delta2": d2,
            "delta1_square": is_square(ring, d1),
            "delta2_square": is_square(ring, d2),
        }
    return _report("dynomial", ring, [a, b], (a, b) * half, data=data)


def dynomial_inverse_pair(ring: FiniteRing, u: Element) -> FamilyReport:
    """The (u, u^-1)-dynomial solution: size 6 and irreducible."""
    u = ring.check(u)
    if not ring.is_unit(u):
        raise BadU(f"{ring.format(u)} is not a unit")
    v = ring.inv(u)
    if _is_pm_one(ring, u) or u == v:
        raise BadU("u must avoid +-1 and differ from its inverse")
    entries = (u, v) * 3
    assert scalar_sign(ring, m_matrix(ring, entries)) is not None
    return _report("dynomial", ring, [u, v], entries, True, "inverse-pair")


def dynomial_criterion(field_: FiniteRing, a: Element, b: Element) -> CriterionResult:
    """Certify irreducibility when both deltas are non-squares; otherwise inconclusive."""
    _require_field(field_)
    if field_.characteristic == 2:
        raise CharTwo("the delta criterion needs odd characteristic")
    a, b = field_.check(a), field_.check(b)
    if not (field_.is_unit(a) and field_.is_unit(b)):
        raise NotUnits("a and b must be units")
    if _is_pm_one(field_, a) or _is_pm_one(field_, b) or a == b:
        raise InvalidParameters("a, b must avoid +-1 and differ")
    d1, d2 = dynomial_deltas(field_, a, b)
    s1, s2 = is_square(field_, d1), is_square(field_, d2)
    verdict = Verdict.INCONCLUSIVE if s1 or s2 else Verdict.IRREDUCIBLE_CERTIFIED
    return CriterionResult(
        verdict, {"delta1": d1, "delta2": d2, "delta1_square": s1, "delta2_square": s2}
    )


# -- trinomial ----------------------------------------------------------------


def trinomial_size(field_: FiniteRing, u: Element) -> int:
    """3 o(u) in characteristic 2 or for odd o(u), 3 o(u) / 2 otherwise."""
    o = field_.element_order(u)
    if field_.characteristic != 2 and o % 2 == 0:
        return 3 * o // 2
    return 3 * o


def trinomial_root(field_: FiniteRing, u: Element, bound: int) -> tuple[int, int] | None:
    """First (l, s) with u^(2l) + s u^(l+1) - 1 = 0, s = +1 then -1, l in [1, bound]."""
    one = field_.one
    ul = u  # u^l
    for l in range(1, bound + 1):
        u2l = field_.mul(ul, ul)
        ul1 = field_.mul(ul, u)
        if field_.sub(field_.add(u2l, ul1), one) == field_.zero:
            return l, 1
        if field_.sub(field_.sub(u2l, ul1), one) == field_.zero:
            return l, -1
        ul = ul1
    return None


def _char2_sqrt_root(field_: FiniteRing, u: Element, bound: int) -> int | None:
    # In characteristic 2, X^(2l) + X^(l+1) + 1 is the square of
    # X^l + X^((l+1)/2) + 1 when l is odd; both have the same roots.
    one = field_.one
    for l in range(1, bound + 1):
        if l % 2:
            value = field_.add(field_.add(field_.pow(u, l), field_.pow(u, (l + 1) // 2)), one)
        else:
            value = field_.add(field_.add(field_.pow(u, 2 * l), field_.pow(u, l + 1)), one)
        if value == field_.zero:
            return l
    return None


def trinomial_minimal(field_: FiniteRing, u: Element) -> FamilyReport:
    _require_field(field_)
    u = field_.check(u)
    if not field_.is_unit(u):
        raise NotAUnit(f"{field_.format(u)} is not a unit")
    v = field_.inv(u)
    m = trinomial_size(field_, u)
    block = projective_order(field_, m_matrix(field_, (u, v, v)))
    assert m == 3 * block, f"size formula {m} disagrees with the matrix order {3 * block}"
    entries = (u, v, v) * (m // 3)
    data: dict = {"order": field_.element_order(u)}
    if _is_pm_one(field_, u):
        return _report("trinomial", field_, [u], entries, True, "size-3", data)
    root = trinomial_root(field_, u, m // 6)
    data["root"] = None if root is None else {"l": root[0], "sign": root[1]}
    if field_.characteristic == 2:
        alt = _char2_sqrt_root(field_, u, m // 6)
        data["char2_sqrt_test_agrees"] = (alt is None) == (root is None)
    return _report("trinomial", field_, [u], entries, root is None, "trinomial-root-test", data)


def trinomial_square_criterion(field_: FiniteRing, u: Element) -> CriterionResult:
    """u^2 + 4 non-square certifies irreducibility; exact when u or -u generates."""
    _require_field(field_)
    if field_.characteristic == 2:
        raise CharTwo("the square criterion needs odd characteristic")
    u = field_.check(u)
    if not field_.is_unit(u):
        raise NotAUnit(f"{field_.format(u)} is not a unit")
    if _is_pm_one(field_, u):
        raise InvalidParameters("u must avoid +-1")
    d = field_.add(field_.mul(u, u), field_.from_int(4))
    square = is_square(field_, d)
    generator = field_.is_generator(u) or field_.is_generator(field_.neg(u))
    data = {"u2_plus_4": d, "square": square, "u_or_minus_u_generator": generator}
    if not square:
        return CriterionResult(Verdict.IRREDUCIBLE_CERTIFIED, data)
    if generator:
        return CriterionResult(Verdict.REDUCIBLE_CERTIFIED, data)
    return CriterionResult(Verdict.INCONCLUSIVE, data)


# -- quadrinomial -------------------------------------------------------------


def quadrinomial_block(ring: FiniteRing, a: Element, b: Element) -> tuple:
    """(alpha, a, b, beta) with alpha = b/(ab-1) and beta = a/(ab-1)."""
    d = ring.sub(ring.mul(a, b), ring.one)
    if not ring.is_unit(d):
        raise ABNotInvertible("ab - 1 must be a unit")
    d_inv = ring.inv(d)
    return ring.mul(b, d_inv), a, b, ring.mul(a, d_inv)


def quadrinomial_minimal(
    ring: FiniteRing, a: Element, b: Element, cap: int = QUADRINOMIAL_SIZE_CAP
) -> FamilyReport:
    a, b = ring.check(a), ring.check(b)
    block = quadrinomial_block(ring, a, b)
    k = projective_order(ring, m_matrix(ring, block))
    if 4 * k > cap:
        raise SizeCapExceeded(f"quadrinomial size {4 * k} exceeds the cap {cap}")
    data = {"alpha": block[0], "beta": block[3]}
    return _report("quadrinomial", ring, [a, b], block * k, data=data)


# -- quasi-monomial -----------------------------------------------------------


def quasi_monomial_minimal(
    ring: FiniteRing, x: Element, cap: int = DEFAULT_CAP
) -> FamilyReport:
    """Smallest solution (a, x, ..., x, a) with m >= 3 entries."""
    x = ring.check(x)
    prev, cur = ring.zero, ring.one  # K_{j-1}, K_j of (x, ..., x)
    j = 0
    while True:
        prev, cur = cur, ring.sub(ring.mul(x, cur), prev)
        j += 1
        sign = ring.sign_of(cur)
        if sign is not None:
            break
        if j + 2 > cap:
            raise OrderCapExceeded(f"no quasi-monomial solution below size {cap}")
    # cur = K_{m-2} = e, prev = K_{m-3}
    a = prev if sign == 1 else ring.neg(prev)
    entries = (a,) + (x,) * j + (a,)
    same = a == x and len(entries) == monomial_size(ring, x)
    data = {"a": a, "equals_monomial": same}
    if not ring.is_zero(x):
        return _report("quasi_monomial", ring, [x], entries, True, "nonzero-quasi-monomial", data)
    return _report("quasi_monomial", ring, [x], entries, data=data)


# -- towed --------------------------------------------------------------------


def towed_minimal(p: int, b: int) -> FamilyReport:
    """The (b, 2)-towed solution over Z/p."""
    if not is_prime(p):
        raise PNotPrime(f"{p} is not prime")
    if p < 5:
        raise PTooSmall("towed solutions need p >= 5")
    ring = ZMod(p)
    b %= p
    if b == 1:
        entries: tuple = (2, 1, 2, 1)
        l = None
    elif b == p - 1:
        entries = (0, p - 1) + (2,) * (p - 1) + (3,)
        l = p - 1
    else:
        l = -(b + 1) * pow(b - 1, -1, p) % p
        entries = ((-l - 1) % p, b) + (2,) * l + (b,)
    irreducible = b not in (1, p - 1, 3)
    data = {"l": l}
    return _report("towed", ring, [b], entries, irreducible, "towed-parameter-test", data)


# -- polarized ----------------------------------------------------------------


def polarized_matrix(ring: FiniteRing, x: Element, l: int) -> Mat2:
    """Closed form of M_{2l}(x, ..., x, -x, ..., -x) via constant continuants."""
    k_l = constant_continuant(ring, x, l)
    k_l1 = constant_continuant(ring, x, l - 1)
    k_l2 = constant_continuant(ring, x, l - 2) if l >= 2 else ring.zero
    sq = lambda t: ring.mul(t, t)  # noqa: E731
    off = ring.neg(ring.mul(x, sq(k_l1)))
    m = Mat2(ring.add(sq(k_l), sq(k_l1)), off, off, ring.add(sq(k_l1), sq(k_l2)))
    if l % 2:
        m = Mat2(*(ring.neg(e) for e in m))
    return m


def polarized_minimal(ring: FiniteRing, x: Element, cap: int = DEFAULT_CAP) -> FamilyReport:
    if ring.characteristic == 2:
        raise CharTwo("polarized solutions need characteristic != 2")
    x = ring.check(x)
    if ring.is_zero(x):
        raise XZero("x must be nonzero")
    forward = m_matrix(ring, (x,))
    backward = m_matrix(ring, (ring.neg(x),))
    p = q = m_matrix(ring, ())
    l = 0
    while True:
        l += 1
        if 2 * l > cap:
            raise OrderCapExceeded(f"no polarized solution below size {cap}")
        p = mat_mul(ring, forward, p)  # M_l(x, ..., x)
        q = mat_mul(ring, q, backward)  # M_l(-x, ..., -x)
        if scalar_sign(ring, mat_mul(ring, q, p)) is not None:
            break
    entries = (x,) * l + (ring.neg(x),) * l
    if ring.is_field:
        m = monomial_size(ring, x)
        assert 2 * l == 2 * m, "polarized size must be twice the monomial size"
        return _report("polarized", ring, [x], entries, False, "polarized-over-field",
                       {"monomial_size": m})
    return _report("polarized", ring, [x], entries)


FAMILY_KINDS = (
    "monomial",
    "dynomial",
    "trinomial",
    "quadrinomial",
    "quasi_monomial",
    "towed",
    "polarized",
)
