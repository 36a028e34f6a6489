"""``quiddity-lab`` command-line front end.

Every command writes one JSON document (or a CSV table with ``--format csv``)
to stdout; diagnostics go to stderr.  Exit codes: 0 ok, 1 domain error or
golden mismatch, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import sys
from pathlib import Path

import click

from . import arith, bounds, families, quiddity
from .continuant import continuant, continuant_triple, m_matrix, sl2_order
from .errors import Budget, BudgetExceeded, MalformedSpec, QuiddityError
from .ring_core import FiniteRing, parse_ring

BUDGET_ENV = "QUIDDITY_BUDGET"


def _budget(default: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise click.UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise click.UsageError(f"{BUDGET_ENV} must be positive")
    return value


def _to_csv(data) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")

    def cell(v):
        if isinstance(v, str) or v is None or (isinstance(v, int) and not isinstance(v, bool)):
            return v
        return json.dumps(v, separators=(",", ":"))

    if isinstance(data, dict):
        writer.writerow(["key", "value"])
        writer.writerows([k, cell(v)] for k, v in data.items())
    elif data and all(isinstance(row, dict) for row in data):
        header = list(data[0])
        writer.writerow(header)
        writer.writerows([cell(row.get(k)) for k in header] for row in data)
    elif data and all(isinstance(row, (list, tuple)) for row in data):
        width = max(len(row) for row in data)
        writer.writerow([f"c{i}" for i in range(width)])
        writer.writerows([cell(v) for v in row] for row in data)
    else:
        writer.writerow(["value"])
        writer.writerows([cell(v)] for v in data)
    return buf.getvalue()


def _render(data, fmt: str) -> str:
    if fmt == "csv":
        return _to_csv(data)
    return json.dumps(data, separators=(",", ":")) + "\n"


def _matches_golden(text: str, golden: Path, fmt: str) -> bool:
    expected = golden.read_text()
    if fmt == "json":
        try:
            return json.loads(text) == json.loads(expected)
        except json.JSONDecodeError:
            pass
    return text.strip() == expected.strip()


def output_options(fn):
    @click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
                  show_default=True, help="Output format.")
    @click.option("--golden", type=click.Path(exists=True, dir_okay=False, path_type=Path),
                  help="Compare the output with this file; exit 1 on mismatch.")
    @functools.wraps(fn)
    def wrapper(*args, fmt: str, golden: Path | None, **kwargs):
        data = fn(*args, **kwargs)
        text = _render(data, fmt)
        click.echo(text, nl=False)
        if golden is not None and not _matches_golden(text, golden, fmt):
            click.echo(f"output differs from golden file {golden}", err=True)
            return 1
        return 0

    return wrapper


threads_option = click.option("--threads", type=click.IntRange(min=1), default=1,
                              show_default=True, help="Worker processes for scans.")


class RingType(click.ParamType):
    name = "ring"

    def convert(self, value, param, ctx):
        if isinstance(value, FiniteRing):
            return value
        try:
            return parse_ring(value)
        except MalformedSpec as exc:
            self.fail(str(exc), param, ctx)


RING = RingType()
ring_option = click.option("--ring", "ring", type=RING, required=True,
                           help="Z/<N> or GF(<p>^<n>):<c0>,...,<cn>.")


def _tuple_json(ring: FiniteRing, entries) -> list:
    return [ring.to_json(a) for a in entries]


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Lambda-quiddities over Z/NZ and GF(p^n)."""


@cli.command("ring-info")
@ring_option
@output_options
def ring_info(ring: FiniteRing):
    """Cardinality, characteristic and unit-group data of a ring."""
    info = {
        "ring": ring.spec,
        "cardinality": ring.cardinality,
        "characteristic": ring.characteristic,
        "is_field": ring.is_field,
        "units": ring.unit_group_order,
        "sl2_order": sl2_order(ring),
    }
    if ring.is_field and ring.cardinality <= 1 << 20:
        info["first_generator"] = ring.to_json(next(ring.generators()))
    return info


@cli.command("continuant")
@ring_option
@click.option("--tuple", "entries", required=True, help="Comma-separated elements.")
@output_options
def continuant_cmd(ring: FiniteRing, entries: str):
    """K_n of a tuple and its matrix M_n."""
    seq = ring.parse_tuple(entries)
    m = m_matrix(ring, seq)
    out = {
        "continuant": ring.to_json(continuant(ring, seq)),
        "matrix": [[ring.to_json(m.a11), ring.to_json(m.a12)],
                   [ring.to_json(m.a21), ring.to_json(m.a22)]],
    }
    if seq:
        triple = continuant_triple(ring, seq)
        out["k_n1_left"] = ring.to_json(triple.k_n1_left)
        out["k_n1_right"] = ring.to_json(triple.k_n1_right)
    return out


@cli.command("check")
@ring_option
@click.option("--tuple", "entries", required=True, help="Comma-separated elements.")
@output_options
def check(ring: FiniteRing, entries: str):
    """Solution test, sign and reducibility witness."""
    return quiddity.classify(ring, ring.parse_tuple(entries))


@cli.command("oplus")
@ring_option
@click.option("--left", required=True)
@click.option("--right", required=True)
@output_options
def oplus_cmd(ring: FiniteRing, left: str, right: str):
    """The sum left (+) right."""
    total = quiddity.oplus(ring, ring.parse_tuple(left), ring.parse_tuple(right))
    return {"sum": _tuple_json(ring, total), "solution": quiddity.is_quiddity(ring, total) is not None}


@cli.command("equivalent")
@ring_option
@click.option("--left", required=True)
@click.option("--right", required=True)
@output_options
def equivalent_cmd(ring: FiniteRing, left: str, right: str):
    """Equality up to rotation and reversal."""
    return {"equivalent": quiddity.equivalent(ring.parse_tuple(left), ring.parse_tuple(right))}


def _family_domain(kind: str, ring: FiniteRing):
    elems = list(ring.elements())
    if kind in ("monomial", "quasi_monomial", "towed"):
        return [(x,) for x in elems]
    if kind == "polarized":
        return [(x,) for x in elems if not ring.is_zero(x)]
    if kind == "trinomial":
        return [(u,) for u in elems if ring.is_unit(u)]
    if kind == "dynomial":
        return [(a, b) for a in elems for b in elems if a != b]
    return [(a, b) for a in elems for b in elems]


def _family_report(kind: str, ring: FiniteRing, params: tuple, cap: int, criterion: bool) -> dict:
    arity = 2 if kind in ("dynomial", "quadrinomial") else 1
    if len(params) != arity:
        raise click.UsageError(f"family {kind} takes {arity} parameter(s), got {len(params)}")
    if kind == "monomial":
        report = families.monomial_minimal(ring, params[0], cap)
    elif kind == "dynomial":
        report = families.dynomial_minimal(ring, *params, cap)
    elif kind == "trinomial":
        report = families.trinomial_minimal(ring, params[0])
    elif kind == "quadrinomial":
        report = families.quadrinomial_minimal(ring, *params, min(cap, families.QUADRINOMIAL_SIZE_CAP))
    elif kind == "quasi_monomial":
        report = families.quasi_monomial_minimal(ring, params[0], cap)
    elif kind == "towed":
        if ring.degree != 1:
            raise click.UsageError("towed solutions live over Z/p")
        report = families.towed_minimal(ring.characteristic, ring.to_prime_field(params[0]))
    else:
        report = families.polarized_minimal(ring, params[0], cap)
    out = report.to_json()
    if criterion and kind in ("dynomial", "trinomial"):
        try:
            result = (families.dynomial_criterion(ring, *params) if kind == "dynomial"
                      else families.trinomial_square_criterion(ring, params[0]))
            out["criterion"] = {"verdict": result.verdict.value,
                                **families.jsonify(ring, result.data)}
        except QuiddityError as exc:
            out["criterion"] = {"verdict": None, "reason": str(exc)}
    return out


@cli.command("family")
@click.argument("kind", type=click.Choice(families.FAMILY_KINDS))
@ring_option
@click.option("--params", help="Comma-separated family parameters.")
@click.option("--all", "all_", is_flag=True, help="Iterate over every parameter choice.")
@click.option("--criterion", is_flag=True, help="Also evaluate the family's sufficient criterion.")
@output_options
def family(kind: str, ring: FiniteRing, params: str | None, all_: bool, criterion: bool):
    """Minimal solution of a family, with its irreducibility verdict."""
    cap = _budget(families.DEFAULT_CAP)
    if all_ == (params is not None):
        raise click.UsageError("give exactly one of --params or --all")
    if not all_:
        return _family_report(kind, ring, ring.parse_tuple(params), cap, criterion)
    rows = []
    for ps in _family_domain(kind, ring):
        try:
            rows.append(_family_report(kind, ring, ps, cap, criterion))
        except BudgetExceeded:
            raise
        except QuiddityError as exc:
            click.echo(f"skipping {[ring.to_json(p) for p in ps]}: {exc}", err=True)
    return rows


@cli.command("ell")
@ring_option
@click.option("--upper", is_flag=True, help="Also run the exhaustive upper-bound search.")
@click.option("--nmax", type=click.IntRange(min=1), default=20, show_default=True)
@output_options
def ell(ring: FiniteRing, upper: bool, nmax: int):
    """Lower bound (and optionally upper bound) on the largest irreducible size."""
    out = bounds.ell_lower_bound(ring).to_json()
    out["theoretic_upper"] = bounds.ell_theoretic_upper(ring)
    if upper:
        search = bounds.ell_upper_bound_search(ring, nmax, budget=_budget(bounds.SURVIVOR_BUDGET))
        out["survivor_counts"] = {str(k): v for k, v in search.counts.items()}
        out["cutoff"] = search.cutoff
        out["upper"] = search.upper
        out["upper_method"] = "window-free-search" if search.cutoff is not None else "none"
        if search.budget_exhausted:
            raise Budget(f"survivor budget exhausted; partial counts {search.counts}")
    return out


@cli.command("scan-dynomial")
@click.option("-p", "p", type=int, required=True)
@threads_option
@output_options
def scan_dynomial(p: int, threads: int):
    """Pairs (a, b) mod p with both deltas non-squares."""
    return [list(pair) for pair in bounds.scan_dynomial_pairs(p, threads)]


@cli.command("scan-trinomial")
@click.option("-p", "p", type=int, required=True)
@output_options
def scan_trinomial(p: int):
    """x in [2, (p-1)/2] whose trinomial solution mod p is irreducible."""
    return bounds.scan_trinomial(p)


@cli.command("conjecture")
@click.option("--from", "lo", type=int, required=True)
@click.option("--to", "hi", type=int, required=True)
@click.option("--verbose", is_flag=True, help="List the generator found for each prime.")
@threads_option
@output_options
def conjecture(lo: int, hi: int, verbose: bool, threads: int):
    """Primes in (from, to] lacking a generator j with j^2 + 4 a non-square."""
    rows = bounds.conjecture_witnesses(lo, hi, threads)
    if verbose:
        return [{"p": p, "generator": j} for p, j in rows]
    return [p for p, j in rows if j is None]


@cli.command("char2-bound")
@click.option("-n", "n", type=int, required=True)
@output_options
def char2_bound(n: int):
    """Generator of GF(2^n) giving an irreducible trinomial solution of size 3(2^n - 1)."""
    return bounds.char2_generator_bound(n).to_json()


@cli.command("mersenne-phi")
@click.argument("a", type=int)
@click.argument("b", type=int)
@output_options
def mersenne_phi(a: int, b: int):
    """n in [a, b] with phi(2^n - 1) < 2^(n-1)."""
    return arith.mersenne_phi_deficit(a, b)


@cli.command("squares")
@ring_option
@output_options
def squares(ring: FiniteRing):
    """All squares of the ring, in enumeration order."""
    table = arith.square_table(ring)
    return [ring.to_json(x) for x in sorted(table, key=ring.index)]


@cli.command("legendre")
@click.argument("a", type=int)
@click.argument("p", type=int)
@output_options
def legendre(a: int, p: int):
    """Legendre symbol (a / p)."""
    return arith.legendre(a, p)


@cli.command("szymiczek")
@ring_option
@click.option("--m", "m", type=click.IntRange(min=0), help="Single exponent (default: all of [0, 2(q-1)]).")
@output_options
def szymiczek(ring: FiniteRing, m: int | None):
    """Check the closed form for sums of m-th powers of generators."""
    exponents = [m] if m is not None else range(0, 2 * (ring.cardinality - 1) + 1)
    failures = [k for k in exponents if not arith.szymiczek_sum_check(ring, k)]
    return {"ring": ring.spec, "checked": len(exponents), "failures": failures}


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="quiddity-lab", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except BudgetExceeded as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        return 3
    except QuiddityError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
