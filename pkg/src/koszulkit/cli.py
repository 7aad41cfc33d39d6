"""Command line: ``koszulkit eval | verify | fixtures``.

Exit codes: 0 success, 1 a verification case failed (the report is still
written), 2 spec or usage error, 3 domain or singularity error.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

import click

from .connections import Kind
from .errors import NumericError, SpecError, SpecMismatch, UnknownFixture
from .fixtures import FIXTURES, run_fixture
from .products.catalog import CATALOG, CatalogKey, NotCovered, Obj, closed_form
from .report import SUITES, canonical_json, run_verify
from .sampling import Instance
from .specfile import load_spec, parse_point
from .verify import _Oracle

__all__ = ["main", "run", "cli", "evaluate_object"]

_QUANTITY = {"koszul": Obj.KOSZUL, "k": Obj.KOSZUL, "curvature": Obj.CURVATURE, "r": Obj.CURVATURE,
             "contraction": Obj.CONTRACTION}


def evaluate_object(spec_path: str, obj: str, args: str, point: str, product: Optional[str] = None,
                    route: str = "oracle") -> float:
    """Value of ``connection.quantity(args)`` at ``point`` for a spec file."""
    spec = load_spec(spec_path)
    if "." not in obj:
        raise SpecMismatch(f"object {obj!r} must read connection.quantity, e.g. bar.curvature")
    conn_name, qname = obj.rsplit(".", 1)
    if qname.lower() not in _QUANTITY:
        raise SpecMismatch(f"unknown quantity {qname!r} (koszul, curvature, contraction)")
    quantity = _QUANTITY[qname.lower()]
    if conn_name not in spec.connections:
        known = ", ".join(spec.connections) or "none"
        raise SpecMismatch(f"unknown connection {conn_name!r} (declared: {known})")
    conn = spec.connections[conn_name]
    M = spec.product(product)
    names = [a.strip() for a in args.split(",") if a.strip()]
    if len(names) != quantity.arity:
        raise SpecMismatch(f"{quantity.value} takes {quantity.arity} fields, got {len(names)}")
    fields = [spec.lifted(M, a) for a in names]
    x = M.chart.point(parse_point(point))
    P = spec.lifted(M, conn.P) if conn.P else None
    J = spec.structure(M, conn) if conn.kind is Kind.AP else None
    if route == "catalog":
        key = CatalogKey(conn.kind, quantity, M.kind, None if P is None else P.tag,
                         tuple(f.tag for f in fields))
        val = closed_form(key, M, fields, P if J is None else J, x, CATALOG)
        if val is NotCovered:
            raise SpecMismatch(f"no table item covers {key}")
        return float(val)
    inst = Instance(M, x, {}, P, J)
    return float(_Oracle(inst).value(conn.kind, quantity, [f.field.jet(x) for f in fields]))


@click.group()
def cli():
    """Koszul forms and curvatures of warped and twisted products."""


@cli.command("eval")
@click.argument("spec_path")
@click.argument("obj", metavar="OBJECT")
@click.argument("args")
@click.argument("point")
@click.option("--product", default=None, help="Product name when the spec declares several.")
@click.option("--route", type=click.Choice(["oracle", "catalog"]), default="oracle",
              help="Definitional pipeline (default) or the closed-form tables.")
def eval_cmd(spec_path, obj, args, point, product, route):
    """Print OBJECT = connection.quantity on ARGS (comma-separated field names) at POINT (t=0.5,u=0,...)."""
    v = evaluate_object(spec_path, obj, args, point, product, route)
    click.echo(f"{v:.17g}")


@cli.command("verify")
@click.argument("spec_path", required=False)
@click.option("--suite", type=click.Choice(list(SUITES) + ["all"]), default="all")
@click.option("--seed", type=int, default=0)
@click.option("--n", "n", type=int, default=20, help="Random instances per identity check and table.")
@click.option("--tol-rel", type=float, default=1e-8)
@click.option("--tol-abs", type=float, default=1e-10)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON report path (default stdout).")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Per-case CSV path.")
def verify_cmd(spec_path, suite, seed, n, tol_rel, tol_abs, out, csv_path):
    """Run verification suites and write a JSON report; exit 1 if any case fails."""
    bindings = None
    if spec_path is not None:
        spec = load_spec(spec_path)
        bindings = spec.fixtures or None
        if bindings:
            for label, b in bindings.items():
                if b.get("fixture", label) not in FIXTURES:
                    raise UnknownFixture(f"fixture {label!r} names no known fixture")
    rep = run_verify([suite], seed, n, tol_rel, tol_abs, bindings)
    rep.write(out, csv_path)
    if out is None:
        click.echo(rep.to_json(), nl=False)
    for name, s in rep.summaries().items():
        click.echo(f"{name}: {s['passed']}/{s['cases']} passed, max abs err {s['max_abs_err']:.3g}", err=True)
    sys.exit(0 if rep.passed else 1)


def _binding(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise SpecMismatch(f"binding {text!r} is not name=value")
    k, v = (s.strip() for s in text.split("=", 1))
    try:
        if k in ("t", "j_base"):
            return k, float(v)
        if k == "seed":
            return k, int(v)
        if k in ("exponents", "fiber_dims"):
            conv = float if k == "exponents" else int
            return k, tuple(conv(s) for s in v.split(",") if s.strip())
    except ValueError:
        raise SpecMismatch(f"binding {k!r} has a malformed value {v!r}") from None
    return k, v


@cli.command("fixtures")
@click.option("--list", "list_", is_flag=True, help="List the named fixtures and their defaults.")
@click.option("--run", "name", default=None, help="Fixture to run (M1, M2, M3, M4 or a spec-file label).")
@click.option("--set", "sets", multiple=True, help="Parameter binding name=value (repeatable).")
@click.option("--spec", "spec_path", default=None, help="Spec file whose fixtures section defines labels.")
@click.option("--tol-rel", type=float, default=1e-8)
@click.option("--tol-abs", type=float, default=1e-10)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON report path (default stdout).")
def fixtures_cmd(list_, name, sets, spec_path, tol_rel, tol_abs, out):
    """List the named space-times or run one with a three-way check of its tables."""
    if list_ or name is None:
        for k, p in FIXTURES.items():
            params = {f: getattr(p, f) for f in p.__dataclass_fields__ if f != "name" and getattr(p, f) is not None}
            click.echo(f"{k}: {json.dumps(params, default=list)}")
        if name is None:
            return
    bind: dict = {}
    base = name
    if spec_path is not None:
        spec = load_spec(spec_path)
        if name in spec.fixtures:
            bind = dict(spec.fixtures[name])
            base = bind.pop("fixture", name)
    bind.update(dict(_binding(s) for s in sets))
    rep = run_fixture(base, tol_rel, tol_abs, **bind)
    text = canonical_json(rep.to_dict()) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w") as fh:
            fh.write(text)
    d = rep.to_dict()
    click.echo(f"{base}: {d['cases'] - d['failed']}/{d['cases']} three-way agreements"
               + (f"; degenerate probe skipped: {rep.degenerate_skipped}" if rep.degenerate_skipped else ""),
               err=True)
    sys.exit(0 if rep.passed else 1)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cli.main(args=argv, prog_name="koszulkit", standalone_mode=False)
    except SystemExit as e:
        return int(e.code or 0)
    except click.exceptions.Exit as e:
        return int(e.exit_code)
    except click.ClickException as e:
        e.show()
        return 2
    except click.Abort:
        return 2
    except SpecError as e:
        click.echo(f"spec error: {e}", err=True)
        return 2
    except NumericError as e:
        click.echo(f"numeric error: {e}", err=True)
        return 3
    return 0


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
