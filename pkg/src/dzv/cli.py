"""Command line interface: ``dzv dim|table|relations|verify|point``.

Exit codes: 0 ok, 1 usage, 2 a mathematical assertion failed, 3 a relation
failed numeric verification, 4 verification was inconclusive.
"""

from __future__ import annotations

import configparser
import json
import logging
import sys

import click

from . import pipeline
from .algebra import prime_power
from .fmodule import TheoremViolation
from .numeric import point_weight_factor, verify_relation

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_VERIFY, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4

COMMANDS = ("dim", "table", "relations", "verify", "point")


def read_config(path) -> dict:
    """key=value lines; '#' starts a comment.  Dashes and underscores are interchangeable."""
    cp = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",))
    with open(path) as fh:
        cp.read_string("[dzv]\n" + fh.read())
    return {k.replace("-", "_"): v for k, v in cp["dzv"].items()}


def _resolve_q(q, p, e):
    if p is not None or e is not None:
        if p is None or e is None:
            raise click.UsageError("--p and --e go together")
        qq = p**e
        try:
            prime_power(qq)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        if q is not None and q != qq:
            raise click.UsageError(f"--q {q} disagrees with --p {p} --e {e}")
        q = qq
    if q is None:
        raise click.UsageError("--q is required")
    try:
        prime_power(q)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    return q


def field_options(f):
    f = click.option("--e", type=int, default=None, help="Extension degree, with --p.")(f)
    f = click.option("--p", type=int, default=None, help="Characteristic, with --e.")(f)
    f = click.option("--q", type=int, default=None, help="Size of the constant field.")(f)
    return f


def cache_option(f):
    return click.option("--cache", type=click.Path(file_okay=False), default=None,
                        help="Directory for cached Xi points and H polynomials.")(f)


def emit_option(f):
    return click.option("--emit", type=click.Choice(["text", "json", "csv"]), default="text")(f)


def _cache(path):
    return pipeline.Cache(path) if path else None


def _emit(reports, emit, timing):
    if emit == "json":
        click.echo(pipeline.to_json(reports, timing), nl=False)
    elif emit == "csv":
        click.echo(pipeline.to_csv(reports), nl=False)
    else:
        click.echo(pipeline.to_text(reports), nl=False)
        if timing:
            for r in reports:
                click.echo(f"weight {r.n}: {r.timing:.2f}s, ell={r.ell}, sup_degree={r.sup_degree}")


def _status_code(reports):
    statuses = {c.status for r in reports for c in r.certificates}
    return EXIT_INCONCLUSIVE if "inconclusive" in statuses else EXIT_OK


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key=value file mirroring the flags; flags win.")
@click.option("-v", "--verbose", count=True)
@click.pass_context
def cli(ctx, config, verbose):
    """Dimensions of spans of double zeta values over F_q(theta)."""
    logging.basicConfig(level=logging.WARNING - 10 * min(verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    if config:
        values = read_config(config)
        ctx.default_map = {cmd: dict(values) for cmd in COMMANDS}


@cli.command()
@field_options
@click.option("--weight", type=int, required=True)
@emit_option
@click.option("--verify/--no-verify", default=None, help="Numeric check of certificates (default: weight <= 12).")
@click.option("--dmax", type=int, default=None, help="Truncation degree for the numeric check.")
@click.option("--timing", is_flag=True, help="Include timings (breaks byte-identical output).")
@cache_option
def dim(q, p, e, weight, emit, verify, dmax, timing, cache):
    """Dimension report for one weight."""
    q = _resolve_q(q, p, e)
    if weight < 2:
        raise click.UsageError("--weight must be >= 2")
    rep = pipeline.dimension(weight, q, verify, _cache(cache), dmax)
    _emit([rep], emit, timing)
    return _status_code([rep])


@cli.command()
@field_options
@click.option("--min", "n_min", type=int, required=True)
@click.option("--max", "n_max", type=int, required=True)
@emit_option
@click.option("--jobs", type=int, default=1, help="Worker processes across weights.")
@click.option("--verify/--no-verify", default=None)
@click.option("--dmax", type=int, default=None)
@click.option("--timing", is_flag=True)
@cache_option
def table(q, p, e, n_min, n_max, emit, jobs, verify, dmax, timing, cache):
    """Reports for a range of weights."""
    q = _resolve_q(q, p, e)
    if not 2 <= n_min <= n_max:
        raise click.UsageError("need 2 <= --min <= --max")
    reports, errors = pipeline.table(n_min, n_max, q, jobs, verify, _cache(cache), dmax)
    _emit(reports, emit, timing)
    for n, kind, msg in errors:
        click.echo(f"weight {n}: {kind}: {msg}", err=True)
    if any(kind == "VerificationFailure" for _, kind, _ in errors):
        return EXIT_VERIFY
    if errors:
        return EXIT_MATH
    return _status_code(reports)


def _certificate_lines(q, n, cert, d_max):
    what = "relation among all Xi" if cert.kind == "span" else "zeta-like witness"
    lines = [f"{what}:"]
    for lab, a in zip(cert.labels, cert.a):
        if not a:
            continue
        fac, idx = point_weight_factor(q, lab)
        name = "Xi" if lab[0] == "xi" else "v"
        lines.append(f"  [{a!r}] {name}{tuple(lab[1:])}")
        coeff = a.with_var("theta") * fac
        lines.append(f"    zeta{idx} coefficient: {coeff!r}")
    res = verify_relation(q, n, cert.labels, cert.a, d_max=d_max)
    lines.append(f"  numeric check: {res.status} (margin {res.margin})")
    if res.c0 is not None and n % (q - 1) == 0:
        lines.append(f"  pi^{n} coefficient c0: {res.c0!r}")
    return lines, res.status


@cli.command()
@field_options
@click.option("--weight", type=int, required=True)
@click.option("--dmax", type=int, default=None)
@cache_option
def relations(q, p, e, weight, dmax, cache):
    """Print relation certificates and the zeta relations they induce."""
    q = _resolve_q(q, p, e)
    rep = pipeline.dimension(weight, q, verify=False, cache=_cache(cache))
    d_max = dmax or pipeline.default_dmax(q)
    statuses = set()
    if not rep.certificates:
        click.echo("no relations")
    for cert in rep.certificates:
        lines, st = _certificate_lines(q, weight, cert, d_max)
        statuses.add(st)
        click.echo("\n".join(lines))
    if "fail" in statuses:
        return EXIT_VERIFY
    return EXIT_INCONCLUSIVE if "inconclusive" in statuses else EXIT_OK


@cli.command()
@field_options
@click.option("--weight", type=int, required=True)
@click.option("--dmax", type=int, default=None)
@cache_option
def verify(q, p, e, weight, dmax, cache):
    """Numerically verify every certificate at one weight."""
    q = _resolve_q(q, p, e)
    d_max = dmax or pipeline.default_dmax(q)
    rep = pipeline.dimension(weight, q, verify=False, cache=_cache(cache))
    statuses = []
    for cert in rep.certificates:
        res = verify_relation(q, weight, cert.labels, cert.a, d_max=d_max)
        statuses.append(res.status)
        pts = ",".join(f"{lab[0]}{tuple(lab[1:])}" for lab in cert.labels)
        click.echo(f"{res.status:<12} margin={res.margin:<4} {cert.kind:<9} points={pts}")
    click.echo(f"{len(statuses)} certificates, {statuses.count('pass')} passed")
    if "fail" in statuses:
        return EXIT_VERIFY
    return EXIT_INCONCLUSIVE if "inconclusive" in statuses else EXIT_OK


@cli.command()
@field_options
@click.option("--s1", type=int, required=True)
@click.option("--s2", type=int, required=True)
@emit_option
@cache_option
def point(q, p, e, s1, s2, emit, cache):
    """Print the coordinates of Xi_(s1,s2)."""
    q = _resolve_q(q, p, e)
    if s1 < 1 or s2 < 1 or s2 % (q - 1):
        raise click.UsageError("need s1, s2 >= 1 and (q-1) | s2")
    xi = pipeline.get_xi(s1, s2, q, _cache(cache))
    if emit == "json":
        click.echo(json.dumps({"q": q, "s1": s1, "s2": s2, "xi": xi.to_json()}))
    else:
        for i, z in enumerate(xi, 1):
            click.echo(f"z_{i} = {z!r}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="dzv", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.UsageError, click.BadParameter) as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except pipeline.VerificationFailure as exc:
        click.echo(f"verification failure: {exc}", err=True)
        return EXIT_VERIFY
    except (TheoremViolation, AssertionError, ArithmeticError) as exc:
        click.echo(f"assertion failure: {exc}", err=True)
        return EXIT_MATH
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
