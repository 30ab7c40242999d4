"""
Command line interface (CLI) handling for zagreb
================================================

This provides a command-line interface (CLI) for computing degree-based indices
of trees, finding index-minimizing trees with a fixed number of pendants, and
checking lower bounds against those minima.

Standard output carries JSON only: one document per run, or JSON lines for
streams. Diagnostics go to standard error.

Commands
--------
index          Evaluate an index on trees read from graph6.
minimize       Minimum index over trees with n pendants (dp, brute or local).
construct      Build a member of an extremal family.
enumerate      List or count the trees with n pendants.
solve-ca       Optimal attached-tree cost and witness.
verify-bounds  Audit a lower bound over a range of n.

Exit codes
----------
0 success (bound violations are report content), 2 bad input, 3 enumeration
budget exceeded, 1 internal error.

Examples
--------
$ zagreb minimize --method dp --index m2 --pendants 9
$ zagreb verify-bounds --bound m2 --range 8..8 --method brute
"""

import logging
import sys

import click

from . import bounds, dp_solver, enumeration, families, indices, report, transforms
from .common import BudgetExceededError, WitnessError, ZagrebError, validate_file
from .config import TOLERANCE, get_config
from .io import load_graph6, read_graph6, save_graph6, write_dot, write_graph6

# logging settings
# terminal output
stream = logging.StreamHandler(sys.stderr)
stream.setLevel(logging.WARNING)
# filter out msgs from other modules
stream.addFilter(logging.Filter("zagreb"))

logfile_FORMAT = "%(asctime)s | %(funcName)s |  %(levelname)s: %(message)s"

# global configs
FORMAT = "%(funcName)s: %(levelname)s: %(message)s"
logging.basicConfig(
    level=logging.NOTSET,
    format=FORMAT,
    datefmt="[%X]",
    handlers=[stream],
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

# indices with a registered lower bound, reported alongside minima
REGISTERED_BOUNDS = {
    "m2": bounds.m2_bound,
    "m1": bounds.m1_bound,
    "m1+m2": bounds.sum_bound,
}


def _emit(record):
    click.echo(report.Record(record).to_json())


def _parse_range(text):
    lo, sep, hi = text.partition("..")
    try:
        lo, hi = int(lo), int(hi if sep else lo)
    except ValueError:
        raise click.BadParameter(f"expected a..b, got {text!r}", param_hint="--range")
    if lo > hi:
        raise click.BadParameter(f"empty range {text!r}", param_hint="--range")
    return lo, hi


def _scheme(index, scheme_file):
    return indices.scheme_from_name(index, custom_file=scheme_file)


def _write_dot_file(t, path):
    fname = validate_file(path, create=True)
    fname.write_text(write_dot(t, degrees=True))
    log.info(f"Wrote DOT to {fname}")


@click.group()
@click.option("--debug/--no-debug", default=False)
@click.option(
    "--config",
    "cfgfile",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML file overriding the default settings.",
)
@click.option("--threads", type=int, default=None, help="Worker threads for enumeration.")
@click.option("--log-file", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cli(ctx, debug, cfgfile, threads, log_file):
    """The zagreb command computes and minimizes degree-based tree indices"""
    if debug:
        click.echo("Debug mode on (displaying all levels)", err=True)
        stream.setLevel(logging.NOTSET)
    if log_file is not None:
        logfile = logging.FileHandler(log_file)
        logfile.setLevel(logging.NOTSET)
        # filter out msgs from other modules
        logfile.addFilter(logging.Filter("zagreb"))
        logfile.setFormatter(logging.Formatter(logfile_FORMAT))
        logging.getLogger().addHandler(logfile)

    cfg = get_config(cfgfile)
    if threads is not None:
        if threads < 1:
            raise click.BadParameter("must be >= 1", param_hint="--threads")
        cfg.threads = threads
    ctx.obj = cfg


@cli.command()
@click.option("--index", "index_name", default="m2", show_default=True)
@click.option("--in", "infile", type=click.Path(dir_okay=False), default=None)
@click.option("--graph6", "lines", multiple=True, help="graph6 line; may be repeated.")
@click.option("--scheme-file", type=click.Path(dir_okay=False), default=None)
def index(index_name, infile, lines, scheme_file):
    """Evaluate an index on each input tree (JSON lines)"""
    if (infile is None) == (not lines):
        raise click.UsageError("Give exactly one of --in or --graph6")
    trees = load_graph6(infile) if infile is not None else [read_graph6(s) for s in lines]
    scheme = _scheme(index_name, scheme_file)

    for i, t in enumerate(trees):
        record = dict(
            tree=i,
            graph6=write_graph6(t),
            n=t.pendant_count,
            N=t.vertex_count,
            index=scheme.name,
        )
        if scheme.name in ("pi1", "pi2"):
            which = "first" if scheme.name == "pi1" else "second"
            value = indices.multiplicative_zagreb(t, which)
            record.update(value=value.exact, log_value=value.log)
        else:
            record.update(value=indices.abstract_cost(t, scheme))
        _emit(record)


@cli.command()
@click.option(
    "--method",
    type=click.Choice(["dp", "brute", "local"], case_sensitive=False),
    default="dp",
    show_default=True,
)
@click.option("--index", "index_name", default="m2", show_default=True)
@click.option("--pendants", "n", type=int, default=None)
@click.option("--reduced/--no-reduced", default=True, show_default=True)
@click.option("--max-degree", type=int, default=None)
@click.option("--max-order", type=int, default=None)
@click.option("--degree-cap", type=int, default=dp_solver.M2_DEGREE_CAP, show_default=True)
@click.option("--from", "start", default=None, help="graph6 start tree for --method local.")
@click.option("--emit", "dot_path", type=click.Path(dir_okay=False), default=None)
@click.option("--scheme-file", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def minimize(
    cfg,
    method,
    index_name,
    n,
    reduced,
    max_degree,
    max_order,
    degree_cap,
    start,
    dot_path,
    scheme_file,
):
    """Find the minimum index over trees with n pendants"""
    method = method.lower()
    scheme = _scheme(index_name, scheme_file)

    if method == "local":
        if start is None:
            raise click.UsageError("--method local needs --from <graph6>")
        if scheme.name != "m2":
            raise click.UsageError("--method local only supports --index m2")
        t = read_graph6(start)
        _emit(dict(step=0, move=None, vertex=None, delta=0, m2=indices.m2(t)))
        for step in transforms.iter_local_search(t):
            t = step.pop("tree")
            _emit(step)
        if dot_path:
            _write_dot_file(t, dot_path)
        return

    if n is None:
        raise click.UsageError(f"--method {method} needs --pendants")

    record = dict(n=n, method=method, index=scheme.name)
    if method == "dp":
        if max_degree is not None:
            raise click.UsageError("--max-degree needs --method brute; use --degree-cap")
        if scheme.name == "m2" and degree_cap == dp_solver.M2_DEGREE_CAP:
            opt = dp_solver.min_m2(n)
        else:
            opt = dp_solver.generalized_min(n, scheme, degree_cap=degree_cap)
        report.validate_witness(opt.tree, n, opt.value, scheme)
        record.update(min=opt.value, witness=opt.tree, stem_degree=opt.stem_degree)
        witness = opt.tree
    else:
        c = enumeration.EnumConstraints(
            pendants=n, reduced=reduced, max_degree=max_degree, max_order=max_order
        )
        budget = enumeration.Budget.from_config(cfg)
        result = enumeration.brute_min(c, scheme, threads=cfg.threads, budget=budget)
        for t in result.witnesses:
            report.validate_witness(t, n, result.min_value, scheme)
        witness = result.witnesses[0]
        record.update(
            min=result.min_value,
            witness=witness,
            witnesses=result.witnesses,
            trees_examined=result.trees_examined,
        )

    if scheme.name in REGISTERED_BOUNDS:
        bound = REGISTERED_BOUNDS[scheme.name](n)
        record.update(bound=bound, bound_satisfied=record["min"] >= bound - TOLERANCE)
    if dot_path:
        _write_dot_file(witness, dot_path)
    _emit(record)


@cli.command()
@click.option("--family", required=True, type=click.Choice(sorted(families.FAMILY_PARAMS)))
@click.option("--params", "param_text", default="", help="k=v,... family parameters.")
@click.option("--seed", type=int, default=None, help="Random skeleton for t45.")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), default=None)
def construct(family, param_text, seed, dot_path):
    """Build an extremal family member and report its indices"""
    params = families.FamilyParams.from_string(family, param_text, seed=seed)
    t = params.build()
    values = {"m1": indices.m1(t), "m2": indices.m2(t)}
    closed = {}
    for name in values:
        try:
            closed[name] = families.closed_form(params, name)
        except KeyError:
            continue
        if closed[name] != values[name]:
            raise WitnessError(f"{family} {name}: closed form {closed[name]}, computed {values[name]}")
    if dot_path:
        _write_dot_file(t, dot_path)
    _emit(
        dict(
            family=family,
            params=params.params,
            n=t.pendant_count,
            N=t.vertex_count,
            graph6=t,
            index_values=values,
            closed_forms=closed,
        )
    )


@cli.command("enumerate")
@click.option("--pendants", "n", type=int, required=True)
@click.option("--reduced/--no-reduced", default=True, show_default=True)
@click.option("--max-degree", type=int, default=None)
@click.option("--max-order", type=int, default=None)
@click.option(
    "--emit",
    type=click.Choice(["graph6", "count"], case_sensitive=False),
    default="count",
    show_default=True,
)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write a .g6 file.")
@click.pass_obj
def enumerate_cmd(cfg, n, reduced, max_degree, max_order, emit, out):
    """Enumerate the trees with n pendants up to isomorphism"""
    c = enumeration.EnumConstraints(
        pendants=n, reduced=reduced, max_degree=max_degree, max_order=max_order
    )
    budget = enumeration.Budget.from_config(cfg)
    trees = enumeration.enumerate_trees(c, threads=cfg.threads, budget=budget)
    if emit.lower() == "count" and out is None:
        count = sum(1 for _ in trees)
    else:
        trees = list(trees)
        count = len(trees)
        if out is not None:
            save_graph6(trees, validate_file(out, create=True))
        if emit.lower() == "graph6":
            records = (dict(tree=i, graph6=t) for i, t in enumerate(trees))
            click.echo(report.json_lines(records), nl=False)
            return
    _emit(dict(n=n, reduced=reduced, max_degree=max_degree, max_order=c.order_cap, count=count))


@cli.command("solve-ca")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
def solve_ca(n, p):
    """Optimal attached-tree M2 cost C*(n, p) with a witness"""
    entry = dp_solver.solve_ca(n, p)
    witness = dp_solver.reconstruct_witness(n, p)
    report.validate_attached_witness(witness.tree, witness.root, p, n, entry.cost, indices.M2)
    record = dict(
        n=n,
        p=p,
        cost=entry.cost,
        choice=dict(d=entry.d, parts=list(entry.parts)),
        witness_graph6=witness.tree,
        witness_root=witness.root,
    )
    if 3 <= p <= 6:
        record["bound"] = bounds.ca_lower_bound(n, p)
    _emit(record)


@cli.command("verify-bounds")
@click.option(
    "--bound",
    "bound_name",
    required=True,
    type=click.Choice(["m1", "m2", "ca-table", "ca-induction", "sum", "general"], case_sensitive=False),
)
@click.option("--range", "range_text", required=True, help="a..b (inclusive).")
@click.option(
    "--method",
    type=click.Choice(["dp", "brute"], case_sensitive=False),
    default=None,
    help="Source of the minima (default dp); not used by ca-induction.",
)
@click.option("--max-degree", type=int, default=None)
@click.option("--scheme", default="m1", show_default=True, help="Vertex scheme for --bound general.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def verify_bounds(cfg, bound_name, range_text, method, max_degree, scheme, csv_path):
    """Check a lower bound against computed minima over a range of n"""
    lo, hi = _parse_range(range_text)
    if bound_name.lower() == "ca-induction":
        if method is not None or max_degree is not None:
            raise click.UsageError("--bound ca-induction takes no --method or --max-degree")
        result = bounds.verify_ca_induction(hi, samples=(), n_min=lo)
    else:
        result = bounds.audit_bound(
            bound_name,
            (lo, hi),
            method=(method or "dp").lower(),
            max_degree=max_degree,
            scheme=scheme,
            threads=cfg.threads,
            budget=enumeration.Budget.from_config(cfg),
        )
    if csv_path:
        result.to_frame().to_csv(validate_file(csv_path, create=True), index=False)
    _emit(result.to_record())


def run(argv=None) -> int:
    """
    Run the CLI on `argv` and return the exit code instead of exiting.
    """
    try:
        rv = cli.main(args=argv, prog_name="zagreb", standalone_mode=False)
    except click.exceptions.ClickException as err:
        err.show()
        return EXIT_INPUT
    except click.exceptions.Abort:
        return EXIT_INTERNAL
    except BudgetExceededError as err:
        log.error(f"{err}")
        return EXIT_BUDGET
    except WitnessError as err:
        log.error(f"{err}")
        return EXIT_INTERNAL
    except (ZagrebError, ValueError, OSError) as err:
        log.error(f"{type(err).__name__}: {err}")
        return EXIT_INPUT
    except Exception:
        log.exception("Internal error")
        return EXIT_INTERNAL
    return rv if isinstance(rv, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
