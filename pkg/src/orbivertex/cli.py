"""Command line: `orbivertex vertex | dt | check`."""
from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from . import __version__
from .acceptance import CHECKS, AcceptanceConfig, run
from .boxcount import enumerate_vertex
from .gluing import (DTOptions, GluingError, dt_multiregular, dt_partition_function, dt_reduced,
                     dt_zero, provenance)
from .partitions import Partition
from .series import Series, Var, VarRegistry, substitute, vertex_registry
from .vertexops import operator_vertex
from .webdiagram import DiagramError, example_names, load_diagram, load_example, orient
from .znvertex import vertex

METHODS = ("formula", "boxes", "operators", "all")


@dataclass
class RunConfig:
    command: str
    D: int = 6
    Dv: int = 1
    method: str = "formula"
    multiregular: bool = False
    underline: bool = False
    part: str = "full"
    output: str = "text"
    subst: str | None = None
    jobs: int = 1
    inputs: list = field(default_factory=list)

    def __post_init__(self):
        if self.D < 0 or self.Dv < 0:
            raise click.UsageError("windows must be nonnegative")
        if self.method not in METHODS:
            raise click.UsageError(f"unknown method {self.method!r}")


def _emit(series: Series, cfg: RunConfig, header: dict | None = None):
    if cfg.output == "json":
        doc = {"series": series.to_json()}
        if header is not None:
            doc["provenance"] = header
        click.echo(json.dumps(doc, sort_keys=True))
    else:
        if header is not None:
            click.echo("# " + json.dumps(header, sort_keys=True))
        click.echo(series.to_text())


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as err:
        raise click.BadParameter(str(err))


# ---------------------------------------------------------------- vertex cache


def _cache_path(method: str, legs, n: int, D: int) -> Path | None:
    root = os.environ.get("ORBIVERTEX_CACHE_DIR")
    if not root:
        return None
    key = json.dumps([__version__, method, [list(p) for p in legs], n, D])
    name = hashlib.sha256(key.encode()).hexdigest()[:24] + ".json"
    return Path(root) / name


def _compute_vertex(method: str, legs, n: int, D: int) -> Series:
    path = _cache_path(method, legs, n, D)
    if path is not None and path.exists():
        return Series.from_json(json.loads(path.read_text()), vertex_registry(n)).truncate(D)
    if method == "formula":
        s = vertex(legs, n, D)
    elif method == "boxes":
        s = enumerate_vertex(legs, n, D)
    else:
        s = operator_vertex(*legs, n, D)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(s.dumps())
    return s


# ---------------------------------------------------------------- commands


@click.group()
@click.version_option(__version__)
def main():
    """Exact orbifold topological vertex and DT gluing."""


@main.command("vertex")
@click.option("-n", "n", type=int, default=1, show_default=True, help="order of the Z_n action")
@click.option("--leg1", default="", help='first leg, e.g. "3,1"')
@click.option("--leg2", default="", help="second leg")
@click.option("--leg3", default="", help="third leg")
@click.option("-D", "--degree", "D", type=int, default=6, show_default=True, help="box-degree window")
@click.option("--method", type=click.Choice(METHODS), default="formula", show_default=True)
@click.option("--output", type=click.Choice(("text", "json")), default="text", show_default=True)
def cmd_vertex(n, leg1, leg2, leg3, D, method, output):
    """The Z_n vertex V_{leg1 leg2 leg3} to box-degree D."""
    cfg = RunConfig("vertex", D=D, method=method, output=output)
    if n < 1:
        raise click.BadParameter("n must be positive", param_hint="-n")
    legs = (_partition(leg1), _partition(leg2), _partition(leg3))
    if method != "all":
        _emit(_compute_vertex(method, legs, n, D), cfg)
        return
    results = {m: _compute_vertex(m, legs, n, D) for m in ("formula", "boxes", "operators")}
    ref = results["formula"]
    for m in ("boxes", "operators"):
        diff = ref.window_diff(results[m], D)
        if diff:
            e, a, b = diff[0]
            click.echo(f"formula and {m} differ at exponent {list(e)}: {a} != {b}")
            sys.exit(1)
    _emit(ref, cfg)
    click.echo(f"3 methods agree to degree {D}")


def _load(spec: str):
    if spec in example_names():
        return load_example(spec)
    return load_diagram(spec)


def _load_subst(path: str, reg: VarRegistry):
    doc = json.loads(Path(path).read_text())
    if "vars" in doc:
        dst = VarRegistry(tuple(Var(v["name"], v.get("weight", 1), v.get("kind", "q"))
                                for v in doc["vars"]))
    else:
        dst = reg
    return doc["map"], dst


@main.command("dt")
@click.argument("diagram")
@click.option("-D", "--degree", "D", type=int, default=6, show_default=True,
              help="weighted q-degree window")
@click.option("--vdegree", "Dv", type=int, default=1, show_default=True, help="v-degree window")
@click.option("--multiregular", is_flag=True, help="multi-regular part, divided by DT_0")
@click.option("--part", type=click.Choice(("full", "zero", "reduced")), default="full",
              show_default=True, help="DT, DT_0 or DT / DT_0")
@click.option("--underline", is_flag=True, help="raw output, without q_<e>0 -> -q_<e>0")
@click.option("--subst", type=click.Path(exists=True, dir_okay=False),
              help="JSON file with a variable -> monomial map")
@click.option("--output", type=click.Choice(("text", "json")), default="text", show_default=True)
@click.option("--jobs", type=int, default=None, help="worker processes (default: all cores)")
def cmd_dt(diagram, D, Dv, multiregular, part, underline, subst, output, jobs):
    """DT partition function of DIAGRAM (a JSON file or a bundled example name)."""
    cfg = RunConfig("dt", D=D, Dv=Dv, multiregular=multiregular, underline=underline,
                    part=part, output=output, subst=subst, jobs=jobs or os.cpu_count() or 1,
                    inputs=[diagram])
    try:
        od = orient(_load(diagram))
        opts = DTOptions(D=D, Dv=Dv, signed=not underline, jobs=cfg.jobs,
                         mode="multiregular" if multiregular else "full")
        if multiregular:
            s = dt_multiregular(od, opts)
        elif part == "zero":
            s = dt_zero(od, opts)
        elif part == "reduced":
            s = dt_reduced(od, opts)
        else:
            s = dt_partition_function(od, opts)
        if subst:
            mapping, dst = _load_subst(subst, s.reg)
            s = substitute(s, mapping, dst)
    except (DiagramError, GluingError, OSError, ValueError) as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)
    header = provenance(od, opts)
    header["part"] = "multiregular" if multiregular else part
    _emit(s, cfg, header)


@main.command("check")
@click.option("--criterion", "criteria", multiple=True, type=click.Choice(sorted(CHECKS)),
              help="run only these checks (repeatable)")
@click.option("--max-leg", type=int, default=2, show_default=True)
@click.option("-D", "--degree", "D", type=int, default=8, show_default=True)
@click.option("--seed", type=int, default=AcceptanceConfig.seed, show_default=True)
@click.option("--output", type=click.Choice(("text", "json")), default="text", show_default=True)
def cmd_check(criteria, max_leg, D, seed, output):
    """Run the acceptance suite; exit status 0 iff every requested check passes."""
    cfg = AcceptanceConfig(D=D, max_leg=max_leg, seed=seed)
    keys = list(criteria) or list(CHECKS)
    results = [run(k, cfg) for k in keys]
    if output == "json":
        click.echo(json.dumps({"seed": seed, "results": [
            {"criterion": r.key, "pass": r.ok, "detail": r.detail, "seconds": round(r.seconds, 2),
             "failures": [repr(f) for f in r.failures]} for r in results]}, sort_keys=True))
    else:
        click.echo(f"# seed {seed}")
        for r in results:
            click.echo(r.line())
            for f in r.failures[:5]:
                click.echo(f"    {f!r}")
    sys.exit(0 if all(r.ok for r in results) else 1)


if __name__ == "__main__":
    main()
