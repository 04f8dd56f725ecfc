"""Command-line front end.

Exit codes: 0 success, 2 infeasible or hypothesis violated, 1 any other error.
"""
from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field

import click
import numpy as np

from . import telemetry
from .constructions import degenerate_gadget, extender_chain, planar_gadget, stalactite_chain
from .errors import BudgetExceeded, EquicolorError, HypothesisViolated, Infeasible, ParseError, Unsolved
from .forest_coloring import equitable_color_forest, forest_components
from .graph_core import Graph, coloring_problems
from .graph_io import format_coloring, format_graph, parse_coloring, parse_graph

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


@dataclass
class RunReport:
    command: str
    digest: str
    outcome: str
    payload: dict | None = None
    telemetry: dict = field(default_factory=dict)
    wall_ms: float = 0.0
    detail: str = ""

    @property
    def exit_code(self) -> int:
        if self.outcome in ("Colored", "Partitioned", "Ok", "Valid", "Generated", "Counted"):
            return EXIT_OK
        if self.outcome in ("Infeasible", "HypothesisViolated"):
            return EXIT_NEGATIVE
        return EXIT_ERROR


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _is_forest(g: Graph) -> bool:
    try:
        forest_components(g)
    except EquicolorError:
        return False
    return True


def _emit(report: RunReport, body: str, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(asdict(report), default=list, indent=1))
    else:
        click.echo(f"# outcome {report.outcome} ({report.wall_ms:.0f} ms) {report.detail}".rstrip())
        if report.telemetry:
            click.echo("# telemetry " + " ".join(f"{k}={v}" for k, v in sorted(report.telemetry.items())))
        if body:
            click.echo(body, nl=False)
    sys.exit(report.exit_code)


def _run(command: str, text: str, work, as_json: bool) -> None:
    """Run work() -> (outcome, payload, body, detail) and turn exceptions into outcomes."""
    telemetry.reset()
    t0 = time.perf_counter()
    body = ""
    try:
        outcome, payload, body, detail = work()
    except ParseError as e:
        outcome, payload, detail = "Error", None, f"parse error: {e}"
    except HypothesisViolated as e:
        outcome, payload, detail = "HypothesisViolated", {"vertex": e.vertex, "needed": e.needed, "found": e.found}, str(e)
    except (Unsolved, BudgetExceeded) as e:
        outcome, payload, detail = "Unsolved", None, f"{type(e).__name__}: {e}"
    except (EquicolorError, ValueError) as e:
        outcome, payload, detail = "Error", None, f"{type(e).__name__}: {e}"
    report = RunReport(command, _digest(text), outcome, payload, telemetry.snapshot(), (time.perf_counter() - t0) * 1000, detail)
    if outcome not in ("Colored", "Partitioned", "Generated") and not as_json:
        click.echo(f"{command}: {outcome}: {detail}", err=True)
    _emit(report, body, as_json)


def _colouring_outcome(g: Graph, col, route: str):
    if isinstance(col, Infeasible):
        return "Infeasible", {"reason": col.reason, "nodes": col.nodes_explored}, "", col.reason
    problems = coloring_problems(g, col)
    if problems:
        return "Error", None, "", "output failed verification: " + "; ".join(problems[:3])
    sizes = sorted(col.sizes, reverse=True)
    return "Colored", {"route": route, "sizes": sizes}, format_coloring(col), f"route={route} sizes={sizes}"


@click.group()
def main() -> None:
    """Equitable colourings of outerplanar and planar graphs."""


@main.command()
@click.option("--s", "s", type=int, required=True, help="number of colours")
@click.option("--planar", is_flag=True, help="use the planar driver (s >= 40)")
@click.option("--backend", type=click.Choice(["auto", "exhaustive", "heuristic"]), default="auto")
@click.option("--json", "as_json", is_flag=True)
@click.argument("path", default="-")
def color(s: int, planar: bool, backend: str, as_json: bool, path: str) -> None:
    """Equitably colour the graph in PATH (or stdin)."""
    text = _read(path)

    def work():
        g = parse_graph(text)
        if planar:
            from .planar_coloring import equitable_color_planar_run, find_witness_sets

            if s < 40:
                raise ValueError("the planar driver needs s >= 40")
            wit = find_witness_sets(g, s) if g.n else None
            if isinstance(wit, Infeasible):
                return _colouring_outcome(g, wit, "planar")
            run = equitable_color_planar_run(g, s, wit, backend=backend)
            return _colouring_outcome(g, run.coloring, f"planar-{run.state.finish}@{run.state.finished_at}")
        if s >= 3 and _is_forest(g):
            return _colouring_outcome(g, equitable_color_forest(g, s), "forest")
        if s >= 6:
            from .outerplanar_coloring import equitable_color_outerplanar_run

            run = equitable_color_outerplanar_run(g, s)
            return _colouring_outcome(g, run.coloring, run.route)
        from .oracle import exhaustive_equitable

        return _colouring_outcome(g, exhaustive_equitable(g, s, max_n=40), "oracle")

    _run("color", text, work, as_json)


@main.command()
@click.option("--json", "as_json", is_flag=True)
@click.argument("path", default="-")
def partition(as_json: bool, path: str) -> None:
    """Balanced two-forest partition of an outerplanar graph."""
    text = _read(path)

    def work():
        from .partitioner import partition_lemma

        g = parse_graph(text)
        fp = partition_lemma(g)
        body = "".join(f"p {v} {i + 1}\n" for v, i in enumerate(fp.part_of(g.n)))
        return "Partitioned", {"sizes": list(fp.sizes)}, body, f"sizes={list(fp.sizes)}"

    _run("partition", text, work, as_json)


@main.command()
@click.option("--coloring", "coloring_path", required=True, type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@click.argument("path", default="-")
def verify(coloring_path: str, as_json: bool, path: str) -> None:
    """Check that a colouring is proper and equitable for the graph."""
    text = _read(path)

    def work():
        g = parse_graph(text)
        col = parse_coloring(_read(coloring_path), g.n)
        problems = coloring_problems(g, col)
        if problems:
            return "Error", {"problems": problems}, "", "; ".join(problems[:3])
        return "Valid", {"sizes": list(col.sizes)}, "", f"sizes={sorted(col.sizes, reverse=True)}"

    _run("verify", text, work, as_json)


def _parse_params(params: str) -> list[int]:
    try:
        return [int(x) for x in params.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected integers, got {params!r}") from None


@main.command()
@click.option(
    "--family",
    type=click.Choice(["stalactite", "planar-gadget", "extender", "degenerate", "random-outerplanar", "random-planar"]),
    required=True,
)
@click.option("--params", default="1", help="family parameters, e.g. '2' or '1,3'")
@click.option("--seed", type=int, default=0, help="seed for the random families")
def generate(family: str, params: str, seed: int) -> None:
    """Write a generated graph to stdout."""
    from . import fixtures

    p = _parse_params(params)
    rng = np.random.default_rng(seed)
    try:
        if family == "stalactite":
            g, cert = stalactite_chain(*p)
        elif family == "planar-gadget":
            g, cert = planar_gadget(*p)
        elif family == "extender":
            g, cert = extender_chain(*p)
        elif family == "degenerate":
            g, cert = degenerate_gadget(*p)
        elif family == "random-outerplanar":
            g, cert = fixtures.random_maximal_outerplanar(p[0], rng), None
        else:
            g, cert = fixtures.random_planar(p[0], rng), None
    except (TypeError, ValueError) as e:
        click.echo(f"generate: Error: {e}", err=True)
        sys.exit(EXIT_ERROR)
    notes = (f"{family} {p} seed={seed}",)
    if cert is not None:
        notes += (f"claimed order {cert.claimed_order}, max degree {cert.claimed_max_degree}",)
    click.echo(format_graph(g, notes), nl=False)


@main.command()
@click.option("--s", "s", type=int, required=True)
@click.option("--max-n", type=int, default=40)
@click.option("--json", "as_json", is_flag=True)
@click.argument("path", default="-")
def oracle(s: int, max_n: int, as_json: bool, path: str) -> None:
    """Exhaustive search for an equitable s-colouring (budget: EQUICOLOR_BUDGET_MS)."""
    text = _read(path)

    def work():
        from .oracle import exhaustive_equitable

        g = parse_graph(text)
        return _colouring_outcome(g, exhaustive_equitable(g, s, max_n=max_n), "oracle")

    _run("oracle", text, work, as_json)


@main.command(name="enum")
@click.option("--n", "n", type=int, required=True)
@click.option("--emit", is_flag=True, help="also write every graph")
def enum_cmd(n: int, emit: bool) -> None:
    """Count (and optionally list) the labelled maximal outerplanar graphs on a fixed polygon."""
    from .oracle import enumerate_maximal_outerplanar

    count = 0
    for g in enumerate_maximal_outerplanar(n):
        count += 1
        if emit:
            click.echo(format_graph(g, (f"graph {count}",)), nl=False)
    click.echo(f"# count {count}")


@main.command()
@click.option("--s", "s", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@click.argument("path", default="-")
def hypothesis(s: int, as_json: bool, path: str) -> None:
    """Check min over v of alpha_v >= floor(n/s)."""
    text = _read(path)

    def work():
        from .outerplanar_coloring import check_hypothesis

        g = parse_graph(text)
        res = check_hypothesis(g, s)
        if isinstance(res, HypothesisViolated):
            raise res
        return "Ok", {"needed": res.needed}, "", f"every vertex lies in an independent set of size {res.needed}"

    _run("hypothesis", text, work, as_json)


if __name__ == "__main__":
    main()
