"""Command line interface.

Every subcommand prints JSON on stdout (``render`` prints SVG).  Exit
status is 0 for success or a true answer, 1 for a false answer or a failed
search, and 2 for errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .coherence import UnknownAxiom, axiom_names, verify_coherence
from .cobordism import Unrealizable, cob_eq, invariant, invariant_from_json, invariant_to_json, synthesize
from .diagram import canonical, diagram_to_json, structural_eq, to_term
from .dsl import TermSyntaxError, parse, show
from .frobenius import BUILTIN_NAMES, DegenerateForm, UnknownAlgebra, load_algebra
from .render import render_svg
from .rewrite import NotFound, WrongGeneratorSet, search, translate
from .terms import ArityMismatch, GeneratorSet, generator_set, term_to_json, typecheck
from .tqft import eval_eq, evaluate


def _emit(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True))


class _Fail(Exception):
    """Print ``payload`` and exit 1."""

    def __init__(self, payload):
        self.payload = payload


def _term(src: str):
    t = parse(src)
    typecheck(t)
    return t


algebra_option = click.option("--algebra", "algebra", default="kx2", show_default=True,
                              help=f"built-in ({', '.join(BUILTIN_NAMES)}) or JSON file")


@click.group()
def main() -> None:
    """String diagrams for commutative Frobenius algebras and 2d cobordisms."""


@main.command("parse")
@click.argument("src")
def parse_cmd(src: str) -> None:
    t = parse(src)
    _emit({"term": term_to_json(t), "text": show(t)})


@main.command()
@click.argument("src")
def check(src: str) -> None:
    """Type-check a term."""
    t = _term(src)
    sets = [s.name for s in GeneratorSet if generator_set(t, s)]
    _emit({"dom": t.dom, "cod": t.cod, "generators": t.size(), "generator_sets": sets})


@main.command()
@click.argument("src")
def canon(src: str) -> None:
    """Canonical diagram of a term."""
    d = canonical(_term(src))
    _emit({"canonical": show(to_term(d)), "diagram": diagram_to_json(d)})


@main.command("invariant")
@click.argument("src")
def invariant_cmd(src: str) -> None:
    _emit(invariant_to_json(invariant(_term(src))))


@main.command()
@click.argument("src1")
@click.argument("src2")
@click.option("--mode", type=click.Choice(["cob", "structural", "eval"]), default="cob", show_default=True)
@algebra_option
def eq(src1: str, src2: str, mode: str, algebra: str) -> None:
    """Compare two terms as cobordisms, as diagrams, or by evaluation."""
    t1, t2 = _term(src1), _term(src2)
    if (t1.dom, t1.cod) != (t2.dom, t2.cod):
        equal = False
    elif mode == "cob":
        equal = cob_eq(t1, t2)
    elif mode == "structural":
        equal = structural_eq(t1, t2)
    else:
        equal = eval_eq(t1, t2, load_algebra(algebra))
    if not equal:
        raise _Fail({"equal": False})
    _emit({"equal": True})


@main.command("eval")
@click.argument("src")
@algebra_option
@click.option("--float", "as_float", is_flag=True, help="print entries as floats")
def eval_cmd(src: str, algebra: str, as_float: bool) -> None:
    """Matrix of a term in a Frobenius algebra."""
    A = load_algebra(algebra)
    m = evaluate(_term(src), A)
    rows = [[float(x) for x in r] for r in m.matrix] if as_float else m.rows_as_strings()
    _emit({"algebra": A.name, "dim": A.dim, "dom": m.in_width, "cod": m.out_width, "matrix": rows})


@main.command("search")
@click.argument("src1")
@click.argument("src2")
@click.option("--depth", default=8, show_default=True, type=click.IntRange(min=1))
@click.option("--max-size", default=None, type=int, help="cap on generators in intermediate terms")
def search_cmd(src1: str, src2: str, depth: int, max_size: int | None) -> None:
    """Breadth-first search for a rewrite trace."""
    try:
        trace = search(_term(src1), _term(src2), depth, max_size=max_size)
    except NotFound:
        raise _Fail({"found": False, "depth": depth}) from None
    _emit({"found": True, "trace": trace.to_json()})


@main.command("translate")
@click.argument("src")
@click.option("--to", "target", type=click.Choice(["G1", "G2"]), required=True)
def translate_cmd(src: str, target: str) -> None:
    """Rewrite a term into the other generating set."""
    direction = "G2->G1" if target == "G1" else "G1->G2"
    _emit({"term": show(translate(_term(src), direction))})


@main.command()
@algebra_option
@click.option("--axiom", default=None, help="check a single axiom")
def coherence(algebra: str, axiom: str | None) -> None:
    """Check the registered coherence axioms in the trivial backend."""
    A = load_algebra(algebra)
    names = [axiom] if axiom else axiom_names()
    rows = []
    for name in names:
        rep = verify_coherence(name, A)
        rows.append({"axiom": name, "status": "pass" if rep.ok else "fail",
                     "seams": [{"seam": c.name, "pass": c.passed} for c in rep.checks]})
    payload = {"algebra": A.name, "axioms": rows}
    if not all(r["status"] == "pass" for r in rows):
        raise _Fail(payload)
    _emit(payload)


@main.command()
@click.argument("src")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
def render(src: str, output: Path | None) -> None:
    """SVG drawing of the canonical diagram."""
    svg = render_svg(_term(src))
    if output is None:
        click.echo(svg, nl=False)
    else:
        output.write_text(svg, encoding="utf-8")
        _emit({"written": str(output)})


@main.command()
@click.argument("invariant_json")
def synth(invariant_json: str) -> None:
    """Build a term from an invariant (JSON text or a file)."""
    p = Path(invariant_json)
    text = p.read_text(encoding="utf-8") if p.is_file() else invariant_json
    t = synthesize(invariant_from_json(json.loads(text)))
    _emit({"term": show(t)})


_ERRORS = (TermSyntaxError, ArityMismatch, UnknownAlgebra, UnknownAxiom, DegenerateForm,
           WrongGeneratorSet, Unrealizable, ValueError, KeyError, OSError)


def run(argv: list[str] | None = None) -> int:
    try:
        main.main(args=argv, standalone_mode=False)
    except _Fail as f:
        _emit(f.payload)
        return 1
    except click.exceptions.Abort:
        return 2
    except click.ClickException as exc:
        exc.show()
        return 2
    except _ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2
    return 0


def entry() -> None:
    sys.exit(run())
