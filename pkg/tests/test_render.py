import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from frobtangle.cobordism import invariant, invariant_to_json
from frobtangle.diagram import canonical, diagram_to_json
from frobtangle.dsl import parse
from frobtangle.render import render_svg
from frobtangle.rewrite import translate
from frobtangle.terms import D

GOLDEN = Path(__file__).parent / "golden"
SVG = "{http://www.w3.org/2000/svg}"

CASES = {
    "identity": "id(1)",
    "mult": "m",
    "unit": "u",
    "comult": "d",
    "counit": "e",
    "copairing": "g",
    "handle": "d ; m",
    "frobenius-left": "d * id(1) ; id(1) * m",
    "frobenius-right": "id(1) * d ; m * id(1)",
    "comult-in-g2": None,
}


def _src(name):
    return CASES[name] if CASES[name] is not None else translate(D, "G1->G2")


def _term(name):
    src = _src(name)
    return parse(src) if isinstance(src, str) else src


@pytest.mark.parametrize("name", CASES)
def test_golden(name):
    expected = (GOLDEN / f"{name}.svg").read_text(encoding="utf-8")
    assert render_svg(_term(name)) == expected


@pytest.mark.parametrize("name", CASES)
def test_svg_is_well_formed(name):
    root = ET.fromstring(render_svg(_term(name)).split("\n", 1)[1])
    assert root.tag == f"{SVG}svg"
    assert root.find(f"{SVG}title") is not None


def test_dots_mark_units_and_counits():
    def dots(src):
        return len(ET.fromstring(render_svg(parse(src)).split("\n", 1)[1]).findall(f"{SVG}circle"))
    assert dots("u") == 1 and dots("e") == 1
    assert dots("u ; e") == 2 and dots("m ; d") == 0


def test_interchange_invariant_bytes():
    assert render_svg(parse("m * e")) == render_svg(parse("(m * id(1)) ; (id(1) * e)"))
    assert render_svg(parse("m * e")) == render_svg(parse("(id(2) * e) ; m"))


def test_json_deterministic():
    t = parse("d * id(1) ; id(1) * m ; m ; d")
    a = json.dumps(diagram_to_json(canonical(t)), sort_keys=True)
    b = json.dumps(diagram_to_json(canonical(parse("(d * id(1)) ; (id(1) * m) ; (m ; d)"))), sort_keys=True)
    assert a == b
    assert json.dumps(invariant_to_json(invariant(t)), sort_keys=True) == \
        json.dumps(invariant_to_json(invariant(t)), sort_keys=True)
