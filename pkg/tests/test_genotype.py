"""Genotype schema: parse, validate, canonical serialization."""

from __future__ import annotations

import json

import pytest

from broadside.errors import RangeError, SchemaError, UnknownTypeface
from broadside.genotype import (
    Margins,
    PosterGenotype,
    TextBoxGene,
    canonical_number,
    parse_genotype,
    serialize_genotype,
    validate_genotype,
)

from conftest import build_genotype

CANONICAL = (
    '{"size":{"width":141,"height":100},'
    '"margins":{"left":5,"top":5,"right":5,"bottom":5},'
    '"verticalAlignment":"top",'
    '"textboxes":[{"content":"Hello there","typeface":"aurum-serif",'
    '"weight":400,"stretch":100,"size":12,"alignment":"left"}]}'
)


def test_serialize_uses_fixed_key_order_and_compact_numbers():
    genotype = build_genotype(["Hello there"])
    assert serialize_genotype(genotype) == CANONICAL


def test_parse_serialize_round_trip_is_identity_on_canonical_form(catalog):
    genotype = parse_genotype(CANONICAL, catalog)
    assert serialize_genotype(genotype) == CANONICAL


def test_parse_reads_all_fields(catalog):
    genotype = parse_genotype(CANONICAL, catalog)
    assert genotype.width == 141.0
    assert genotype.height == 100.0
    assert genotype.margins == Margins(5.0, 5.0, 5.0, 5.0)
    assert genotype.vertical_alignment == "top"
    assert genotype.lines == ("Hello there",)
    box = genotype.textboxes[0]
    assert (box.typeface, box.weight, box.stretch, box.size) == (
        "aurum-serif",
        400.0,
        100.0,
        12.0,
    )


def test_parse_ignores_unknown_keys(catalog):
    raw = json.loads(CANONICAL)
    raw["comment"] = "extra"
    raw["textboxes"][0]["color"] = "#ff0000"
    genotype = parse_genotype(json.dumps(raw), catalog)
    assert serialize_genotype(genotype) == CANONICAL


@pytest.mark.parametrize(
    "mutilate",
    [
        lambda raw: raw.pop("size"),
        lambda raw: raw["size"].pop("width"),
        lambda raw: raw.pop("margins"),
        lambda raw: raw["margins"].pop("bottom"),
        lambda raw: raw.pop("verticalAlignment"),
        lambda raw: raw.pop("textboxes"),
        lambda raw: raw["textboxes"][0].pop("content"),
        lambda raw: raw["textboxes"][0].pop("alignment"),
    ],
)
def test_parse_missing_key_raises_schema_error(catalog, mutilate):
    raw = json.loads(CANONICAL)
    mutilate(raw)
    with pytest.raises(SchemaError):
        parse_genotype(json.dumps(raw), catalog)


@pytest.mark.parametrize(
    "key,value",
    [
        ("verticalAlignment", "sideways"),
        ("verticalAlignment", 3),
        ("size", [141, 100]),
        ("textboxes", {"0": {}}),
    ],
)
def test_parse_wrong_types_raise_schema_error(catalog, key, value):
    raw = json.loads(CANONICAL)
    raw[key] = value
    with pytest.raises(SchemaError):
        parse_genotype(json.dumps(raw), catalog)


def test_parse_rejects_boolean_numbers(catalog):
    raw = json.loads(CANONICAL)
    raw["textboxes"][0]["size"] = True
    with pytest.raises(SchemaError):
        parse_genotype(json.dumps(raw), catalog)


def test_parse_rejects_invalid_json(catalog):
    with pytest.raises(SchemaError):
        parse_genotype("{not json", catalog)
    with pytest.raises(SchemaError):
        parse_genotype("[1,2,3]", catalog)


def test_parse_unknown_typeface(catalog):
    raw = json.loads(CANONICAL)
    raw["textboxes"][0]["typeface"] = "no-such-face"
    with pytest.raises(UnknownTypeface):
        parse_genotype(json.dumps(raw), catalog)


@pytest.mark.parametrize(
    "key,value",
    [
        ("weight", 50.0),  # below the face's axis minimum
        ("weight", 2000.0),
        ("stretch", 10.0),
        ("size", 3.0),  # below the configured floor
        ("size", 120.0),
    ],
)
def test_parse_out_of_range_values(catalog, key, value):
    raw = json.loads(CANONICAL)
    raw["textboxes"][0][key] = value
    with pytest.raises(RangeError):
        parse_genotype(json.dumps(raw), catalog)


def test_validate_margin_bounds(catalog):
    genotype = build_genotype(["Hi"], margins=(5.0, 5.0, 5.0, 55.0))
    with pytest.raises(RangeError):
        validate_genotype(genotype, catalog)
    genotype = build_genotype(["Hi"], margins=(-1.0, 5.0, 5.0, 5.0))
    with pytest.raises(RangeError):
        validate_genotype(genotype, catalog)


def test_validate_rejects_empty_box_list(catalog):
    genotype = PosterGenotype(
        width=100.0,
        height=100.0,
        margins=Margins(5.0, 5.0, 5.0, 5.0),
        vertical_alignment="top",
        textboxes=(),
    )
    with pytest.raises(SchemaError):
        validate_genotype(genotype, catalog)


def test_validate_respects_custom_size_range(catalog):
    genotype = build_genotype(["Hi"], size=80.0)
    with pytest.raises(RangeError):
        validate_genotype(genotype, catalog)
    validate_genotype(genotype, catalog, font_size_range=(6.0, 90.0))


def test_canonical_number_rounding():
    assert canonical_number(5.0) == 5
    assert isinstance(canonical_number(5.0), int)
    assert canonical_number(5.00004) == 5
    assert canonical_number(5.12345) == 5.1235
    assert canonical_number(400.70129) == 400.7013
    assert canonical_number(-2.0) == -2


def test_serialized_numbers_survive_reparse(catalog):
    genotype = build_genotype(
        ["Hello there"], weight=404.123456, stretch=99.99996, size=21.43335
    )
    document = serialize_genotype(genotype)
    again = parse_genotype(document, catalog)
    assert serialize_genotype(again) == document


def test_lines_and_with_boxes():
    genotype = build_genotype(["One", "Two"])
    assert genotype.lines == ("One", "Two")
    swapped = genotype.with_boxes(tuple(reversed(genotype.textboxes)))
    assert swapped.lines == ("Two", "One")
    assert swapped.width == genotype.width
