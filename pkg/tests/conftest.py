"""Shared fixtures: catalogs, lexicon resources, genotype factories."""

from __future__ import annotations

import numpy as np
import pytest

from broadside.emotion import (
    EmotionProfile,
    analyze_lines,
    default_lexicon_path,
    load_lexicon,
    load_resources,
)
from broadside.fonts import FontCatalog, bundled_catalog, bundled_face_paths, load_catalog
from broadside.genotype import (
    ALIGNMENTS,
    Margins,
    PosterGenotype,
    TextBoxGene,
    VERTICAL_ALIGNMENTS,
)

import oracles


@pytest.fixture(scope="session")
def catalog() -> FontCatalog:
    return bundled_catalog()


@pytest.fixture(scope="session")
def mono_catalog() -> FontCatalog:
    paths = [p for p in bundled_face_paths() if "test-mono" in p.name]
    assert paths, "test-mono sidecar missing"
    return load_catalog(paths)


@pytest.fixture(scope="session")
def oracle_faces():
    return oracles.load_faces(bundled_face_paths())


@pytest.fixture(scope="session")
def resources_en():
    return load_resources("en")


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(default_lexicon_path())


@pytest.fixture(scope="session")
def profile_for(resources_en, lexicon):
    def build(lines: list[str]) -> EmotionProfile:
        return analyze_lines(lines, resources_en, lexicon)

    return build


def build_genotype(
    lines,
    *,
    width=141.0,
    height=100.0,
    margins=(5.0, 5.0, 5.0, 5.0),
    vertical_alignment="top",
    faces=("aurum-serif",),
    weight=400.0,
    stretch=100.0,
    size=12.0,
    alignment="left",
) -> PosterGenotype:
    """Uniform single-knob genotype builder for targeted metric tests."""
    boxes = tuple(
        TextBoxGene(
            content=line,
            typeface=faces[index % len(faces)],
            weight=weight,
            stretch=stretch,
            size=size,
            alignment=alignment,
        )
        for index, line in enumerate(lines)
    )
    return PosterGenotype(
        width=width,
        height=height,
        margins=Margins(*margins),
        vertical_alignment=vertical_alignment,
        textboxes=boxes,
    )


@pytest.fixture()
def make_genotype():
    return build_genotype


def random_genotype(rng: np.random.Generator, lines, fonts) -> PosterGenotype:
    """One random genotype over fixed lines, exercising every gene.

    Weight and stretch are drawn inside the chosen face's axes so strict
    instance lookup accepts every box."""
    face_ids = fonts.ids()
    boxes = []
    for line in lines:
        face_id = face_ids[int(rng.integers(len(face_ids)))]
        face = fonts.face(face_id)
        boxes.append(
            TextBoxGene(
                content=line,
                typeface=face_id,
                weight=float(rng.uniform(face.weight_axis.minimum, face.weight_axis.maximum)),
                stretch=float(
                    rng.uniform(face.stretch_axis.minimum, face.stretch_axis.maximum)
                ),
                size=float(rng.uniform(6.0, 60.0)),
                alignment=ALIGNMENTS[int(rng.integers(3))],
            )
        )
    boxes = tuple(boxes)
    return PosterGenotype(
        width=float(rng.uniform(50.0, 200.0)),
        height=float(rng.uniform(50.0, 200.0)),
        margins=Margins(
            float(rng.uniform(0.0, 15.0)),
            float(rng.uniform(0.0, 15.0)),
            float(rng.uniform(0.0, 15.0)),
            float(rng.uniform(0.0, 15.0)),
        ),
        vertical_alignment=VERTICAL_ALIGNMENTS[int(rng.integers(3))],
        textboxes=boxes,
    )


@pytest.fixture()
def make_random_genotype():
    return random_genotype
