from __future__ import annotations

from pathlib import Path

import pytest

from monoidkit.presentation import Presentation, load_presentation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture
def load():
    def _load(name: str) -> Presentation:
        return load_presentation(fixture_path(name))

    return _load
