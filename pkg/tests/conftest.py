import logging
import os

import pytest
import yaml

import secbif.data.hamiltonian
import secbif.logic.imports
import secbif.logic.quadratic


FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "fixtures")
PUBLISHED_VALUES_PATH = os.path.join(os.path.dirname(__file__), "./environment/published.yml")
TESTS_LOGGER_NAME = "secbif (tests)"


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


@pytest.fixture(scope='session')
def tests_logger() -> logging.Logger:
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )
    return logging.getLogger(TESTS_LOGGER_NAME)


@pytest.fixture(scope="session")
def published() -> dict:
    with open(PUBLISHED_VALUES_PATH, "r", encoding="utf-8") as file:
        return yaml.safe_load(file)


@pytest.fixture(scope="session")
def octupole_unrotated() -> secbif.data.hamiltonian.QuadHopfHamiltonian:
    loaded = secbif.logic.imports.load_document(fixture_path("octupole.json"))
    return secbif.logic.imports.quad_model(loaded)


@pytest.fixture(scope="session")
def octupole_model(octupole_unrotated: secbif.data.hamiltonian.QuadHopfHamiltonian) -> secbif.data.hamiltonian.QuadHopfHamiltonian:
    rotated, _ = secbif.logic.quadratic.rotate_to_diagonal(octupole_unrotated)
    return rotated


@pytest.fixture(scope="session")
def ellipse_model() -> secbif.data.hamiltonian.QuadHopfHamiltonian:
    return secbif.logic.imports.load_document(fixture_path("ellipse.json")).value


@pytest.fixture(scope="session")
def hyperbola_model() -> secbif.data.hamiltonian.QuadHopfHamiltonian:
    return secbif.logic.imports.load_document(fixture_path("hyperbola.json")).value
