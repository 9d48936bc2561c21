"""
Functions for loading model documents from files or directories.
"""

from __future__ import annotations

import dataclasses
import logging
import os
import typing

import secbif.data.hamiltonian
import secbif.data.processor.input
import secbif.errors
import secbif.logic.octupole

LOGGER = logging.getLogger(__name__)

InputProcessor = type[secbif.data.processor.input.InputProcessor]

# first matching key decides the document kind
DOCUMENT_KINDS: tuple[tuple[str, InputProcessor], ...] = (
    ('m0', secbif.data.processor.input.ParamsInput),
    ('Ctil', secbif.data.processor.input.CoefficientsInput),
    ('A', secbif.data.processor.input.QuadModelInput),
)


@dataclasses.dataclass(frozen=True, kw_only=True)
class LoadedDocument:
    """
    LoadedDocument Class

    A validated document together with the domain object built from it.

    Attributes:
        source (str): Path the document was read from.
        processor (InputProcessor): The input processor that accepted it.
        value (typing.Any): The domain object.
        sigma0_max (float | None): The AMD bound stored in model documents, when present.
    """

    source: str
    processor: InputProcessor
    value: typing.Any
    sigma0_max: float | None = None


def detect_input(document: typing.Any) -> InputProcessor:
    """
    Pick the input processor for a parsed document from the keys it carries.

    Raises:
        secbif.errors.SchemaViolationError: If the document matches no known kind.
    """

    if not isinstance(document, dict):
        raise secbif.errors.SchemaViolationError(f'Expected a JSON object, got {type(document).__name__}')
    if isinstance(terms := document.get('terms'), list) and terms and isinstance(terms[0], dict):
        if 'e2' in terms[0]:
            return secbif.data.processor.input.PoincareModelInput
        return secbif.data.processor.input.PolyModelInput
    for key, processor in DOCUMENT_KINDS:
        if key in document:
            return processor
    raise secbif.errors.SchemaViolationError(
        f'Unrecognized document with keys: {", ".join(sorted(document)) or "none"}'
    )


def load_document(path: str | os.PathLike) -> LoadedDocument:
    """
    Read, classify, validate and ingest one document.

    Args:
        path (str | os.PathLike): The JSON file.

    Returns:
        LoadedDocument: The document and its domain object.
    """

    document = secbif.data.processor.input.read_document(path)
    processor = detect_input(document)
    LOGGER.info(f'Reading {processor.name} from {path}')
    sigma0_max = document.get('sigma0_max')
    return LoadedDocument(
        source=str(path),
        processor=processor,
        value=processor.load(document),
        sigma0_max=None if sigma0_max is None else float(sigma0_max),
    )


def load_models(models_dir: str) -> dict[str, LoadedDocument]:
    """
    Load all the JSON documents from the given directory.

    Args:
        models_dir (str): The path to the directory containing the documents.

    Returns:
        dict[str, LoadedDocument]: The documents by file name without extension, in name order.

    Raises:
        ValueError: If the given directory is not a valid directory.
    """

    if not os.path.isdir(models_dir):
        raise ValueError(f'Invalid models directory: {models_dir}')
    present_documents_filenames = sorted(filter(
        lambda filename: filename.endswith('.json'),
        os.listdir(models_dir),
    ))
    return {
        document_filename.removesuffix('.json'): load_document(os.path.join(models_dir, document_filename))
        for document_filename in present_documents_filenames
    }


def quad_model(loaded: LoadedDocument) -> secbif.data.hamiltonian.QuadHopfHamiltonian | None:
    """
    The quadratic form of a loaded model, None when the model is not quadratic.

    Raises:
        secbif.errors.SchemaViolationError: If the document is not a Hopf model.
    """

    value = loaded.value
    if isinstance(value, secbif.logic.octupole.OctupoleCoefficients):
        return secbif.logic.octupole.octupole_to_quad(value)
    if isinstance(value, secbif.data.hamiltonian.QuadHopfHamiltonian):
        return value
    if isinstance(value, secbif.data.hamiltonian.PolyHopfHamiltonian):
        return value.to_quad() if value.is_quadratic else None
    raise secbif.errors.SchemaViolationError(f'{loaded.source}: expected a Hopf model, got {loaded.processor.name}')


def hopf_model(loaded: LoadedDocument) -> secbif.data.hamiltonian.PolyHopfHamiltonian:
    if isinstance(loaded.value, secbif.data.hamiltonian.PolyHopfHamiltonian):
        return loaded.value
    return quad_model(loaded).to_poly()  # type: ignore


def poincare_model(loaded: LoadedDocument) -> secbif.data.hamiltonian.PoincarePolyHamiltonian:
    """
    The Poincare-variable form of a loaded model, expanded from the Hopf form when needed.
    """

    if isinstance(loaded.value, secbif.data.hamiltonian.PoincarePolyHamiltonian):
        return loaded.value
    return secbif.data.hamiltonian.PoincarePolyHamiltonian.from_hopf(hopf_model(loaded))
