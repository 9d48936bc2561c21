"""
Input processors: JSON documents on disk turned into domain objects.
"""

import dataclasses
import json
import logging
import os
import typing

import secbif.data.hamiltonian
import secbif.data.processor.base
import secbif.data.schema.input
import secbif.data.state
import secbif.errors
import secbif.logic.octupole

LOGGER = logging.getLogger(__name__)


def parse_document(text: str, source: str = '<string>') -> typing.Any:
    """
    Parse a JSON document.

    Args:
        text (str): The document.
        source (str): Where the text came from, for diagnostics.

    Returns:
        typing.Any: The parsed document.

    Raises:
        secbif.errors.SchemaViolationError: If the text is not valid JSON, with line and column.
    """

    try:
        return json.loads(text)
    except json.JSONDecodeError as malformed_document:
        raise secbif.errors.SchemaViolationError(
            f'{source}: malformed JSON at line {malformed_document.lineno}, '
            f'column {malformed_document.colno}: {malformed_document.msg}'
        ) from malformed_document


def read_document(path: str | os.PathLike) -> typing.Any:
    try:
        with open(path, encoding='utf-8') as document_file:
            text = document_file.read()
    except OSError as unreadable_file:
        raise secbif.errors.SchemaViolationError(f'Cannot read {path}: {unreadable_file}') from unreadable_file
    return parse_document(text, str(path))


@dataclasses.dataclass
class InputProcessor(secbif.data.processor.base.Processor):
    """
    InputProcessor Class

    Provides a common interface for reading one kind of document.
    """

    schema: typing.ClassVar[type[secbif.data.schema.input.InputSchema]]

    @staticmethod
    def ingest(document: dict) -> typing.Any:
        """
        Build the domain object from a validated document.
        Must be implemented by every concrete input processor.

        Args:
            document (dict): The document, restricted to the schema fields.

        Raises:
            NotImplementedError: If not implemented.
        """

        raise NotImplementedError(f'{__name__}.ingest() must be implemented!')

    @classmethod
    def load(cls, document: typing.Any) -> typing.Any:
        """
        Validate a parsed document and ingest it.

        Raises:
            secbif.errors.SchemaViolationError: If the document breaks the schema or the domain checks.
        """

        cls.schema.validate_document(document)
        fields = {
            field: value
            for field, value in cls.schema.to_dict(document).items()
            if value is not None
        }
        try:
            loaded = cls.ingest(fields)
        except secbif.errors.SchemaViolationError:
            raise
        except ValueError as invalid_document:
            raise secbif.errors.SchemaViolationError(f'Invalid {cls.name}: {invalid_document}') from invalid_document
        LOGGER.debug(f'Loaded {cls.name}: {loaded}')
        return loaded

    @classmethod
    def read(cls, path: str | os.PathLike) -> typing.Any:
        LOGGER.info(f'Reading {cls.name} from {path}')
        return cls.load(read_document(path))


@dataclasses.dataclass
class ParamsInput(InputProcessor):
    name = 'system parameters'
    schema = secbif.data.schema.input.ParamsSchema

    @staticmethod
    def ingest(document: dict) -> secbif.data.state.SystemParams:
        return secbif.data.state.SystemParams.from_mapping(document)


@dataclasses.dataclass
class QuadModelInput(InputProcessor):
    name = 'quadratic model'
    schema = secbif.data.schema.input.QuadModelSchema

    @staticmethod
    def ingest(document: dict) -> secbif.data.hamiltonian.QuadHopfHamiltonian:
        return secbif.data.hamiltonian.QuadHopfHamiltonian.from_mapping(document)


@dataclasses.dataclass
class PolyModelInput(InputProcessor):
    name = 'polynomial model'
    schema = secbif.data.schema.input.PolyModelSchema

    @staticmethod
    def ingest(document: dict) -> secbif.data.hamiltonian.PolyHopfHamiltonian:
        return secbif.data.hamiltonian.PolyHopfHamiltonian.from_mapping(document)


@dataclasses.dataclass
class PoincareModelInput(InputProcessor):
    name = 'Poincare model'
    schema = secbif.data.schema.input.PoincareModelSchema

    @staticmethod
    def ingest(document: dict) -> secbif.data.hamiltonian.PoincarePolyHamiltonian:
        return secbif.data.hamiltonian.PoincarePolyHamiltonian.from_mapping(document)


@dataclasses.dataclass
class CoefficientsInput(InputProcessor):
    name = 'octupole coefficients'
    schema = secbif.data.schema.input.CoefficientsSchema

    @staticmethod
    def ingest(document: dict) -> secbif.logic.octupole.OctupoleCoefficients:
        return secbif.logic.octupole.OctupoleCoefficients.from_mapping(document)
