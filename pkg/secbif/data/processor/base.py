"""
Base class for Processor classes.
"""

import dataclasses
import logging
import typing

import secbif.data.schema.base


@dataclasses.dataclass
class Processor:
    """
    Processor base Class

    Provides a common interface for Processor classes to read documents from files or write rows to reports.

    Attributes:
        name (str): What the processor reads or writes, used in log messages and as the report section name.
        schema (secbif.data.schema.base.Schema): The schema documents or rows are validated against.
        logger (logging.Logger): The logger to use for logging messages.
    """

    name: typing.ClassVar[str] = ''
    schema: typing.ClassVar[type[secbif.data.schema.base.Schema]]
    logger: logging.Logger = dataclasses.field(
        init=False,
        default=logging.getLogger(__name__)
    )
