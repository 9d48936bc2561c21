"""
Base class for Schema classes.
"""

import dataclasses
import logging
import re
import typing

DECORATED_FIELDS_REGEX = re.compile(r'^_[a-z][a-z0-9_]*_$', re.IGNORECASE)


@dataclasses.dataclass
class Schema:
    """
    Schema base Class

    Provides a common interface for document and row schemas. Fields are declared as
    annotations named `_field_`, the surrounding underscores mark them for validation.

    Attributes:
        logger (logging.Logger): The logger to use for logging messages.
        decorated_fields (dict[str, type]): The fields to validate, with the leading and trailing underscores.
        fields (dict[str, type]): The fields to validate, without the leading and trailing underscores.
    """

    logger: typing.ClassVar[logging.Logger] = logging.getLogger(__name__)
    decorated_fields: typing.ClassVar[dict[str, type]] = {}
    fields: typing.ClassVar[dict[str, type]] = {}

    @classmethod
    def find_decorated_fields(cls) -> None:
        """
        Collect the decorated fields of the schema.

        Raises:
            ValueError: If no decorated fields are found.
        """

        annotations = cls.__dict__.get('__annotations__', {})
        cls.decorated_fields = {
            field: annotations[field]
            for field in [*filter(
                DECORATED_FIELDS_REGEX.match,
                annotations.keys(),
            )]
        }
        if not cls.decorated_fields:
            raise ValueError(f'No fields to validate found in {cls.__name__}')
        cls.fields = {
            field[1:-1]: field_type
            for field, field_type in cls.decorated_fields.items()
        }
        cls.logger = logging.getLogger(cls.__name__)
        cls.logger.debug('Found schema fields: %s', ', '.join(cls.fields))

    @classmethod
    def schema_fields(cls) -> dict[str, type]:
        if 'fields' not in cls.__dict__:
            cls.find_decorated_fields()
        return cls.fields
