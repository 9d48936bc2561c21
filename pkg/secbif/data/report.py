"""
Report class definition.

A report connects the input processor that reads a model document with any number of
output processors, so that every record produced by the analysis lands in the sections
that accept it, in a form consistent with their row schemas.
"""

import dataclasses
import logging
import os
import typing

import secbif.data.processor.input
import secbif.data.processor.output


@dataclasses.dataclass
class Report:
    """
    Report Class

    A class that connects the input processor with any number of output processors.

    Attributes:
        input (type[secbif.data.processor.input.InputProcessor] | None): The processor used to read the input document.
        outputs (dict[str, secbif.data.processor.output.OutputProcessor]): The report sections, by name.
        logger (logging.Logger): The logger that will be used to log messages.
    """

    input: type[secbif.data.processor.input.InputProcessor] | None = dataclasses.field(default=None)
    outputs: dict[str, secbif.data.processor.output.OutputProcessor] = dataclasses.field(default_factory=dict)
    logger: logging.Logger = dataclasses.field(
        init=False,
        default=logging.getLogger(__name__)
    )

    def ingest(self, path: str | os.PathLike) -> typing.Any:
        """
        Read the input document.

        Raises:
            ValueError: If no input processor is set.
        """

        if self.input is None:
            raise ValueError('Report not initialized. Set an input before ingesting documents.')
        return self.input.read(path)

    def process(self, records: typing.Iterable[typing.Any]) -> int:
        """
        Route records to every section whose filter accepts them.

        Args:
            records (typing.Iterable[typing.Any]): Analysis results, in output order.

        Returns:
            int: How many records no section accepted.
        """

        dropped = 0
        for record in records:
            accepted = False
            for output in self.outputs.values():
                if output.filter(record):
                    output.send(record)
                    accepted = True
            if not accepted:
                dropped += 1
                self.logger.debug(f'No section accepts {type(record).__name__}')
        return dropped

    def set_input(self, report_input: type[secbif.data.processor.input.InputProcessor]) -> None:
        if self.input:
            self.logger.warning(
                'Input already defined. Overwriting with new input.'
            )
        self.input = report_input

    def add_output(self, report_output: secbif.data.processor.output.OutputProcessor) -> None:
        """
        Add a section to the report.

        Args:
            report_output (secbif.data.processor.output.OutputProcessor): The section to be added, keyed by its name.
        """

        if report_output.name in self.outputs:
            self.logger.warning(
                f'Section {report_output.name} already defined. Overwriting with new section.'
            )
        self.outputs[report_output.name] = report_output

    def remove_output(self, section_name: str) -> None:
        """
        Remove a section from the report.

        Args:
            section_name (str): The name of the section to be removed.
        """

        if section_name not in self.outputs:
            self.logger.warning(f'No section found with name: {section_name}')
            return
        del self.outputs[section_name]
        self.logger.info(f'Removed section: {section_name}')
        return

    def render(self, output_format: str) -> dict[str, str]:
        """
        Every section as a document, in the order the sections were added.

        Args:
            output_format (str): 'csv' or 'json'.

        Returns:
            dict[str, str]: Documents by section name.
        """

        return {
            name: output.render(output_format)
            for name, output in self.outputs.items()
        }
