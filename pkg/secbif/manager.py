"""
Manager class for secbif.

The main class that holds the pipeline configuration and runs one analysis per command,
collecting the results into reports.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
import os
import sys
import typing

import secbif.data.critical
import secbif.data.processor.input
import secbif.data.processor.output
import secbif.data.report
import secbif.data.state
import secbif.logic.flow
import secbif.logic.geometry
import secbif.logic.hopf
import secbif.logic.imports
import secbif.logic.octupole
import secbif.logic.oracle
import secbif.logic.plotting
import secbif.logic.quadratic

DEFAULT_TOLERANCE = 1e-12
DEFAULT_SIGMA0_MAX = 0.1
DEFAULT_RESOLUTION = 1e-7
SCAN_FLOOR = 1e-3
LOG_LEVEL_VARIABLE = 'SECBIF_LOG_LEVEL'
OUTPUT_FORMATS = ('csv', 'json', 'svg')


@dataclasses.dataclass(frozen=True, kw_only=True)
class CommandResult:
    """
    CommandResult Class

    What a command produced.

    Attributes:
        report (secbif.data.report.Report | None): Row sections, rendered as CSV or JSON.
        documents (dict[str, str]): Ready-made documents (JSON summaries or SVG) by file name.
        exit_code (int): Process exit code.
    """

    report: secbif.data.report.Report | None = None
    documents: dict[str, str] = dataclasses.field(default_factory=dict)
    exit_code: int = 0


@dataclasses.dataclass(kw_only=True)
class Manager:
    """
    Manager Class

    The main class that is used to configure secbif and run its analyses.

    Attributes:
        tol (float): Algebraic tolerance, used for the preliminary rotation of quadratic models.
        threads (int): Worker threads for the sweeps, 0 for one per CPU.
        out_dir (str | None): Directory the outputs are written to, stdout when None.
        output_format (str): 'csv', 'json' or 'svg'.
        logger (logging.Logger): The logger that will be used to log messages.
    """

    tol: float = DEFAULT_TOLERANCE
    threads: int = 0
    out_dir: str | None = None
    output_format: str = 'csv'
    logger: logging.Logger = dataclasses.field(
        init=False,
        default=logging.getLogger(__name__)
    )

    def __post_init__(self) -> None:
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f'Unsupported output format: {self.output_format} (expected one of {", ".join(OUTPUT_FORMATS)})')
        if not self.tol > 0:
            raise ValueError(f'Invalid tolerance: {self.tol}')
        if self.threads < 0:
            raise ValueError(f'Invalid number of threads: {self.threads}')

    @classmethod
    def init(
        cls,
        tol: float = DEFAULT_TOLERANCE,
        threads: int = 0,
        out_dir: str | None = None,
        output_format: str = 'csv',
    ) -> Manager:
        """
        Configure logging and build the manager.

        Args:
            tol (float): Algebraic tolerance.
            threads (int): Worker threads, 0 for one per CPU.
            out_dir (str | None): Output directory, created when missing. None writes to stdout.
            output_format (str): 'csv', 'json' or 'svg'.

        Returns:
            Manager: The configured manager.
        """

        logging.basicConfig(
            level=os.environ.get(LOG_LEVEL_VARIABLE, 'INFO').upper(),
            format='%(asctime)s %(levelname)s %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S',
            stream=sys.stderr,
        )
        instance = cls(tol=tol, threads=threads, out_dir=out_dir, output_format=output_format)
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
        instance.logger.info(
            f'Initialized manager: tol={tol}, threads={threads or os.cpu_count()}, '
            f'output={out_dir or "stdout"} ({output_format})'
        )
        return instance

    def _report(self, *outputs: secbif.data.processor.output.OutputProcessor) -> secbif.data.report.Report:
        report = secbif.data.report.Report()
        for output in outputs:
            report.add_output(output)
        return report

    def _sigma0_bound(
        self,
        loaded: secbif.logic.imports.LoadedDocument,
        sigma0_max: float | None,
        params_path: str | None = None,
    ) -> float:
        if sigma0_max is not None:
            return sigma0_max
        if loaded.sigma0_max is not None:
            return loaded.sigma0_max
        if params_path is not None:
            params = secbif.data.processor.input.ParamsInput.read(params_path)
            self.logger.info(f'Bounding sigma0 by the AMD of {params_path}: {params.AMD}')
            return params.AMD
        self.logger.warning(f'No sigma0 bound given for {loaded.source}, searching up to {DEFAULT_SIGMA0_MAX}')
        return DEFAULT_SIGMA0_MAX

    def coeffs(
        self,
        params_path: str | None = None,
        coefficients_path: str | None = None,
    ) -> CommandResult:
        """
        Octupole coefficients of a planetary system and the rotated quadratic model they give.

        Exactly one of the two documents must be given.

        Raises:
            ValueError: If both or neither document is given.
        """

        if (params_path is None) == (coefficients_path is None):
            raise ValueError('Give either a system parameters document or a coefficients document')
        if params_path is not None:
            params = secbif.data.processor.input.ParamsInput.read(params_path)
            coefficients = secbif.logic.octupole.octupole_coefficients(params)
        else:
            coefficients = secbif.data.processor.input.CoefficientsInput.read(coefficients_path)  # type: ignore
        unrotated = secbif.logic.octupole.octupole_to_quad(coefficients)
        rotated, angle = secbif.logic.quadratic.rotate_to_diagonal(unrotated, self.tol)
        summary = {
            'coefficients': coefficients.to_mapping(),
            'rotation_angle': angle,
            'conic': secbif.logic.quadratic.conic_class(rotated).value,
            'model': rotated.to_mapping(),
        }
        return CommandResult(documents={'coeffs.json': json.dumps(summary, indent=2) + '\n'})

    def critical(
        self,
        model_path: str,
        sigma0_max: float | None = None,
        scan: bool = False,
        resolution: float = DEFAULT_RESOLUTION,
        params_path: str | None = None,
    ) -> CommandResult:
        """
        Critical sigma0 values of a model: closed form for quadratic models, a census sweep otherwise.

        Args:
            model_path (str): Hopf model, quadratic model or coefficients document.
            sigma0_max (float | None): Upper end of the search, the document's sigma0_max when None.
            scan (bool): Use the numeric sweep even for quadratic models.
            resolution (float): Bracket width of the numeric sweep.
            params_path (str | None): System parameters whose AMD bounds the search when no other bound is given.

        Returns:
            CommandResult: Thresholds and flags.
        """

        loaded = secbif.logic.imports.load_document(model_path)
        bound = self._sigma0_bound(loaded, sigma0_max, params_path)
        report = self._report(secbif.data.processor.output.ThresholdOutput(), secbif.data.processor.output.FlagOutput())
        quadratic = secbif.logic.imports.quad_model(loaded)
        if quadratic is not None and not scan:
            if abs(quadratic.B) > self.tol * quadratic.scale:
                quadratic, _ = secbif.logic.quadratic.rotate_to_diagonal(quadratic, self.tol)
            values = secbif.logic.quadratic.bifurcation_values(quadratic, bound)
            thresholds = [
                secbif.data.critical.Threshold(kind=kind, sigma0=sigma0, residual=residual, method='analytic')
                for kind, roots, residuals in (
                    (secbif.data.critical.CriticalKind.CPI, values.cpi_sigma0, values.diagnostics['cpi_residuals']),
                    (secbif.data.critical.CriticalKind.CPII, values.cpii_sigma0, values.diagnostics['cpii_residuals']),
                )
                for sigma0, residual in zip(roots, residuals)
            ]
            flags = list(values.flags)
        else:
            if quadratic is None and not scan:
                self.logger.info('Model is not quadratic, using the numeric sweep')
            sequence = secbif.logic.geometry.bifurcation_sequence(
                secbif.logic.imports.hopf_model(loaded),
                (bound * SCAN_FLOOR, bound),
                resolution,
                threads=self.threads,
            )
            thresholds = [
                secbif.data.critical.Threshold(
                    kind=secbif.data.critical.CriticalKind.CPII if event.type in (
                        secbif.data.critical.EventType.PITCHFORK,
                        secbif.data.critical.EventType.INVERSE_PITCHFORK,
                    ) else secbif.data.critical.CriticalKind.CPI,
                    sigma0=event.sigma0,
                    residual=event.sigma0_bracket[1] - event.sigma0_bracket[0],
                    method='numeric',
                )
                for event in (*sequence.events, *sequence.unresolved)
            ]
            flags = ['unresolved-events'] if sequence.unresolved else []
        thresholds.sort(key=lambda threshold: threshold.sigma0)
        report.process([*thresholds, *flags])
        self.logger.info(f'Found {len(thresholds)} thresholds in (0, {bound}]')
        return CommandResult(report=report)

    def tangencies(self, model_path: str, sigma0: float) -> CommandResult:
        model = secbif.logic.imports.hopf_model(secbif.logic.imports.load_document(model_path))
        report = self._report(secbif.data.processor.output.CensusOutput())
        report.process([secbif.logic.geometry.census(model, sigma0)])
        return CommandResult(report=report)

    def sequence(
        self,
        model_path: str,
        sigma0_range: tuple[float, float],
        resolution: float = DEFAULT_RESOLUTION,
    ) -> CommandResult:
        """
        Bifurcation sequence of a model over a sigma0 range.

        Returns:
            CommandResult: Events (unresolved brackets included) and the labelled census of the sweep.
        """

        model = secbif.logic.imports.hopf_model(secbif.logic.imports.load_document(model_path))
        sequence = secbif.logic.geometry.bifurcation_sequence(model, sigma0_range, resolution, threads=self.threads)
        report = self._report(secbif.data.processor.output.EventOutput(), secbif.data.processor.output.CensusOutput())
        report.process([*sequence.events, *sequence.unresolved, *sequence.censuses])
        return CommandResult(report=report)

    def portrait(
        self,
        model_path: str,
        sigma0: float,
        levels: typing.Sequence[float] | None = None,
        count: int = 12,
        sigma0_max: float | None = None,
        grid: int = secbif.logic.flow.DEFAULT_PORTRAIT_GRID,
    ) -> CommandResult:
        """
        Phase portrait of a model on one sphere.

        Args:
            model_path (str): Hopf model document.
            sigma0 (float): Radius of the sphere.
            levels (typing.Sequence[float] | None): Energies to draw, an automatic ladder of count levels when None.
            count (int): Size of the automatic ladder.
            sigma0_max (float | None): AMD bound, the document's sigma0_max when None.
            grid (int): Samples per axis of the section disk.

        Returns:
            CommandResult: The SVG, and the vertex dump unless the format is svg.
        """

        loaded = secbif.logic.imports.load_document(model_path)
        model = secbif.logic.imports.hopf_model(loaded)
        bound = sigma0_max if sigma0_max is not None else loaded.sigma0_max
        if not levels:
            levels = secbif.logic.flow.level_ladder(model, sigma0, count)
        portrait = secbif.logic.flow.contour_portrait(model, sigma0, sorted(levels), grid=grid, sigma0_max=bound)
        documents = {'portrait.svg': secbif.logic.plotting.render_portrait(portrait)}
        if self.output_format == 'svg':
            return CommandResult(documents=documents)
        report = self._report(secbif.data.processor.output.VertexOutput())
        report.process([portrait])
        return CommandResult(report=report, documents=documents if self.out_dir else {})

    def section(
        self,
        model_path: str,
        T: float,  # pylint: disable=invalid-name
        start: typing.Sequence[float] | None = None,
        energy: float | None = None,
        count: int = 0,
        sigma0: float | None = None,
        params_path: str | None = None,
        tol: float = secbif.logic.flow.DEFAULT_TOLERANCE,
    ) -> CommandResult:
        """
        Surface of section Y3 = 0 from one start point or from count points on an energy level.

        Raises:
            ValueError: If neither a start point nor an energy with a positive count is given.
        """

        model = secbif.logic.imports.poincare_model(secbif.logic.imports.load_document(model_path))
        params = secbif.data.processor.input.ParamsInput.read(params_path) if params_path else None
        if start is not None:
            starts = [secbif.data.state.PoincareState.from_sequence(start)]
        elif energy is not None and count > 0:
            starts = secbif.logic.flow.initial_conditions(model, energy, count, sigma0=sigma0)
        else:
            raise ValueError('Give a start point, or an energy and a number of initial conditions')
        orbits = [
            (orbit, secbif.logic.flow.poincare_section(model, state, T, tol, params))
            for orbit, state in enumerate(starts)
        ]
        if self.output_format == 'svg':
            if sigma0 is None and start is not None:
                sigma0 = secbif.logic.hopf.poincare_to_hopf(starts[0]).sigma0
            return CommandResult(documents={
                'section.svg': secbif.logic.plotting.render_section(
                    [point for _, points in orbits for point in points],
                    sigma0,
                ),
            })
        report = self._report(secbif.data.processor.output.SectionOutput())
        report.process(orbits)
        return CommandResult(report=report)

    def integrate(
        self,
        model_path: str,
        start: typing.Sequence[float],
        T: float,  # pylint: disable=invalid-name
        tol: float = secbif.logic.flow.DEFAULT_TOLERANCE,
    ) -> CommandResult:
        """
        One trajectory: in Hopf variables for a start (sigma1, sigma2, sigma3), in Poincare variables for (X2, Y2, X3, Y3).
        """

        loaded = secbif.logic.imports.load_document(model_path)
        if len(start) == 3:
            sigma0 = math.sqrt(sum(value ** 2 for value in start))
            state = secbif.data.state.HopfState.from_vector(sigma0, start)
            trajectory: typing.Any = secbif.logic.flow.integrate_reduced(
                secbif.logic.imports.hopf_model(loaded), state, T, tol,
            )
            output: secbif.data.processor.output.OutputProcessor = secbif.data.processor.output.ReducedTrajectoryOutput()
        elif len(start) == 4:
            trajectory = secbif.logic.flow.integrate_poincare(
                secbif.logic.imports.poincare_model(loaded),
                secbif.data.state.PoincareState.from_sequence(start),
                T,
                tol,
            )
            output = secbif.data.processor.output.PoincareTrajectoryOutput()
        else:
            raise ValueError(f'A start point has 3 Hopf or 4 Poincare coordinates, got {len(start)}')
        self.logger.info(f'Relative energy drift over T={T}: {trajectory.energy_drift}')
        report = self._report(output)
        report.process([trajectory])
        return CommandResult(report=report)

    def domain(
        self,
        model_path: str,
        amd: float | None = None,
        samples: int = secbif.logic.geometry.DEFAULT_DOMAIN_SAMPLES,
        params_path: str | None = None,
    ) -> CommandResult:
        loaded = secbif.logic.imports.load_document(model_path)
        limits = secbif.logic.geometry.domain_limits(
            secbif.logic.imports.hopf_model(loaded),
            self._sigma0_bound(loaded, amd, params_path),
            samples,
            self.threads,
        )
        self.logger.info(f'Permissible domain: E_min={limits.E_min}, E_23={limits.E_23}')
        if self.output_format == 'svg':
            return CommandResult(documents={'domain.svg': secbif.logic.plotting.render_domain(limits)})
        report = self._report(secbif.data.processor.output.DomainOutput())
        report.process([limits])
        return CommandResult(report=report)

    def oracle(
        self,
        model_path: str,
        sigma0_grid: typing.Sequence[float],
        n: int = secbif.logic.oracle.DEFAULT_ORACLE_SAMPLES,
    ) -> CommandResult:
        """
        Cross-check of the critical-point search against the brute-force scans.

        Returns:
            CommandResult: The comparison table and the discrepancies, exit code 1 when any comparison disagrees.
        """

        model = secbif.logic.imports.hopf_model(secbif.logic.imports.load_document(model_path))
        comparisons = secbif.logic.oracle.self_check(model, list(sigma0_grid), n)
        report = self._report(secbif.data.processor.output.OracleOutput(), secbif.data.processor.output.DiscrepancyOutput())
        report.process(comparisons)
        failures = len(report.outputs['discrepancies'].rows)
        self.logger.info(f'Oracle: {len(comparisons) - failures} of {len(comparisons)} sigma0 values agree')
        return CommandResult(report=report, exit_code=1 if failures else 0)

    def emit(self, result: CommandResult, stem: str, stream: typing.TextIO | None = None) -> None:
        """
        Write a command result to the output directory, or to the stream when there is none.

        Args:
            result (CommandResult): What the command produced.
            stem (str): Prefix of the report file names.
            stream (typing.TextIO | None): Where stdout output goes, sys.stdout when None.
        """

        stream = stream or sys.stdout
        row_format = 'json' if self.output_format == 'json' else 'csv'
        sections = result.report.render(row_format) if result.report else {}
        if self.out_dir:
            files = {
                **{f'{stem}-{name}.{row_format}': document for name, document in sections.items()},
                **result.documents,
            }
            for filename, document in files.items():
                path = os.path.join(self.out_dir, filename)
                with open(path, 'w', encoding='utf-8', newline='') as output_file:
                    output_file.write(document)
                self.logger.info(f'Wrote {path}')
            return
        for document in result.documents.values():
            stream.write(document)
        if not result.report:
            return
        if row_format == 'json':
            outputs = result.report.outputs
            stream.write(json.dumps(
                next(iter(outputs.values())).rows if len(outputs) == 1
                else {name: output.rows for name, output in outputs.items()},
                indent=2,
            ) + '\n')
        else:
            stream.write('\n'.join(sections.values()))
