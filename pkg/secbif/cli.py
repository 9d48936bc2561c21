"""
Command-line front-end of secbif.

Data goes to stdout or to the output directory, diagnostics go to stderr. Errors map to
the exit code carried by their class, usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import logging
import sys
import typing

import secbif.errors
import secbif.logic.flow
import secbif.logic.geometry
import secbif.logic.oracle
import secbif.manager

LOGGER = logging.getLogger(__name__)


def _global_flags() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument('--tol', type=float, default=secbif.manager.DEFAULT_TOLERANCE, help='algebraic tolerance')
    flags.add_argument('--threads', type=int, default=0, help='worker threads, 0 for one per CPU')
    flags.add_argument('--out', default=None, help='output directory, stdout when omitted')
    flags.add_argument('--format', dest='output_format', choices=secbif.manager.OUTPUT_FORMATS, default='csv')
    return flags


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='secbif', description='Bifurcation analysis of integrable secular models')
    commands = parser.add_subparsers(dest='command', required=True)
    flags = _global_flags()

    coeffs = commands.add_parser('coeffs', parents=[flags], help='octupole coefficients and rotated quadratic model')
    coeffs.add_argument('params', nargs='?', default=None, help='system parameters document')
    coeffs.add_argument('--from-coeffs', default=None, help='coefficients document used instead of the parameters')

    critical = commands.add_parser('critical', parents=[flags], help='critical sigma0 thresholds')
    critical.add_argument('model')
    critical.add_argument('--sigma0-max', type=float, default=None)
    critical.add_argument('--scan', action='store_true', help='numeric sweep instead of the closed form')
    critical.add_argument('--resolution', type=float, default=secbif.manager.DEFAULT_RESOLUTION)
    critical.add_argument('--params', default=None, help='system parameters whose AMD bounds the search')

    tangencies = commands.add_parser('tangencies', parents=[flags], help='census of critical points at one sigma0')
    tangencies.add_argument('model')
    tangencies.add_argument('--sigma0', type=float, required=True)

    sequence = commands.add_parser('sequence', parents=[flags], help='bifurcation sequence over a sigma0 range')
    sequence.add_argument('model')
    sequence.add_argument('--range', dest='sigma0_range', type=float, nargs=2, required=True, metavar=('LOW', 'HIGH'))
    sequence.add_argument('--resolution', type=float, default=secbif.manager.DEFAULT_RESOLUTION)

    portrait = commands.add_parser('portrait', parents=[flags], help='phase portrait on one sphere')
    portrait.add_argument('model')
    portrait.add_argument('--sigma0', type=float, required=True)
    portrait.add_argument('--levels', type=float, nargs='+', default=None)
    portrait.add_argument('--count', type=int, default=12, help='size of the automatic level ladder')
    portrait.add_argument('--amd', type=float, default=None, help='largest feasible sigma0')
    portrait.add_argument('--grid', type=int, default=secbif.logic.flow.DEFAULT_PORTRAIT_GRID)

    section = commands.add_parser('section', parents=[flags], help='surface of section Y3 = 0')
    section.add_argument('model')
    section.add_argument('--T', dest='T', type=float, required=True, help='integration time per orbit')
    starts = section.add_mutually_exclusive_group(required=True)
    starts.add_argument('--x0', type=float, nargs=4, metavar=('X2', 'Y2', 'X3', 'Y3'))
    starts.add_argument('--auto', type=int, metavar='N', help='number of initial conditions on the energy level')
    section.add_argument('--energy', type=float, default=None)
    section.add_argument('--sigma0', type=float, default=None, help='draw the initial conditions across this sphere')
    section.add_argument('--params', default=None, help='system parameters bounding the phase space')
    section.add_argument('--ode-tol', type=float, default=secbif.logic.flow.DEFAULT_TOLERANCE)

    integrate = commands.add_parser('integrate', parents=[flags], help='one trajectory')
    integrate.add_argument('model')
    integrate.add_argument('--x0', type=float, nargs='+', required=True, help='sigma1 sigma2 sigma3, or X2 Y2 X3 Y3')
    integrate.add_argument('--T', dest='T', type=float, required=True)
    integrate.add_argument('--ode-tol', type=float, default=secbif.logic.flow.DEFAULT_TOLERANCE)

    oracle = commands.add_parser('oracle', parents=[flags], help='brute-force cross-check')
    oracle.add_argument('model')
    oracle.add_argument('--sigma0', type=float, nargs='+', required=True)
    oracle.add_argument('-n', type=int, default=secbif.logic.oracle.DEFAULT_ORACLE_SAMPLES)

    domain = commands.add_parser('domain', parents=[flags], help='permissible energy domain')
    domain.add_argument('model')
    domain.add_argument('--amd', type=float, default=None)
    domain.add_argument('--samples', type=int, default=secbif.logic.geometry.DEFAULT_DOMAIN_SAMPLES)
    domain.add_argument('--params', default=None, help='system parameters whose AMD bounds the domain')
    return parser


def run(manager: secbif.manager.Manager, arguments: argparse.Namespace) -> secbif.manager.CommandResult:
    match arguments.command:
        case 'coeffs':
            return manager.coeffs(arguments.params, arguments.from_coeffs)
        case 'critical':
            return manager.critical(
                arguments.model, arguments.sigma0_max, arguments.scan, arguments.resolution, arguments.params,
            )
        case 'tangencies':
            return manager.tangencies(arguments.model, arguments.sigma0)
        case 'sequence':
            return manager.sequence(arguments.model, tuple(arguments.sigma0_range), arguments.resolution)
        case 'portrait':
            return manager.portrait(
                arguments.model,
                arguments.sigma0,
                levels=arguments.levels,
                count=arguments.count,
                sigma0_max=arguments.amd,
                grid=arguments.grid,
            )
        case 'section':
            return manager.section(
                arguments.model,
                arguments.T,
                start=arguments.x0,
                energy=arguments.energy,
                count=arguments.auto or 0,
                sigma0=arguments.sigma0,
                params_path=arguments.params,
                tol=arguments.ode_tol,
            )
        case 'integrate':
            return manager.integrate(arguments.model, arguments.x0, arguments.T, arguments.ode_tol)
        case 'oracle':
            return manager.oracle(arguments.model, arguments.sigma0, arguments.n)
        case 'domain':
            return manager.domain(arguments.model, arguments.amd, arguments.samples, arguments.params)
    raise ValueError(f'Unknown command: {arguments.command}')


def main(argv: typing.Sequence[str] | None = None, stdout: typing.TextIO | None = None) -> int:
    """
    Run one secbif command.

    Args:
        argv (typing.Sequence[str] | None): Arguments without the program name, sys.argv when None.
        stdout (typing.TextIO | None): Where data goes when no output directory is given.

    Returns:
        int: The process exit code.
    """

    try:
        arguments = build_parser().parse_args(argv)
    except SystemExit as usage:
        return usage.code if isinstance(usage.code, int) else 2
    try:
        manager = secbif.manager.Manager.init(
            tol=arguments.tol,
            threads=arguments.threads,
            out_dir=arguments.out,
            output_format=arguments.output_format,
        )
        result = run(manager, arguments)
        manager.emit(result, arguments.command, stdout)
    except secbif.errors.SecbifError as failed_command:
        LOGGER.error(f'{type(failed_command).__name__}: {failed_command}')
        return failed_command.exit_code
    except ValueError as invalid_input:
        LOGGER.error(f'{invalid_input}')
        return 1
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
