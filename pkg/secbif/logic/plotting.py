"""
SVG rendering of portraits, surfaces of section and the permissible domain.

Figures are built on matplotlib's object API with a fixed hash salt and no date metadata,
so identical inputs give byte-identical SVG.
"""

from __future__ import annotations

import io
import logging
import math
import typing

import matplotlib
import matplotlib.figure
import numpy as np

import secbif.data.critical
import secbif.logic.flow

SVG_PARAMS = {
    'svg.hashsalt': 'secbif',
    'svg.fonttype': 'none',
    'font.size': 9,
    'figure.figsize': (5.0, 5.0),
}
STABILITY_COLORS = {
    secbif.data.critical.Stability.STABLE: 'tab:red',
    secbif.data.critical.Stability.UNSTABLE: 'tab:blue',
    secbif.data.critical.Stability.MARGINAL: 'tab:gray',
}

LOGGER = logging.getLogger(__name__)


def _to_svg(figure: matplotlib.figure.Figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context(SVG_PARAMS):
        figure.savefig(buffer, format='svg', metadata={'Date': None}, bbox_inches='tight')
    return buffer.getvalue()


def _disk_axes(figure: matplotlib.figure.Figure, sigma0: float) -> typing.Any:
    axes = figure.add_subplot()
    rim = math.sqrt(2 * sigma0)
    angle = np.linspace(0, 2 * math.pi, 361)
    axes.plot(rim * np.cos(angle), rim * np.sin(angle), color='black', linewidth=0.8)
    axes.set_aspect('equal')
    axes.set_xlabel('$X_2$')
    axes.set_ylabel('$Y_2$')
    axes.set_title(f'$\\sigma_0 = {sigma0!r}$')
    return axes


def render_portrait(portrait: secbif.logic.flow.Portrait) -> str:
    """
    Level curves colored by energy, with critical-point markers colored by stability.

    Returns:
        str: The SVG document.
    """

    with matplotlib.rc_context(SVG_PARAMS):
        figure = matplotlib.figure.Figure()
        axes = _disk_axes(figure, portrait.sigma0)
        colormap = matplotlib.colormaps['viridis']
        count = max(len(portrait.levels) - 1, 1)
        for index, level in enumerate(portrait.levels):
            color = colormap(index / count)
            curves = [curve for curve in portrait.curves if curve.level == level]
            for position, curve in enumerate(curves):
                axes.plot(
                    curve.points[:, 0], curve.points[:, 1],
                    color=color, linewidth=0.7, marker='.' if len(curve.points) == 1 else None,
                    label=f'$\\mathcal{{E}} = {level:.3e}$' if position == 0 else None,
                )
        for marker in portrait.markers:
            axes.plot(marker.X2, marker.Y2, 'o', color=STABILITY_COLORS[marker.stability], markersize=4)
            axes.annotate(marker.label, (marker.X2, marker.Y2), textcoords='offset points', xytext=(4, 4))
        if portrait.levels:
            axes.legend(loc='upper left', bbox_to_anchor=(1.02, 1.0), frameon=False)
    LOGGER.debug(f'Rendered portrait with {len(portrait.curves)} curves')
    return _to_svg(figure)


def render_section(points: typing.Sequence[secbif.logic.flow.SectionPoint], sigma0: float | None = None) -> str:
    with matplotlib.rc_context(SVG_PARAMS):
        figure = matplotlib.figure.Figure()
        if sigma0 is not None:
            axes = _disk_axes(figure, sigma0)
        else:
            axes = figure.add_subplot()
            axes.set_xlabel('$X_2$')
            axes.set_ylabel('$Y_2$')
        axes.plot([point.X2 for point in points], [point.Y2 for point in points], ',', color='black')
    return _to_svg(figure)


def render_domain(limits: secbif.data.critical.DomainLimits) -> str:
    """
    The permissible domain in the (energy, sigma0) plane, bounded by E_L and E_R.
    """

    with matplotlib.rc_context(SVG_PARAMS):
        figure = matplotlib.figure.Figure(figsize=(6.0, 4.0))
        axes = figure.add_subplot()
        axes.fill_betweenx(limits.sigma0_grid, limits.E_L, limits.E_R, color='lightgray')
        axes.plot(limits.E_L, limits.sigma0_grid, color='tab:blue', label='$E_L$')
        axes.plot(limits.E_R, limits.sigma0_grid, color='tab:red', label='$E_R$')
        axes.axhline(limits.sigma0_AMD, color='black', linestyle='--', linewidth=0.8)
        axes.set_xlabel('$\\mathcal{E}$')
        axes.set_ylabel('$\\sigma_0$')
        axes.legend(frameon=False)
    return _to_svg(figure)
