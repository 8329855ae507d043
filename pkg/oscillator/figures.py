"""
Static SVG figures: the unit-circle trajectory with a ζ-orbit, the sector that
covers a cone, and the energy spectrum of a state.

Output is byte-stable: fixed figure size and dpi, a fixed SVG hash salt,
text kept as text, and no date metadata.
"""
import math
from pathlib import Path
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Ellipse, Wedge  # noqa: E402

from . import bargmann_space as bargmann  # noqa: E402
from .logging_utils import get_logger  # noqa: E402
from .phase_space import integrate_flow  # noqa: E402
from .schemas import TWO_PI, CyclicGroup, ExperimentConfig, HolomorphicState, OscillatorParams, PhasePoint  # noqa: E402
from .storage import ensure_output_dir  # noqa: E402


logger = get_logger("oscillator.figures")

FIGURE_NAMES = ("trajectory", "sector", "spectrum")

SVG_STYLE = {
    "svg.hashsalt": "oscillator",
    "svg.fonttype": "none",
    "figure.figsize": (6.0, 6.0),
    "figure.dpi": 72,
    "figure.facecolor": "none",
    "axes.facecolor": "none",
    "savefig.facecolor": "none",
    "savefig.edgecolor": "none",
    "font.size": 12,
}


def trajectory_figure(params: OscillatorParams, orbit_order: int, steps: int = 256) -> Figure:
    """RK4 orbit of z(0) = 1 over one period, with the ℤₙ orbit of the start point."""
    trajectory = integrate_flow(PhasePoint(z=1.0), TWO_PI / params.omega, steps, params)
    zs = np.array([point.z for _, point in trajectory.samples])
    orbit = np.array(CyclicGroup(n=orbit_order).orbit(1.0))

    fig, ax = plt.subplots()
    line, = ax.plot(zs.real, zs.imag, color="tab:blue", label="z(τ)")
    line.set_gid("trajectory")
    markers, = ax.plot(orbit.real, orbit.imag, "o", color="tab:red", label=f"ℤ{orbit_order} orbit")
    markers.set_gid("zeta-orbit")
    ax.set_aspect("equal")
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.legend(loc="upper right")
    return fig


def sector_figure(n: int) -> Figure:
    """The sector of opening 2π/n in the plane next to the cone it rolls up into."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    fig, (plane, cone) = plt.subplots(1, 2, figsize=(8.0, 4.0))

    opening = 360.0 / n
    wedge = Wedge((0.0, 0.0), 1.0, 0.0, opening, facecolor="lightgray", edgecolor="black")
    wedge.set_gid("cone-sector")
    plane.add_patch(wedge)
    plane.plot([0.0], [0.0], "ko")
    label_angle = math.radians(opening / 2.0)
    plane.annotate(f"2π/{n}", (0.35 * math.cos(label_angle), 0.35 * math.sin(label_angle)), ha="center")
    plane.set_aspect("equal")
    plane.set_xlim(-1.1, 1.1)
    plane.set_ylim(-1.1, 1.1)
    plane.set_axis_off()

    # a cone of slant 1 has base radius 1/n
    radius = 1.0 / n
    cone.plot([-radius, 0.0, radius], [0.0, 1.0, 0.0], color="black")
    rim = Ellipse((0.0, 0.0), 2.0 * radius, 0.5 * radius, facecolor="none", edgecolor="black")
    rim.set_gid("cone-rim")
    cone.add_patch(rim)
    cone.plot([0.0], [1.0], "ko")
    cone.set_aspect("equal")
    cone.set_xlim(-1.1, 1.1)
    cone.set_ylim(-0.5, 1.2)
    cone.set_axis_off()
    return fig


def spectrum_stems(state: HolomorphicState, params: OscillatorParams) -> list[tuple[float, float]]:
    """(energy, probability) for every occupied level."""
    return [
        (line.energy, line.probability)
        for line in bargmann.energy_probabilities(state, params)
        if line.probability > 0
    ]


def spectrum_figure(state: HolomorphicState, params: OscillatorParams) -> Figure:
    stems = spectrum_stems(state, params)
    energies = [energy for energy, _ in stems]
    probabilities = [p for _, p in stems]

    fig, ax = plt.subplots()
    container = ax.stem(energies, probabilities)
    container.markerline.set_gid("spectrum-markers")
    ax.set_xlabel("E / ħω" if params.quantum == 1.0 else "E")
    ax.set_ylabel("probability")
    ax.set_ylim(0.0, 1.05)
    return fig


def _save(fig: Figure, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def render_figures(
    config: ExperimentConfig,
    which: Optional[Iterable[str]] = None,
    output_dir: Optional[Path] = None,
) -> list[Path]:
    """Write the selected figures as SVG and return their paths in request order."""
    selected = list(which) if which is not None else list(FIGURE_NAMES)
    unknown = [name for name in selected if name not in FIGURE_NAMES]
    if unknown:
        raise ValueError(f"unknown figures: {', '.join(unknown)}; choose from {', '.join(FIGURE_NAMES)}")

    directory = ensure_output_dir(output_dir or config.output_dir)
    params = config.oscillator
    settings = config.figures
    paths = []
    with plt.rc_context(SVG_STYLE):
        for name in selected:
            if name == "trajectory":
                fig = trajectory_figure(params, settings.orbit_order)
                path = directory / "trajectory.svg"
            elif name == "sector":
                fig = sector_figure(settings.sector_order)
                path = directory / f"sector_n{settings.sector_order}.svg"
            else:
                state = bargmann.normalize(
                    bargmann.state_from_coefficients(settings.spectrum_coefficients, config.truncation)
                )
                fig = spectrum_figure(state, params)
                path = directory / "spectrum.svg"
            paths.append(_save(fig, path))
            logger.info("Figure written", extra={"figure": name, "path": str(path)})
    return paths
