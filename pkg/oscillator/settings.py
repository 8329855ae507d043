"""
Configuration loading: an INI file validated into an ExperimentConfig.

Output directory precedence is --out, then ``[run] output_dir``, then the
``OSCILLATOR_OUTPUT_DIR`` environment variable (``.env`` is honoured), then
``reports``.
"""
import configparser
import os
from pathlib import Path
from typing import Annotated, Any, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field

from .schemas import (
    DEFAULT_TRUNCATION,
    ExperimentConfig,
    FigureSettings,
    FractionalIndex,
    IntegerIndex,
    OscillatorParams,
    QuadratureSpec,
)

load_dotenv()

ENV_OUTPUT_DIR = "OSCILLATOR_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = Path("reports")
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "configs" / "default.ini"


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ConesSection(_Section):
    integers: Annotated[list[int], BeforeValidator(_split_list)] = Field(
        default_factory=lambda: list(range(1, 9))
    )
    fractional: Annotated[list[float], BeforeValidator(_split_list)] = Field(
        default_factory=lambda: [0.5, 1.7, 2.5]
    )


class BargmannSection(_Section):
    truncation: int = Field(default=DEFAULT_TRUNCATION, ge=1)


class QuadratureSection(_Section):
    radial_nodes: Optional[int] = Field(default=None, ge=1)
    angular_nodes: Optional[int] = Field(default=None, ge=1)


class FiguresSection(_Section):
    sector_order: int = Field(default=4, ge=1)
    orbit_order: int = Field(default=3, ge=1)
    spectrum_coefficients: Annotated[list[float], BeforeValidator(_split_list)] = Field(
        default_factory=lambda: [0.0, 0.0, 1.0]
    )


class RunSection(_Section):
    output_dir: Optional[Path] = None
    seed: int = 20240101


class ConfigFile(_Section):
    """Raw INI sections; every section and key is optional but none may be unknown."""
    oscillator: OscillatorParams = Field(default_factory=OscillatorParams)
    cones: ConesSection = Field(default_factory=ConesSection)
    bargmann: BargmannSection = Field(default_factory=BargmannSection)
    quadrature: QuadratureSection = Field(default_factory=QuadratureSection)
    tolerances: dict[str, float] = Field(default_factory=dict)
    figures: FiguresSection = Field(default_factory=FiguresSection)
    run: RunSection = Field(default_factory=RunSection)


def _read_sections(text: str) -> dict[str, dict[str, str]]:
    # No DEFAULT inheritance: a [DEFAULT] section is just an unknown section.
    parser = configparser.ConfigParser(interpolation=None, default_section="__inherited__")
    parser.read_string(text)
    return {name: dict(parser[name]) for name in parser.sections()}


def _resolve_output_dir(cli_value: Optional[Union[str, Path]], file_value: Optional[Path]) -> Path:
    if cli_value:
        return Path(cli_value)
    if file_value:
        return file_value
    env_value = os.environ.get(ENV_OUTPUT_DIR)
    if env_value:
        return Path(env_value)
    return DEFAULT_OUTPUT_DIR


def build_config(
    raw: ConfigFile,
    output_dir: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
) -> ExperimentConfig:
    truncation = raw.bargmann.truncation
    quadrature = None
    if raw.quadrature.radial_nodes is not None or raw.quadrature.angular_nodes is not None:
        derived = QuadratureSpec.for_degree(truncation)
        quadrature = QuadratureSpec(
            radial_nodes=raw.quadrature.radial_nodes or derived.radial_nodes,
            angular_nodes=raw.quadrature.angular_nodes or derived.angular_nodes,
        )

    cone_indices = [IntegerIndex(n=n) for n in raw.cones.integers]
    cone_indices += [FractionalIndex(gamma=gamma) for gamma in raw.cones.fractional]

    return ExperimentConfig(
        oscillator=raw.oscillator,
        cone_indices=cone_indices,
        truncation=truncation,
        quadrature=quadrature,
        tolerances=raw.tolerances,
        figures=FigureSettings(**raw.figures.model_dump()),
        output_dir=_resolve_output_dir(output_dir, raw.run.output_dir),
        seed=raw.run.seed if seed is None else seed,
    )


def parse_config_text(
    text: str,
    output_dir: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
) -> ExperimentConfig:
    raw = ConfigFile.model_validate(_read_sections(text))
    return build_config(raw, output_dir=output_dir, seed=seed)


def load_config(
    path: Optional[Union[str, Path]] = None,
    output_dir: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
) -> ExperimentConfig:
    """
    Load and validate a configuration file.

    Without a path the bundled ``configs/default.ini`` is used if present,
    otherwise the built-in defaults. Raises OSError for unreadable files and
    pydantic.ValidationError or configparser.Error for invalid content.
    """
    if path is None:
        if not DEFAULT_CONFIG_PATH.exists():
            return build_config(ConfigFile(), output_dir=output_dir, seed=seed)
        path = DEFAULT_CONFIG_PATH
    text = Path(path).read_text(encoding="utf-8")
    return parse_config_text(text, output_dir=output_dir, seed=seed)
