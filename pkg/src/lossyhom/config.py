"""INI run configuration.

Path resolution: explicit path, then the LOSSYHOM_CONFIG environment variable, then built-in
defaults. Every problem is reported as ConfigError naming the ``section.key`` at fault.
"""
from __future__ import annotations

import configparser
import logging
import math
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable, TypeVar

from lossyhom.core.beam_splitter import BeamSplitter
from lossyhom.errors import ConfigError
from lossyhom.experiment.counts import DETECTORS, DetectorConfig
from lossyhom.experiment.figures import FIGURE_THETAS, SWEEP_THETAS
from lossyhom.experiment.source import DEFAULT_SIGMA_THZ, PRESETS, SourceSetting
from lossyhom.material import Branch, HysteresisModel, SplitterSource, load_calibration
from lossyhom.material.thin_film import FilmStack

logger = logging.getLogger(__name__)

CONFIG_ENV = "LOSSYHOM_CONFIG"
DEFAULT_MATERIAL_THETAS = tuple(float(theta) for theta in range(25, 100, 5))

_MODEL_KEYS = tuple(f.name for f in fields(HysteresisModel))
_KNOWN_KEYS: dict[str, tuple[str, ...]] = {
    "material": (*_MODEL_KEYS, "calibration", "thetas", "branches"),
    "source": ("preset", "delta_thz", "phi_omega", "sigma_thz", "crystal_temp"),
    "detector": (
        *(f"eta_{d.lower()}" for d in DETECTORS),
        *(f"dark_{d.lower()}" for d in DETECTORS),
        "fiber_split",
        "pair_rate",
        "t_int",
    ),
    "scan": ("tau_min_ps", "tau_max_ps", "n_points", "theta_c", "branch"),
    "splitter": ("t_mag", "r_mag", "phi_rt"),
    "sweep": ("thetas", "branch"),
    "stack": tuple(f.name for f in fields(FilmStack)),
    "run": ("seed", "output"),
}

T = TypeVar("T")


@dataclass(frozen=True)
class ScanConfig:
    tau_min: float = -2.0
    tau_max: float = 2.0
    n_points: int = 201
    theta_c: float = 40.0
    branch: Branch = Branch.HEATING


@dataclass(frozen=True)
class RunConfig:
    material: SplitterSource = field(default_factory=HysteresisModel)
    material_thetas: tuple[float, ...] = DEFAULT_MATERIAL_THETAS
    branches: tuple[Branch, ...] = (Branch.HEATING,)
    source: SourceSetting = PRESETS["symmetric_degenerate"]
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    splitter: BeamSplitter | None = None
    sweep_thetas: tuple[float, ...] = SWEEP_THETAS
    sweep_branch: Branch = Branch.HEATING
    stack: FilmStack | None = None
    seed: int = 0
    output: Path | None = None

    @classmethod
    def from_ini(cls, text: str, base_dir: Path | None = None) -> "RunConfig":
        parser = configparser.ConfigParser(interpolation=None)
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise ConfigError("config", f"unreadable INI ({exc.message.splitlines()[0]})") from None
        _reject_unknown(parser)
        return _Builder(parser, base_dir or Path.cwd()).build()


def load_config(path: str | Path | None = None) -> RunConfig:
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    if path is None:
        logger.info("no config file given; using defaults")
        return RunConfig()
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {source} ({exc.strerror})") from None
    logger.info("loading config from %s", source)
    return RunConfig.from_ini(text, base_dir=source.parent)


def _reject_unknown(parser: configparser.ConfigParser) -> None:
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(section, "unknown section")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")


def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("must be finite")
    return value


def _parse_floats(text: str) -> tuple[float, ...]:
    values = tuple(_parse_float(item) for item in text.split(",") if item.strip())
    if not values:
        raise ValueError("list is empty")
    return values


def _parse_branches(text: str) -> tuple[Branch, ...]:
    values = tuple(Branch.parse(item) for item in text.split(",") if item.strip())
    if not values:
        raise ValueError("list is empty")
    return values


class _Builder:
    def __init__(self, parser: configparser.ConfigParser, base_dir: Path) -> None:
        self.parser = parser
        self.base_dir = base_dir

    def get(self, section: str, key: str, convert: Callable[[str], T], default: T) -> T:
        if not self.parser.has_option(section, key):
            return default
        raw = self.parser.get(section, key).strip()
        try:
            return convert(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{section}.{key}", f"invalid value {raw!r} ({exc})") from None

    def construct(self, section: str, factory: Callable[..., T], **kwargs) -> T:
        try:
            return factory(**kwargs)
        except ValueError as exc:
            raise ConfigError(section, str(exc)) from None

    def build(self) -> RunConfig:
        defaults = RunConfig()
        return RunConfig(
            material=self.material(),
            material_thetas=self.get("material", "thetas", _parse_floats, defaults.material_thetas),
            branches=self.get("material", "branches", _parse_branches, defaults.branches),
            source=self.source(),
            detector=self.detector(),
            scan=self.scan(),
            splitter=self.splitter(),
            sweep_thetas=self.get("sweep", "thetas", _parse_floats, defaults.sweep_thetas),
            sweep_branch=self.get("sweep", "branch", Branch.parse, defaults.sweep_branch),
            stack=self.stack(),
            seed=self.get("run", "seed", int, defaults.seed),
            output=self.get("run", "output", self.resolve, None),
        )

    def resolve(self, text: str) -> Path:
        path = Path(text)
        return path if path.is_absolute() else self.base_dir / path

    def material(self) -> SplitterSource:
        model_keys = [key for key in _MODEL_KEYS if self.parser.has_option("material", key)]
        if self.parser.has_option("material", "calibration"):
            if model_keys:
                raise ConfigError("material.calibration", f"cannot be combined with model keys {', '.join(model_keys)}")
            path = self.get("material", "calibration", self.resolve, None)
            if not path.is_file():
                raise ConfigError("material.calibration", f"file not found: {path}")
            return load_calibration(path)
        values = {key: self.get("material", key, _parse_float, None) for key in model_keys}
        return self.construct("material", HysteresisModel, **values)

    def source(self) -> SourceSetting:
        base_name = self.get("source", "preset", str, "symmetric_degenerate")
        if base_name not in PRESETS:
            raise ConfigError("source.preset", f"unknown preset {base_name!r}; choose from {', '.join(PRESETS)}")
        base = PRESETS[base_name]
        explicit = any(self.parser.has_option("source", key) for key in ("delta_thz", "phi_omega", "sigma_thz", "crystal_temp"))
        if not explicit:
            return base
        return self.construct(
            "source",
            SourceSetting.from_thz,
            name=base_name if self.parser.has_option("source", "preset") else "custom",
            delta_thz=self.get("source", "delta_thz", _parse_float, base.delta / (2.0 * math.pi)),
            phi_omega=self.get("source", "phi_omega", _parse_float, base.phi_omega),
            crystal_temp=self.get("source", "crystal_temp", _parse_float, base.crystal_temp),
            sigma_thz=self.get("source", "sigma_thz", _parse_float, DEFAULT_SIGMA_THZ),
        )

    def detector(self) -> DetectorConfig:
        defaults = DetectorConfig()
        return self.construct(
            "detector",
            DetectorConfig,
            eta={d: self.get("detector", f"eta_{d.lower()}", _parse_float, defaults.eta[d]) for d in DETECTORS},
            dark_rate={d: self.get("detector", f"dark_{d.lower()}", _parse_float, defaults.dark_rate[d]) for d in DETECTORS},
            fiber_split=self.get("detector", "fiber_split", _parse_float, defaults.fiber_split),
            pair_rate=self.get("detector", "pair_rate", _parse_float, defaults.pair_rate),
            t_int=self.get("detector", "t_int", _parse_float, defaults.t_int),
        )

    def scan(self) -> ScanConfig:
        defaults = ScanConfig()
        scan = ScanConfig(
            tau_min=self.get("scan", "tau_min_ps", _parse_float, defaults.tau_min),
            tau_max=self.get("scan", "tau_max_ps", _parse_float, defaults.tau_max),
            n_points=self.get("scan", "n_points", int, defaults.n_points),
            theta_c=self.get("scan", "theta_c", _parse_float, defaults.theta_c),
            branch=self.get("scan", "branch", Branch.parse, defaults.branch),
        )
        if scan.n_points < 2:
            raise ConfigError("scan.n_points", f"must be >= 2, got {scan.n_points}")
        if not scan.tau_min < scan.tau_max:
            raise ConfigError("scan.tau_max_ps", "must be larger than scan.tau_min_ps")
        return scan

    def splitter(self) -> BeamSplitter | None:
        if not self.parser.has_section("splitter"):
            return None
        for key in ("t_mag", "r_mag"):
            if not self.parser.has_option("splitter", key):
                raise ConfigError(f"splitter.{key}", "required when [splitter] is present")
        return self.construct(
            "splitter",
            BeamSplitter,
            t_mag=self.get("splitter", "t_mag", _parse_float, 0.0),
            r_mag=self.get("splitter", "r_mag", _parse_float, 0.0),
            phi_rt=self.get("splitter", "phi_rt", _parse_float, math.pi / 2),
        )

    def stack(self) -> FilmStack | None:
        if not self.parser.has_section("stack"):
            return None
        defaults = FilmStack()
        return self.construct(
            "stack",
            FilmStack,
            thickness_nm=self.get("stack", "thickness_nm", _parse_float, defaults.thickness_nm),
            n_ins=self.get("stack", "n_ins", complex, defaults.n_ins),
            n_met=self.get("stack", "n_met", complex, defaults.n_met),
            n_ambient=self.get("stack", "n_ambient", _parse_float, defaults.n_ambient),
            n_substrate=self.get("stack", "n_substrate", _parse_float, defaults.n_substrate),
            wavelength_nm=self.get("stack", "wavelength_nm", _parse_float, defaults.wavelength_nm),
        )
