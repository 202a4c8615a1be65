"""Reading and writing GA configurations and batch definitions.

The file format is INI-style::

    # comment
    [batch]
    runs_per_config = 30
    master_seed = 20240101

    [stats]
    alpha = 0.05

    [GGA-MPX]
    variant = GGA
    crossover = MPX

Every section other than ``batch`` and ``stats`` is one GAConfig keyed by its
section name. Missing keys take the GAConfig defaults.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable

from .model import Bounds, Crossover, GAConfig, UINT64_MAX, Variant

RESERVED_SECTIONS = ("batch", "stats")


class ConfigError(ValueError):
    """A configuration file or override could not be understood."""


@dataclass(frozen=True)
class StatsConfig:
    alpha: float = 0.05
    t_threshold: float = 1.7
    conventional_f_mapping: bool = False
    tails: int = 2


@dataclass(frozen=True)
class Batch:
    configs: dict[str, GAConfig]
    runs_per_config: int = 30
    master_seed: int = 0
    stats: StatsConfig = field(default_factory=StatsConfig)


def batch_violations(batch: Batch) -> list[str]:
    from .model import validate_config

    problems = []
    if not isinstance(batch.runs_per_config, int) or batch.runs_per_config < 2:
        problems.append(f"runs_per_config must be an integer >= 2, got {batch.runs_per_config!r}")
    if not 0 <= batch.master_seed <= UINT64_MAX:
        problems.append(f"master_seed must be an unsigned 64-bit integer, got {batch.master_seed}")
    if not batch.configs:
        problems.append("batch defines no GA configurations")
    for config_id, config in batch.configs.items():
        problems.extend(f"[{config_id}] {msg}" for msg in validate_config(config))
    stats = batch.stats
    if not 0 < stats.alpha < 1:
        problems.append(f"stats.alpha must lie in (0, 1), got {stats.alpha}")
    if not stats.t_threshold > 0:
        problems.append(f"stats.t_threshold must be > 0, got {stats.t_threshold}")
    if stats.tails not in (1, 2):
        problems.append(f"stats.tails must be 1 or 2, got {stats.tails}")
    return problems


def default_batch(runs_per_config: int = 30, master_seed: int = 0) -> Batch:
    """The 4 variants x 3 crossovers grid with every other setting at its default."""
    configs = {}
    for variant in Variant:
        for crossover in Crossover:
            config = GAConfig(variant=variant, crossover=crossover)
            configs[config.default_id] = config
    return Batch(configs=configs, runs_per_config=runs_per_config, master_seed=master_seed)


# --- value parsing -------------------------------------------------------

def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_int(text: str) -> int:
    return int(text.strip(), 0)


_GA_FIELDS = {
    "variant": lambda s: Variant(s.strip().upper()),
    "crossover": lambda s: Crossover(s.strip().upper()),
    "population_size": _parse_int,
    "chromosome_length": _parse_int,
    "mutation_rate": float,
    "mutation_sigma": float,
    "blx_alpha": float,
    "mpx_probability": float,
    "lower": float,
    "upper": float,
    "max_evaluations": _parse_int,
    "success_threshold": float,
    "seed": _parse_int,
}
_BATCH_FIELDS = {"runs_per_config": _parse_int, "master_seed": _parse_int}
_STATS_FIELDS = {
    "alpha": float,
    "t_threshold": float,
    "conventional_f_mapping": _parse_bool,
    "tails": _parse_int,
}


def _convert(parsers: dict, section: str, key: str, value: str):
    if key not in parsers:
        raise ConfigError(f"unknown key {key!r} in section [{section}]")
    try:
        return parsers[key](value)
    except ValueError as exc:
        raise ConfigError(f"bad value for {section}.{key}: {value!r} ({exc})") from None


def ga_config_from_mapping(section: str, items: dict[str, str], base: GAConfig | None = None) -> GAConfig:
    base = base or GAConfig()
    values = {f.name: getattr(base, f.name) for f in fields(GAConfig)}
    lower, upper = base.bounds.lower, base.bounds.upper
    for key, text in items.items():
        value = _convert(_GA_FIELDS, section, key, text)
        if key == "lower":
            lower = value
        elif key == "upper":
            upper = value
        else:
            values[key] = value
    try:
        values["bounds"] = Bounds(lower, upper)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {exc}") from None
    return GAConfig(**values)


def _new_parser() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        interpolation=None,
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        delimiters=("=",),
        default_section="__defaults__",
    )
    parser.optionxform = str
    return parser


def parse_batch_text(text: str) -> Batch:
    parser = _new_parser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None

    runs, seed = 30, 0
    if parser.has_section("batch"):
        for key, value in parser.items("batch"):
            parsed = _convert(_BATCH_FIELDS, "batch", key, value)
            if key == "runs_per_config":
                runs = parsed
            else:
                seed = parsed
    stats_values = {}
    if parser.has_section("stats"):
        for key, value in parser.items("stats"):
            stats_values[key] = _convert(_STATS_FIELDS, "stats", key, value)
    configs = {
        name: ga_config_from_mapping(name, dict(parser.items(name)))
        for name in parser.sections()
        if name not in RESERVED_SECTIONS
    }
    return Batch(configs=configs, runs_per_config=runs, master_seed=seed, stats=StatsConfig(**stats_values))


def load_batch(path: str | Path) -> Batch:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_batch_text(text)


# --- writing -------------------------------------------------------------

def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (Variant, Crossover)):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def ga_config_items(config: GAConfig) -> list[tuple[str, str]]:
    items = []
    for f in fields(GAConfig):
        value = getattr(config, f.name)
        if f.name == "bounds":
            items.append(("lower", _format_value(float(value.lower))))
            items.append(("upper", _format_value(float(value.upper))))
        elif value is None:
            continue
        else:
            items.append((f.name, _format_value(value)))
    return items


def format_batch(batch: Batch) -> str:
    lines = [
        "[batch]",
        f"runs_per_config = {batch.runs_per_config}",
        f"master_seed = {batch.master_seed}",
        "",
        "[stats]",
    ]
    for f in fields(StatsConfig):
        lines.append(f"{f.name} = {_format_value(getattr(batch.stats, f.name))}")
    for config_id, config in batch.configs.items():
        lines += ["", f"[{config_id}]"]
        lines += [f"{key} = {value}" for key, value in ga_config_items(config)]
    return "\n".join(lines) + "\n"


# --- overrides -----------------------------------------------------------

def parse_override(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"override must look like KEY=VALUE, got {text!r}")
    return key.strip(), value.strip()


def apply_overrides(batch: Batch, overrides: Iterable[tuple[str, str]]) -> Batch:
    """Apply ``key=value`` overrides in order; later ones win.

    ``runs_per_config`` / ``master_seed`` (optionally prefixed ``batch.``) set
    batch fields, ``stats.<key>`` sets analysis options, ``<config_id>.<key>``
    targets one configuration and ``*.<key>`` or a bare GA key targets all.
    """
    for key, value in overrides:
        section, _, name = key.rpartition(".")
        if section in ("", "batch") and name in _BATCH_FIELDS:
            batch = replace(batch, **{name: _convert(_BATCH_FIELDS, "batch", name, value)})
        elif section == "stats":
            parsed = _convert(_STATS_FIELDS, "stats", name, value)
            batch = replace(batch, stats=replace(batch.stats, **{name: parsed}))
        elif section in ("", "*"):
            configs = {cid: ga_config_from_mapping(cid, {name: value}, cfg) for cid, cfg in batch.configs.items()}
            batch = replace(batch, configs=configs)
        elif section in batch.configs:
            configs = dict(batch.configs)
            configs[section] = ga_config_from_mapping(section, {name: value}, configs[section])
            batch = replace(batch, configs=configs)
        else:
            raise ConfigError(f"override {key!r} names no known section")
    return batch
