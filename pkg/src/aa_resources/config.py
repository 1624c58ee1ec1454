"""Flat ``key = value`` run configuration.

Grammar: one ``key = value`` pair per line; ``#`` starts a comment; blank
lines are ignored; list values are comma separated. Keys are validated
against a fixed schema and unknown or repeated keys are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .errors import ConfigError

TFIM = "tfim"
FIRSTQUANT = "firstquant"
ESTIMATE, SWEEP, SIMULATE = "estimate", "sweep", "simulate"


def _float(s: str) -> float:
    return float(s)


def _int(s: str) -> int:
    v = float(s)
    if v != int(v):
        raise ValueError(f"{s!r} is not an integer")
    return int(v)


def _str(s: str) -> str:
    return s


def _list(conv: Callable[[str], Any]) -> Callable[[str], tuple]:
    def parse(s: str) -> tuple:
        items = [x.strip() for x in s.split(",")]
        if not all(items):
            raise ValueError("empty list element")
        return tuple(conv(x) for x in items)
    return parse


@dataclass(frozen=True)
class Key:
    parse: Callable[[str], Any]
    default: Any
    models: tuple[str, ...]
    commands: tuple[str, ...]
    required: bool = False
    choices: tuple = ()


_ALL_MODELS = (TFIM, FIRSTQUANT)
_COSTING = (ESTIMATE, SWEEP)
_ALL_CMDS = (ESTIMATE, SWEEP, SIMULATE)

SCHEMA: dict[str, Key] = {
    "model": Key(_str, None, _ALL_MODELS, _ALL_CMDS, required=True, choices=_ALL_MODELS),
    # Ising chain
    "L": Key(_list(_int), None, (TFIM,), _ALL_CMDS, required=True),
    "g": Key(_float, None, (TFIM,), _ALL_CMDS, required=True),
    "mu_shift": Key(_float, None, (TFIM,), _COSTING),
    "delta_e": Key(_list(_float), None, (TFIM,), _COSTING, required=True),
    # first-quantized cell
    "eta": Key(_int, None, (FIRSTQUANT,), _COSTING, required=True),
    "zeta_norm": Key(_int, None, (FIRSTQUANT,), _COSTING, required=True),
    "n_atoms": Key(_int, None, (FIRSTQUANT,), _COSTING, required=True),
    "omega": Key(_float, None, (FIRSTQUANT,), _COSTING, required=True),
    "n_planewaves": Key(_list(_float), None, (FIRSTQUANT,), _COSTING, required=True),
    "delta_exp": Key(_float, 9.0, (FIRSTQUANT,), _COSTING),
    "e0_bar": Key(_float, 0.0, (FIRSTQUANT,), _COSTING),
    "delta_e_ev": Key(_list(_float), None, (FIRSTQUANT,), _COSTING, required=True),
    "eps_total": Key(_float, None, (FIRSTQUANT,), _COSTING),
    "aa_factor": Key(_int, 1, (FIRSTQUANT,), _COSTING, choices=(1, 3)),
    "b_r": Key(_int, 7, (FIRSTQUANT,), _COSTING),
    "n_etazeta_reading": Key(_str, "value", (FIRSTQUANT,), _COSTING, choices=("value", "bits")),
    # amplification
    "gamma_f2": Key(_list(_float), (0.75,), _ALL_MODELS, _ALL_CMDS),
    "gamma_i2": Key(_list(_float), None, _ALL_MODELS, _COSTING, required=True),
    "eps_rh": Key(_float, None, _ALL_MODELS, _COSTING),
    "eps_rp": Key(_float, None, _ALL_MODELS, _COSTING),
    # simulation
    "n_iter": Key(_list(_int), (4, 6, 10), (TFIM,), (SIMULATE,)),
    "gamma_i_rule": Key(_str, "bracket_top", (TFIM,), (SIMULATE,), choices=("bracket_top", "invert")),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: str
    values: dict

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.values.get(key, default)

    def single(self, key: str) -> Any:
        """Value of a list key that must hold exactly one element."""
        v = self.values[key]
        if len(v) != 1:
            raise ConfigError(f"{key}: {self.command} takes exactly one value, got {len(v)}")
        return v[0]

    def metadata_lines(self) -> list[str]:
        out = [f"command = {self.command}"]
        for k in SCHEMA:
            if k in self.values:
                out.append(f"{k} = {format_value(self.values[k])}")
        return out


def format_value(v: Any) -> str:
    if v is None:
        return "none"
    if isinstance(v, tuple):
        return ",".join(format_value(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def parse_text(text: str, command: str) -> RunConfig:
    raw: dict[str, tuple[int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: key {key!r} repeated (first on line {raw[key][0]})")
        if not value:
            raise ConfigError(f"line {lineno}: key {key!r} has no value")
        raw[key] = (lineno, value)

    if "model" not in raw:
        raise ConfigError("missing required key 'model'")
    model = raw["model"][1]
    if model not in _ALL_MODELS:
        raise ConfigError(f"model: must be one of {', '.join(_ALL_MODELS)}, got {model!r}")
    if command == SIMULATE and model != TFIM:
        raise ConfigError("simulate supports only model = tfim")

    values: dict[str, Any] = {}
    for key, spec in SCHEMA.items():
        applies = model in spec.models and command in spec.commands
        if key in raw and not applies:
            raise ConfigError(f"line {raw[key][0]}: key {key!r} does not apply to {command} with model {model}")
        if not applies:
            continue
        if key in raw:
            lineno, text_value = raw[key]
            try:
                v = spec.parse(text_value)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None
            if spec.choices:
                bad = [x for x in (v if isinstance(v, tuple) else (v,)) if x not in spec.choices]
                if bad:
                    raise ConfigError(f"line {lineno}: {key} must be one of {spec.choices}, got {bad[0]!r}")
            values[key] = v
        elif spec.required:
            raise ConfigError(f"missing required key {key!r} for {command} with model {model}")
        else:
            values[key] = spec.default
    return RunConfig(command=command, model=model, values=values)


def load_config(path: str | Path, command: str) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_text(text, command)
