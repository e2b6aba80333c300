"""Run configuration: JSON schema, strict validation, and named presets.

A configuration document is a JSON object with four sections::

    {
      "system":  {"omega_S": 1.0, "omega_M": 0.1, "omega_D": 0.3333333333333333,
                  "zeta_SM": 1.0, "zeta_MD": 0.16666666666666666, "zeta_SD": 1.0},
      "baths":   {"S": {"temperature": 10.0, "coupling": 1e-06, "ohmicity": 1.0,
                        "cutoff": null},
                  "M": {...}, "D": {...}},
      "sweep":   {"t_m_min": 0.0, "t_m_max": 10.0, "steps": 101},
      "outputs": {"currents": true, "beta": true, "m2": true, "m3": true,
                  "negativity": true, "fidelity": true}
    }

Every key is optional; omitted values fall back to the ``fig2`` preset shown
above.  Unknown keys are errors.  All energies and temperatures are in units
of the source qubit splitting; the modulator temperature is the sweep
variable (its ``temperature`` entry only seeds single-point runs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .baths import BathSpec
from .model import SystemSpec

PRESET_NAMES = ("fig2", "fig3a", "fig3b")


class ConfigError(ValueError):
    """Invalid configuration content; the message carries the field path."""


@dataclass(frozen=True)
class OutputFlags:
    """Which sweep outputs to compute; deselected columns are emitted as NaN."""

    currents: bool = True
    beta: bool = True
    m2: bool = True
    m3: bool = True
    negativity: bool = True
    fidelity: bool = True


@dataclass(frozen=True)
class RunConfig:
    """A fully validated sweep description; deterministic by construction."""

    system: SystemSpec
    bath_s: BathSpec
    bath_m: BathSpec
    bath_d: BathSpec
    t_m_min: float
    t_m_max: float
    steps: int
    outputs: OutputFlags = field(default_factory=OutputFlags)

    def __post_init__(self) -> None:
        if not (np.isfinite(self.t_m_min) and self.t_m_min >= 0):
            raise ConfigError(f"sweep.t_m_min must be >= 0, got {self.t_m_min}")
        if not (np.isfinite(self.t_m_max) and self.t_m_min <= self.t_m_max):
            raise ConfigError(
                f"sweep requires t_m_min <= t_m_max, got [{self.t_m_min}, {self.t_m_max}]"
            )
        if self.steps < 2:
            raise ConfigError(f"sweep.steps must be >= 2, got {self.steps}")
        if self.outputs.beta and not self.outputs.currents:
            raise ConfigError("outputs.beta requires outputs.currents")
        if self.outputs.beta and self.steps < 3:
            raise ConfigError("outputs.beta requires sweep.steps >= 3")
        if self.outputs.beta and self.t_m_min == self.t_m_max:
            raise ConfigError("outputs.beta requires a nondegenerate sweep range")

    def grid(self) -> np.ndarray:
        return np.linspace(self.t_m_min, self.t_m_max, self.steps)

    @property
    def step(self) -> float:
        return (self.t_m_max - self.t_m_min) / (self.steps - 1)

    def baths_at(self, t_m: float) -> dict[str, BathSpec]:
        """Bath triple with the modulator reservoir at temperature ``t_m``."""
        return {
            "S": self.bath_s,
            "M": replace(self.bath_m, temperature=float(t_m)),
            "D": self.bath_d,
        }


def _fig2_defaults() -> dict:
    return {
        "system": {
            "omega_S": 1.0,
            "omega_M": 0.1,
            "omega_D": 1.0 / 3.0,
            "zeta_SM": 1.0,
            "zeta_MD": 1.0 / 6.0,
            "zeta_SD": 1.0,
        },
        "baths": {
            "S": {"temperature": 10.0, "coupling": 1e-6, "ohmicity": 1.0, "cutoff": None},
            "M": {"temperature": 0.0, "coupling": 1e-6, "ohmicity": 1.0, "cutoff": None},
            "D": {"temperature": 0.01, "coupling": 1e-4, "ohmicity": 1.0, "cutoff": None},
        },
        "sweep": {"t_m_min": 0.0, "t_m_max": 10.0, "steps": 101},
        "outputs": {
            "currents": True,
            "beta": True,
            "m2": True,
            "m3": True,
            "negativity": True,
            "fidelity": True,
        },
    }


def _require_number(value, path: str, minimum: float | None = None,
                    strict_min: bool = False, optional: bool = False) -> float | None:
    if value is None and optional:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    v = float(value)
    if not np.isfinite(v):
        raise ConfigError(f"{path}: must be finite, got {value!r}")
    if minimum is not None and (v < minimum or (strict_min and v == minimum)):
        op = ">" if strict_min else ">="
        raise ConfigError(f"{path}: must be {op} {minimum}, got {value!r}")
    return v


def _require_bool(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{path}: expected true or false, got {value!r}")
    return value


def _require_int(value, path: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _merge_strict(base: dict, override: dict, path: str = "") -> dict:
    merged = dict(base)
    for key, value in override.items():
        here = f"{path}.{key}" if path else key
        if key not in base:
            raise ConfigError(f"unknown key '{here}'")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{here}: expected an object")
            merged[key] = _merge_strict(base[key], value, here)
        else:
            merged[key] = value
    return merged


def _config_from_doc(doc: dict) -> RunConfig:
    sys_doc = doc["system"]
    system = SystemSpec(
        omega_s=_require_number(sys_doc["omega_S"], "system.omega_S", 0.0, strict_min=True),
        omega_m=_require_number(sys_doc["omega_M"], "system.omega_M", 0.0, strict_min=True),
        omega_d=_require_number(sys_doc["omega_D"], "system.omega_D", 0.0, strict_min=True),
        zeta_sm=_require_number(sys_doc["zeta_SM"], "system.zeta_SM"),
        zeta_md=_require_number(sys_doc["zeta_MD"], "system.zeta_MD"),
        zeta_sd=_require_number(sys_doc["zeta_SD"], "system.zeta_SD"),
    )
    baths = {}
    for k in ("S", "M", "D"):
        b = doc["baths"][k]
        prefix = f"baths.{k}"
        baths[k] = BathSpec(
            temperature=_require_number(b["temperature"], f"{prefix}.temperature", 0.0),
            coupling=_require_number(b["coupling"], f"{prefix}.coupling", 0.0),
            ohmicity=_require_number(b["ohmicity"], f"{prefix}.ohmicity", 0.0, strict_min=True),
            cutoff=_require_number(b["cutoff"], f"{prefix}.cutoff", 0.0, strict_min=True,
                                   optional=True),
        )
    sweep = doc["sweep"]
    flags = doc["outputs"]
    outputs = OutputFlags(**{k: _require_bool(v, f"outputs.{k}") for k, v in flags.items()})
    return RunConfig(
        system=system,
        bath_s=baths["S"],
        bath_m=baths["M"],
        bath_d=baths["D"],
        t_m_min=_require_number(sweep["t_m_min"], "sweep.t_m_min"),
        t_m_max=_require_number(sweep["t_m_max"], "sweep.t_m_max"),
        steps=_require_int(sweep["steps"], "sweep.steps", 2),
        outputs=outputs,
    )


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON configuration document.

    Omitted fields default to the fig2 preset; unknown keys and invalid
    values raise :class:`ConfigError` naming the offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("top level of the configuration must be an object")
    merged = _merge_strict(_fig2_defaults(), doc)
    try:
        return _config_from_doc(merged)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def preset(name: str) -> list[tuple[str, RunConfig]]:
    """Named run configurations as (label, config) pairs.

    ``fig2`` is the reference Ohmic sweep; ``fig3a`` pairs a small and a
    large source-drain gradient; ``fig3b`` pairs sub- and super-Ohmic noise.
    """
    base = parse_config("{}")
    window = {"t_m_min": 0.0, "t_m_max": 5.0, "steps": 51}
    if name == "fig2":
        return [("fig2", base)]
    if name == "fig3a":
        out = []
        for t_s in (5.0, 25.0):
            cfg = replace(
                base,
                bath_s=replace(base.bath_s, temperature=t_s),
                **window,
            )
            out.append((f"fig3a_TS{t_s:g}", cfg))
        return out
    if name == "fig3b":
        out = []
        for s, tag in ((0.5, "subohmic"), (1.5, "superohmic")):
            cfg = replace(
                base,
                bath_s=replace(base.bath_s, ohmicity=s),
                bath_m=replace(base.bath_m, ohmicity=s),
                bath_d=replace(base.bath_d, ohmicity=s),
                **window,
            )
            out.append((f"fig3b_{tag}", cfg))
        return out
    raise ConfigError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
