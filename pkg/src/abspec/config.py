"""Run configuration: a JSON document describing one computation."""

import json
import math
from dataclasses import dataclass, fields

from .molecule import PRESETS, MoleculeSpec
from .spectrum import MODES, SCHEMES

COMMANDS = ("eigen", "spectrum", "coil", "design", "converge")
COUPLED = ("eigen", "spectrum", "converge")
DEFAULT_LEVELS_LIST = (2, 4, 8, 16, 32, 64)


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


@dataclass(frozen=True)
class ToroidConfig:
    inner_radius: float
    revolution_radius: float
    n_loops: int = 1
    current: float | None = None


@dataclass(frozen=True)
class RunConfig:
    command: str
    molecule: MoleculeSpec | None = None
    toroid: ToroidConfig | None = None
    a0: float | None = None
    ratio: float | None = None
    cos_theta: float = 1.0
    n_levels: int = 2
    n_levels_list: tuple = DEFAULT_LEVELS_LIST
    mode: str = "two_level"
    n_samples: int = 4096
    scheme: str = "grid"
    n_bins: int = 256
    dipole_weighting: bool = False
    target_ratio: float | None = None
    z_min: float | None = None
    z_max: float | None = None
    n_z: int = 101
    output: str | None = None

    @property
    def coupling_source(self):
        """Which of ``a0``, ``ratio`` or ``toroid`` sets the coupling."""
        if self.a0 is not None:
            return "a0"
        if self.ratio is not None:
            return "ratio"
        if self.toroid is not None and self.toroid.current is not None:
            return "toroid"
        return None

    def to_dict(self):
        doc = {"command": self.command}
        if self.molecule is not None:
            mol = self.molecule
            if PRESETS.get(mol.name) == mol:
                doc["molecule"] = mol.name
            else:
                doc["molecule"] = {"mass_1": mol.mass_1, "mass_2": mol.mass_2,
                                   "hbar_omega0": mol.hbar_omega0}
                if mol.name:
                    doc["molecule"]["name"] = mol.name
        if self.toroid is not None:
            doc["toroid"] = {f.name: getattr(self.toroid, f.name) for f in fields(self.toroid)
                             if getattr(self.toroid, f.name) is not None}
        for key in ("a0", "ratio", "target_ratio", "output"):
            if getattr(self, key) is not None:
                doc[key] = getattr(self, key)
        doc.update(cos_theta=self.cos_theta, n_levels=self.n_levels,
                   n_levels_list=list(self.n_levels_list), mode=self.mode,
                   ensemble={"n_samples": self.n_samples, "scheme": self.scheme},
                   n_bins=self.n_bins, dipole_weighting=self.dipole_weighting)
        z = {"n": self.n_z}
        if self.z_min is not None:
            z["min"] = self.z_min
        if self.z_max is not None:
            z["max"] = self.z_max
        doc["z"] = z
        return doc

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


_TOP_KEYS = {"command", "molecule", "toroid", "a0", "ratio", "cos_theta", "n_levels",
             "n_levels_list", "mode", "ensemble", "n_bins", "dipole_weighting",
             "target_ratio", "z", "output"}


def _number(doc, key, where=None, positive=False, nonneg=False):
    name = f"{where}.{key}" if where else key
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, f"must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(name, "must be finite")
    if positive and value <= 0:
        raise ConfigError(name, f"must be positive, got {value!r}")
    if nonneg and value < 0:
        raise ConfigError(name, f"must be non-negative, got {value!r}")
    return value


def _integer(doc, key, minimum, where=None):
    name = f"{where}.{key}" if where else key
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            raise ConfigError(name, f"must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(name, f"must be >= {minimum}, got {value!r}")
    return value


def _parse_molecule(value):
    if isinstance(value, str):
        if value not in PRESETS:
            raise ConfigError("molecule", f"unknown preset {value!r}; available: {sorted(PRESETS)}")
        return PRESETS[value]
    if not isinstance(value, dict):
        raise ConfigError("molecule", "must be a preset name or an object")
    unknown = set(value) - {"mass_1", "mass_2", "hbar_omega0", "name", "preset"}
    if unknown:
        raise ConfigError(f"molecule.{sorted(unknown)[0]}", "unknown field")
    base = {}
    if "preset" in value:
        base_mol = _parse_molecule(value["preset"])
        base = {"mass_1": base_mol.mass_1, "mass_2": base_mol.mass_2,
                "hbar_omega0": base_mol.hbar_omega0, "name": base_mol.name}
    merged = {**base, **{k: v for k, v in value.items() if k != "preset"}}
    for key in ("mass_1", "mass_2", "hbar_omega0"):
        if key not in merged:
            raise ConfigError(f"molecule.{key}", "missing field")
        merged[key] = _number(merged, key, "molecule", positive=True)
    name = merged.get("name", "")
    if not isinstance(name, str):
        raise ConfigError("molecule.name", "must be a string")
    return MoleculeSpec(merged["mass_1"], merged["mass_2"], merged["hbar_omega0"], name)


def _parse_toroid(value):
    if not isinstance(value, dict):
        raise ConfigError("toroid", "must be an object")
    unknown = set(value) - {"inner_radius", "revolution_radius", "n_loops", "current"}
    if unknown:
        raise ConfigError(f"toroid.{sorted(unknown)[0]}", "unknown field")
    for key in ("inner_radius", "revolution_radius"):
        if key not in value:
            raise ConfigError(f"toroid.{key}", "missing field")
    a = _number(value, "inner_radius", "toroid", positive=True)
    b = _number(value, "revolution_radius", "toroid", positive=True)
    if not a < b:
        raise ConfigError("toroid.inner_radius", "must be smaller than revolution_radius")
    loops = _integer(value, "n_loops", 1, "toroid") if "n_loops" in value else 1
    current = _number(value, "current", "toroid") if "current" in value else None
    return ToroidConfig(a, b, loops, current)


def parse_document(doc):
    """Validate a decoded configuration object and build a :class:`RunConfig`."""
    if not isinstance(doc, dict):
        raise ConfigError("document", "must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown field")
    if "command" not in doc:
        raise ConfigError("command", "missing field")
    command = doc["command"]
    if command not in COMMANDS:
        raise ConfigError("command", f"unknown command {command!r}; expected one of {COMMANDS}")
    kw = {"command": command}

    if "molecule" in doc:
        kw["molecule"] = _parse_molecule(doc["molecule"])
    elif command != "coil":
        raise ConfigError("molecule", "missing field")
    if "toroid" in doc and doc["toroid"] is not None:
        kw["toroid"] = _parse_toroid(doc["toroid"])
    for key in ("a0", "ratio"):
        if key in doc and doc[key] is not None:
            kw[key] = _number(doc, key, nonneg=True)
    if "cos_theta" in doc:
        kw["cos_theta"] = _number(doc, "cos_theta")
        if abs(kw["cos_theta"]) > 1:
            raise ConfigError("cos_theta", "must lie in [-1, 1]")
    if "n_levels" in doc:
        kw["n_levels"] = _integer(doc, "n_levels", 1)
    if "n_levels_list" in doc:
        levels = doc["n_levels_list"]
        if not isinstance(levels, list) or not levels:
            raise ConfigError("n_levels_list", "must be a non-empty list")
        kw["n_levels_list"] = tuple(_integer({"n": n}, "n", 2, "n_levels_list") for n in levels)
    if "mode" in doc:
        if doc["mode"] not in MODES:
            raise ConfigError("mode", f"must be one of {MODES}")
        kw["mode"] = doc["mode"]
    if "ensemble" in doc:
        ens = doc["ensemble"]
        if not isinstance(ens, dict):
            raise ConfigError("ensemble", "must be an object")
        unknown = set(ens) - {"n_samples", "scheme"}
        if unknown:
            raise ConfigError(f"ensemble.{sorted(unknown)[0]}", "unknown field")
        if "n_samples" in ens:
            kw["n_samples"] = _integer(ens, "n_samples", 2, "ensemble")
        if "scheme" in ens:
            if ens["scheme"] not in SCHEMES:
                raise ConfigError("ensemble.scheme", f"must be one of {SCHEMES}")
            kw["scheme"] = ens["scheme"]
    if "n_bins" in doc:
        kw["n_bins"] = _integer(doc, "n_bins", 1)
    if "dipole_weighting" in doc:
        if not isinstance(doc["dipole_weighting"], bool):
            raise ConfigError("dipole_weighting", "must be true or false")
        kw["dipole_weighting"] = doc["dipole_weighting"]
    if "target_ratio" in doc and doc["target_ratio"] is not None:
        kw["target_ratio"] = _number(doc, "target_ratio", positive=True)
    if "z" in doc:
        z = doc["z"]
        if not isinstance(z, dict):
            raise ConfigError("z", "must be an object")
        unknown = set(z) - {"min", "max", "n"}
        if unknown:
            raise ConfigError(f"z.{sorted(unknown)[0]}", "unknown field")
        if "min" in z:
            kw["z_min"] = _number(z, "min", "z")
        if "max" in z:
            kw["z_max"] = _number(z, "max", "z")
        if "n" in z:
            kw["n_z"] = _integer(z, "n", 1, "z")
    if "output" in doc and doc["output"] is not None:
        if not isinstance(doc["output"], str) or not doc["output"]:
            raise ConfigError("output", "must be a non-empty path string")
        kw["output"] = doc["output"]

    cfg = RunConfig(**kw)
    _check_command(cfg)
    return cfg


def _check_command(cfg):
    sources = [name for name, present in (
        ("a0", cfg.a0 is not None),
        ("ratio", cfg.ratio is not None),
        ("toroid", cfg.toroid is not None and cfg.toroid.current is not None),
    ) if present]
    if cfg.command in COUPLED:
        if len(sources) > 1:
            raise ConfigError("coupling", "conflicting coupling sources: " + ", ".join(sources))
        if not sources:
            raise ConfigError("coupling", "missing field: one of a0, ratio, toroid.current")
    if cfg.command == "eigen" and cfg.n_levels < 1:
        raise ConfigError("n_levels", "must be >= 1")
    if cfg.command == "spectrum" and cfg.mode == "full_n_level" and cfg.n_levels < 2:
        raise ConfigError("n_levels", "full_n_level mode needs n_levels >= 2")
    if cfg.command == "coil":
        if cfg.toroid is None:
            raise ConfigError("toroid", "missing field")
        if cfg.toroid.current is None:
            raise ConfigError("toroid.current", "missing field")
    if cfg.command == "design":
        if cfg.toroid is None:
            raise ConfigError("toroid", "missing field")
        if cfg.target_ratio is None:
            raise ConfigError("target_ratio", "missing field")
    if cfg.z_min is not None and cfg.z_max is not None and cfg.z_max < cfg.z_min:
        raise ConfigError("z.max", "must not be below z.min")


def apply_override(doc, assignment):
    """Apply one ``key=value`` override (dotted keys reach nested objects).

    The value is read as JSON when possible and as a bare string otherwise.
    """
    if "=" not in assignment:
        raise ConfigError("--set", f"expected key=value, got {assignment!r}")
    key, raw = assignment.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    parts = key.strip().split(".")
    if not all(parts):
        raise ConfigError("--set", f"bad key {key!r}")
    node = doc
    for i, part in enumerate(parts[:-1]):
        child = node.get(part)
        if isinstance(child, str) and part == "molecule" and i == 0:
            child = {"preset": child}
        elif child is None:
            child = {}
        elif not isinstance(child, dict):
            raise ConfigError(".".join(parts[:i + 1]), "cannot set a field inside a non-object")
        node[part] = child
        node = child
    node[parts[-1]] = value
    return doc


def parse_config(text, overrides=()):
    """Parse a JSON configuration document, applying ``--set`` style overrides."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("document", f"invalid JSON: {exc}") from None
    for item in overrides:
        apply_override(doc, item)
    return parse_document(doc)
