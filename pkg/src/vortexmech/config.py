"""Device-description config files.

INI-style key-value format with one section per device part::

    [material]
    name = YIG
    mu0_Ms = 0.18 T
    alpha_llg = 5e-5
    A_ex = 1.9 pJ/m

    [disc]
    radius = 180 nm
    thickness = 20 nm
    ...

Dimensioned values require an explicit unit suffix; a bare number for a
dimensioned key is a unit-mismatch error, and a unit on a dimensionless
key is too. Frequencies given in the Hz family denote f and are stored
angular (times 2*pi); the suffix ``rad/s`` stores the value as-is.
Unknown sections or keys are rejected with the offending line number.

Parsing and serialization round-trip exactly: serialize emits SI base
units at full float precision.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass

from .constants import TWO_PI, MU0
from .errors import ValidationError
from .params import (CantileverGeometry, DerivedParams, DipoleMagnet,
                     DiscGeometry, Material, Placement, derive_parameters)

# unit tables: suffix -> factor to SI (frequencies -> rad/s)
_UNITS: dict[str, dict[str, float]] = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6,
               "nm": 1e-9, "pm": 1e-12},
    "time": {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "ns": 1e-9,
             "ps": 1e-12},
    "field": {"T": 1.0, "mT": 1e-3, "uT": 1e-6, "µT": 1e-6, "nT": 1e-9},
    "gradient": {"T/m": 1.0, "mT/m": 1e-3, "kT/m": 1e3, "MT/m": 1e6},
    "frequency": {"Hz": TWO_PI, "kHz": TWO_PI * 1e3, "MHz": TWO_PI * 1e6,
                  "GHz": TWO_PI * 1e9, "rad/s": 1.0},
    "temperature": {"K": 1.0, "mK": 1e-3, "uK": 1e-6, "µK": 1e-6},
    "mass": {"kg": 1.0, "g": 1e-3, "mg": 1e-6, "ug": 1e-9, "ng": 1e-12,
             "pg": 1e-15, "fg": 1e-18, "ag": 1e-21},
    "density": {"kg/m^3": 1.0, "kg/m3": 1.0, "g/cm^3": 1e3, "g/cm3": 1e3},
    "pressure": {"Pa": 1.0, "kPa": 1e3, "MPa": 1e6, "GPa": 1e9},
    "magnetization": {"A/m": 1.0, "kA/m": 1e3, "MA/m": 1e6},
    "moment": {"A*m^2": 1.0, "A*m2": 1.0, "A.m^2": 1.0, "Am^2": 1.0,
               "J/T": 1.0},
    "exchange": {"J/m": 1.0, "pJ/m": 1e-12, "fJ/m": 1e-15},
}
_SI_UNIT = {"length": "m", "time": "s", "field": "T", "gradient": "T/m",
            "frequency": "rad/s", "temperature": "K", "mass": "kg",
            "density": "kg/m^3", "pressure": "Pa", "magnetization": "A/m",
            "moment": "A*m^2", "exchange": "J/m"}

_REQUIRED_SECTIONS = ("material", "disc", "cantilever", "magnet", "placement")
_OPTIONAL_SECTIONS = ("environment", "simulation", "overrides", "experiment")


@dataclass(frozen=True)
class _Field:
    kind: str                  # unit-table name or scalar/int/pm_one/str/bool
    required: bool = False
    default: object = None


_SCHEMA: dict[str, dict[str, _Field]] = {
    "material": {
        "name": _Field("str", default=""),
        "Ms": _Field("magnetization"),
        "mu0_Ms": _Field("field"),
        "alpha_llg": _Field("scalar", required=True),
        "A_ex": _Field("exchange", required=True),
    },
    "disc": {
        "radius": _Field("length", required=True),
        "thickness": _Field("length", required=True),
        "polarity": _Field("pm_one", default=+1),
        "circulation": _Field("pm_one", default=+1),
    },
    "cantilever": {
        "length": _Field("length", required=True),
        "width": _Field("length", required=True),
        "thickness": _Field("length", required=True),
        "youngs_modulus": _Field("pressure", required=True),
        "density": _Field("density", required=True),
        "tip_mass": _Field("mass", default=0.0),
        "quality_factor": _Field("scalar", default=1000.0),
    },
    "magnet": {
        "moment": _Field("moment"),
        "length": _Field("length"),
        "width": _Field("length"),
        "thickness": _Field("length"),
        "magnetization": _Field("magnetization"),
    },
    "placement": {
        "d_vc": _Field("length", required=True),
        "d_nc": _Field("length", required=True),
        "y_vn": _Field("length", required=True),
    },
    "environment": {
        "temperature": _Field("temperature", default=10e-3),
        "nv_dephasing_rate": _Field("frequency", default=TWO_PI * 1e3),
        "nv_dephasing_model": _Field("choice:dephasing,decay",
                                     default="dephasing"),
    },
    "simulation": {
        "n_max": _Field("int", default=5),
        "time_samples": _Field("int", default=2000),
        "grid_points": _Field("int", default=64),
        "steps_per_unit": _Field("int", default=50),
    },
    "overrides": {
        "a0": _Field("length"),
        "g_vc": _Field("frequency"),
        "g_nc": _Field("frequency"),
    },
    "experiment": {
        "name": _Field("str"),
        "figure": _Field("str"),
        "dissipative": _Field("bool"),
        "delta1_over_g": _Field("scalar"),
        "t_final": _Field("time"),
        "pulse_field": _Field("field"),
        "pulse_duration": _Field("time"),
        "record_duration": _Field("time"),
        "sample_interval": _Field("time"),
        "r_min": _Field("length"),
        "r_max": _Field("length"),
        "G_min": _Field("gradient"),
        "G_max": _Field("gradient"),
        "d_min": _Field("length"),
        "d_max": _Field("length"),
        "delta1_min": _Field("frequency"),
        "delta1_max": _Field("frequency"),
        "points": _Field("int"),
        "use_quoted_couplings": _Field("bool"),
    },
}


@dataclass(frozen=True)
class EnvironmentSettings:
    temperature: float = 10e-3                 # K
    nv_dephasing_rate: float = TWO_PI * 1e3     # rad/s (kappa_2)
    nv_dephasing_model: str = "dephasing"       # or "decay"


@dataclass(frozen=True)
class SimulationSettings:
    n_max: int = 5
    time_samples: int = 2000
    grid_points: int = 64
    steps_per_unit: int = 50


@dataclass(frozen=True)
class Overrides:
    a0: float | None = None
    g_vc: float | None = None
    g_nc: float | None = None


@dataclass(frozen=True)
class ExperimentSettings:
    """Optional experiment selection and its parameters (all overridable
    by CLI flags)."""

    name: str | None = None
    figure: str | None = None
    dissipative: bool | None = None
    delta1_over_g: float | None = None
    t_final: float | None = None
    pulse_field: float | None = None
    pulse_duration: float | None = None
    record_duration: float | None = None
    sample_interval: float | None = None
    r_min: float | None = None
    r_max: float | None = None
    G_min: float | None = None
    G_max: float | None = None
    d_min: float | None = None
    d_max: float | None = None
    delta1_min: float | None = None
    delta1_max: float | None = None
    points: int | None = None
    use_quoted_couplings: bool | None = None


@dataclass(frozen=True)
class RunConfig:
    material: Material
    disc: DiscGeometry
    cantilever: CantileverGeometry
    magnet: DipoleMagnet
    placement: Placement
    environment: EnvironmentSettings = EnvironmentSettings()
    simulation: SimulationSettings = SimulationSettings()
    overrides: Overrides = Overrides()
    experiment: ExperimentSettings = ExperimentSettings()

    def derived(self) -> DerivedParams:
        """Derived parameters with the a0 override applied."""
        return derive_parameters(
            self.material, self.disc, self.cantilever, self.magnet,
            self.placement, temperature=self.environment.temperature,
            a0_override=self.overrides.a0)

    def effective_couplings(self, derived: DerivedParams | None = None
                            ) -> tuple[float, float]:
        """(g_vc, g_nc) after overrides, rad/s."""
        d = derived or self.derived()
        g_vc = self.overrides.g_vc if self.overrides.g_vc is not None else d.g_vc
        g_nc = self.overrides.g_nc if self.overrides.g_nc is not None else d.g_nc
        return g_vc, g_nc


# ---------------------------------------------------------------------------
# value parsing
# ---------------------------------------------------------------------------

def _parse_value(raw: str, kind: str, where: str):
    raw = raw.strip()
    if kind == "str" or kind.startswith("choice:"):
        if kind.startswith("choice:"):
            allowed = kind.split(":", 1)[1].split(",")
            if raw not in allowed:
                raise ValidationError(
                    f"{where}: expected one of {allowed}, got {raw!r}")
        return raw
    if kind == "bool":
        low = raw.lower()
        if low in ("true", "yes", "on", "1"):
            return True
        if low in ("false", "no", "off", "0"):
            return False
        raise ValidationError(f"{where}: expected true/false, got {raw!r}")
    if kind == "int":
        try:
            return int(raw)
        except ValueError:
            raise ValidationError(f"{where}: expected an integer, got {raw!r}")
    if kind == "pm_one":
        try:
            value = int(raw)
        except ValueError:
            raise ValidationError(f"{where}: expected +1 or -1, got {raw!r}")
        if value not in (+1, -1):
            raise ValidationError(f"{where}: expected +1 or -1, got {raw!r}")
        return value

    parts = raw.split()
    if kind == "scalar":
        if len(parts) != 1:
            raise ValidationError(
                f"{where}: dimensionless value must carry no unit, got {raw!r}")
        try:
            return float(parts[0])
        except ValueError:
            raise ValidationError(f"{where}: not a number: {raw!r}")

    table = _UNITS.get(kind)
    if table is None:
        raise ValidationError(f"{where}: unknown kind {kind!r}")
    if len(parts) != 2:
        raise ValidationError(
            f"{where}: expected '<number> <unit>' with unit in "
            f"{sorted(table)}, got {raw!r}")
    number, unit = parts
    if unit not in table:
        raise ValidationError(
            f"{where}: unit {unit!r} not valid for {kind} "
            f"(allowed: {sorted(table)})")
    try:
        return float(number) * table[unit]
    except ValueError:
        raise ValidationError(f"{where}: not a number: {number!r}")


def _line_map(text: str) -> dict[tuple[str, str], int]:
    """(section, key) -> 1-based line number, for error messages."""
    out = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(("#", ";")):
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1].strip()
            out[(section, "")] = lineno
        elif "=" in stripped and section is not None:
            key = stripped.split("=", 1)[0].strip()
            out[(section, key)] = lineno
    return out


def parse_config_text(text: str, origin: str = "<config>") -> RunConfig:
    """Parse a config document; see module docstring for the grammar."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=origin)
    except configparser.Error as exc:
        raise ValidationError(f"{origin}: parse error: {exc}") from exc
    lines = _line_map(text)

    def loc(section, key=""):
        lineno = lines.get((section, key))
        at = f"{origin}:{lineno}" if lineno else origin
        return f"{at}: [{section}] {key}".rstrip()

    missing = [s for s in _REQUIRED_SECTIONS if not parser.has_section(s)]
    if missing:
        raise ValidationError(
            f"{origin}: missing required sections: {', '.join(missing)}")
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ValidationError(f"{loc(section)}: unknown section")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ValidationError(f"{loc(section, key)}: unknown key")

    values: dict[str, dict[str, object]] = {}
    for section, fields in _SCHEMA.items():
        values[section] = {}
        for key, spec in fields.items():
            if parser.has_section(section) and key in parser[section]:
                values[section][key] = _parse_value(
                    parser[section][key], spec.kind, loc(section, key))
            elif spec.required:
                raise ValidationError(
                    f"{loc(section)}: missing required key {key!r}")
            else:
                values[section][key] = spec.default

    # material: Ms xor mu0_Ms
    mat_v = values["material"]
    if (mat_v["Ms"] is None) == (mat_v["mu0_Ms"] is None):
        raise ValidationError(
            f"{loc('material')}: give exactly one of Ms (A/m) or mu0_Ms (T)")
    Ms = mat_v["Ms"] if mat_v["Ms"] is not None else mat_v["mu0_Ms"] / MU0
    material = Material(name=mat_v["name"], Ms=Ms,
                        alpha_llg=mat_v["alpha_llg"], A_ex=mat_v["A_ex"])

    disc = DiscGeometry(radius=values["disc"]["radius"],
                        thickness=values["disc"]["thickness"],
                        polarity=values["disc"]["polarity"],
                        circulation=values["disc"]["circulation"])
    cant_v = values["cantilever"]
    cantilever = CantileverGeometry(
        length=cant_v["length"], width=cant_v["width"],
        thickness=cant_v["thickness"], youngs_modulus=cant_v["youngs_modulus"],
        density=cant_v["density"], tip_extra_mass=cant_v["tip_mass"],
        quality_factor=cant_v["quality_factor"])

    mag_v = values["magnet"]
    dims = [mag_v[k] for k in ("length", "width", "thickness", "magnetization")]
    if mag_v["moment"] is not None:
        if any(v is not None for v in dims):
            raise ValidationError(
                f"{loc('magnet')}: give either moment or dimensions, not both")
        magnet = DipoleMagnet(moment=mag_v["moment"])
    else:
        if any(v is None for v in dims):
            raise ValidationError(
                f"{loc('magnet')}: need moment, or all of length/width/"
                "thickness/magnetization")
        magnet = DipoleMagnet.from_dimensions(*dims[:3], magnetization=dims[3])

    placement = Placement(**values["placement"])
    environment = EnvironmentSettings(**values["environment"])
    simulation = SimulationSettings(**values["simulation"])
    overrides = Overrides(**values["overrides"])
    experiment = ExperimentSettings(**values["experiment"])
    return RunConfig(material=material, disc=disc, cantilever=cantilever,
                     magnet=magnet, placement=placement,
                     environment=environment, simulation=simulation,
                     overrides=overrides, experiment=experiment)


def parse_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, origin=str(path))


def apply_override(cfg: RunConfig, dotted_key: str, raw_value: str) -> RunConfig:
    """Apply one ``section.key=value`` override to a parsed config."""
    if "." not in dotted_key:
        raise ValidationError(
            f"override key must be section.key, got {dotted_key!r}")
    section, key = dotted_key.split(".", 1)
    if section not in _SCHEMA or key not in _SCHEMA[section]:
        raise ValidationError(f"unknown override target {dotted_key!r}")
    text = serialize_config(cfg)
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    parser.read_string(text)
    if not parser.has_section(section):
        parser.add_section(section)
    parser[section][key] = raw_value
    buf = io.StringIO()
    parser.write(buf)
    return parse_config_text(buf.getvalue(), origin=f"<override {dotted_key}>")


def _fmt(value: float, kind: str) -> str:
    return f"{value!r} {_SI_UNIT[kind]}" if kind in _SI_UNIT else repr(value)


def serialize_config(cfg: RunConfig) -> str:
    """Canonical text form; parse(serialize(cfg)) == cfg."""
    mat, disc, cant, mag, place = (cfg.material, cfg.disc, cfg.cantilever,
                                   cfg.magnet, cfg.placement)
    env, sim, ov, exp = (cfg.environment, cfg.simulation, cfg.overrides,
                         cfg.experiment)
    out = []

    def sec(name, pairs):
        body = [f"{k} = {v}" for k, v in pairs if v is not None]
        if body:
            out.append(f"[{name}]")
            out.extend(body)
            out.append("")

    sec("material", [("name", mat.name), ("Ms", _fmt(mat.Ms, "magnetization")),
                     ("alpha_llg", repr(mat.alpha_llg)),
                     ("A_ex", _fmt(mat.A_ex, "exchange"))])
    sec("disc", [("radius", _fmt(disc.radius, "length")),
                 ("thickness", _fmt(disc.thickness, "length")),
                 ("polarity", f"{disc.polarity:+d}"),
                 ("circulation", f"{disc.circulation:+d}")])
    sec("cantilever", [("length", _fmt(cant.length, "length")),
                       ("width", _fmt(cant.width, "length")),
                       ("thickness", _fmt(cant.thickness, "length")),
                       ("youngs_modulus", _fmt(cant.youngs_modulus, "pressure")),
                       ("density", _fmt(cant.density, "density")),
                       ("tip_mass", _fmt(cant.tip_extra_mass, "mass")),
                       ("quality_factor", repr(cant.quality_factor))])
    sec("magnet", [("moment", _fmt(mag.moment, "moment"))])
    sec("placement", [("d_vc", _fmt(place.d_vc, "length")),
                      ("d_nc", _fmt(place.d_nc, "length")),
                      ("y_vn", _fmt(place.y_vn, "length"))])
    sec("environment",
        [("temperature", _fmt(env.temperature, "temperature")),
         ("nv_dephasing_rate", _fmt(env.nv_dephasing_rate, "frequency")),
         ("nv_dephasing_model", env.nv_dephasing_model)])
    sec("simulation", [("n_max", sim.n_max), ("time_samples", sim.time_samples),
                       ("grid_points", sim.grid_points),
                       ("steps_per_unit", sim.steps_per_unit)])
    sec("overrides",
        [("a0", None if ov.a0 is None else _fmt(ov.a0, "length")),
         ("g_vc", None if ov.g_vc is None else _fmt(ov.g_vc, "frequency")),
         ("g_nc", None if ov.g_nc is None else _fmt(ov.g_nc, "frequency"))])
    exp_pairs = []
    for key, spec in _SCHEMA["experiment"].items():
        value = getattr(exp, key)
        if value is None:
            continue
        if spec.kind in _SI_UNIT:
            exp_pairs.append((key, _fmt(value, spec.kind)))
        elif spec.kind == "bool":
            exp_pairs.append((key, "true" if value else "false"))
        else:
            exp_pairs.append((key, value))
    sec("experiment", exp_pairs)
    return "\n".join(out)
