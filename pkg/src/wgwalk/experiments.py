"""Named scenarios that regenerate the figure data sets as time series.

Physical time never appears at this layer: grids are in the dimensionless
``tau = J t / pi`` (the fig* scenarios) or in ``theta = J t``, ``theta0 = J T``
(HOM scan), and are converted right before calling the engines.
"""

from __future__ import annotations

import dataclasses
import math
import re
from dataclasses import dataclass

import numpy as np

from . import fock, gaussian, lattice
from .errors import ConfigError
from .series import TimeSeries

EXPERIMENTS = ("fig1-transport", "fig2-squeezing", "fig3-squeezing-center", "fig4-witness", "hom-scan", "custom")
ALIASES = {
    "fig1": "fig1-transport",
    "fig2": "fig2-squeezing",
    "fig3": "fig3-squeezing-center",
    "fig4": "fig4-witness",
    "hom": "hom-scan",
}


def canonical_experiment(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment '{name}'", key="experiment")
    return name


@dataclass(frozen=True)
class InputSpec:
    """Light launched into the array.

    ``kind`` is ``single`` (one photon in ``guide``), ``fock`` (explicit
    ``occupations``) or ``squeezed`` (vacuum squeezed by ``r`` at phase
    ``phi`` in ``guide``).
    """

    kind: str
    guide: int = 1
    occupations: tuple[int, ...] = ()
    r: float = 0.0
    phi: float = 0.0

    def encode(self) -> str:
        if self.kind == "single":
            return f"single:{self.guide}"
        if self.kind == "fock":
            return "fock:" + ",".join(str(n) for n in self.occupations)
        return f"squeezed:{self.guide}:{self.r!r}:{self.phi!r}"

    def with_guide(self, guide: int) -> "InputSpec":
        if self.kind == "fock":
            raise ConfigError("cannot set an input guide on a fock input", key="input")
        return dataclasses.replace(self, guide=guide)


_PI_RE = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?)\*?pi(?:/(\d+\.?\d*))?$")


def parse_number(text: str, key: str | None = None, line: int | None = None) -> float:
    """Parse a float, also accepting multiples of pi such as ``3pi/2`` or ``pi``."""
    s = text.strip().lower().replace(" ", "")
    m = _PI_RE.match(s)
    try:
        if m:
            coef = m.group(1)
            coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
            value = coef * math.pi / (float(m.group(2)) if m.group(2) else 1.0)
        else:
            value = float(s)
    except ValueError:
        raise ConfigError(f"malformed number '{text}'", key=key, line=line) from None
    if not math.isfinite(value):
        raise ConfigError(f"value '{text}' is not finite", key=key, line=line)
    return value


def parse_int(text: str, key: str | None = None, line: int | None = None) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"malformed integer '{text}'", key=key, line=line) from None


def parse_input(text: str, key: str = "input", line: int | None = None) -> InputSpec:
    kind, _, rest = text.strip().partition(":")
    parts = rest.split(":") if rest else []
    if kind == "single" and len(parts) == 1:
        return InputSpec("single", guide=parse_int(parts[0], key, line))
    if kind == "fock" and len(parts) == 1:
        occ = tuple(parse_int(x, key, line) for x in parts[0].split(","))
        return InputSpec("fock", occupations=occ)
    if kind == "squeezed" and len(parts) == 3:
        return InputSpec(
            "squeezed",
            guide=parse_int(parts[0], key, line),
            r=parse_number(parts[1], key, line),
            phi=parse_number(parts[2], key, line),
        )
    raise ConfigError(
        f"malformed input '{text}'; expected single:L, fock:n1,n2,... or squeezed:L:r:phi",
        key=key,
        line=line,
    )


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "custom"
    n_guides: int = 2
    coupling: float = 1.0
    detuning: float = 0.0
    input: InputSpec = InputSpec("single", 1)
    input_b: InputSpec | None = None
    tau_start: float = 0.0
    tau_stop: float = 1.0
    tau_steps: int = 201
    theta_start: float = 0.0
    theta_stop: float = math.pi
    theta_steps: int = 50
    theta0_start: float = 0.0
    theta0_stop: float = math.pi
    theta0_steps: int = 50
    n_max: int | None = None
    output: str | None = None

    def validate(self) -> "ExperimentConfig":
        canonical_experiment(self.experiment)
        if self.n_guides < 1:
            raise ConfigError(f"n_guides must be >= 1, got {self.n_guides}", key="n_guides")
        for key in ("coupling", "detuning", "tau_start", "tau_stop", "theta_start",
                    "theta_stop", "theta0_start", "theta0_stop"):
            if not math.isfinite(getattr(self, key)):
                raise ConfigError("value must be finite", key=key)
        # tau = J t / pi cannot be inverted at J = 0
        if self.coupling <= 0:
            raise ConfigError(f"coupling must be > 0, got {self.coupling}", key="coupling")
        if self.tau_steps < 2:
            raise ConfigError(f"tau_steps must be >= 2, got {self.tau_steps}", key="tau_steps")
        if not self.tau_stop > self.tau_start:
            raise ConfigError("tau_stop must exceed tau_start", key="tau_stop")
        if self.experiment == "hom-scan":
            if self.n_guides != 2:
                raise ConfigError("hom-scan requires n_guides=2", key="n_guides")
            for prefix in ("theta", "theta0"):
                if getattr(self, f"{prefix}_steps") < 2:
                    raise ConfigError("need at least 2 steps", key=f"{prefix}_steps")
                if not getattr(self, f"{prefix}_stop") > getattr(self, f"{prefix}_start"):
                    raise ConfigError(f"{prefix}_stop must exceed {prefix}_start", key=f"{prefix}_stop")
            if self.theta0_start < 0:
                raise ConfigError("injection delay cannot be negative", key="theta0_start")
        for name in ("input", "input_b"):
            spec = getattr(self, name)
            if spec is not None:
                self._validate_input(spec, name)
        if self.n_max is not None and self.n_max < 0:
            raise ConfigError("n_max must be >= 0", key="n_max")
        return self

    def _validate_input(self, spec: InputSpec, key: str):
        if spec.kind == "fock":
            if len(spec.occupations) != self.n_guides:
                raise ConfigError(
                    f"fock input lists {len(spec.occupations)} occupations for {self.n_guides} guides",
                    key=key,
                )
            if min(spec.occupations) < 0:
                raise ConfigError("occupations must be >= 0", key=key)
            return
        if not 1 <= spec.guide <= self.n_guides:
            raise ConfigError(f"input guide {spec.guide} outside 1..{self.n_guides}", key=key)
        if spec.kind == "squeezed" and spec.r < 0:
            raise ConfigError("squeezing magnitude must be >= 0", key=key)

    @property
    def array(self) -> lattice.WaveguideArray:
        return lattice.WaveguideArray(self.n_guides, self.coupling, self.detuning)

    def tau_grid(self) -> np.ndarray:
        return np.linspace(self.tau_start, self.tau_stop, self.tau_steps)

    def times(self) -> np.ndarray:
        return math.pi * self.tau_grid() / self.coupling

    def to_pairs(self) -> dict[str, str]:
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if value is None:
                continue
            out[f.name] = value.encode() if isinstance(value, InputSpec) else (
                repr(value) if isinstance(value, float) else str(value)
            )
        return out


DEFAULTS = {
    "fig1-transport": dict(n_guides=6, input=InputSpec("single", 1), tau_stop=1.0),
    "fig2-squeezing": dict(n_guides=5, input=InputSpec("squeezed", 1, r=0.7, phi=0.0), tau_stop=1.0),
    "fig3-squeezing-center": dict(
        n_guides=5, input=InputSpec("squeezed", 3, r=0.7, phi=0.0), tau_stop=2.0
    ),
    "fig4-witness": dict(
        n_guides=6,
        input=InputSpec("squeezed", 1, r=0.7, phi=3 * math.pi / 2),
        input_b=InputSpec("squeezed", 1, r=0.6, phi=math.pi),
        tau_stop=2.0,
    ),
    "hom-scan": dict(n_guides=2, input=InputSpec("fock", occupations=(1, 1))),
    "custom": dict(),
}

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}


def default_config(experiment: str) -> ExperimentConfig:
    name = canonical_experiment(experiment)
    return ExperimentConfig(experiment=name, **DEFAULTS[name])


def coerce_value(key: str, text: str, line: int | None = None):
    if key not in _FIELD_TYPES:
        raise ConfigError("unknown key", key=key, line=line)
    if key in ("input", "input_b"):
        return parse_input(text, key, line)
    if key == "experiment":
        try:
            return canonical_experiment(text.strip())
        except ConfigError as exc:
            raise ConfigError(exc.reason, key=key, line=line) from None
    if key == "output":
        return text.strip()
    if key in ("n_guides", "tau_steps", "theta_steps", "theta0_steps", "n_max"):
        return parse_int(text, key, line)
    return parse_number(text, key, line)


def parse_config(text: str, overrides: dict | None = None) -> ExperimentConfig:
    """Parse line-oriented ``key=value`` text into a validated config.

    The ``experiment`` key selects figure-caption defaults; every other key
    overrides them. ``overrides`` (already typed values, e.g. from CLI
    flags) are applied last; besides config fields they may carry
    ``input_guide`` (moves the input) and ``squeeze`` (an ``(r, phi)`` pair
    that turns the input into a squeezed vacuum).
    """
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"expected key=value, got '{raw.strip()}'", line=lineno)
        if key in values:
            raise ConfigError("duplicate key", key=key, line=lineno)
        values[key] = coerce_value(key, value, lineno)
        lines[key] = lineno
    overrides = dict(overrides or {})
    input_guide = overrides.pop("input_guide", None)
    squeeze = overrides.pop("squeeze", None)
    values.update(overrides)
    base = default_config(values.pop("experiment", "custom"))
    config = dataclasses.replace(base, **values)
    if input_guide is not None:
        config = dataclasses.replace(config, input=config.input.with_guide(input_guide))
    if squeeze is not None:
        r, phi = squeeze
        guide = config.input.guide if config.input.kind != "fock" else 1
        config = dataclasses.replace(config, input=InputSpec("squeezed", guide, r=r, phi=phi))
    try:
        return config.validate()
    except ConfigError as exc:
        if exc.line is None and exc.key in lines:
            raise ConfigError(exc.reason, key=exc.key, line=lines[exc.key]) from None
        raise


def _metadata(config: ExperimentConfig, **extra) -> dict[str, str]:
    meta = config.to_pairs()
    meta.update({k: str(v) for k, v in extra.items()})
    return meta


def _squeezed(spec: InputSpec) -> gaussian.SqueezedInput:
    if spec.kind != "squeezed":
        raise ConfigError(f"experiment needs a squeezed input, got '{spec.encode()}'", key="input")
    return gaussian.SqueezedInput(spec.guide, spec.r, spec.phi)


def _input_guide(spec: InputSpec) -> int:
    if spec.kind == "fock":
        raise ConfigError("experiment needs a single-guide input", key="input")
    return spec.guide


def _moment_series(config: ExperimentConfig, squeezed: gaussian.SqueezedInput):
    array = config.array
    m0 = gaussian.initial_moments(squeezed, array.n_guides)
    for t in config.times():
        yield gaussian.propagate_moments(m0, lattice.propagator(array, t))


def run_fig1(config: ExperimentConfig) -> TimeSeries:
    """Normalized intensity ``|A_{j,l}|^2`` per guide for light launched in guide ``l``."""
    l = _input_guide(config.input)
    table = lattice.transport_intensity(config.array, l, config.times())
    table.data[:, 0] = config.tau_grid()
    return TimeSeries(["tau"] + table.columns[1:], table.data, _metadata(config))


def _squeezing_table(config, quadratures):
    squeezed = _squeezed(config.input)
    n = config.n_guides
    rows = []
    for tau, moments in zip(config.tau_grid(), _moment_series(config, squeezed)):
        records = gaussian.squeezing_factors(moments)
        row = [tau]
        if "q" in quadratures:
            row += [rec.s_q for rec in records]
        if "p" in quadratures:
            row += [rec.s_p for rec in records]
        rows.append(row)
    columns = ["tau"]
    for quad in quadratures:
        columns += [f"s{quad}_{j}" for j in range(1, n + 1)]
    return TimeSeries(columns, np.array(rows), _metadata(config))


def run_fig2(config: ExperimentConfig) -> TimeSeries:
    """q-quadrature squeezing factor of every guide."""
    return _squeezing_table(config, "q")


def run_fig3(config: ExperimentConfig) -> TimeSeries:
    """Both squeezing factors of every guide (default input in the central guide)."""
    return _squeezing_table(config, "qp")


def _witness_table(config: ExperimentConfig, spec: InputSpec, label: str) -> TimeSeries:
    squeezed = _squeezed(spec)
    ref = squeezed.guide
    partners = [k for k in range(1, config.n_guides + 1) if k != ref]
    rows = []
    for tau, moments in zip(config.tau_grid(), _moment_series(config, squeezed)):
        rows.append([tau] + [gaussian.entanglement_witness(moments, ref, k) for k in partners])
    columns = ["tau"] + [f"M_{ref}_{k}" for k in partners]
    meta = _metadata(config, set=label, witness_input=spec.encode())
    if config.experiment == "fig4-witness":
        meta["assumption"] = "squeezed input guide not given in the figure caption; guide 1 used"
    return TimeSeries(columns, np.array(rows), meta)


def run_fig4(config: ExperimentConfig) -> dict[str, TimeSeries]:
    """Witness ``M(l, k)`` against every other guide, one series per parameter set."""
    sets = {"a": config.input}
    if config.input_b is not None:
        sets["b"] = config.input_b
    return {label: _witness_table(config, spec, label) for label, spec in sets.items()}


def hom_grid(config: ExperimentConfig):
    """(theta, theta0) pairs of the scan with injection no later than detection."""
    thetas = np.linspace(config.theta_start, config.theta_stop, config.theta_steps)
    delays = np.linspace(config.theta0_start, config.theta0_stop, config.theta0_steps)
    return [(th, th0) for th in thetas for th0 in delays if th0 <= th]


def run_hom_scan(config: ExperimentConfig) -> TimeSeries:
    """Coincidence probability from the closed form and from the Fock-space protocol."""
    array = config.array
    J = array.coupling
    rows = []
    grid = hom_grid(config)
    for theta, theta0 in grid:
        p = fock.hom_coincidence(array, theta, theta0).coincidence
        q = fock.hom_coincidence_oracle(array, theta / J, theta0 / J)
        rows.append([theta, theta0, p, q, abs(p - q)])
    data = np.array(rows, dtype=float).reshape(len(rows), 5)
    skipped = config.theta_steps * config.theta0_steps - len(grid)
    max_diff = float(data[:, 4].max()) if len(rows) else 0.0
    meta = _metadata(config, max_abs_diff=format(max_diff, ".17g"), skipped_points=skipped)
    return TimeSeries(["theta", "theta0", "p_closed", "p_oracle", "abs_diff"], data, meta)


def run_custom(config: ExperimentConfig) -> TimeSeries:
    """Run whatever the input calls for.

    ``single`` gives transport intensities, ``fock`` gives mean occupations
    from the Fock-space evolution, ``squeezed`` gives both squeezing factors
    and the witness against the input guide.
    """
    spec = config.input
    if spec.kind == "single":
        return run_fig1(config)
    if spec.kind == "fock":
        array = config.array
        total = sum(spec.occupations)
        basis = fock.FockBasis(array.n_guides, config.n_max if config.n_max is not None else total)
        psi0 = fock.fock_input_state(basis, spec.occupations)
        rows = [
            [tau] + list(fock.evolve(psi0, array, t).mean_occupations())
            for tau, t in zip(config.tau_grid(), config.times())
        ]
        columns = ["tau"] + [f"n_{j}" for j in range(1, array.n_guides + 1)]
        return TimeSeries(columns, np.array(rows), _metadata(config))
    squeeze = _squeezing_table(config, "qp")
    if config.n_guides == 1:
        return squeeze
    witness = _witness_table(config, spec, "a")
    columns = squeeze.columns + witness.columns[1:]
    data = np.hstack([squeeze.data, witness.data[:, 1:]])
    return TimeSeries(columns, data, _metadata(config))


RUNNERS = {
    "fig1-transport": run_fig1,
    "fig2-squeezing": run_fig2,
    "fig3-squeezing-center": run_fig3,
    "fig4-witness": run_fig4,
    "hom-scan": run_hom_scan,
    "custom": run_custom,
}


def run(config: ExperimentConfig) -> dict[str, TimeSeries]:
    """Run an experiment; keys are output-file suffixes (``""`` for a single file)."""
    result = RUNNERS[config.experiment](config)
    if isinstance(result, TimeSeries):
        return {"": result}
    return {f"-{label}": series for label, series in result.items()}
