"""Command-line front end.

Five subcommands: simulate, sweep, design, geometry, classical. Parameters
come from flags, which override a flat `key = value` config file (see
--config), which overrides built-in defaults. Physics parameters (lambda0,
dlambda, alpha, beta, area, ...) have no built-in defaults: omitting one is
a usage error, never a silent guess.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 fit failure,
5 infeasible design (the JSON report is still emitted).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .classical import InterferometerConfig, classical_intensity, fringe_shift
from .design import DesignConstraints, min_area
from .errors import FitFailure
from .geometry import multipass_design
from .serialize import (classical_to_csv, classical_to_json, geometry_to_csv,
                        geometry_to_json, solution_to_csv, solution_to_json,
                        spectrum_to_csv, spectrum_to_json, sweep_to_csv,
                        sweep_to_json)
from .spectral import SpectrumModel, default_grid, output_spectrum
from .sweep import ModelSpec, run_sweep, sensitivity
from .weak import SelectionConfig, sagnac_phase, weak_value

EXIT_DOMAIN_ERROR = 3
EXIT_FIT_FAILURE = 4
EXIT_INFEASIBLE = 5


def _load_config(path: str) -> dict[str, str]:
    """Parse a flat config file: one `key = value` per line, '#' comments."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(
                f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = line.split("=", 1)
        mapping[key.strip().replace("-", "_")] = value.strip()
    return mapping


class _Params:
    """Flag-over-config-over-default resolution for one command."""

    def __init__(self, config_path: str | None):
        self.config = _load_config(config_path) if config_path else {}

    def get(self, name: str, flag_value, convert=float, default=None,
            required: bool = False):
        if flag_value is not None:
            return flag_value
        key = name.replace("-", "_")
        if key in self.config:
            raw = self.config[key]
            try:
                return convert(raw)
            except ValueError:
                raise click.UsageError(
                    f"config key {name!r}: cannot parse value {raw!r}")
        if required:
            raise click.UsageError(
                f"missing required parameter '--{name}' "
                "(pass the flag or set it in the config file)")
        return default


def _parse_float_list(raw: str) -> list[float]:
    items = [tok for tok in raw.replace(";", ",").split(",") if tok.strip()]
    if not items:
        raise ValueError("empty list")
    return [float(tok) for tok in items]


def _check_form(value: str) -> str:
    if value not in ("paper", "exact"):
        raise ValueError(f"form must be 'paper' or 'exact', got {value!r}")
    return value


def _emit(text: str, out_path: str):
    if out_path == "-":
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text)


def _common_options(f):
    f = click.option("--config", "config_path",
                     type=click.Path(exists=True, dir_okay=False),
                     default=None, help="Flat 'key = value' config file; "
                     "flags override its values.")(f)
    f = click.option("--out", "out_path", default="-", show_default=True,
                     help="Output path; '-' writes to stdout.")(f)
    return f


def _format_option(default: str):
    return click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                        default=default, show_default=True,
                        help="Artifact format.")


_form_option = click.option("--form", type=click.Choice(["paper", "exact"]),
                            default=None,
                            help="Spectrum form: full modulus (exact) or its "
                            "first-order reduction (paper). [default: exact]")


@click.group()
def main():
    """Weak-value amplified Sagnac rotation sensing toolkit."""


@main.command()
@click.option("--alpha", type=float, default=None, help="Pre-selection angle, rad.")
@click.option("--beta", type=float, default=None, help="Post-selection angle, rad.")
@click.option("--area", type=float, default=None, help="Loop area S, m^2.")
@click.option("--omega", type=float, default=None, help="Rotation rate, rad/s.")
@click.option("--lambda0", type=float, default=None, help="Center wavelength, nm.")
@click.option("--dlambda", type=float, default=None, help="Probe width, nm.")
@click.option("--i0", type=float, default=None, help="Peak intensity. [default: 1]")
@click.option("--grid-points", type=int, default=None,
              help="Wavelength grid points. [default: 2048]")
@click.option("--grid-span", type=float, default=None,
              help="Grid half span in probe widths. [default: 4]")
@_form_option
@_format_option("csv")
@_common_options
def simulate(alpha, beta, area, omega, lambda0, dlambda, i0, grid_points,
             grid_span, form, fmt, config_path, out_path):
    """Post-selected output spectrum at one rotation rate."""
    p = _Params(config_path)
    alpha = p.get("alpha", alpha, required=True)
    beta = p.get("beta", beta, required=True)
    area = p.get("area", area, required=True)
    omega = p.get("omega", omega, required=True)
    lambda0 = p.get("lambda0", lambda0, required=True)
    dlambda = p.get("dlambda", dlambda, required=True)
    i0 = p.get("i0", i0, default=1.0)
    grid_points = p.get("grid-points", grid_points, convert=int, default=2048)
    grid_span = p.get("grid-span", grid_span, default=4.0)
    form = p.get("form", form, convert=_check_form, default="exact")
    try:
        probe = SpectrumModel(i0=i0, lambda0=lambda0, width_dlambda=dlambda)
        cfg = InterferometerConfig.from_nm(area_s=area, lambda0_nm=lambda0)
        wv = weak_value(SelectionConfig(alpha, beta, sagnac_phase(cfg, omega)))
        spec = output_spectrum(probe, wv, g=lambda0,
                               grid=default_grid(probe, grid_points, grid_span),
                               form=form)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    _emit(spectrum_to_csv(spec) if fmt == "csv" else spectrum_to_json(spec),
          out_path)


@main.command()
@click.option("--omega-min", type=float, default=None, help="Sweep start, rad/s.")
@click.option("--omega-max", type=float, default=None, help="Sweep end, rad/s.")
@click.option("--steps", type=int, default=None, help="Sweep rows. [default: 201]")
@click.option("--alpha", type=float, default=None, help="Pre-selection angle, rad.")
@click.option("--beta", type=float, default=None, help="Post-selection angle, rad.")
@click.option("--area", type=float, default=None, help="Loop area S, m^2.")
@click.option("--lambda0", type=float, default=None, help="Center wavelength, nm.")
@click.option("--dlambda", type=float, default=None, help="Probe width, nm.")
@click.option("--i0", type=float, default=None, help="Peak intensity. [default: 1]")
@click.option("--window-lo", type=float, default=None,
              help="Sensitivity window start, rad/s. [default: central 20%]")
@click.option("--window-hi", type=float, default=None,
              help="Sensitivity window end, rad/s. [default: central 20%]")
@_form_option
@_format_option("csv")
@_common_options
def sweep(omega_min, omega_max, steps, alpha, beta, area, lambda0, dlambda,
          i0, window_lo, window_hi, form, fmt, config_path, out_path):
    """Center-shift curve and sensitivity over a rotation-rate range."""
    p = _Params(config_path)
    omega_min = p.get("omega-min", omega_min, required=True)
    omega_max = p.get("omega-max", omega_max, required=True)
    steps = p.get("steps", steps, convert=int, default=201)
    alpha = p.get("alpha", alpha, required=True)
    beta = p.get("beta", beta, required=True)
    area = p.get("area", area, required=True)
    lambda0 = p.get("lambda0", lambda0, required=True)
    dlambda = p.get("dlambda", dlambda, required=True)
    i0 = p.get("i0", i0, default=1.0)
    window_lo = p.get("window-lo", window_lo)
    window_hi = p.get("window-hi", window_hi)
    form = p.get("form", form, convert=_check_form, default="exact")
    if (window_lo is None) != (window_hi is None):
        raise click.UsageError("--window-lo and --window-hi must be given together")
    try:
        probe = SpectrumModel(i0=i0, lambda0=lambda0, width_dlambda=dlambda)
        model = ModelSpec(name="cli", area_s=area, alpha=alpha, beta=beta,
                          probe=probe, omega_range=(omega_min, omega_max, steps))
        result = run_sweep(model, form=form)
        if window_lo is not None:
            k = sensitivity(result, (window_lo, window_hi))
            result.k_analytic, result.k_fitted = k.k_analytic, k.k_fitted
            result.k_window = (window_lo, window_hi)
    except FitFailure as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FIT_FAILURE)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    _emit(sweep_to_csv(result) if fmt == "csv" else sweep_to_json(result),
          out_path)


@main.command()
@click.option("--alpha", type=float, default=None, help="Pre-selection angle, rad.")
@click.option("--lambda0", type=float, default=None, help="Center wavelength, nm.")
@click.option("--dlambda", type=float, default=None, help="Probe width, nm.")
@click.option("--i0", type=float, default=None, help="Source peak intensity.")
@click.option("--i-min", type=float, default=None,
              help="Spectrometer detection floor, same units as --i0.")
@click.option("--dlambda-res", type=float, default=None,
              help="Smallest resolvable center shift, nm.")
@click.option("--omega-target", type=float, default=None,
              help="Rotation accuracy to resolve, rad/s.")
@click.option("--beta-grid", type=str, default=None,
              help="Comma-separated post-selection angles to try, rad.")
@click.option("--area-lo", type=float, default=None, help="Area bracket low, m^2.")
@click.option("--area-hi", type=float, default=None, help="Area bracket high, m^2.")
@_format_option("json")
@_common_options
def design(alpha, lambda0, dlambda, i0, i_min, dlambda_res, omega_target,
           beta_grid, area_lo, area_hi, fmt, config_path, out_path):
    """Smallest feasible loop area under detection and resolution floors."""
    p = _Params(config_path)
    alpha = p.get("alpha", alpha, required=True)
    lambda0 = p.get("lambda0", lambda0, required=True)
    dlambda = p.get("dlambda", dlambda, required=True)
    i0 = p.get("i0", i0, required=True)
    i_min = p.get("i-min", i_min, required=True)
    dlambda_res = p.get("dlambda-res", dlambda_res, required=True)
    omega_target = p.get("omega-target", omega_target, required=True)
    betas = p.get("beta-grid", beta_grid, convert=str, required=True)
    area_lo = p.get("area-lo", area_lo, required=True)
    area_hi = p.get("area-hi", area_hi, required=True)
    try:
        beta_values = _parse_float_list(betas)
    except ValueError:
        raise click.UsageError(
            f"--beta-grid: cannot parse {betas!r} as comma-separated angles")
    try:
        constraints = DesignConstraints(
            i0=i0, i_min=i_min, delta_lambda_res=dlambda_res,
            omega_target=omega_target, alpha=alpha,
            probe=SpectrumModel(i0=i0, lambda0=lambda0, width_dlambda=dlambda))
        solution = min_area(constraints, beta_values, (area_lo, area_hi))
    except FitFailure as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FIT_FAILURE)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    _emit(solution_to_json(solution) if fmt == "json" else solution_to_csv(solution),
          out_path)
    if not solution.feasible:
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.option("--theta-deg", type=int, default=None,
              help="Injection angle, integer degrees in (0, 90).")
@click.option("--rs", type=float, default=None, help="Device radius, m.")
@_format_option("json")
@_common_options
def geometry(theta_deg, rs, fmt, config_path, out_path):
    """Multipass loop turn count and equivalent area for one injection angle."""
    p = _Params(config_path)
    theta_deg = p.get("theta-deg", theta_deg, convert=int, required=True)
    rs = p.get("rs", rs, required=True)
    try:
        design_ = multipass_design(theta_deg, rs)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    _emit(geometry_to_json(design_) if fmt == "json" else geometry_to_csv(design_),
          out_path)


@main.command()
@click.option("--area", type=float, default=None, help="Loop area S, m^2.")
@click.option("--lambda0", type=float, default=None, help="Center wavelength, nm.")
@click.option("--omega", type=float, default=None, help="Rotation rate, rad/s.")
@click.option("--amplitude", type=float, default=None,
              help="Intensity amplitude A. [default: 1]")
@click.option("--mod-phase", type=float, default=None,
              help="Modulation phase, rad. [default: 0]")
@_format_option("csv")
@_common_options
def classical(area, lambda0, omega, amplitude, mod_phase, fmt, config_path,
              out_path):
    """Classical fringe shift and output intensity at one rotation rate."""
    p = _Params(config_path)
    area = p.get("area", area, required=True)
    lambda0 = p.get("lambda0", lambda0, required=True)
    omega = p.get("omega", omega, required=True)
    amplitude = p.get("amplitude", amplitude, default=1.0)
    mod_phase = p.get("mod-phase", mod_phase, default=0.0)
    try:
        cfg = InterferometerConfig.from_nm(area_s=area, lambda0_nm=lambda0,
                                           mod_phase=mod_phase)
        dz = fringe_shift(cfg, omega)
        intensity = classical_intensity(cfg, amplitude, omega)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    _emit(classical_to_csv(omega, dz, intensity) if fmt == "csv"
          else classical_to_json(omega, dz, intensity), out_path)


if __name__ == "__main__":
    main()
