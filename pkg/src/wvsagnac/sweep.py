"""Rotation-rate sweeps: center-shift curves and sensitivity extraction.

For every rotation rate the sweep records the differential phase, the weak
value, the first-order center shift, the shift recovered by fitting the full
output spectrum, and the post-selection probability. The sensitivity k is
the absolute least-squares slope of shift versus rate inside a window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import NM, InterferometerConfig
from .errors import FitFailure, NearOrthogonalSelection
from .spectral import (FORM_EXACT, SpectrumModel, default_grid, fit_center,
                       output_spectrum)
from .weak import SelectionConfig, analytic_wavelength_shift, sagnac_phase, weak_value

# |sin| below this means one path amplitude vanishes identically: the weak
# value is pinned to +/-1 for every rate and the first-order shift is zero.
DEGENERACY_TOL = 1e-9

# Fraction of the sweep range used for the default sensitivity window.
DEFAULT_WINDOW_FRACTION = 0.2


@dataclass(frozen=True)
class ModelSpec:
    name: str
    area_s: float                           # loop area, m^2
    alpha: float                            # pre-selection angle, rad
    beta: float                             # post-selection angle, rad
    probe: SpectrumModel
    omega_range: tuple[float, float, int]   # (min, max, steps), rad/s

    def __post_init__(self):
        if not (math.isfinite(self.area_s) and self.area_s > 0):
            raise ValueError(f"area_s must be positive, got {self.area_s}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")
        lo, hi, steps = self.omega_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"omega_range must satisfy min < max, got {lo}, {hi}")
        if int(steps) != steps or steps < 3:
            raise ValueError(f"omega_range needs at least 3 steps, got {steps}")


@dataclass(frozen=True)
class SweepRow:
    omega: float              # rad/s
    phi: float                # rad
    im_aw: float
    dlambda_analytic: float   # nm
    dlambda_fitted: float     # nm
    postselect_prob: float
    failed: bool = False
    note: str = ""


@dataclass(frozen=True)
class Sensitivity:
    k_analytic: float  # nm per rad/s
    k_fitted: float    # nm per rad/s


@dataclass
class SweepResult:
    rows: list[SweepRow]
    k_analytic: float
    k_fitted: float
    k_window: tuple[float, float]
    form: str
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        omegas = [r.omega for r in self.rows]
        if omegas != sorted(omegas):
            raise ValueError("sweep rows must be sorted by omega")
        for r in self.rows:
            if not r.failed and not 0.0 <= r.postselect_prob <= 1.0 + 1e-12:
                raise ValueError(
                    f"postselect_prob {r.postselect_prob} outside [0, 1]")


def benchmark_models(lambda0: float, dlambda: float, i0: float = 1.0,
                     omega_range: tuple[float, float, int] = (-0.1, 0.1, 201)
                     ) -> list[ModelSpec]:
    """Four benchmark configurations spanning loop area and post-selection angle.

    (S, alpha, beta) = (16, 0.1, -0.5), (16, 0.1, -0.3), (16, 0.1, -0.1),
    (3, 0.1, -0.1); S = 16 m^2 corresponds to a 4 x 4 m ring. The probe
    parameters are the caller's responsibility (lambda0 and dlambda in nm).
    """
    probe = SpectrumModel(i0=i0, lambda0=lambda0, width_dlambda=dlambda)
    table = [("model1", 16.0, 0.1, -0.5),
             ("model2", 16.0, 0.1, -0.3),
             ("model3", 16.0, 0.1, -0.1),
             ("model4", 3.0, 0.1, -0.1)]
    return [ModelSpec(name=name, area_s=s, alpha=a, beta=b, probe=probe,
                      omega_range=omega_range)
            for name, s, a, b in table]


def _degeneracy_warnings(model: ModelSpec) -> list[str]:
    notes = []
    if abs(math.sin(model.alpha + model.beta)) < DEGENERACY_TOL:
        notes.append(
            f"{model.name}: alpha+beta = {model.alpha + model.beta:g} makes the "
            "m amplitude vanish identically; the weak value is pinned at -1, "
            "Im(A_w) = 0, and the first-order center shift is identically zero")
    if abs(math.sin(model.alpha)) < DEGENERACY_TOL:
        notes.append(
            f"{model.name}: alpha = {model.alpha:g} makes the n amplitude vanish "
            "identically; the weak value is pinned at +1, Im(A_w) = 0, and the "
            "first-order center shift is identically zero")
    return notes


def default_window(omega_range: tuple[float, float, int],
                   fraction: float = DEFAULT_WINDOW_FRACTION
                   ) -> tuple[float, float]:
    """Central `fraction` of the sweep range, the default sensitivity window."""
    lo, hi, _ = omega_range
    center = 0.5 * (lo + hi)
    half = 0.5 * fraction * (hi - lo)
    return (center - half, center + half)


def run_sweep(model: ModelSpec, form: str = FORM_EXACT) -> SweepResult:
    """Evaluate the shift curve over the model's rate range.

    The fitted shift of every row is reported relative to the fitted center
    of the zero-rotation spectrum, which removes any constant bias the
    modulation leaves in the fit. Rows whose selection is effectively
    orthogonal are flagged and carry NaNs instead of aborting the sweep.
    Output is deterministic and independent of evaluation order.
    """
    cfg = InterferometerConfig(area_s=model.area_s,
                               lambda0=model.probe.lambda0 * NM)
    g = model.probe.lambda0  # coupling length = center wavelength, nm
    grid = default_grid(model.probe)

    # Zero-rotation reference; a failure here is not row-isolated because
    # every fitted shift is measured against it.
    wv0 = weak_value(SelectionConfig(model.alpha, model.beta, 0.0))
    ref_center = fit_center(output_spectrum(model.probe, wv0, g, grid, form)).center

    lo, hi, steps = model.omega_range
    rows: list[SweepRow] = []
    for omega in np.linspace(lo, hi, int(steps)):
        omega = float(omega)
        phi = sagnac_phase(cfg, omega)
        try:
            wv = weak_value(SelectionConfig(model.alpha, model.beta, phi))
        except NearOrthogonalSelection as exc:
            rows.append(SweepRow(omega=omega, phi=phi, im_aw=math.nan,
                                 dlambda_analytic=math.nan, dlambda_fitted=math.nan,
                                 postselect_prob=0.0, failed=True, note=str(exc)))
            continue
        analytic = analytic_wavelength_shift(model.probe, wv.a_w)
        try:
            fitted = fit_center(output_spectrum(model.probe, wv, g, grid, form)
                                ).center - ref_center
        except FitFailure as exc:
            rows.append(SweepRow(omega=omega, phi=phi, im_aw=wv.a_w.imag,
                                 dlambda_analytic=analytic, dlambda_fitted=math.nan,
                                 postselect_prob=wv.postselect_prob,
                                 failed=True, note=str(exc)))
            continue
        rows.append(SweepRow(omega=omega, phi=phi, im_aw=wv.a_w.imag,
                             dlambda_analytic=analytic, dlambda_fitted=fitted,
                             postselect_prob=wv.postselect_prob))

    warnings = _degeneracy_warnings(model)
    window = default_window(model.omega_range)
    result = SweepResult(rows=rows, k_analytic=math.nan, k_fitted=math.nan,
                         k_window=window, form=form, warnings=warnings)
    try:
        k = sensitivity(result, window)
        result.k_analytic, result.k_fitted = k.k_analytic, k.k_fitted
    except ValueError as exc:
        result.warnings.append(f"sensitivity window unusable: {exc}")
    return result


def sensitivity(sweep: SweepResult, window: tuple[float, float]) -> Sensitivity:
    """Absolute least-squares slope of shift vs rate inside the window.

    Computed independently for the analytic and the fitted columns; failed
    rows are excluded. Requires at least 3 usable rows in the window.
    """
    lo, hi = window
    if not lo < hi:
        raise ValueError(f"window must satisfy lo < hi, got {window}")
    rows = [r for r in sweep.rows if lo <= r.omega <= hi and not r.failed]
    if len(rows) < 3:
        raise ValueError(
            f"need at least 3 usable rows inside the window, got {len(rows)}")
    omegas = np.array([r.omega for r in rows])
    k_analytic = abs(np.polyfit(omegas,
                                [r.dlambda_analytic for r in rows], 1)[0])
    k_fitted = abs(np.polyfit(omegas,
                              [r.dlambda_fitted for r in rows], 1)[0])
    return Sensitivity(k_analytic=float(k_analytic), k_fitted=float(k_fitted))
