"""Plot-ready CSV and JSON emission for every result type.

CSV floats carry 17 significant digits ('.' decimal, no separators) so a
round trip through text is lossless; JSON uses Python's shortest-round-trip
float encoding. Emission is deterministic: the same inputs always produce
byte-identical artifacts.
"""

from __future__ import annotations

import json
import math

from .design import DesignSolution
from .geometry import MultipassDesign
from .spectral import SampledSpectrum
from .sweep import SweepResult


def fmt(x: float) -> str:
    """One float as CSV text, 17 significant digits."""
    return f"{x:.17g}"


def _nan_to_none(x: float):
    return None if isinstance(x, float) and math.isnan(x) else x


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def spectrum_to_csv(spec: SampledSpectrum) -> str:
    lines = ["lambda_nm,intensity"]
    lines += [f"{fmt(lam)},{fmt(inten)}"
              for lam, inten in zip(spec.wavelengths, spec.intensities)]
    return "\n".join(lines) + "\n"


def spectrum_to_json(spec: SampledSpectrum) -> str:
    return _dumps({
        "form": spec.form_tag,
        "lambda_nm": [float(v) for v in spec.wavelengths],
        "intensity": [float(v) for v in spec.intensities],
    })


def sweep_to_csv(result: SweepResult) -> str:
    lines = [f"# warning: {w}" for w in result.warnings]
    lines += [f"# k_analytic_nm_per_rad_s={fmt(result.k_analytic)}",
              f"# k_fitted_nm_per_rad_s={fmt(result.k_fitted)}",
              "omega,phi,im_aw,dlambda_analytic_nm,dlambda_fitted_nm,postselect_prob"]
    for r in result.rows:
        lines.append(",".join(fmt(v) for v in (
            r.omega, r.phi, r.im_aw, r.dlambda_analytic, r.dlambda_fitted,
            r.postselect_prob)))
    return "\n".join(lines) + "\n"


def sweep_to_json(result: SweepResult) -> str:
    return _dumps({
        "form": result.form,
        "k_analytic": _nan_to_none(result.k_analytic),
        "k_fitted": _nan_to_none(result.k_fitted),
        "k_window": list(result.k_window),
        "warnings": list(result.warnings),
        "rows": [{
            "omega": r.omega,
            "phi": r.phi,
            "im_aw": _nan_to_none(r.im_aw),
            "dlambda_analytic_nm": _nan_to_none(r.dlambda_analytic),
            "dlambda_fitted_nm": _nan_to_none(r.dlambda_fitted),
            "postselect_prob": r.postselect_prob,
            "failed": r.failed,
            "note": r.note,
        } for r in result.rows],
    })


def geometry_to_json(design: MultipassDesign) -> str:
    return _dumps({
        "theta_deg": design.theta_deg,
        "n_turns": design.n_turns,
        "area_equiv_m2": design.area_equiv,
        "ratio_vs_square": design.area_equiv / (4.0 * design.radius_rs ** 2),
    })


def geometry_to_csv(design: MultipassDesign) -> str:
    ratio = design.area_equiv / (4.0 * design.radius_rs ** 2)
    return ("theta_deg,n_turns,area_equiv_m2,ratio_vs_square\n"
            f"{design.theta_deg},{design.n_turns},"
            f"{fmt(design.area_equiv)},{fmt(ratio)}\n")


def solution_to_json(solution: DesignSolution) -> str:
    return _dumps({
        "feasible": solution.feasible,
        "beta": _nan_to_none(solution.beta),
        "area_s_min_m2": _nan_to_none(solution.area_s_min),
        "k_achieved_nm_per_rad_s": _nan_to_none(solution.k_achieved),
        "peak_intensity": _nan_to_none(solution.peak_intensity),
        "warnings": list(solution.warnings),
    })


def solution_to_csv(solution: DesignSolution) -> str:
    lines = [f"# warning: {w}" for w in solution.warnings]
    lines += ["feasible,beta,area_s_min_m2,k_achieved_nm_per_rad_s,peak_intensity",
              ",".join([str(solution.feasible).lower(), fmt(solution.beta),
                        fmt(solution.area_s_min), fmt(solution.k_achieved),
                        fmt(solution.peak_intensity)])]
    return "\n".join(lines) + "\n"


def classical_to_json(omega: float, dz: float, intensity: float) -> str:
    return _dumps({"omega": omega, "fringe_shift": dz, "intensity": intensity})


def classical_to_csv(omega: float, dz: float, intensity: float) -> str:
    return ("omega,fringe_shift,intensity\n"
            f"{fmt(omega)},{fmt(dz)},{fmt(intensity)}\n")
