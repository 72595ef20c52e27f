"""Command-line front end: scenario file in, tagged numbers out.

Every numeric result line printed to stdout ends with a bracketed tag giving
the formula (and, where it matters, the convention) that produced the number,
so a value can always be traced back to its defining expression without
opening the source. Input echoes and status lines use ':' and carry no tags.

Exit codes: 0 success, 2 scenario/usage errors, 3 computation failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .constants import C0, LENSE_THIRRING_FRACTION, OMEGA_EARTH
from .dispersion import ConstantIndex, group_index, refractive_index, taylor_coefficients, cad_tune
from .errors import ComputationError, ScenarioError
from .resonator import (
    airy_linewidth_cubic,
    effective_half_linewidth,
    effective_taylor,
    enhancement_eta,
    feedback_gain,
    linewidth_cubic,
    rotation_response,
    rotation_to_length,
    shift_cubic,
    shifted_linewidth,
    splitting_no_dispersion,
)
from .sagnac import (
    RotationState,
    comoving_phase,
    fresnel_drag,
    laub_drag,
    matter_wave_phase,
    relative_rotation_phase,
    vacuum_sagnac,
)
from .scenario import Scenario, load_scenario
from .sensitivity import (
    NoiseBudget,
    laser_linewidth,
    lens_thirring_margin,
    lens_thirring_rate,
    min_length,
    min_length_passive_dispersive,
    min_rotation,
    min_shift_passive,
)
from .spectrum import auto_grid, sweep_enhancement, trace

TWO_PI = 2.0 * math.pi


class Report:
    """Collects tagged scalars and named tables; renders stdout and files."""

    def __init__(self, command: str, scenario: Scenario, convention: str):
        self.command = command
        self.scenario = scenario
        self.convention = convention
        self.lines: list[str] = []
        self.results: dict[str, dict] = {}
        self.tables: dict[str, tuple[list[str], list[tuple]]] = {}

    def note(self, text: str) -> None:
        self.lines.append(text)

    def add(self, key: str, value: float, unit: str, tag: str) -> None:
        self.results[key] = {"value": float(value), "unit": unit, "formula": tag}
        suffix = f" {unit}" if unit else ""
        self.lines.append(f"{key} = {value:.12g}{suffix}  [{tag}]")

    def add_table(self, name: str, header: list[str], rows) -> None:
        self.tables[name] = (list(header), [tuple(float(x) for x in r) for r in rows])

    def render(self, wrote: list[Path]) -> str:
        out = [
            f"command: {self.command}",
            f"scenario: {self.scenario.source}",
            f"convention: {self.convention}",
            "inputs:",
        ]
        out += [f"  {k}: {v}" for k, v in self.scenario.echo().items()]
        out.append("")
        out += self.lines
        for path in wrote:
            out.append(f"wrote: {path}")
        if not wrote:
            for name, (header, rows) in self.tables.items():
                out.append(f"table {name} ({len(rows)} rows):")
                out.append(",".join(header))
                out += [",".join(f"{x:.16e}" for x in row) for row in rows]
        return "\n".join(out)


def _write_outputs(report: Report, out_dir: Path | None, fmt: str) -> list[Path]:
    if out_dir is None:
        return []
    out_dir.mkdir(parents=True, exist_ok=True)
    wrote = []
    if fmt == "json":
        doc = {
            "command": report.command,
            "convention": report.convention,
            "inputs": report.scenario.echo(),
            "results": report.results,
            "tables": {
                name: {"header": header, "rows": [list(r) for r in rows]}
                for name, (header, rows) in report.tables.items()
            },
        }
        path = out_dir / f"{report.command}.json"
        path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        wrote.append(path)
        return wrote
    if report.results:
        # scalar results; tables get their own files named after themselves
        path = out_dir / f"{report.command}_results.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["quantity", "value", "unit", "formula"])
            for key, entry in report.results.items():
                writer.writerow([key, f"{entry['value']:.16e}", entry["unit"], entry["formula"]])
        wrote.append(path)
    for name, (header, rows) in report.tables.items():
        path = out_dir / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(f"{x:.16e}" for x in row) + "\n")
        wrote.append(path)
    return wrote


# --------------------------------------------------------------------------
# shared pieces
# --------------------------------------------------------------------------


def _require_rotation(scn: Scenario) -> float:
    kind, value = scn.input_scalar()
    if kind != "rotation_rate_rad_s":
        raise ScenarioError(f"{scn.source}: this command needs rotation_rate_rad_s, got {kind}")
    return value


def _dw_ec_scalar(scn: Scenario, cavity) -> tuple[float, str]:
    """Empty-cavity resonance shift (ccw direction for rotation drives)."""
    kind, value = scn.input_scalar()
    if kind == "rotation_rate_rad_s":
        geom = cavity.geometry
        dw = (cavity.omega0 / (C0 * cavity.n0)) * (2.0 * value * geom.area / geom.perimeter)
        return dw, "dw_ec = (w0/(c0*n0))*2*Omega*A/P, ccw direction"
    if kind == "delta_length_m":
        dw = -cavity.omega0 * value / cavity.round_trip_length
        return dw, "dw_ec = -w0*dL/L"
    return TWO_PI * value, "dw_ec = 2*pi*empty_cavity_shift_hz"


def _effective_profile(scn: Scenario, cavity):
    profile = scn.profile()
    return ConstantIndex(cavity.n0) if profile is None else profile


def _medium_taylor(scn: Scenario, cavity):
    return effective_taylor(_effective_profile(scn, cavity), cavity)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _cmd_sagnac(scn: Scenario, rp: Report, convention: str) -> None:
    geom = scn.geometry()
    omega = scn.omega0()
    omega_rot = _require_rotation(scn)
    rot = RotationState.from_geometry(omega_rot, geom)
    ph = vacuum_sagnac(geom, rot, omega)
    rp.add("beta", ph.beta, "", "beta = Omega*R_eff/c0")
    rp.add("delta_t_first_order", ph.delta_t_first_order, "s", "dt0 = 2*A*Omega/c0^2")
    rp.add("delta_t", ph.delta_t, "s", "dt = 2*A*Omega/(c0^2*(1 - beta^2))")
    rp.add("delta_phi_first_order", ph.delta_phi_first_order, "rad", "dphi0 = omega*dt0")
    rp.add("delta_phi", ph.delta_phi, "rad", "dphi = omega*dt")

    profile = scn.profile()
    if profile is not None:
        n0 = float(refractive_index(profile, omega))
        n_g = float(group_index(profile, omega))
        rp.add("medium_index", n0, "", "n(w0)")
        rp.add("medium_group_index", n_g, "", "n_g = n + w0*(dn/dw)")
        try:
            rp.add("fresnel_drag", fresnel_drag(n0), "", "alpha_F = 1 - 1/n^2")
            rp.add(
                "laub_drag",
                laub_drag(n0, n_g),
                "",
                "alpha_L = 1 - 1/n0^2 + (n_g - n0)/n0^2",
            )
            rp.add(
                "comoving_phase",
                comoving_phase(n0, geom, rot, omega),
                "rad",
                "n^2*(1 - alpha_F)*dphi: equals dphi for every n",
            )
            rel = relative_rotation_phase(profile, geom, rot, omega)
            rp.add(
                "relative_rotation_phase",
                rel,
                "rad",
                "(1 + n_g - n0)*dphi: dispersive pull survives",
            )
            if ph.delta_phi != 0.0:
                rp.add("relative_scaling", rel / ph.delta_phi, "", "(1 + n_g - n0)")
        except ValueError:
            rp.note("drag phases skipped: phase index below 1 at this frequency")

    mass = scn._float("particle_mass_kg")
    if mass is not None:
        mw = matter_wave_phase(mass, geom, rot)
        rp.add("matter_wave_phase", mw, "rad", "dphi_m = 4*pi*m*A*Omega/h")
        if ph.delta_phi_first_order != 0.0:
            rp.add(
                "matter_to_light_ratio",
                mw / ph.delta_phi_first_order,
                "",
                "m*c0^2/(hbar*omega)",
            )


def _cmd_split(scn: Scenario, rp: Report, convention: str) -> None:
    cavity = scn.cavity()
    omega_rot = _require_rotation(scn)
    base = splitting_no_dispersion(cavity, omega_rot)
    rp.add("gamma_ec", cavity.gamma_ec, "rad/s", "gamma_ec = 2*pi*c0/(n0*L*F)")
    rp.add("dw_ccw", base.dw_minus, "rad/s", "+(w0/(c0*n0))*2*Omega*A/P")
    rp.add("dw_cw", base.dw_plus, "rad/s", "-(w0/(c0*n0))*2*Omega*A/P")
    rp.add("splitting", base.splitting, "rad/s", "dw0 = (w0/(c0*n0))*4*Omega*A/P")
    rp.add("splitting_hz", base.splitting / TWO_PI, "Hz", "dw0/(2*pi)")
    rp.add(
        "equivalent_delta_length",
        rotation_to_length(cavity, omega_rot),
        "m",
        "dL_eff = -P*Omega*R_eff/(n0*c0), ccw direction",
    )
    profile = scn.profile()
    if profile is not None:
        resp = rotation_response(profile, cavity, omega_rot)
        rp.add("dw_ccw_dispersive", resp.dw_minus, "rad/s", "cubic root scaled by n(w0)/n(w0+dw)")
        rp.add("dw_cw_dispersive", resp.dw_plus, "rad/s", "cubic root scaled by n(w0)/n(w0+dw)")
        rp.add("splitting_dispersive", resp.splitting, "rad/s", "dw_ccw_dis - dw_cw_dis")
        rp.add("enhancement", resp.enhancement, "", "eta = splitting_dispersive/splitting")
        rp.add("local_group_index", resp.local_ng, "", "n_g(w0) + 3*n3*w0*dw^2")
        rp.add("gamma_dispersive", resp.gamma_dis, "rad/s", "gamma_ec/n_g at the shifted resonance")


def _cmd_shift(scn: Scenario, rp: Report, convention: str) -> None:
    cavity = scn.cavity()
    dw_ec, tag = _dw_ec_scalar(scn, cavity)
    rp.add("dw_ec", dw_ec, "rad/s", tag)
    t = _medium_taylor(scn, cavity)
    n_g = t.n0 + t.n1 * t.omega_ref
    rp.add("group_index", n_g, "", "n_g = n0_eff + w0*n1_eff")
    dw_dis = shift_cubic(dw_ec, t)
    rp.add("dw_dis", dw_dis, "rad/s", "root of n3*w0*x^3 + n_g*x = dw_ec")
    rp.add("dw_dis_hz", dw_dis / TWO_PI, "Hz", "dw_dis/(2*pi)")
    if dw_ec != 0.0:
        rp.add("enhancement", dw_dis / dw_ec, "", "eta = dw_dis/dw_ec")
    g = effective_half_linewidth(t)
    if g is not None and dw_ec > 0.0:
        scale = "2*G" if convention == "paper" else "G"
        rp.add(
            "enhancement_analytic",
            enhancement_eta(g, dw_ec, convention),
            "",
            f"eta = ({scale}/dw_ec)^(2/3), {convention} convention",
        )
    rp.add("feedback_gain", feedback_gain(t), "", "G_fb = 1 - n_g/n0")
    try:
        widths = shifted_linewidth(cavity.gamma_ec, t, dw_dis)
        rp.add("local_group_index", widths.local_ng, "", "n_g(w0) + 3*n3*w0*dw_dis^2")
        rp.add("gamma_dis", widths.gamma_dis, "rad/s", "gamma_ec/n_g(w0 + dw_dis)")
    except ComputationError:
        rp.add(
            "gamma_dis",
            linewidth_cubic(cavity.gamma_ec, t),
            "rad/s",
            "positive root of n3*w0*g^3 + n_g*g = gamma_ec",
        )


def _cmd_linewidth(scn: Scenario, rp: Report, convention: str) -> None:
    cavity = scn.cavity()
    rp.add("gamma_ec", cavity.gamma_ec, "rad/s", "gamma_ec = 2*pi*c0/(n0*L*F)")
    rp.add("ring_down_time", cavity.ring_down_time, "s", "tau_c = 1/gamma_ec")
    t = _medium_taylor(scn, cavity)
    n_g = t.n0 + t.n1 * t.omega_ref
    rp.add("group_index", n_g, "", "n_g = n0_eff + w0*n1_eff")
    gamma_self = linewidth_cubic(cavity.gamma_ec, t)
    rp.add(
        "gamma_dis",
        gamma_self,
        "rad/s",
        "positive root of n3*w0*g^3 + n_g*g = gamma_ec",
    )
    try:
        gamma_airy = airy_linewidth_cubic(cavity.gamma_ec, t)
        rp.add(
            "gamma_dis_airy",
            gamma_airy,
            "rad/s",
            "positive root of (n3*w0/4)*g^3 + n_g*g = gamma_ec",
        )
        rp.add("airy_ratio", gamma_airy / gamma_self, "", "2^(2/3) at the white-light point")
    except (ComputationError, ValueError):
        rp.note("airy linewidth unavailable for these coefficients")
    dw_ec, tag = _dw_ec_scalar(scn, cavity)
    if dw_ec != 0.0:
        dw_dis = shift_cubic(dw_ec, t)
        rp.add("dw_dis", dw_dis, "rad/s", "root of n3*w0*x^3 + n_g*x = dw_ec")
        widths = shifted_linewidth(cavity.gamma_ec, t, dw_dis)
        rp.add("local_group_index", widths.local_ng, "", "n_g(w0) + 3*n3*w0*dw_dis^2")
        rp.add("gamma_shifted", widths.gamma_dis, "rad/s", "gamma_ec/n_g(w0 + dw_dis)")
        if widths.wlc_estimate is not None:
            rp.add(
                "gamma_shifted_wlc_form",
                widths.wlc_estimate,
                "rad/s",
                "(eta/3)*gamma_ec with eta = (G/dw_dis)^2",
            )


def _cmd_spectrum(scn: Scenario, rp: Report, convention: str) -> None:
    cavity = scn.cavity()
    profile = _effective_profile(scn, cavity)
    dw_ec, tag = _dw_ec_scalar(scn, cavity)
    delta_length = -dw_ec * cavity.round_trip_length / cavity.omega0
    rp.add("dw_ec", dw_ec, "rad/s", tag)
    rp.add("delta_length", delta_length, "m", "dL = -dw_ec*L/w0")
    result = trace(profile, cavity, delta_length)
    shift = result.resonance - cavity.omega0
    rp.add("resonance", result.resonance, "rad/s", "argmin of sin^2(Psi/2) near the peak sample")
    rp.add("shift", shift, "rad/s", "resonance - w0")
    rp.add("shift_hz", shift / TWO_PI, "Hz", "shift/(2*pi)")
    if dw_ec != 0.0:
        rp.add("enhancement_numeric", shift / dw_ec, "", "eta = shift/dw_ec")
    rp.add("fwhm", result.fwhm, "rad/s", "width between half-maximum brentq roots")
    rp.add("fwhm_hz", result.fwhm / TWO_PI, "Hz", "fwhm/(2*pi)")
    rp.add_table(
        "spectrum",
        ["omega_rad_s", "transmission"],
        list(zip(result.omega.tolist(), result.transmission.tolist())),
    )


def _cmd_fig4(scn: Scenario, rp: Report, convention: str) -> None:
    cavity = scn.cavity()
    kind, values = scn.input_values()
    if kind != "empty_cavity_shift_hz" or len(values) < 2:
        raise ScenarioError(
            f"{scn.source}: this command needs empty_cavity_shift_hz as a range"
        )
    profile = scn.profile()
    if profile is None:
        raise ScenarioError(f"{scn.source}: this command needs a dispersive medium")
    samples = sweep_enhancement(profile, cavity, TWO_PI * values)
    t = effective_taylor(profile, cavity)
    g = effective_half_linewidth(t)
    rp.add("half_linewidth", g, "rad/s", "G = sqrt(-n1/n3) of the path-averaged medium")
    rp.add("points", float(len(samples)), "", "sweep length")
    dev = max(abs(s.eta_numeric / s.eta_analytic_derived - 1.0) for s in samples)
    rp.add(
        "max_rel_dev_derived",
        dev,
        "",
        "max |eta_numeric/eta_analytic_derived - 1| over the sweep",
    )
    rp.add_table(
        "fig4",
        ["dw_ec", "eta_numeric", "eta_analytic_derived", "eta_analytic_paper"],
        [(s.dw_ec, s.eta_numeric, s.eta_analytic_derived, s.eta_analytic_paper) for s in samples],
    )


def _cmd_fig5(scn: Scenario, rp: Report, convention: str) -> None:
    cavity = scn.cavity()
    if cavity.fill_fraction != 1.0:
        raise ScenarioError(f"{scn.source}: this command assumes fill_fraction = 1")
    kind, shift_hz = scn.input_scalar()
    if kind != "empty_cavity_shift_hz":
        raise ScenarioError(f"{scn.source}: this command needs empty_cavity_shift_hz")
    target_hz = scn.require("enhanced_shift_target_hz")
    dw_ec = TWO_PI * shift_hz
    dw_target = TWO_PI * target_hz
    if dw_target <= dw_ec:
        raise ScenarioError(f"{scn.source}: target shift must exceed the empty-cavity shift")
    eta_target = dw_target / dw_ec
    rp.add("dw_ec", dw_ec, "rad/s", "dw_ec = 2*pi*empty_cavity_shift_hz")
    rp.add("dw_target", dw_target, "rad/s", "2*pi*enhanced_shift_target_hz")
    rp.add("eta_target", eta_target, "", "eta = dw_target/dw_ec")
    g_derived = dw_ec * eta_target ** 1.5
    g_paper = 0.5 * g_derived
    rp.add(
        "half_linewidth_derived",
        g_derived,
        "rad/s",
        "G = dw_ec*eta^(3/2), derived convention",
    )
    rp.add(
        "fwhm_derived_hz",
        g_derived / math.pi,
        "Hz",
        "G/pi, derived convention",
    )
    rp.add(
        "half_linewidth_paper",
        g_paper,
        "rad/s",
        "G = dw_ec*eta^(3/2)/2, paper convention",
    )
    rp.add("fwhm_paper_hz", g_paper / math.pi, "Hz", "G/pi, paper convention")
    rp.note("simulating with the derived-convention half linewidth")

    profile = cad_tune(half_linewidth=g_derived, center=cavity.omega0)
    vacuum = ConstantIndex(cavity.n0)
    delta_length = -dw_ec * cavity.round_trip_length / cavity.omega0
    rp.add("delta_length", delta_length, "m", "dL = -dw_ec*L/w0")

    trace_vac = trace(vacuum, cavity, delta_length)
    shift_vac = trace_vac.resonance - cavity.omega0
    rp.add("shift_vacuum", shift_vac, "rad/s", "numeric resonance - w0, empty cavity")
    trace_dis = trace(profile, cavity, delta_length)
    shift_dis = trace_dis.resonance - cavity.omega0
    rp.add("shift_dispersive", shift_dis, "rad/s", "numeric resonance - w0, medium in")
    rp.add("eta_realized", shift_dis / dw_ec, "", "eta = shift_dispersive/dw_ec")
    rp.add(
        "target_deviation",
        shift_dis / dw_target - 1.0,
        "",
        "shift_dispersive/dw_target - 1",
    )
    rp.add_table(
        "fig5_vacuum",
        ["omega_rad_s", "transmission"],
        list(zip(trace_vac.omega.tolist(), trace_vac.transmission.tolist())),
    )
    rp.add_table(
        "fig5_dispersive",
        ["omega_rad_s", "transmission"],
        list(zip(trace_dis.omega.tolist(), trace_dis.transmission.tolist())),
    )


def _sensitivity_core(scn: Scenario, rp: Report, convention: str):
    cavity = scn.cavity()
    budget = scn.budget()
    if budget is None:
        raise ScenarioError(f"{scn.source}: this command needs a noise budget")
    rp.add("gamma_ec", cavity.gamma_ec, "rad/s", "gamma_ec = 2*pi*c0/(n0*L*F)")
    if budget.has_photon_budget:
        n_phot = budget.photon_number(cavity.omega0)
        rp.add("photon_number", n_phot, "", "N = eta_q*P*tau/(hbar*w0)")
    rp.add("snr", budget.snr_for(cavity.omega0), "", "given snr, else sqrt(N)")
    profile = scn.profile()
    g = None
    if profile is not None:
        g = effective_half_linewidth(effective_taylor(profile, cavity))
        if g is not None:
            rp.add("half_linewidth", g, "rad/s", "G = sqrt(-n1/n3) of the path-averaged medium")
    return cavity, budget, g


def _cmd_sensitivity(scn: Scenario, rp: Report, convention: str) -> None:
    cavity, budget, g = _sensitivity_core(scn, rp, convention)
    geom = cavity.geometry
    scale = (cavity.omega0 / (C0 * cavity.n0)) * (2.0 * geom.area / geom.perimeter)
    rp.add("rotation_scale", scale, "rad/s per rad/s", "(w0/(c0*n0))*2*A/P, per direction")

    dw_passive = min_shift_passive(cavity, budget)
    rp.add("min_shift_passive", dw_passive, "rad/s", "dw_min = gamma_ec/SNR")
    rp.add("min_length_passive", min_length(dw_passive, cavity), "m", "dL_min = dw_min*L/w0")
    omega_passive = min_rotation(cavity, budget, "passive_empty")
    rp.add("min_rotation_passive", omega_passive, "rad/s", "Omega_min = dw_min/scale")

    if budget.has_photon_budget:
        dw_laser = laser_linewidth(cavity, budget)
        rp.add("laser_linewidth", dw_laser, "rad/s", "dw_laser = gamma_ec/sqrt(N)")
        omega_empty = min_rotation(cavity, budget, "rlg_empty")
        rp.add("min_rotation_rlg_empty", omega_empty, "rad/s", "Omega_min = dw_laser/scale")
        rp.add(
            "min_rotation_rlg_empty_earth",
            omega_empty / OMEGA_EARTH,
            "Omega_earth",
            "Omega_min/Omega_earth",
        )
        if g is not None:
            eta = enhancement_eta(g, dw_laser, convention)
            scale_txt = "2*G" if convention == "paper" else "G"
            rp.add(
                "enhancement",
                eta,
                "",
                f"eta = ({scale_txt}/dw_laser)^(2/3), {convention} convention",
            )
            omega_dis = min_rotation(cavity, budget, "rlg_dispersive", g, convention)
            rp.add(
                "min_rotation_rlg_dispersive",
                omega_dis,
                "rad/s",
                f"Omega_min = dw_laser/(eta*scale), {convention} convention",
            )
            rp.add(
                "min_rotation_rlg_dispersive_earth",
                omega_dis / OMEGA_EARTH,
                "Omega_earth",
                "Omega_min/Omega_earth",
            )
            rp.add(
                "min_length_passive_dispersive",
                min_length_passive_dispersive(cavity, budget, eta),
                "m",
                "((eta/3)*dw_min/eta)*L/w0 = dL_min/3 for every eta",
            )
    if scn.input_kind() == "rotation_rate_rad_s":
        _, omega_in = scn.input_scalar()
        if omega_in > 0.0:
            rp.add("drive_rotation", omega_in, "rad/s", "scenario drive input")
            rp.add(
                "drive_over_passive_floor",
                omega_in / omega_passive,
                "",
                "drive/min_rotation_passive",
            )


def _cmd_lens_thirring(scn: Scenario, rp: Report, convention: str) -> None:
    cavity, budget, g = _sensitivity_core(scn, rp, convention)
    rp.add("omega_earth", OMEGA_EARTH, "rad/s", "sidereal rotation rate")
    rp.add("surface_fraction", LENSE_THIRRING_FRACTION, "", "frame-dragging to spin ratio at the surface")
    rp.add(
        "omega_lense_thirring",
        lens_thirring_rate(),
        "rad/s",
        "Omega_LT = 5.6e-10*Omega_earth",
    )
    if not budget.has_photon_budget:
        raise ScenarioError(f"{scn.source}: this command needs output_power_w and measurement_time_s")
    dw_laser = laser_linewidth(cavity, budget)
    rp.add("laser_linewidth", dw_laser, "rad/s", "dw_laser = gamma_ec/sqrt(N)")
    if g is not None:
        eta = enhancement_eta(g, dw_laser, convention)
        scale_txt = "2*G" if convention == "paper" else "G"
        rp.add(
            "enhancement",
            eta,
            "",
            f"eta = ({scale_txt}/dw_laser)^(2/3), {convention} convention",
        )
        floor = min_rotation(cavity, budget, "rlg_dispersive", g, convention)
        rp.add(
            "min_rotation",
            floor,
            "rad/s",
            f"Omega_min = dw_laser/(eta*scale), {convention} convention",
        )
    else:
        floor = min_rotation(cavity, budget, "rlg_empty")
        rp.add("min_rotation", floor, "rad/s", "Omega_min = dw_laser/scale")
    margin = lens_thirring_margin(floor)
    rp.add("margin", margin, "", "margin = Omega_LT/Omega_min")
    rp.note("resolvable: yes" if margin >= 1.0 else "resolvable: no")


COMMANDS = {
    "sagnac": (_cmd_sagnac, [], "open-loop counterpropagating delay and drag phases"),
    "split": (_cmd_split, [], "rotation-induced mode splitting of the ring"),
    "shift": (_cmd_shift, [], "dispersion-modified resonance shift"),
    "linewidth": (_cmd_linewidth, [], "self-consistent and shifted linewidths"),
    "spectrum": (_cmd_spectrum, [], "numeric transmission trace around one resonance"),
    "fig4": (_cmd_fig4, ["enhancement-sweep"], "numeric vs analytic enhancement sweep"),
    "fig5": (_cmd_fig5, ["shift-demo"], "back-derived medium realizing a target shift"),
    "sensitivity": (_cmd_sensitivity, [], "noise floors for shift, length, and rotation"),
    "lens-thirring": (_cmd_lens_thirring, [], "margin against the frame-dragging rate"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fastlight",
        description="fast-light ring-cavity response and sensitivity calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (handler, aliases, help_text) in COMMANDS.items():
        p = sub.add_parser(name, aliases=aliases, help=help_text)
        p.add_argument("--scenario", required=True, help="scenario file (key=value or JSON)")
        p.add_argument("--out", default=None, help="directory for result files")
        p.add_argument(
            "--format",
            choices=("csv", "json"),
            default=None,
            help="result file format (default: scenario output_format or csv)",
        )
        p.add_argument(
            "--convention",
            choices=("derived", "paper"),
            default=None,
            help="enhancement convention (default: scenario convention or derived)",
        )
        p.set_defaults(handler=handler, canonical=name)
    return parser


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    scn = load_scenario(args.scenario)
    convention = args.convention or scn.convention
    fmt = args.format or scn.output_format
    out_dir = args.out or scn.output_dir
    report = Report(args.canonical, scn, convention)
    args.handler(scn, report, convention)
    wrote = _write_outputs(report, Path(out_dir) if out_dir else None, fmt)
    print(report.render(wrote))
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 2
    except (ComputationError, ValueError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
