# gi/cli.py
"""
Wsadowy front-end warsztatu.

Każda podkomenda uruchamia dokładnie jeden pipeline:
- wczytuje konfigurację JSON (--config) i waliduje ją schematem (jsonschema),
- normalizuje sekcję "inputs" przez gi.preprocessing,
- liczy kontrole (resztka + próg, bez cichych "passed"),
- wypisuje raport JSON (stdout albo --out) i zwraca kod wyjścia 0 / 1 / 2.

Raport jest kanoniczny (posortowane klucze), więc te same (config, seed)
dają te same bajty – niezależnie od liczby wątków.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import jsonschema
import numpy as np
import pandas as pd

from . import get_submodule
from .config import CONFIG, WorkbenchConfig
from .data_ingestion import dump_samples_csv, load_json, read_csv_smart
from .errors import SchemaError, WorkbenchError
from .preprocessing import (
    beta_from_value,
    curve_config_from_dict,
    decay_samples_from_dict,
    decay_samples_from_frame,
    lattice_from_dict,
    monopole_config_from_dict,
    spectral_data_from_dict,
    tn_params_from_dict,
)
from .utils import dumps_report, init_logging, make_check, make_rng, parallel_map

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SCHEMA = 2

_TOLERANCE_KEYS = [f.name[len("tol_"):] for f in fields(WorkbenchConfig) if f.name.startswith("tol_")]


# ─────────────────────────────────────────────────────────────
# Schemat konfiguracji
# ─────────────────────────────────────────────────────────────

RUN_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "schema_version": {"const": CONFIG.schema_version},
        "command": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "threads": {"type": "integer", "minimum": 1},
        "tolerances": {
            "type": "object",
            "properties": {k: {"type": "number", "exclusiveMinimum": 0} for k in _TOLERANCE_KEYS},
            "additionalProperties": False,
        },
        "window": {
            "type": "object",
            "properties": {
                "r_min": {"type": "number", "exclusiveMinimum": 0},
                "r_max": {"type": "number", "exclusiveMinimum": 0},
                "n_radii": {"type": "integer", "minimum": 2},
                "n_directions": {"type": "integer", "minimum": 1},
                "fd_step": {"type": "number", "exclusiveMinimum": 0},
                "grid_nodes": {"type": "integer", "minimum": 4},
                "n_points": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "inputs": {"type": "object"},
    },
    "additionalProperties": False,
}

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}
_ZETA_RANGE = {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 2, "maxItems": 2}
_FIBER = {
    "type": "object",
    "properties": {
        "type": {"type": "string"},
        "m": {"type": ["integer", "null"]},
        "k": {"type": ["integer", "null"]},
    },
}
_PARAM = {
    "oneOf": [
        {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
        {"type": "object"},
    ]
}
MONOPOLE_SCHEMA = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "m": {"type": "number"},
        "k": {"type": "integer", "minimum": 0},
        "centers": {"type": "array", "items": _POINT},
    },
}
SPECTRAL_SCHEMA = {
    "type": "object",
    "properties": {
        "family": {"type": "string"},
        "k": {"type": "integer", "minimum": 0},
        "params": {"type": "array", "items": _PARAM},
        "n_points": {"type": "integer", "minimum": 1},
        "zeta_range": _ZETA_RANGE,
        "transition_zeta_range": _ZETA_RANGE,
        "golden": {"type": "object"},
    },
}
CURVE_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "array", "items": {"type": "integer"}},
        "S": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "a": {"type": "array", "items": {"type": "integer"}},
        "d": {"type": ["array", "null"], "items": {"type": "integer"}},
        "d_mult": {"type": ["integer", "null"]},
        "generate": _FIBER,
        "expected": {**_FIBER, "required": ["type"]},
    },
}


def validate_config(raw: Dict[str, Any], command: str, input_schema: Optional[Dict[str, Any]]) -> None:
    """jsonschema na całość + schemat wejść pipeline'u; błąd -> SchemaError."""
    try:
        jsonschema.validate(instance=raw, schema=RUN_SCHEMA)
        if input_schema is not None:
            jsonschema.validate(instance=raw.get("inputs", {}), schema=input_schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from exc
    if raw.get("command", command) != command:
        raise SchemaError(f"config is for {raw['command']!r}, not {command!r}")


# ─────────────────────────────────────────────────────────────
# Kontekst uruchomienia
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RunContext:
    config: WorkbenchConfig
    seed: int

    def rng(self, stream: int = 0) -> np.random.Generator:
        """Osobny strumień na każdą rodzinę kontroli – dodanie jednej nie zmienia pozostałych."""
        return make_rng(self.seed + stream)


@dataclass
class PipelineResult:
    checks: List[Dict[str, Any]]
    results: Dict[str, Any]
    samples: Optional[pd.DataFrame] = None


def _relative(value: complex, reference: complex) -> float:
    return float(abs(value - reference) / max(1.0, abs(reference)))


def _order_check(name: str, err_h: float, err_half: float, cfg: WorkbenchConfig) -> Dict[str, Any]:
    """Rząd 2: e(h)/e(h/2) ≈ 4; próg to względne odchylenie od 4."""
    if err_half == 0.0:
        residual = 0.0 if err_h == 0.0 else float("inf")
        ratio = float("nan") if err_h == 0.0 else float("inf")
    else:
        ratio = err_h / err_half
        residual = abs(ratio / 4.0 - 1.0)
    return make_check(name, residual, cfg.tol_order_ratio, ratio=ratio, error_h=err_h, error_half=err_half)


# ─────────────────────────────────────────────────────────────
# gh-verify
# ─────────────────────────────────────────────────────────────

def _pole_radius(cfg) -> float:
    gh = get_submodule("gibbons_hawking")
    return max((float(np.linalg.norm(c)) for c, _ in gh.charges(cfg)), default=0.0)


def _points_away_from_poles(cfg, rng: np.random.Generator, n: int, margin: float) -> np.ndarray:
    gh = get_submodule("gibbons_hawking")
    sampling = get_submodule("sampling")
    centers = np.array([c for c, _ in gh.charges(cfg)]).reshape(-1, 3)
    outer = 2.0 * _pole_radius(cfg) + 1.0
    out: List[np.ndarray] = []
    while len(out) < n:
        pts = sampling.random_points_in_shell(rng, n, 0.5, outer)
        for p in pts:
            if not centers.size or np.min(np.linalg.norm(centers - p, axis=1)) > margin:
                out.append(p)
    return np.array(out[:n])


def _closedness_error(cfg, x0: np.ndarray, h: float, nodes: int, component: int) -> float:
    """|dω| w centralnym węźle siatki o kroku h wokół x0."""
    gh = get_submodule("gibbons_hawking")
    geo = get_submodule("geometry_core")
    half = nodes // 2
    origin = np.append(x0, 0.0) - half * h
    field = gh.sample_triple_field(cfg, origin, [h] * 4, [nodes] * 4, component, gh.safe_string_axes(cfg, x0))
    d_omega = geo.exterior_derivative_fd(field)
    centre = (half - 1,) * 4
    return float(np.max(np.abs(d_omega.values[centre])))


def run_gh_verify(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    gh = get_submodule("gibbons_hawking")
    geo = get_submodule("geometry_core")
    sampling = get_submodule("sampling")
    cfg = monopole_config_from_dict(inputs)
    wcfg = ctx.config
    n_points = int(inputs.get("n_points", wcfg.n_points))
    points = _points_away_from_poles(cfg, ctx.rng(0), n_points, margin=0.1)

    def _pointwise(x: np.ndarray) -> Tuple[float, float, float]:
        chart = gh.GHChart(tuple(x), 0.0, gh.safe_string_axes(cfg, x))
        triple, g_expected = gh.gh_triple(cfg, chart)
        q, vol = geo.wedge_gram(triple)
        v = float(gh.potential(cfg, x))
        g = geo.metric_from_triple(triple)
        metric_err = float(np.max(np.abs(g - g_expected)) / np.max(np.abs(g_expected)))
        return float(np.max(np.abs(np.asarray(q, dtype=float) - np.eye(3)))), abs(float(vol) - v) / v, metric_err

    pointwise = parallel_map(_pointwise, list(points), wcfg.threads)
    checks = [
        make_check("gram_identity", max(p[0] for p in pointwise), wcfg.tol_gram),
        make_check("volume_equals_potential", max(p[1] for p in pointwise), wcfg.tol_gram),
        make_check("metric_reconstruction", max(p[2] for p in pointwise), wcfg.tol_metric),
    ]

    # zbieżność rzędu 2: punkt daleko od biegunów, kroki h i h/2
    r_far = _pole_radius(cfg) + 1.0
    x0 = sampling.random_points_in_shell(ctx.rng(1), 1, r_far, r_far + 1.0)[0]
    nodes = wcfg.grid_nodes + (1 - wcfg.grid_nodes % 2)
    h = wcfg.fd_step
    for component in range(3):
        errs = [_closedness_error(cfg, x0, step, nodes, component) for step in (h, h / 2)]
        checks.append(_order_check(f"closedness_order_w{component + 1}", errs[0], errs[1], wcfg))
    axes = gh.safe_string_axes(cfg, x0)
    mono = [gh.monopole_equation_residual(cfg, x0, step, axes) for step in (h, h / 2)]
    checks.append(_order_check("monopole_equation_order", mono[0], mono[1], wcfg))
    harm = [gh.harmonic_residual(cfg, x0, step) for step in (h, h / 2)]
    checks.append(_order_check("harmonic_order", harm[0], harm[1], wcfg))

    poles = gh.charges(cfg)
    fluxes = []
    for index, (center, _) in enumerate(poles):
        others = [np.linalg.norm(c - center) for i, (c, _) in enumerate(poles) if i != index]
        radius = 0.5 * min(others) if others else 1.0
        flux = gh.monopole_flux(cfg, index, radius=radius)
        overlap = gh.chart_overlap_integral(cfg, index, radius=radius)
        fluxes.append({"index": index, **flux, "overlap_ratio": overlap["ratio"]})
        checks.append(make_check(f"flux_pole_{index}", flux["relative_error"], wcfg.tol_flux))
        checks.append(
            make_check(
                f"flux_charge_pole_{index}",
                abs(flux["flux_star_dV"] - flux["expected"]) / abs(flux["expected"]),
                wcfg.tol_flux,
            )
        )
        checks.append(make_check(f"chart_overlap_pole_{index}", overlap["integer_residual"], wcfg.tol_flux))

    return PipelineResult(
        checks,
        {
            "monopole": cfg.to_dict(),
            "n_points": n_points,
            "fiber_period": cfg.fiber_period,
            "convergence_point": x0,
            "fluxes": fluxes,
        },
    )


# ─────────────────────────────────────────────────────────────
# Asymptotyka
# ─────────────────────────────────────────────────────────────

def _load_samples(inputs: Dict[str, Any], ctx: RunContext):
    asym = get_submodule("asymptotics")
    gh = get_submodule("gibbons_hawking")
    if "csv" in inputs:
        return decay_samples_from_frame(read_csv_smart(inputs["csv"]))
    if "samples" in inputs or "r" in inputs:
        return decay_samples_from_dict(inputs)
    cfg = monopole_config_from_dict(inputs)
    model = gh.standard_model(cfg, recenter=bool(inputs.get("recenter", True)))
    return asym.sample_decay(cfg, model, ctx.config, ctx.seed)


def run_decay_fit(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    asym = get_submodule("asymptotics")
    samples = _load_samples(inputs, ctx)
    exponent, stderr = asym.decay_fit(samples)
    checks = [make_check("fit_stderr", stderr, ctx.config.tol_exponent)]
    if "expected_exponent" in inputs:
        expected = float(inputs["expected_exponent"])
        checks.append(make_check("decay_exponent", abs(exponent - expected), ctx.config.tol_exponent, expected=expected))
    results = {"exponent": exponent, "stderr": stderr, "n_samples": int(samples.r.size)}
    return PipelineResult(checks, results, samples.to_frame())


def _brute_alg_delta(beta: Fraction) -> Fraction:
    """min (2β − n)/β po całkowitych n < 2β, przeszukanie wprost."""
    return min((2 * beta - n) / beta for n in range(-4, 3) if n < 2 * beta)


def run_alg_delta(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    asym = get_submodule("asymptotics")
    if "betas" in inputs:
        betas = [beta_from_value(b) for b in inputs["betas"]]
    else:
        betas = list(asym.ALG_FIBER_BETA.values())
    deltas = [asym.alg_delta(b) for b in betas]
    checks = [
        make_check("brute_force_minimum", max(float(abs(d - _brute_alg_delta(b))) for b, d in zip(betas, deltas)), 0.0)
    ]
    if "expected" in inputs:
        expected = [beta_from_value(e) for e in inputs["expected"]]
        if len(expected) != len(deltas):
            raise SchemaError("expected must have one entry per beta")
        checks.append(make_check("expected_deltas", max(float(abs(d - e)) for d, e in zip(deltas, expected)), 0.0))
    table = asym.alg_delta_table()
    return PipelineResult(
        checks,
        {
            "betas": betas,
            "deltas": deltas,
            "table": table.to_dict(orient="records"),
        },
    )


def run_alh_delta(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    asym = get_submodule("asymptotics")
    lat = lattice_from_dict(inputs)
    dual = lat.dual_basis()
    shortest = asym.shortest_dual_vector(lat)
    delta = asym.alh_delta(lat)
    checks = [make_check("dual_pairing", float(np.max(np.abs(dual @ lat.basis.T - np.eye(3)))), ctx.config.tol_gram)]
    if "expected" in inputs:
        expected = float(inputs["expected"])
        checks.append(make_check("expected_delta", abs(delta - expected) / max(1.0, abs(expected)), ctx.config.tol_lead))
    return PipelineResult(checks, {"delta": delta, "shortest_dual_vector": shortest, "dual_basis": dual})


def _default_remainder_exponent(cfg) -> float:
    """DkSymmetric i wycentrowane Ak: r⁻³; Ak poza centrum: r⁻²."""
    if cfg.family == "DkSymmetric":
        return 3.0
    centroid = np.mean(np.array(cfg.centers), axis=0)
    return 3.0 if np.max(np.abs(centroid)) <= 1e-12 else 2.0


def run_expansion_check(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    asym = get_submodule("asymptotics")
    cfg = monopole_config_from_dict(inputs)
    fit = asym.expansion_fit(cfg, ctx.config, ctx.seed)
    expected_lead = float(inputs.get("expected_lead", fit["monopole_moment"]))
    expected_exp = float(inputs.get("expected_exponent", _default_remainder_exponent(cfg)))
    checks = [
        make_check("lead_coefficient", abs(fit["lead_coeff"] - expected_lead), ctx.config.tol_lead, expected=expected_lead),
        make_check("remainder_exponent", abs(fit["remainder_exponent"] - expected_exp), ctx.config.tol_exponent, expected=expected_exp),
    ]
    return PipelineResult(checks, {"monopole": cfg.to_dict(), **fit})


# ─────────────────────────────────────────────────────────────
# Kodaira
# ─────────────────────────────────────────────────────────────

def run_kodaira_classify(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    kod = get_submodule("kodaira")
    if "generate" in inputs:
        gen = inputs["generate"]
        fiber = kod.FiberType(gen.get("type", ""), gen.get("m"))
        curves = kod.generate_fiber(fiber, gen.get("k"))
    else:
        fiber = None
        curves = curve_config_from_dict(inputs)
    report = kod.validate(curves)
    result = kod.classify(curves)
    checks = [make_check("kodaira_identities", len(report["violations"]), 0)]
    expected = inputs.get("expected")
    if expected is None and fiber is not None:
        expected = {"type": fiber.tag, "m": fiber.m}
    if expected is not None:
        target = kod.FiberType(expected["type"], expected.get("m"))
        checks.append(make_check("expected_type", 0 if result.same_type(target) else 1, 0, expected=target.to_dict()))
    return PipelineResult(
        checks,
        {"classification": result.to_dict(), "validation": report, "curves": curves.to_dict()},
    )


# ─────────────────────────────────────────────────────────────
# Twistory
# ─────────────────────────────────────────────────────────────

def _exact_spectral(sd):
    """Kopia danych spektralnych z wymiernymi (sympy) parametrami – do złotego przypadku."""
    import sympy

    tw = get_submodule("twistor")
    rat = lambda v: sympy.Rational(str(v))  # noqa: E731
    params = tuple((rat(a.real) + sympy.I * rat(a.imag), rat(b)) for a, b in sd.params)
    return tw.SpectralData(sd.family, sd.k, params)


def _twistor_ak_checks(sd, zetas: np.ndarray, rng: np.random.Generator, cfg: WorkbenchConfig) -> Tuple[List[Dict[str, Any]], Dict[str, Any]]:
    tw = get_submodule("twistor")
    points = [tw.sample_variety_point_ak(sd, rng, zeta) for zeta in zetas]
    glue = [tw.glue_check_ak(sd, pt)["residual"] for pt in points]
    involution = [tw.point_distance(tw.real_structure_ak(tw.real_structure_ak(pt, sd.k), sd.k), pt) for pt in points]
    preserved = [tw.variety_residual(sd, tw.real_structure_ak(pt, sd.k)) for pt in points]
    checks = [
        make_check("glue_ak", max(glue), cfg.tol_twistor),
        make_check("real_structure_involution", max(involution), cfg.tol_involution),
        make_check("real_structure_preserves_variety", max(preserved), cfg.tol_twistor),
    ]
    return checks, {"n_points": len(points)}


def _zeta_range(inputs: Dict[str, Any], key: str, default: Tuple[float, float]) -> Tuple[float, float]:
    lo, hi = (float(v) for v in inputs.get(key, default))
    if not lo < hi:
        raise SchemaError(f"inputs/{key}: need lo < hi, got [{lo}, {hi}]")
    return lo, hi


def _twistor_dk_checks(sd, inputs: Dict[str, Any], rng: np.random.Generator, cfg: WorkbenchConfig) -> Tuple[List[Dict[str, Any]], Dict[str, Any]]:
    tw = get_submodule("twistor")
    sampling = get_submodule("sampling")
    n = int(inputs.get("n_points", cfg.n_points))
    lo, hi = _zeta_range(inputs, "transition_zeta_range", (0.5, 2.0))
    zetas = sampling.random_zeta(rng, n, lo, hi)
    zs = sampling.random_complex(rng, n, 0.5)
    rhos = sampling.random_complex(rng, 2 * n).reshape(n, 2)

    cons = [tw.spectral_conservation(sd, zeta, z0, r[0], r[1]) for zeta, z0, r in zip(zetas, zs, rhos)]
    branch = []
    det = []
    for zeta, z0 in zip(zetas, zs):
        P, Q = sampling.random_complex(rng, 2)
        a = tw.transition_pq(P, Q, z0, zeta, sd.k, branch=1)
        b = tw.transition_pq(P, Q, z0, zeta, sd.k, branch=-1)
        branch.append(max(_relative(a[0], b[0]), _relative(a[1], b[1])))
        target = zeta ** (2 - 4 * sd.k)
        det.append(abs(np.linalg.det(tw.transition_matrix(z0, zeta, sd.k)) - target) / abs(target))
        twice = tw.real_structure_pq(*tw.real_structure_pq(zeta, z0, P, Q))
        branch.append(max(_relative(u, v) for u, v in zip(twice, (zeta, z0, P, Q))))

    checks = [
        make_check("quadric", max(c["quadric_residual"] for c in cons), cfg.tol_quadric),
        make_check("spectral_conservation", max(c["conservation_residual"] for c in cons), cfg.tol_quadric),
        make_check("transition_scaling", max(c["transition_residual"] for c in cons), cfg.tol_quadric),
        make_check("transformed_curve", max(c["transformed_curve_residual"] for c in cons), cfg.tol_quadric),
        make_check("transition_branch_and_involution", max(branch), cfg.tol_involution),
        make_check("transition_determinant", max(det), cfg.tol_twistor),
    ]

    if sd.k >= 3:
        dihedral = []
        invariance = []
        for u, v in sampling.random_complex(rng, 2 * n).reshape(n, 2):
            x, y, z, res = tw.dihedral_invariants(u, v, sd.k)
            scale = max(1.0, abs(x) ** 2, abs(z) * abs(y) ** 2, abs(z) ** (sd.k - 1))
            dihedral.append(res / scale)
            for gu, gv in tw.dihedral_generators(u, v, sd.k):
                gx, gy, gz, _ = tw.dihedral_invariants(gu, gv, sd.k)
                invariance.append(max(_relative(gx, x), _relative(gy, y), _relative(gz, z)))
        checks.append(make_check("dihedral_relation", max(dihedral), cfg.tol_twistor))
        checks.append(make_check("dihedral_invariance", max(invariance), cfg.tol_twistor))

    results: Dict[str, Any] = {"n_points": n}
    golden = inputs.get("golden")
    if golden is not None:
        import sympy

        exact = _exact_spectral(sd)
        vals = [sympy.Rational(str(golden[key])) for key in ("zeta", "z0", "rho0", "rho1")]
        x, y, residual = tw.chiklr_reduce(exact, *vals)
        checks.append(make_check("quadric_exact", abs(complex(sympy.N(residual))), 0.0))
        results["golden"] = {"x": str(x), "y": str(y)}
    return checks, results


def run_twistor_check(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    tw = get_submodule("twistor")
    geo = get_submodule("geometry_core")
    sampling = get_submodule("sampling")
    sd = spectral_data_from_dict(inputs)
    cfg = ctx.config
    n = int(inputs.get("n_points", cfg.n_points))
    lo, hi = _zeta_range(inputs, "zeta_range", (0.1, 10.0))
    zetas = sampling.random_zeta(ctx.rng(0), n, lo, hi)

    checks = [make_check("reality", max(tw.reality_residual(sd, z) / max(1.0, abs(z)) ** 2 for z in zetas), cfg.tol_twistor)]
    flat = geo.flat_triple()
    line = [tw.line_form_checks(flat, z) for z in zetas]
    checks.append(make_check("line_form_degeneracy", max(c["degeneracy"] / (1.0 + abs(z) ** 2) ** 2 for c, z in zip(line, zetas)), cfg.tol_twistor))
    checks.append(make_check("line_form_reality", max(c["reality"] / (1.0 + abs(z) ** 2) for c, z in zip(line, zetas)), cfg.tol_twistor))

    if sd.family == "Ak":
        extra, results = _twistor_ak_checks(sd, zetas, ctx.rng(1), cfg)
    else:
        extra, results = _twistor_dk_checks(sd, inputs, ctx.rng(2), cfg)
    results.update({"family": sd.family, "k": sd.k})
    return PipelineResult(checks + extra, results)


# ─────────────────────────────────────────────────────────────
# Torelli
# ─────────────────────────────────────────────────────────────

def run_torelli(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    tor = get_submodule("torelli")
    p = tn_params_from_dict(inputs)
    tol = float(inputs.get("tol", 0.0))
    rs = tor.roots(p.family, p.k)
    expected_count = p.k * (p.k + 1) if p.family == "Ak" else 2 * p.k * (p.k - 1)
    if rs.note is not None:
        expected_count = 0
    singular, _ = tor.is_singular(p, tol)
    checks = [
        make_check("root_count", abs(len(rs) - expected_count), 0),
        make_check("criterion_agreement", 0 if singular == tor.pairwise_degenerate(p, tol) else 1, 0),
    ]
    results: Dict[str, Any] = {"family": p.family, "k": p.k, "n_roots": len(rs), **tor.singularity_report(p, tol)}
    if (p.family == "Ak" and p.k >= 1) or (p.family == "Dk" and p.k >= 2):
        cartan = tor.cartan_matrix(p.family, p.k)
        checks.append(make_check("cartan_matrix", int(np.max(np.abs(cartan - tor.dynkin_cartan(p.family, p.k)))), 0))
        results["cartan_matrix"] = cartan
    return PipelineResult(checks, results)


def run_period_integral(inputs: Dict[str, Any], ctx: RunContext) -> PipelineResult:
    tor = get_submodule("torelli")
    cfg = monopole_config_from_dict(inputs)
    report = tor.period_checks(cfg)
    wcfg = ctx.config
    checks = [
        make_check("orientation", report["orientation_residual"], wcfg.tol_period_orientation),
        make_check("additivity", report["additivity_residual"], wcfg.tol_period_additivity),
        make_check("linearity_in_z", report["linearity_residual"], wcfg.tol_period_additivity),
    ]
    if report["constant"] is not None:
        expected = -1j * cfg.fiber_period
        checks.append(
            make_check("period_constant", abs(report["constant"] - expected) / abs(expected), wcfg.tol_period_additivity, expected=expected)
        )
    return PipelineResult(checks, {"monopole": cfg.to_dict(), "tn_params": tor.tn_params_from_config(cfg).coordinates(), **report})


# ─────────────────────────────────────────────────────────────
# Rejestr pipeline'ów
# ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Pipeline:
    runner: Callable[[Dict[str, Any], RunContext], PipelineResult]
    description: str
    input_schema: Optional[Dict[str, Any]] = None


PIPELINES: Dict[str, Pipeline] = {
    "gh-verify": Pipeline(run_gh_verify, "Trójka GH: Gram, metryka, domkniętość, dη = *dV, strumienie", MONOPOLE_SCHEMA),
    "decay-fit": Pipeline(run_decay_fit, "Wykładnik zaniku z próbek albo względem modelu standardowego"),
    "alg-delta": Pipeline(run_alg_delta, "Wykładniki ALG δ(β) jako liczby wymierne"),
    "alh-delta": Pipeline(run_alh_delta, "Wykładnik ALH z najkrótszego wektora kraty dualnej"),
    "expansion-check": Pipeline(run_expansion_check, "V = 1 + c/r + reszta: współczynnik i wykładnik reszty", MONOPOLE_SCHEMA),
    "kodaira-classify": Pipeline(run_kodaira_classify, "Tożsamości Kodairy i typ włókna", CURVE_SCHEMA),
    "twistor-check": Pipeline(run_twistor_check, "Sklejanie, realność, kwadryka, grupa dwuścienna, przejście", SPECTRAL_SCHEMA),
    "torelli": Pipeline(run_torelli, "Pierwiastki, okresy, osobliwość, macierz Cartana"),
    "period-integral": Pipeline(run_period_integral, "Całki ω⁺ po sferach S_{β,−α} multi-Taub-NUT", MONOPOLE_SCHEMA),
}


def list_pipelines() -> Dict[str, str]:
    """Nazwa -> opis; podkomenda `list`."""
    return {name: p.description for name, p in PIPELINES.items()}


# ─────────────────────────────────────────────────────────────
# Uruchomienie
# ─────────────────────────────────────────────────────────────

def build_context(raw: Dict[str, Any], seed: Optional[int] = None, tol: Optional[float] = None, threads: Optional[int] = None) -> RunContext:
    """Konfiguracja jednego uruchomienia: CONFIG <- plik <- flagi CLI."""
    overrides: Dict[str, Any] = {f"tol_{k}": float(v) for k, v in raw.get("tolerances", {}).items()}
    overrides.update(raw.get("window", {}))
    overrides["threads"] = threads if threads is not None else raw.get("threads")
    wcfg = CONFIG.with_override(**overrides)
    if tol is not None:
        if tol <= 0:
            raise SchemaError("--tol must be positive")
        wcfg = wcfg.override_all_tolerances(tol)
    if wcfg.r_min >= wcfg.r_max:
        raise SchemaError("window: r_min must be below r_max")
    run_seed = seed if seed is not None else raw.get("seed", wcfg.seed)
    return RunContext(wcfg, int(run_seed))


def run(
    command: str,
    raw: Dict[str, Any],
    *,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    threads: Optional[int] = None,
    with_timing: bool = False,
) -> Tuple[Dict[str, Any], Optional[pd.DataFrame]]:
    """
    Wykonuje jeden pipeline i zwraca (raport, próbki albo None).
    SchemaError / WorkbenchError przechodzą wyżej – main() zamienia je na kod 2.
    """
    if command not in PIPELINES:
        raise SchemaError(f"unknown command {command!r}")
    pipeline = PIPELINES[command]
    validate_config(raw, command, pipeline.input_schema)
    ctx = build_context(raw, seed, tol, threads)

    logger.info("pipeline %s: start (seed=%d)", command, ctx.seed)
    started = time.perf_counter()
    result = pipeline.runner(dict(raw.get("inputs", {})), ctx)
    elapsed = time.perf_counter() - started
    logger.info("pipeline %s: %d kontroli w %.3f s", command, len(result.checks), elapsed)

    if not result.checks:
        raise WorkbenchError(f"pipeline {command} produced no checks")
    report: Dict[str, Any] = {
        "schema_version": ctx.config.schema_version,
        "command": command,
        "inputs": {
            "config": raw.get("inputs", {}),
            "seed": ctx.seed,
            "tolerances": {k: getattr(ctx.config, f"tol_{k}") for k in _TOLERANCE_KEYS},
        },
        "checks": result.checks,
        "results": result.results,
        "passed": all(c["passed"] for c in result.checks),
    }
    if with_timing:
        report["wall_time_s"] = elapsed
    return report, result.samples


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="plik JSON z konfiguracją uruchomienia")
    common.add_argument("--out", type=Path, help="plik raportu (domyślnie stdout)")
    common.add_argument("--seed", type=int, help="nadpisuje seed z konfiguracji")
    common.add_argument("--tol", type=float, help="jedna tolerancja dla wszystkich resztek")
    common.add_argument("--threads", type=int, help="liczba wątków (nie zmienia wyniku)")
    common.add_argument("--dump-samples", type=Path, help="CSV z próbkami zaniku")
    common.add_argument("--with-timing", action="store_true", help="dopisz czas wykonania do raportu")
    common.add_argument("--log-level", help="poziom logowania (domyślnie GI_LOG_LEVEL)")

    parser = argparse.ArgumentParser(prog="gi", description="Warsztat weryfikacyjny instantonów grawitacyjnych")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, pipeline in PIPELINES.items():
        sub.add_parser(name, parents=[common], help=pipeline.description)
    sub.add_parser("list", help="lista dostępnych pipeline'ów")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    init_logging(getattr(args, "log_level", None))

    if args.command == "list":
        for name, description in list_pipelines().items():
            print(f"{name:18s} {description}")
        return EXIT_OK

    try:
        raw = load_json(args.config) if args.config else {}
        report, samples = run(
            args.command,
            raw,
            seed=args.seed,
            tol=args.tol,
            threads=args.threads,
            with_timing=args.with_timing,
        )
    except WorkbenchError as exc:
        print(f"gi {args.command}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    text = dumps_report(report)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.dump_samples:
        if samples is None:
            logger.warning("%s nie produkuje próbek – pomijam --dump-samples", args.command)
        else:
            dump_samples_csv(samples, args.dump_samples)
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED
