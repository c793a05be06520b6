# gi/preprocessing.py
"""
Normalizacja surowych danych wejściowych do typów domenowych.

Cele:
- rozpoznać różne nazwy kluczy w JSON-ach (np. "centers" / "points" / "x_alpha"),
- ujednolicić nazwy rodzin ("A", "A_k", "multi-Taub-NUT" -> "Ak"),
- zbudować MonopoleConfig, SpectralData, TNParams, CurveConfig, Lattice3, DecaySamples,
- zgłosić SchemaError, gdy czegoś wymaganego brakuje.

Współpracuje z:
- gi.data_ingestion (tam wczytujemy JSON/CSV)
- gi.cli (tu trafiają sekcje "inputs" konfiguracji)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .errors import SchemaError

# ─────────────────────────────────────────────────────────────
# Słowniki rozpoznawania kluczy
# ─────────────────────────────────────────────────────────────

FAMILY_CANDIDATES = ["family", "type", "kind", "model"]
MASS_CANDIDATES = ["m", "mass", "monopole_mass"]
K_CANDIDATES = ["k", "rank", "dynkin_rank"]
CENTERS_CANDIDATES = ["centers", "centres", "points", "x_alpha", "nuts"]
PARAMS_CANDIDATES = ["params", "parameters", "ab", "spectral_params"]
BASIS_CANDIDATES = ["basis", "lattice", "generators"]
R_CANDIDATES = ["r", "radius", "radii"]
VALUE_CANDIDATES = ["value", "v", "magnitude", "err", "error"]

_FAMILY_ALIASES = {
    "ak": "Ak", "a": "Ak", "multitaubnut": "Ak",
    "dksymmetric": "DkSymmetric", "z2symmetric": "DkSymmetric",
    "dk": "Dk", "d": "Dk",
}


# ─────────────────────────────────────────────────────────────
# Funkcje rozpoznające
# ─────────────────────────────────────────────────────────────

def _norm(key: str) -> str:
    return key.lower().replace(" ", "").replace("-", "").replace("_", "")


def _find_key(raw: Mapping[str, Any], candidates: List[str]) -> Optional[str]:
    """Zwraca pierwszy klucz pasujący do listy kandydatów (case-insensitive, bez _ i -)."""
    normed = {_norm(k): k for k in raw}
    for cand in candidates:
        if _norm(cand) in normed:
            return normed[_norm(cand)]
    return None


def _find_col(df: pd.DataFrame, candidates: List[str]) -> Optional[str]:
    return _find_key({str(c): c for c in df.columns}, candidates)


def _get(raw: Mapping[str, Any], candidates: List[str], default: Any = ..., what: str = "") -> Any:
    key = _find_key(raw, candidates)
    if key is None:
        if default is ...:
            raise SchemaError(f"missing field {what or candidates[0]!r}")
        return default
    return raw[key]


def normalize_family(value: str, allowed: Sequence[str]) -> str:
    fam = _FAMILY_ALIASES.get(_norm(str(value)), str(value))
    if fam == "Dk" and "DkSymmetric" in allowed and "Dk" not in allowed:
        fam = "DkSymmetric"
    if fam == "DkSymmetric" and "Dk" in allowed and "DkSymmetric" not in allowed:
        fam = "Dk"
    if fam not in allowed:
        raise SchemaError(f"family {value!r} not in {list(allowed)}")
    return fam


def _complex(value: Any) -> complex:
    """a jako liczba, [re, im] albo {"re":..,"im":..}."""
    if isinstance(value, Mapping):
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _param_pairs(raw_params: Sequence[Any]) -> Tuple[Tuple[complex, float], ...]:
    """[{a_re, a_im, b}] albo [[a_re, a_im, b]] albo [{"a": [re, im], "b": b}]."""
    pairs = []
    for item in raw_params:
        if isinstance(item, Mapping):
            if "a" in item:
                a = _complex(item["a"])
            else:
                a = complex(float(item.get("a_re", 0.0)), float(item.get("a_im", 0.0)))
            pairs.append((a, float(item.get("b", 0.0))))
        else:
            vals = list(item)
            if len(vals) != 3:
                raise SchemaError("parameter triple must be [a_re, a_im, b]")
            pairs.append((complex(float(vals[0]), float(vals[1])), float(vals[2])))
    return tuple(pairs)


# ─────────────────────────────────────────────────────────────
# Budowanie typów domenowych
# ─────────────────────────────────────────────────────────────

def monopole_config_from_dict(raw: Mapping[str, Any]):
    from .gibbons_hawking import FAMILIES, MonopoleConfig

    family = normalize_family(_get(raw, FAMILY_CANDIDATES, what="family"), FAMILIES)
    centers = [tuple(float(c) for c in p) for p in _get(raw, CENTERS_CANDIDATES, default=[])]
    k = _get(raw, K_CANDIDATES, default=None)
    return MonopoleConfig(
        family=family,
        m=float(_get(raw, MASS_CANDIDATES, what="m")),
        centers=tuple(centers),
        k=None if k is None else int(k),
    )


def spectral_data_from_dict(raw: Mapping[str, Any]):
    from .twistor import FAMILIES, SpectralData

    family = normalize_family(_get(raw, FAMILY_CANDIDATES, what="family"), FAMILIES)
    params = _param_pairs(_get(raw, PARAMS_CANDIDATES, what="params"))
    default_k = len(params) - 1 if family == "Ak" else len(params)
    return SpectralData(family, int(_get(raw, K_CANDIDATES, default=default_k)), params)


def tn_params_from_dict(raw: Mapping[str, Any]):
    from .torelli import FAMILIES, TNParams

    family = normalize_family(_get(raw, FAMILY_CANDIDATES, what="family"), FAMILIES)
    return TNParams(family, _param_pairs(_get(raw, PARAMS_CANDIDATES, what="params")))


def curve_config_from_dict(raw: Mapping[str, Any]):
    from .kodaira import CurveConfig

    for key in ("n", "S", "a"):
        if key not in raw:
            raise SchemaError(f"missing field {key!r}")
    return CurveConfig(
        n=tuple(raw["n"]),
        S=tuple(tuple(row) for row in raw["S"]),
        a=tuple(raw["a"]),
        d=None if raw.get("d") is None else tuple(raw["d"]),
        d_mult=raw.get("d_mult"),
    )


def lattice_from_dict(raw: Mapping[str, Any]):
    from .asymptotics import Lattice3

    return Lattice3(np.array(_get(raw, BASIS_CANDIDATES, what="basis"), dtype=float))


def beta_from_value(value: Any) -> Fraction:
    """β jako "3/4", 0.75 albo [3, 4]; nieczytelna wartość -> SchemaError."""
    try:
        if isinstance(value, (list, tuple)):
            return Fraction(int(value[0]), int(value[1]))
        if isinstance(value, float):
            return Fraction(value).limit_denominator(1000)
        return Fraction(str(value))
    except (ValueError, TypeError, IndexError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot read beta from {value!r}") from exc


def decay_samples_from_frame(df: pd.DataFrame):
    """DataFrame z kolumnami r / value (nazwy rozpoznawane jak w JSON-ach)."""
    from .asymptotics import DecaySamples

    r_col = _find_col(df, R_CANDIDATES)
    v_col = _find_col(df, VALUE_CANDIDATES)
    if r_col is None or v_col is None:
        raise SchemaError(f"samples need r and value columns, got {list(df.columns)}")
    frame = df[[r_col, v_col]].dropna().sort_values(r_col)
    return DecaySamples(frame[r_col].to_numpy(dtype=float), frame[v_col].to_numpy(dtype=float))


def decay_samples_from_dict(raw: Mapping[str, Any]):
    if "samples" in raw:
        return decay_samples_from_frame(pd.DataFrame(raw["samples"]))
    return decay_samples_from_frame(pd.DataFrame({"r": raw.get("r", []), "value": raw.get("value", raw.get("v", []))}))
