# tests/test_kodaira.py
import numpy as np
import pytest

from gi.errors import InconsistentParametersError
from gi.kodaira import CurveConfig, FiberType, classify, generate_fiber, validate, virtual_genus

GENERATED = (
    [FiberType("AChain", m) for m in range(1, 13)]
    + [FiberType("DCase3", m) for m in range(0, 13)]
    + [FiberType("Regular"), FiberType("DCase1"), FiberType("DCase2")]
)


@pytest.mark.parametrize("fiber", GENERATED, ids=lambda t: f"{t.tag}-{t.m}")
def test_classify_inverts_generate(fiber):
    cfg = generate_fiber(fiber)
    assert validate(cfg)["valid"]
    assert classify(cfg).same_type(fiber)


def test_dcase2_carries_its_assumption_in_note():
    t = classify(generate_fiber(FiberType("DCase2")))
    assert t.tag == "DCase2"
    assert "(Θ₀Θ₁) = 1" in t.to_dict()["note"]


def test_fiber_type_rejects_non_integer_m():
    with pytest.raises(InconsistentParametersError):
        FiberType("AChain", "x")
    with pytest.raises(InconsistentParametersError):
        FiberType("DCase3", 1.5)


@pytest.mark.parametrize("fiber", GENERATED, ids=lambda t: f"{t.tag}-{t.m}")
def test_generated_curves_are_rational(fiber):
    assert all(g == 0 for g in virtual_genus(generate_fiber(fiber)))


def _perturb(cfg: CurveConfig, rng) -> CurveConfig:
    n, s, a = list(cfg.n), cfg.matrix.copy(), list(cfg.a)
    d = list(cfg.d) if cfg.d is not None else None
    delta = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    fields = ["n", "S", "a"] + (["d"] if d is not None else [])
    target = fields[int(rng.integers(len(fields)))]
    size = len(n)
    if target == "n":
        n[int(rng.integers(size))] += abs(delta)
    elif target == "S":
        s[int(rng.integers(size)), int(rng.integers(size))] += delta
    elif target == "a":
        a[int(rng.integers(size))] += delta
    else:
        d[int(rng.integers(size))] += delta
    return CurveConfig(tuple(n), tuple(map(tuple, s)), tuple(a), d=tuple(d) if d is not None else None, d_mult=cfg.d_mult)


def test_single_entry_perturbation_is_detected(rng):
    for _ in range(1000):
        base = generate_fiber(GENERATED[int(rng.integers(len(GENERATED)))])
        report = validate(_perturb(base, rng))
        assert not report["valid"]
        assert len(report["violations"]) >= 1


def test_dcase3_one_report():
    cfg = generate_fiber(FiberType("DCase3", 1))
    assert len(cfg.n) == 4
    assert classify(cfg).to_dict() == {"type": "DCase3", "m": 1}


def test_regular_without_divisor_data_carries_note():
    t = classify(generate_fiber(FiberType("Regular")))
    assert t.tag == "Regular"
    assert "DCase1" in t.note


def test_invalid_reports_first_violation():
    cfg = CurveConfig((1, 1), ((-1, 1), (1, -2)), (1, 1))
    t = classify(cfg)
    assert t.tag == "Invalid"
    assert t.reason.startswith("fiber_identity")


def test_disconnected_graph():
    cfg = CurveConfig((1, 1), ((0, 0), (0, 0)), (1, 1))
    checks = {v["check"] for v in validate(cfg)["violations"]}
    assert "connectivity" in checks


@pytest.mark.parametrize("family, k, expected", [("A", 3, FiberType("AChain", 4)), ("D", 5, FiberType("DCase3", 3))])
def test_from_dynkin(family, k, expected):
    t = FiberType.from_dynkin(family, k)
    assert t.same_type(expected)
    generate_fiber(t, k=k)


def test_rank_mismatch():
    with pytest.raises(InconsistentParametersError):
        generate_fiber(FiberType("DCase3", 2), k=3)
    with pytest.raises(InconsistentParametersError):
        generate_fiber(FiberType("Regular"), k=1)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=(1, 1), S=((0,),), a=(2,)),
        dict(n=(0,), S=((0,),), a=(2,)),
        dict(n=(1,), S=((0,),), a=(2,), d=(1, 1)),
    ],
)
def test_malformed_curve_config(kwargs):
    with pytest.raises(InconsistentParametersError):
        CurveConfig(**kwargs)


def test_unknown_tag():
    with pytest.raises(InconsistentParametersError):
        FiberType("I5")
    with pytest.raises(InconsistentParametersError):
        FiberType("AChain", 0)


def test_matrix_is_integer():
    assert generate_fiber(FiberType("AChain", 3)).matrix.dtype == np.dtype(int)
