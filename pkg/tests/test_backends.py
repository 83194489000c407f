"""Cross-backend agreement between the compiled and pure-Python kernels.

The pure module mirrors the compiled one operation for operation, so every
kernel except log_weights is expected to agree bit for bit on the same
inputs.  log_weights assembles large lgamma and log terms whose library
paths differ by an ulp, so it gets an envelope scaled to the size of the
cancelled intermediates instead.
"""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

import bernaudit
from bernaudit import _kernels_py as pyk

cyk = pytest.importorskip("bernaudit._kernels")

EMPTY = np.empty(0)

PL_XS = np.array([0.0, 0.1, 0.4, 1.0])
PL_YS = np.array([0.0, 0.2, 0.5, 0.9])


def test_backend_names():
    assert pyk.BACKEND_NAME == "python"
    assert cyk.BACKEND_NAME == "compiled"
    assert bernaudit.backend_name() in {"python", "compiled"}


def test_shared_constants_match():
    for name in ("KIND_CALLBACK", "KIND_LINEAR", "KIND_POWER", "KIND_PL"):
        assert getattr(pyk, name) == getattr(cyk, name)
    assert pyk.LOG_TINY == cyk.LOG_TINY


def test_log_weights_agree_to_intermediate_ulps():
    for n in (1, 2, 17, 100, 513, 2000):
        for x in (1e-9, 0.25, 0.5, 0.9999):
            a = np.asarray(pyk.log_weights(n, x))
            b = np.asarray(cyk.log_weights(n, x))
            m = np.arange(n + 1)
            scale = (math.lgamma(n + 1) + np.abs(m * math.log(x))
                     + np.abs((n - m) * math.log1p(-x)))
            assert np.all(np.abs(a - b) <= 8.0 * np.spacing(scale + 1.0))


def test_weights_from_log_bitwise_on_same_input():
    for n in (2, 100, 2000):
        lw = np.asarray(pyk.log_weights(n, 0.37))
        lw[0] = pyk.LOG_TINY - 5.0  # exercise the underflow guard
        a = np.asarray(pyk.weights_from_log(lw))
        b = np.asarray(cyk.weights_from_log(lw))
        assert a[0] == 0.0
        assert np.array_equal(a, b)


def test_reducers_bitwise_on_same_input():
    rng = np.random.default_rng(7)
    for k in (1, 2, 33, 514, 2001):
        w = rng.random(k)
        v = rng.standard_normal(k)
        assert pyk.comp_sum(w) == cyk.comp_sum(w)
        assert pyk.comp_dot(w, v) == cyk.comp_dot(w, v)
    f = rng.standard_normal((9, 13))
    w1, w2 = rng.random(9), rng.random(13)
    assert pyk.comp_dot2(w1, w2, f) == cyk.comp_dot2(w1, w2, f)


def test_compensated_sum_tracks_fsum():
    cancel = np.array([1e16, 1.0, -1e16, 1.0, 3.14, -2.71, 1e-9] * 3)
    want = math.fsum(cancel)
    assert pyk.comp_sum(cancel) == pytest.approx(want, rel=1e-9)
    assert cyk.comp_sum(cancel) == pytest.approx(want, rel=1e-9)
    rng = np.random.default_rng(3)
    w = rng.random(1000)
    assert pyk.comp_sum(w) == pytest.approx(math.fsum(w), rel=5e-16)
    assert cyk.comp_sum(w) == pytest.approx(math.fsum(w), rel=5e-16)


def test_reducers_return_plain_floats():
    w = np.array([0.25, 0.5, 0.25])
    assert type(pyk.comp_sum(w)) is float
    assert type(cyk.comp_sum(w)) is float
    assert type(pyk.comp_dot(w, w)) is float
    assert type(cyk.comp_dot(w, w)) is float


def test_modulus_value_bitwise():
    cases = [(pyk.KIND_LINEAR, 2.0, 0.0, EMPTY, EMPTY),
             (pyk.KIND_POWER, 0.5, 1.3, EMPTY, EMPTY),
             (pyk.KIND_PL, 0.0, 0.0, PL_XS, PL_YS)]
    for d in (0.0, 0.05, 0.17, 0.4, 0.999, 1.0, 1.7, 5.0):
        for kind, p1, p2, kx, ky in cases:
            a = pyk.modulus_value(kind, p1, p2, kx, ky, d)
            b = cyk.modulus_value(kind, p1, p2, kx, ky, d)
            assert a == b
            assert type(a) is float and type(b) is float


def test_panel_integrate_bitwise():
    specs = [("mod", pyk.KIND_LINEAR, 2.0, 0.0, EMPTY, EMPTY, 0.05),
             ("mod", pyk.KIND_POWER, 0.5, 1.0, EMPTY, EMPTY, 0.1),
             ("mod", pyk.KIND_PL, 0.0, 0.0, PL_XS, PL_YS, 0.2),
             ("cb", lambda z: math.sin(z) * math.exp(-0.3 * z))]
    # the last window caps the split budget, checking the exhaustion path too
    windows = [(0.0, 10.0, 1e-13, 10 ** 6), (0.0, 2.5, 1e-10, 10 ** 6),
               (1.0, 4.0, 1e-13, 3)]
    for spec in specs:
        for a, b, eps, cap in windows:
            assert (pyk.panel_integrate(spec, a, b, eps, cap)
                    == cyk.panel_integrate(spec, a, b, eps, cap))


def test_forced_backend_selection():
    for forced in ("python", "compiled"):
        env = dict(os.environ, BERNAUDIT_BACKEND=forced)
        out = subprocess.run(
            [sys.executable, "-c",
             "import bernaudit; print(bernaudit.backend_name())"],
            capture_output=True, text=True, env=env, check=True)
        assert out.stdout.strip() == forced


def test_cli_reports_agree_across_backends(tmp_path):
    """Same sweep under both backends: verdicts identical, numbers match to
    quadrature accuracy."""
    payloads = {}
    for forced in ("python", "compiled"):
        env = dict(os.environ, BERNAUDIT_BACKEND=forced)
        out = tmp_path / f"{forced}.json"
        subprocess.run(
            [sys.executable, "-m", "bernaudit.cli", "bound",
             "--function", "g_0.5", "--n", "2..32", "--x-grid", "3",
             "--format", "json", "--out", str(out)],
            capture_output=True, text=True, env=env, check=True)
        payloads[forced] = json.loads(out.read_text())
    recs_p = payloads["python"]["records"]
    recs_c = payloads["compiled"]["records"]
    assert len(recs_p) == len(recs_c) == 5 * 5
    for rp, rc in zip(recs_p, recs_c):
        assert (rp["label"], rp["n1"], rp["x"]) == (rc["label"], rc["n1"], rc["x"])
        assert rp["pass"] == rc["pass"]
        for key in ("delta", "j", "bound", "ratio"):
            if rp[key] is None:
                assert rc[key] is None
            else:
                assert rp[key] == pytest.approx(rc[key], rel=1e-9, abs=1e-12)
