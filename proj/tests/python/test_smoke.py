import json
import os
from pathlib import Path

import numpy as np
import pytest

import lqss

MODELS = Path(os.environ.get("LQSS_MODELS_DIR", Path(__file__).resolve().parents[2] / "models"))


def load(name):
    return json.loads((MODELS / f"{name}.json").read_text())


@pytest.mark.parametrize(
    "name,tol",
    [("passive_three_mode", 1e-8), ("active_two_mode", 1e-7), ("degenerate_single_mode", 1e-10)],
)
def test_synthesize_and_verify(name, tol):
    model = load(name)
    net = lqss.synthesize(model)
    report = lqss.verify(model, net, tol=tol)
    assert report["pass"]
    assert len(report["samples"]) == 20
    s = 0.1 + 2.0j
    assert np.allclose(lqss.model_tf(model, s), lqss.netlist_tf(net, s), atol=1e-7)


def test_bogoliubov_svd_reconstructs():
    model = load("active_two_mode")
    n = np.array([[complex(*z) for z in row] for row in model["N"]])
    f = lqss.bogoliubov_svd(n)
    recon = f["v"] @ f["n_hat"] @ lqss.flat_adjoint(f["w"])
    assert np.linalg.norm(recon - n) < 1e-10
    kinds = sorted(k for k, _ in f["classes"])
    assert kinds == ["real_negative", "real_positive"]


def test_static_decompositions():
    r = lqss.random_bogoliubov(3, seed=4)
    assert lqss.bogoliubov_residual(r) < 1e-10
    u1, x, u2, residual = lqss.bloch_messiah(r)
    assert residual < 1e-8
    assert np.all(np.diff(x) <= 1e-12)
    q, _ = np.linalg.qr(np.random.default_rng(0).normal(size=(4, 4)) + 0j)
    m, count = lqss.reck_decompose(q)
    assert count <= 6
    assert np.linalg.norm(m - q) < 1e-9


def test_cayley_round_trip():
    q, _ = np.linalg.qr(np.random.default_rng(1).normal(size=(3, 3)) + 1j * np.random.default_rng(2).normal(size=(3, 3)))
    assert np.linalg.norm(lqss.inverse_cayley(lqss.cayley(q)) - q) < 1e-10


def test_errors_carry_their_kind():
    model = {"schema_version": 1, "type": "general", "n": 1, "m": 2,
             "M": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
             "N": [[[1, 0], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]]],
             "S": np.eye(4).tolist()}
    model["S"] = [[[v, 0.0] for v in row] for row in model["S"]]
    with pytest.raises(lqss.LqssError, match="unsupported"):
        lqss.synthesize(model)
