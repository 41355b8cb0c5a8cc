"""Transfer function realization of linear quantum stochastic systems."""

import json

from . import _lqss
from ._lqss import (
    LqssError,
    bloch_messiah,
    bogoliubov_residual,
    bogoliubov_svd,
    cayley,
    flat_adjoint,
    inverse_cayley,
    j_matrix,
    passive_svd,
    random_bogoliubov,
    reck_decompose,
)


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def model_tf(model, s):
    """Transfer function of a model (dict or JSON text) at the complex point s."""
    return _lqss.model_tf(_text(model), complex(s))


def synthesize(model, seed=42):
    """Synthesize a model and return its netlist as a dict."""
    return json.loads(_lqss.synthesize(_text(model), seed))


def netlist_tf(netlist, s):
    return _lqss.netlist_tf(_text(netlist), complex(s))


def verify(model, netlist, freqs=20, seed=42, tol=1e-8):
    """Compare model and netlist transfer functions; returns the report dict."""
    return json.loads(_lqss.verify(_text(model), _text(netlist), freqs, seed, tol))


__all__ = [
    "LqssError",
    "bloch_messiah",
    "bogoliubov_residual",
    "bogoliubov_svd",
    "cayley",
    "flat_adjoint",
    "inverse_cayley",
    "j_matrix",
    "model_tf",
    "netlist_tf",
    "passive_svd",
    "random_bogoliubov",
    "reck_decompose",
    "synthesize",
    "verify",
]
