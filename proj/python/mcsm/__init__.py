"""Maximum common subelement models, graph distances and exact edit distance.

Graphs, models, metric spaces and cost tables use the same JSON shapes as the
``mcsm`` command line tool and are passed here as plain dicts. Exact rational
results come back as ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Optional

from . import _mcsm
from ._mcsm import CapExceeded, InputError, ModelViolation

__all__ = [
    "CapExceeded",
    "InputError",
    "ModelViolation",
    "check_model",
    "distance",
    "ged",
    "mcs",
    "metric_to_model",
    "verify_ged",
]

_RATIONAL_KEYS = {
    "bestSize",
    "commonSize",
    "distance",
    "ged",
    "modelDistance",
    "size1",
    "size2",
}


def _dump(doc: Optional[Mapping[str, Any]]) -> str:
    return "" if doc is None else json.dumps(doc, default=str)


def _fractions(doc: dict) -> dict:
    for key in _RATIONAL_KEYS & doc.keys():
        doc[key] = Fraction(doc[key])
    return doc


def distance(g1, g2, kind="S", metric="da", alpha=None, vertex_model=None, edge_model=None) -> Fraction:
    """Distance between two graphs under graph model ``kind`` and metric ``metric``.

    ``alpha`` maps labels to weights (uniform over the observed labels when
    omitted). Kind ``E`` takes label models instead.
    """
    out = _mcsm.distance(_dump(g1), _dump(g2), kind, metric, _dump(alpha),
                         _dump(vertex_model), _dump(edge_model))
    return Fraction(json.loads(out)["distance"])


def mcs(g1, g2, kind="S", alpha=None, vertex_model=None, edge_model=None, brute_force=False) -> dict:
    """Best common size plus witnesses (distinct up to isomorphism)."""
    out = _mcsm.mcs(_dump(g1), _dump(g2), kind, _dump(alpha), _dump(vertex_model),
                    _dump(edge_model), brute_force)
    return _fractions(json.loads(out))


def check_model(model, close_order=False) -> dict:
    """Axiom, auxiliary inequality and metric-law reports for a finite model."""
    return json.loads(_mcsm.check_model(_dump(model), close_order))


def metric_to_model(space, theta="1") -> dict:
    """Build a model whose d_a distances recover the given finite metric space."""
    return json.loads(_mcsm.metric_to_model(_dump(space), str(theta)))


def ged(g1, g2, costs) -> dict:
    """Exact graph edit distance under label-pair costs."""
    return _fractions(json.loads(_mcsm.ged(_dump(g1), _dump(g2), _dump(costs))))


def verify_ged(g1, g2, costs, n=2) -> dict:
    """Compare edit distance with the model distance of the completed graphs."""
    return _fractions(json.loads(_mcsm.verify_ged(_dump(g1), _dump(g2), _dump(costs), n)))
