"""Exact computations with finite A-infinity categories.

Every analysis returns the same report as the ``ainf`` command line tool,
decoded into Python dictionaries. Documents can be given as loaded
``Document`` objects, file paths, or ``"catalogue:NAME"`` strings.
"""

import json

from . import _ainf
from ._ainf import (
    Document,
    Error,
    PreconditionFailed,
    SchemaError,
    UnsupportedRing,
    catalogue_names,
    load,
    parse,
    smith_diagonal,
)

__all__ = [
    "Document",
    "Error",
    "PreconditionFailed",
    "SchemaError",
    "UnsupportedRing",
    "catalogue",
    "catalogue_names",
    "certify",
    "check",
    "family",
    "hochschild",
    "kaledin",
    "load",
    "parse",
    "smith_diagonal",
    "transfer",
]


def check(document, max_weight=4):
    return json.loads(_ainf.check(document, max_weight))


def transfer(document, max_weight=4):
    return json.loads(_ainf.transfer(document, max_weight))


def hochschild(document, min_degree=0, max_degree=2, max_weight=4, variant="full"):
    return json.loads(_ainf.hochschild(document, min_degree, max_degree, max_weight, variant))


def kaledin(document, truncation=4):
    return json.loads(_ainf.kaledin(document, truncation))


def certify(document, max_weight=4):
    return json.loads(_ainf.certify(document, max_weight))


def family(document, pipeline="generic", max_weight=4):
    return json.loads(_ainf.family(document, pipeline, max_weight))


def catalogue(name=""):
    return json.loads(_ainf.catalogue(name))
