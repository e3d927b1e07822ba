"""Product knowledge-base toolkit: Turtle, queries, extraction and validation."""

import json
import os
from pathlib import Path

_shipped = Path(__file__).with_name("data")
if _shipped.is_dir():
    os.environ.setdefault("PROVKB_DATA_DIR", str(_shipped))

from ._core import (  # noqa: E402
    AlreadyDecided,
    Error,
    NotFound,
    ParseError,
    SyntaxError,
    UnknownPrefix,
    UnknownType,
    UnparseablePayload,
    UnsupportedFeature,
    WeightsInvalid,
    canonical_turtle,
    data_dir,
    edit_ratio,
    eval_report,
    extract,
    parse_turtle,
)
from . import _core


def query(sparql, turtle, correlate_not_exists=True):
    """Runs a SELECT query over a Turtle document; returns {variables, rows, rewrites}."""
    return json.loads(_core._query(sparql, turtle, correlate_not_exists))


class Service:
    """The validation service used by the HTTP API, with dict results."""

    def __init__(self, journal=None):
        self._svc = _core._Service(None if journal is None else str(journal))

    def ingest(self, payload, kind="raw", source_url="", date=""):
        return json.loads(self._svc.ingest(payload, kind, source_url, date))

    def queue(self):
        return json.loads(self._svc.queue())

    def pending(self, document_id):
        return json.loads(self._svc.items(document_id, False))

    def processed(self, document_id):
        return json.loads(self._svc.items(document_id, True))

    def decide(self, triple_key, decision="accept", **fields):
        body = dict(fields, decision=decision)
        return json.loads(self._svc.decide(triple_key, json.dumps(body)))

    def entities(self, type, initial=""):
        return json.loads(self._svc.entities(type, initial))

    def graph(self, iri, depth=1):
        return json.loads(self._svc.graph(iri, depth))

    def query(self, sparql):
        return json.loads(self._svc.query(sparql))

    def mentions(self, document_id):
        return json.loads(self._svc.mentions(document_id))

    def import_turtle(self, turtle):
        return self._svc.import_turtle(turtle)

    def export_turtle(self, graph="validated"):
        return self._svc.export_turtle(graph)
