"""Certificate documents: a versioned JSON envelope around a job echo and its result.

Verdict and Weil certificates replay their recorded sub-tests; the remaining
kinds replay by re-running the echoed job and comparing results.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from typing import Any

from ltcrit import __version__
from ltcrit.criterion import replay_certificate
from ltcrit.errors import InvalidArgument
from ltcrit.jobs import Outcome, Settings, inputs_hash, run_job
from ltcrit.weil import replay as replay_weil

SCHEMA_VERSION = 1

_TRANSCRIPT_KEYS = ("transcript",)


def _strip_transcripts(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: ("omitted" if k in _TRANSCRIPT_KEYS else _strip_transcripts(v)) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_strip_transcripts(v) for v in obj]
    return obj


def build(job: dict, settings: Settings, outcome: Outcome) -> dict:
    result = outcome.result if settings.format == "full" else _strip_transcripts(outcome.result)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "ltcrit",
        "version": __version__,
        "settings": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(settings).items()},
        "inputs_hash": inputs_hash(job, settings),
        "job": job,
        "status": outcome.status,
        "result": result,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "schema_version" not in doc:
        raise InvalidArgument("not a certificate document")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise InvalidArgument(f"unsupported schema version {doc['schema_version']}")
    return doc


def _settings_of(doc: dict) -> Settings:
    s = dict(doc["settings"])
    if s.get("assert_galois") is not None:
        s["assert_galois"] = tuple(s["assert_galois"])
    return Settings(**s)


def replay(doc: dict) -> bool:
    """True when the certificate's recorded result follows from its contents.

    Full verdict and Weil certificates are checked from their own transcripts;
    brief certificates, error records and the other kinds are re-derived from
    the job echo.
    """
    result = doc["result"]
    kind = result.get("kind")
    brief = doc["settings"].get("format") != "full"
    if kind == "verdict" and not brief:
        return replay_certificate(result) == result["verdict"]
    if kind == "weil" and not brief:
        return replay_weil(result) == result["is_weil"]
    settings = _settings_of(doc)
    outcome, _ = run_job(doc["job"], settings)
    fresh = build(doc["job"], settings, outcome)
    return fresh["result"] == result and fresh["status"] == doc["status"]
