"""Machine-readable result documents.

A report is a JSON object with sorted keys, two-space indent and a
trailing newline, so identical inputs and flags produce identical bytes.
Input files enter as sha256 digests, verdicts carry their full witness,
and towers serialize step by step with each term in the complex file
format so certificates can be re-validated without rerunning the tool.
Timing is opt-in and excluded from the stable surface.
"""

import hashlib
import json
from fractions import Fraction

from .specfiles import write_complex_text
from .towers import Tower
from .verdicts import Verdict


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _plain(value):
    """JSON-safe copy: tuples to lists, Fractions to strings."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Tower):
        return tower_dict(value)
    if isinstance(value, Verdict):
        return verdict_dict(value)
    return value


def complex_dict(X) -> dict:
    out = {
        "degrees": [X.lo, X.hi],
        "mults": [list(X.mult(k)) for k in range(X.lo, X.hi + 1)],
        "genuine": X.genuine,
        "text": write_complex_text(X),
    }
    if not X.genuine:
        out["truncation"] = X.effective_vlo()
    return out


def _cert_dict(cert) -> dict:
    out = {}
    orth, window = cert.orth, cert.window
    if orth is not None:
        out["orth"] = {"ok": orth.ok, "checked": list(orth.checked),
                       "skipped": list(orth.skipped), "exact": orth.exact}
        if orth.witness is not None:
            out["orth"]["witness"] = {"shift": orth.witness[0],
                                      "dim": orth.witness[1]}
    if window is not None:
        out["window"] = {"ok": window.ok, "interval": list(window.interval),
                         "exact": window.exact}
        if window.witness is not None:
            out["window"]["witness"] = {"degree": window.witness}
    return out


def tower_dict(tw: Tower) -> dict:
    out = {
        "side": tw.side,
        "interval": None if tw.interval is None else list(tw.interval),
        "depth": tw.depth,
        "outcome": tw.outcome,
        "steps": [],
    }
    if tw.fail_step is not None:
        out["fail_step"] = tw.fail_step
    for step in tw.steps:
        s = {"index": step.index, "term": complex_dict(step.term)}
        if step.cert is not None:
            s["certificate"] = _cert_dict(step.cert)
        if step.discarded:
            s["discarded_add_summands"] = step.discarded
        if step.used:
            s["approximation_parts"] = list(step.used)
        if step.halt:
            s["halt"] = step.halt
        out["steps"].append(s)
    return out


def verdict_dict(v: Verdict) -> dict:
    out = {"status": v.status, "depth": v.depth, "witness": _plain(v.witness)}
    if v.tower is not None:
        out["tower"] = tower_dict(v.tower)
    return out


def report(command: str, results: dict, inputs=None, flags=None,
           seed=None, timing=None) -> dict:
    """Assemble the full document.  ``inputs`` maps labels to raw file
    text, stored as digests.  ``timing`` (seconds) is opt-in."""
    doc = {
        "command": command,
        "results": _plain(results),
    }
    if inputs:
        doc["inputs"] = {label: {"sha256": digest(text)}
                         for label, text in inputs.items()}
    if flags:
        doc["flags"] = _plain(flags)
    if seed is not None:
        doc["seed"] = seed
    if timing is not None:
        doc["timing_seconds"] = round(timing, 3)
    return doc


def render(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
