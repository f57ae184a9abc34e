"""Instance and report files.

Instances are JSON objects with integer coordinates (negative values
are accepted and reduced mod p on load).  Files written by save_instance
are canonical: sorted keys, two-space indent, trailing newline, so a
load/save round trip is byte-identical.

Reports carry the verdict, the full evidence list, an input digest and
a report digest; timings are excluded from the digest so the digest is
reproducible run to run.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__
from .criteria import Certificate, Instance
from .errors import InstanceFormatError, NotPrime
from .ffield import PrimeContext
from .points import PointSet

INSTANCE_FIELDS = ("prime", "n", "degree", "points", "lambda")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _expect(cond: bool, msg: str):
    if not cond:
        raise InstanceFormatError(msg)


def parse_instance(text: str) -> tuple[Instance, dict]:
    """Parse instance JSON; returns (instance, metadata).

    Raises InstanceFormatError with field diagnostics on anything
    malformed, including a composite modulus.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    _expect(isinstance(obj, dict), "top level must be an object")
    for key in INSTANCE_FIELDS:
        _expect(key in obj, f"missing field {key!r}")
    _expect(isinstance(obj["prime"], int), "field 'prime' must be an integer")
    try:
        ctx = PrimeContext(obj["prime"])
    except NotPrime as e:
        raise InstanceFormatError(f"field 'prime': {e}") from e
    n = obj["n"]
    _expect(isinstance(n, int) and n >= 1, "field 'n' must be an integer >= 1")
    degree = obj["degree"]
    _expect(isinstance(degree, int) and degree >= 1,
            "field 'degree' must be an integer >= 1")
    points = obj["points"]
    _expect(isinstance(points, list) and points, "field 'points' must be a nonempty list")
    for i, row in enumerate(points):
        _expect(isinstance(row, list) and len(row) == n + 1,
                f"points[{i}] must be a list of {n + 1} integers")
        _expect(all(isinstance(c, int) for c in row),
                f"points[{i}] must contain only integers")
    lam = obj["lambda"]
    _expect(isinstance(lam, list) and len(lam) == len(points),
            "field 'lambda' must list one integer per point")
    _expect(all(isinstance(c, int) for c in lam),
            "field 'lambda' must contain only integers")
    metadata = obj.get("metadata", {})
    _expect(isinstance(metadata, dict), "field 'metadata' must be an object")
    try:
        ps = PointSet(ctx, points)
        inst = Instance(ps, degree, lam)
    except Exception as e:
        raise InstanceFormatError(f"invalid instance data: {e}") from e
    return inst, metadata


def load_instance(path) -> tuple[Instance, dict, str]:
    """(instance, metadata, sha256 of the file bytes)."""
    data = Path(path).read_bytes()
    inst, metadata = parse_instance(data.decode("utf-8"))
    return inst, metadata, sha256_hex(data)


def instance_to_obj(inst: Instance, metadata: dict | None = None) -> dict:
    obj = {
        "prime": inst.ctx.p,
        "n": inst.pointset.n,
        "degree": inst.degree,
        "points": [[int(c) for c in pt] for pt in inst.pointset.points],
        "lambda": [int(c) for c in inst.lam],
    }
    if metadata:
        obj["metadata"] = metadata
    return obj


def save_instance(inst: Instance, path, metadata: dict | None = None) -> str:
    text = canonical_json(instance_to_obj(inst, metadata))
    Path(path).write_text(text)
    return text


def build_report(final: Certificate, per_criterion, flags: dict,
                 input_digest: str, timings: dict | None = None,
                 input_metadata: dict | None = None) -> dict:
    """Assemble a report; the digest covers everything except timings."""
    def evidence_obj(cert: Certificate):
        return [[label, _plain(value)] for label, value in cert.evidence]

    report = {
        "tool": {"name": "waringcert", "version": __version__},
        "input_digest": input_digest,
        "input_metadata": input_metadata or {},
        "flags": flags,
        "verdict": final.display(),
        "rank": final.rank,
        "reason": final.reason,
        "witness": _plain(final.witness),
        "evidence": evidence_obj(final),
        "criteria": [
            {
                "name": name,
                "verdict": cert.display(),
                "evidence": evidence_obj(cert),
            }
            for name, cert in per_criterion
        ],
    }
    report["digest"] = sha256_hex(canonical_json(report).encode("utf-8"))
    report["timings"] = timings or {}
    return report


def _plain(value):
    """Make evidence values JSON-clean (numpy scalars/arrays to ints/lists)."""
    if value is None or isinstance(value, (bool, int, str, float)):
        return value
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "tolist"):
        return _plain(value.tolist())
    return str(value)


def report_digest_payload(report: dict) -> dict:
    """The part of a report covered by its digest."""
    return {k: v for k, v in report.items() if k not in ("digest", "timings")}


def save_report(report: dict, path) -> str:
    text = canonical_json(report)
    Path(path).write_text(text)
    return text
