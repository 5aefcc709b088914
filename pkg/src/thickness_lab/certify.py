"""Certificate serialization (schema "witness/1") and independent re-verification.

Verification deliberately avoids the construction path: bounds are
recomputed only from the stored family, witness and evaluation points,
through the exact pointwise evaluation, plus a fresh sup-norm certificate
for the witness. Any mutation of an achieved bound or a witness
coefficient therefore fails the check.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Mapping

from .constants import TAU_EXACT, TAU_UNIT
from .errors import SchemaError
from .groups import Character, parse_group_spec
from .trigpoly import TrigPolynomial, sup_norm
from .witness import WitnessCertificate

SCHEMA = "witness/1"


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, float)):
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return str(obj)


def certificate_to_dict(cert: WitnessCertificate) -> dict:
    if cert.group is not None:
        space = {"kind": "group", "group": cert.group.spec_string()}
        family = [f.to_interchange() for f in cert.family]
    else:
        space = {"kind": "lp", "p": cert.p}
        family = [
            {"entries": [[k, v.real, v.imag] for k, v in sorted(vec.items())]}
            for vec in cert.family
        ]
    if cert.witness_kind == "character":
        witness = {"kind": "character", "exponents": list(cert.witness.exponents)}
    elif cert.witness_kind == "polynomial":
        witness = {"kind": "polynomial", "coeffs": cert.witness.to_interchange()["coeffs"]}
    else:
        witness = {"kind": "basis-vector", "index": int(cert.witness)}
    return {
        "schema": SCHEMA,
        "method": cert.method,
        "eps": cert.target_eps,
        "seed": cert.seed,
        "space": space,
        "family": family,
        "witness": witness,
        "per_function": [
            {"achieved": b.achieved, "point": list(b.point)} for b in cert.per_function
        ],
        "parameters": _jsonify(cert.parameters),
        "min_achieved": cert.min_achieved,
    }


def save_certificate(cert: WitnessCertificate, path: str) -> None:
    write_json_atomic(certificate_to_dict(cert), path)


def write_json_atomic(data, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    recomputed: tuple[float, ...]
    failures: tuple[str, ...]

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status}: {len(self.recomputed)} bounds re-checked"]
        lines += [f"  - {f}" for f in self.failures]
        return "\n".join(lines)


def verify_certificate(data: Mapping) -> VerificationReport:
    """Recompute every stored bound from scratch; pass iff all reproduce
    within the exactness tolerance and the witness is certified unit-norm."""
    if data.get("schema") != SCHEMA:
        raise SchemaError(f"unsupported schema {data.get('schema')!r}")
    space = data.get("space", {})
    if space.get("kind") == "lp":
        return _verify_lp(data)
    if space.get("kind") == "group":
        return _verify_group(data)
    raise SchemaError(f"unknown space kind {space.get('kind')!r}")


def _verify_group(data: Mapping) -> VerificationReport:
    group = parse_group_spec(data["space"]["group"])
    family = []
    for i, fd in enumerate(data["family"]):
        if fd["group"] != data["space"]["group"]:
            raise SchemaError(
                f"family member {i} declares group {fd['group']!r}, "
                f"certificate says {data['space']['group']!r}"
            )
        family.append(TrigPolynomial.from_interchange(fd))
    wd = data["witness"]
    if wd["kind"] == "character":
        witness_val = Character(group, tuple(wd["exponents"])).value
        unit_failures: list[str] = []
    elif wd["kind"] == "polynomial":
        poly = TrigPolynomial(
            group,
            {tuple(int(a) for a in k): complex(re, im) for k, re, im in wd["coeffs"]},
        )
        witness_val = poly.evaluate
        cert = sup_norm(poly)
        unit_failures = []
        if cert.lo > 1.0 + TAU_UNIT or cert.hi < 1.0 - TAU_UNIT:
            unit_failures.append(
                f"witness norm certificate [{cert.lo:.9f}, {cert.hi:.9f}] "
                "does not contain 1"
            )
    else:
        raise SchemaError(f"witness kind {wd['kind']!r} invalid for a group space")

    failures = list(unit_failures)
    recomputed = []
    eps = float(data["eps"])
    for k, entry in enumerate(data["per_function"]):
        point = group.element(tuple(entry["point"]))
        value = abs(family[k].evaluate(point) + witness_val(point))
        recomputed.append(value)
        stored = float(entry["achieved"])
        if not math.isclose(value, stored, rel_tol=0.0, abs_tol=TAU_EXACT):
            failures.append(
                f"function {k}: stored bound {stored:.12f}, recomputed {value:.12f}"
            )
        if value < 2.0 - eps - 2 * TAU_EXACT:
            failures.append(
                f"function {k}: recomputed bound {value:.9f} misses target {2.0 - eps:.9f}"
            )
    return VerificationReport(not failures, tuple(recomputed), tuple(failures))


def _verify_lp(data: Mapping) -> VerificationReport:
    p = float(data["space"]["p"])
    witness = data["witness"]
    if witness["kind"] != "basis-vector":
        raise SchemaError("sequence-space certificate requires a basis-vector witness")
    m = int(witness["index"])
    failures = []
    recomputed = []
    for k, (fd, entry) in enumerate(zip(data["family"], data["per_function"])):
        vec = {int(i): complex(re, im) for i, re, im in fd["entries"]}
        norm = sum(abs(v) ** p for v in vec.values()) ** (1.0 / p)
        if abs(norm - 1.0) > TAU_UNIT:
            failures.append(f"vector {k} has p-norm {norm:.9f}, expected 1")
        if m in vec:
            failures.append(f"witness index {m} collides with the support of vector {k}")
        dist = (sum(abs(v) ** p for v in vec.values()) + 1.0) ** (1.0 / p)
        recomputed.append(dist)
        stored = float(entry["achieved"])
        if not math.isclose(dist, stored, rel_tol=0.0, abs_tol=TAU_EXACT):
            failures.append(
                f"function {k}: stored bound {stored:.12f}, recomputed {dist:.12f}"
            )
    return VerificationReport(not failures, tuple(recomputed), tuple(failures))
