"""Report document: JSON serialisation (lossless round trip) and text rendering."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, fields
from typing import Any, Optional

SCHEMA_VERSION = 1
SAFE_INT = 2**53 - 1
GENERATOR_LIMIT = 1000
GENERATOR_SAMPLE = 20

_BIG_INT = re.compile(r"-?[1-9][0-9]*\Z")


def encode_value(obj: Any) -> Any:
    """Replace integers outside the double-safe range by decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, dict):
        return {k: encode_value(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode_value(v) for v in obj]
    return obj


def decode_value(obj: Any) -> Any:
    if isinstance(obj, str) and _BIG_INT.match(obj):
        val = int(obj)
        if abs(val) > SAFE_INT:
            return val
        return obj
    if isinstance(obj, dict):
        return {k: decode_value(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode_value(v) for v in obj]
    return obj


@dataclass
class Report:
    command: str
    params: Optional[dict] = None
    presentation: Optional[list] = None
    cone: Optional[dict] = None
    type_value: Optional[int] = None
    type_exact: Optional[int] = None
    a_invariant: Optional[int] = None
    gorenstein: Optional[bool] = None
    h_values: Optional[list] = None
    numerator: Optional[list] = None
    hilbert_series: Optional[str] = None
    canonical: Optional[dict] = None
    rows: Optional[list] = None
    oracle_checks: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.oracle_checks)

    def to_dict(self) -> dict:
        out = {"schema_version": self.schema_version}
        for f in fields(self):
            if f.name == "schema_version":
                continue
            val = getattr(self, f.name)
            if val is not None:
                out[f.name] = val
        return encode_value(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        data = decode_value(data)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown report fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def summarize_generators(gens, full: bool = False) -> dict:
    gens = sorted(tuple(g) for g in gens)
    truncated = len(gens) > GENERATOR_LIMIT and not full
    degrees: dict[str, int] = {}
    n = len(gens[0]) if gens else 1
    for g in gens:
        key = str(sum(g) // n)
        degrees[key] = degrees.get(key, 0) + 1
    return {
        "count": len(gens),
        "degrees": dict(sorted(degrees.items(), key=lambda kv: int(kv[0]))),
        "truncated": truncated,
        "generators": [list(g) for g in (gens[:GENERATOR_SAMPLE] if truncated else gens)],
    }


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def render_text(rep: Report) -> str:
    lines: list[str] = []
    if rep.params:
        p = rep.params
        lines.append(f"family n={p['n']} i={p['i']} j={p['j']}  case={p['case']}  r={p['r']}")
    if rep.presentation:
        lines.append("presentation: " + " ; ".join("{" + ",".join(map(str, s)) + "}" for s in rep.presentation))
    if rep.cone:
        c = rep.cone
        lines.append(f"cone: dimension {c['dimension']}, {len(c['normals'])} facets, {c['ray_count']} extremal rays")
        for a in c["normals"]:
            lines.append(f"  facet {a['label']:<24} {_vec(a['coords'])}")
        if "rays" in c:
            lines.append("  rays: " + " ".join(_vec(r) for r in c["rays"]))
    if rep.type_value is not None:
        lines.append(f"type: {rep.type_value}")
    if rep.type_exact is not None and rep.type_exact != rep.type_value:
        lines.append(f"type from the cone (exact): {rep.type_exact}  ** closed form disagrees **")
    if rep.a_invariant is not None:
        lines.append(f"a-invariant: {rep.a_invariant}")
    if rep.gorenstein is not None:
        lines.append(f"Gorenstein: {'yes' if rep.gorenstein else 'no'}")
    if rep.h_values is not None:
        lines.append("Hilbert function h(0..): " + ", ".join(map(str, rep.h_values)))
    if rep.numerator is not None:
        lines.append("numerator: " + ", ".join(map(str, rep.numerator)))
    if rep.hilbert_series:
        lines.append(f"Hilbert series: {rep.hilbert_series}")
    if rep.canonical:
        c = rep.canonical
        degs = ", ".join(f"deg {k}: {v}" for k, v in c["degrees"].items())
        lines.append(f"canonical module generators: {c['count']} ({degs})")
        shown = c["generators"]
        suffix = f" ... (first {len(shown)} of {c['count']})" if c["truncated"] else ""
        lines.append("  " + " ".join(_vec(g) for g in shown) + suffix)
    if rep.rows is not None:
        lines.append(f"{'instance':<40} {'r':>3} {'type':>8} {'predicted':>10}  status")
        for row in rep.rows:
            r = "-" if row.get("r") is None else row["r"]
            typ = "-" if row.get("type") is None else row["type"]
            pred = "-" if row.get("predicted") is None else row["predicted"]
            flag = "  COUNTEREXAMPLE" if row["status"] == "fails" else ""
            extra = f"  ({row['detail']})" if row.get("detail") else ""
            lines.append(f"{row['instance']:<40} {r:>3} {typ:>8} {pred:>10}  {row['status']}{flag}{extra}")
        counts: dict[str, int] = {}
        for row in rep.rows:
            counts[row["status"]] = counts.get(row["status"], 0) + 1
        lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    if rep.oracle_checks:
        passed = sum(c["status"] == "pass" for c in rep.oracle_checks)
        lines.append(f"oracle checks: {passed}/{len(rep.oracle_checks)} pass")
        for c in rep.oracle_checks:
            if c["status"] != "pass":
                lines.append(f"  {c['status'].upper()} {c['name']}: {c['detail']}")
    return "\n".join(lines) + "\n"
