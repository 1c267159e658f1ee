"""Full analysis of one choice dataset, rendered as JSON or text."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .axioms import Status, Verdict, check_delta, check_rho, check_tau, check_v_axiom, check_warp, detect_reference_points
from .core import ChoiceCorrespondence, ChoiceData, complete
from .relations import (
    is_asymmetric,
    is_complete,
    is_negatively_transitive,
    is_transitive,
    negative_transitivity_witness,
    pairs_observed,
    rationalizes,
    revealed_rationalization,
    strict_revealed,
    v_relation,
    weak_revealed,
)


@dataclass(frozen=True)
class AnalysisReport:
    data: ChoiceData
    completion: str | None
    verdicts: dict[str, Verdict]
    document: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return self.document

    def to_json(self) -> str:
        return json.dumps(self.document, indent=2, sort_keys=True)

    def to_text(self) -> str:
        return render_text(self.document)

    @property
    def consistent(self) -> bool:
        return self.document["consistent"]


def analyze(data: ChoiceData, completion: str | None = None, verbose: bool = False) -> AnalysisReport:
    """Run every checker on ``data``.

    Tau, rho and WARP run on the data as observed (three-valued when partial).
    The V-axiom and delta quantify over all menus; with ``completion`` set
    they run on the completed correspondence instead.
    """
    u = data.universe
    total_view = complete(data, completion) if completion else data
    verdicts = {
        "tau": check_tau(data),
        "rho": check_rho(data),
        "warp": check_warp(data),
        "v-axiom": check_v_axiom(total_view),
        "delta": check_delta(total_view),
    }
    strict = strict_revealed(data)
    weak = weak_revealed(data)
    v = v_relation(data)
    nt_witness = negative_transitivity_witness(strict)
    known = pairs_observed(data)
    preference = {
        "pairs_observed": known,
        "strict_is_preference": (is_asymmetric(strict) and nt_witness is None) if known else None,
        "asymmetric": is_asymmetric(strict),
        "negatively_transitive": is_negatively_transitive(strict),
        "negative_transitivity_witness": None if nt_witness is None else [u.labels[i] for i in nt_witness],
        "weak_complete": is_complete(weak),
        "weak_transitive": is_transitive(weak),
    }
    preference["weak_is_preference"] = (
        preference["weak_complete"] and preference["weak_transitive"] if known else None
    )
    rat = rationalizes(data, strict, verbose=verbose) if known else revealed_rationalization(data)
    refs = detect_reference_points(data)
    is_total = isinstance(data, ChoiceCorrespondence) or data.is_total
    consistent = True
    if is_total and verdicts["tau"].satisfied and verdicts["rho"].satisfied:
        consistent = rat.holds and preference["strict_is_preference"]
    doc = {
        "dataset": {
            "alternatives": list(u.labels),
            "n": u.n,
            "observations": len(data.items()) if isinstance(data, ChoiceCorrespondence) else len(data),
            "coverage": round(1.0 if is_total else data.coverage, 6),
            "total": is_total,
            "completion": completion,
        },
        "verdicts": {name: ver.to_dict(u) for name, ver in verdicts.items()},
        "relations": {
            "strict": strict.to_dict(u)["relation"],
            "weak": weak.to_dict(u)["relation"],
            "v": v.to_dict(u)["relation"],
        },
        "preference": preference,
        "rationalization": rat.to_dict(u),
        "reference_points": [r.to_dict(u) for r in refs],
        "consistent": consistent,
    }
    return AnalysisReport(data, completion, verdicts, doc)


def _fmt_set(labels: list[str]) -> str:
    return "{" + ",".join(labels) + "}"


def _fmt_witness(w: dict[str, Any]) -> str:
    parts = []
    for key, val in w.items():
        parts.append(f"{key}={_fmt_set(val) if isinstance(val, list) else val}")
    return ", ".join(parts)


def _yes_no(flag: bool | None) -> str:
    return "undetermined (some pair menus unobserved)" if flag is None else ("yes" if flag else "no")


def render_text(doc: dict[str, Any]) -> str:
    """Human-readable view of an analysis document."""
    ds = doc["dataset"]
    lines = [
        f"alternatives: {', '.join(ds['alternatives'])}",
        f"observations: {ds['observations']}  coverage: {ds['coverage']:.1%}"
        + ("" if ds["total"] else "  (partial)")
        + (f"  completion: {ds['completion']}" if ds["completion"] else ""),
        "",
        "axioms:",
    ]
    for name, ver in doc["verdicts"].items():
        line = f"  {name:<8} {ver['status']}"
        if ver["status"] == Status.VIOLATED.value:
            count = ver["violation_count"]
            line += f" ({count} instance{'' if count == 1 else 's'}; first: {_fmt_witness(ver['witnesses'][0])})"
        lines.append(line)
    pref = doc["preference"]
    lines.append("")
    lines.append("strict revealed preference: " + (", ".join(f"{a}>{b}" for a, b in doc["relations"]["strict"]) or "(empty)"))
    lines.append(f"  preference relation: {_yes_no(pref['strict_is_preference'])}")
    if pref["pairs_observed"] and pref["negative_transitivity_witness"]:
        x, y, z = pref["negative_transitivity_witness"]
        lines.append(f"  negative transitivity fails: {x} not>{y}, {y} not>{z}, but {x}>{z}")
    rat = doc["rationalization"]
    if rat["rationalized"] is not False:
        lines.append(f"  rationalizes the data: {_yes_no(rat['rationalized'])}")
    else:
        lines.append(
            f"  rationalizes the data: no, menu {_fmt_set(rat['menu'])} "
            f"expected {_fmt_set(rat['expected'])}, chosen {_fmt_set(rat['actual'])}"
        )
    refs = doc["reference_points"]
    if refs:
        lines.append("")
        lines.append("reference points:")
        for r in refs:
            lines.append(f"  {r['reference']} helps {r['x']} over {r['y']} (clause {'+'.join(map(str, r['clauses']))})")
    if not doc["consistent"]:
        lines.append("")
        lines.append("WARNING: report is internally inconsistent")
    return "\n".join(lines)
