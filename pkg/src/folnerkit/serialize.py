"""Exact JSON encoding of reports, witnesses and certificates.

Integers are encoded as decimal strings and rationals as {"num", "den"}
string pairs, so no consumer ever rounds them through binary floats.
Booleans stay booleans; the only floats that appear are wall-clock
timings, which carry no mathematical content.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

from .dynamics import ExtractionOutcome, GreedyResult
from .errors import InvalidConfigError
from .folner import (
    DefectReport,
    DensityReport,
    SacCertificate,
    ThinningTrace,
)
from .groups import Coords, DoublingIndex, GroupDescriptor, InjectivityReport, parse_group
from .sumsets import EmptinessCertificate, SearchOutcome, Witness, WitnessReport


def encode_value(value: Any) -> Any:
    """Recursive exact encoding; ints become decimal strings."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, float):
        return value
    if isinstance(value, str) or value is None:
        return value
    if isinstance(value, Mapping):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode_value(v) for v in items]
    raise InvalidConfigError(f"cannot encode value of type {type(value).__name__}")


def decode_int(value: Any) -> int:
    if isinstance(value, bool):
        raise InvalidConfigError("expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise InvalidConfigError(f"not a decimal integer: {value!r}") from None
    raise InvalidConfigError(f"expected an integer, got {type(value).__name__}")


def decode_fraction(value: Any) -> Fraction:
    if isinstance(value, Mapping) and set(value) == {"num", "den"}:
        return Fraction(decode_int(value["num"]), decode_int(value["den"]))
    raise InvalidConfigError(f"not a rational encoding: {value!r}")


def coords_to_json(coords: Coords) -> list[str]:
    return [str(c) for c in coords]


def coords_from_json(items: Sequence[Any]) -> Coords:
    return tuple(decode_int(c) for c in items)


# ---------------------------------------------------------------------------
# witnesses


def witness_to_dict(witness: Witness) -> dict:
    return {
        "group": witness.group.spec_string(),
        "shift": coords_to_json(witness.shift),
        "members": [coords_to_json(m) for m in witness.members],
        "side": witness.side,
        "order": witness.order,
    }


def witness_from_dict(data: Mapping[str, Any]) -> Witness:
    for key in ("group", "shift", "members", "side", "order"):
        if key not in data:
            raise InvalidConfigError(f"witness record is missing the {key!r} field")
    group = parse_group(data["group"])
    return Witness(
        group,
        coords_from_json(data["shift"]),
        tuple(coords_from_json(m) for m in data["members"]),
        data["side"],
        data["order"],
    )


def witness_report_to_dict(report: WitnessReport) -> dict:
    return {
        "passed": report.passed,
        "pairs_checked": str(report.pairs_checked),
        "members_checked": str(report.members_checked),
        "failures": [
            {
                "i": str(i),
                "j": str(j),
                "product": coords_to_json(product),
                "shifted": coords_to_json(shifted),
            }
            for i, j, product, shifted in report.failures
        ],
    }


def search_outcome_to_dict(outcome: SearchOutcome) -> dict:
    return {
        "witness": None if outcome.witness is None else witness_to_dict(outcome.witness),
        "nodes_visited": str(outcome.nodes_visited),
        "candidates": str(outcome.candidates),
        "shifts": str(outcome.shifts),
        "pruned_extensions": str(outcome.pruned_extensions),
    }


# ---------------------------------------------------------------------------
# certificates and reports


def emptiness_certificate_to_dict(cert: EmptinessCertificate) -> dict:
    # elapsed_seconds stays off the wire: reports must be byte-identical
    # across runs apart from their timing block.
    return {
        "example": cert.example,
        "params": encode_value(cert.params),
        "pairs_examined": str(cert.pairs_examined),
        "shifts_per_pair": str(cert.shifts_per_pair),
        "checks": encode_value(cert.checks),
        "violations": encode_value(cert.violations),
        "empty": cert.empty,
    }


def sac_certificate_to_dict(cert: SacCertificate, epsilon: Fraction = None) -> dict:
    out = {
        "group": cert.group.spec_string(),
        "map": cert.map_label,
        "fiber_bound": str(cert.fiber_bound),
        "eta": encode_value(cert.eta),
        "average_factor": encode_value(cert.average_factor),
        "records": [
            {
                "index": str(r.index),
                "source_cardinality": str(r.source_cardinality),
                "image_cardinality": str(r.image_cardinality),
                "target_cardinality": str(r.target_cardinality),
                "ratio": encode_value(r.ratio),
                "max_fiber": str(r.max_fiber),
            }
            for r in cert.records
        ],
    }
    if epsilon is not None:
        out["epsilon"] = encode_value(Fraction(epsilon))
        out["transferred_density_bound"] = encode_value(cert.transfer_bound(epsilon))
    return out


def defect_report_to_dict(report: DefectReport) -> dict:
    return {
        "family": report.family_kind,
        "index": str(report.index),
        "side": report.side,
        "cardinality": str(report.cardinality),
        "defects": [
            {"shift": coords_to_json(g), "defect": encode_value(d)} for g, d in report.defects
        ],
        "max_defect": encode_value(report.max_defect),
    }


def density_report_to_dict(report: DensityReport) -> dict:
    return {
        "rows": [
            {
                "index": str(n),
                "hits": str(hits),
                "cardinality": str(card),
                "density": encode_value(dens),
            }
            for n, hits, card, dens in report.rows
        ],
        "running_max": encode_value(report.running_max),
    }


def density_csv_rows(report: DensityReport) -> list[list[str]]:
    rows = [["index", "hits", "cardinality", "density_num", "density_den"]]
    for n, hits, card, dens in report.rows:
        rows.append([str(n), str(hits), str(card), str(dens.numerator), str(dens.denominator)])
    return rows


def defect_csv_rows(reports: Sequence[DefectReport]) -> list[list[str]]:
    rows = [["index", "side", "cardinality", "shift", "defect_num", "defect_den"]]
    for rep in reports:
        for g, d in rep.defects:
            rows.append(
                [
                    str(rep.index),
                    rep.side,
                    str(rep.cardinality),
                    ";".join(str(c) for c in g),
                    str(d.numerator),
                    str(d.denominator),
                ]
            )
    return rows


def thinning_trace_to_dict(trace: ThinningTrace) -> dict:
    return {
        "stages": [
            {
                "coordinate": str(stage.coordinate),
                "seed": [str(v) for v in sorted(stage.seed)],
                "steps": [
                    {
                        "step": str(s.step),
                        "source_index": str(s.source_index),
                        "filtered_cardinality": str(s.filtered_cardinality),
                        "kept_cardinality": str(s.kept_cardinality),
                        "retained_fraction": encode_value(s.retained_fraction),
                        "dropped_lines": str(s.dropped_lines),
                        "projection": [str(v) for v in s.projection],
                    }
                    for s in stage.steps
                ],
            }
            for stage in trace.stages
        ]
    }


def injectivity_report_to_dict(report: InjectivityReport) -> dict:
    return {
        "group": report.group.spec_string(),
        "elements_checked": str(report.elements_checked),
        "injective": report.injective,
        "collisions": [
            {"first": coords_to_json(a), "second": coords_to_json(b), "square": coords_to_json(s)}
            for a, b, s in report.collisions
        ],
    }


def doubling_index_to_dict(report: DoublingIndex) -> dict:
    return {
        "group": report.group.spec_string(),
        "index": str(report.index),
        "representatives": [coords_to_json(r) for r in report.representatives],
    }


# ---------------------------------------------------------------------------
# extraction


def greedy_result_to_dict(result: GreedyResult) -> dict:
    return {
        "members": [coords_to_json(m) for m in result.members],
        "complete": result.complete,
        "blocking": result.blocking,
        "trace": [
            {
                "step": str(r.step),
                "chosen": None if r.chosen is None else coords_to_json(r.chosen),
                "candidates_tested": str(r.candidates_tested),
                "rejected_base": str(r.rejected_base),
                "rejected_shift": str(r.rejected_shift),
                "rejected_pairs": str(r.rejected_pairs),
                "active_pair_constraints": str(r.pair_constraints),
            }
            for r in result.trace
        ],
    }


def extraction_outcome_to_dict(outcome: ExtractionOutcome) -> dict:
    return {
        "witness": None if outcome.witness is None else witness_to_dict(outcome.witness),
        "found": outcome.found,
        "stats": encode_value(outcome.stats),
    }
