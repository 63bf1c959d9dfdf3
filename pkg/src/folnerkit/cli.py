"""Command-line surface: build families, check them, and emit reports.

Every run produces one JSON report: schema identifier, the exact
resolved configuration, the result (integers as decimal strings,
rationals as num/den pairs), and a timing block. Reports for identical
configurations are byte-identical apart from timing. Some table-shaped
results can additionally be written as CSV.

Exit codes: 0 success; 2 invalid configuration; 3 element budget
exceeded; 4 verification failure (a certificate or witness check did
not pass, or a capped search gave up); 5 violation found by a
counterexample verifier.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import dynamics, folner, serialize, sumsets
from .errors import (
    BudgetExceededError,
    CertificateError,
    FolnerkitError,
    InvalidConfigError,
    SearchExhaustedError,
    ViolationFoundError,
)
from .groups import Coords, GroupDescriptor, enumerate_coords, parse_group

EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_BUDGET = 3
EXIT_VERIFICATION = 4
EXIT_VIOLATION = 5

SCHEMA = "folnerkit-report/1"


# ---------------------------------------------------------------------------
# spec mini-languages


def parse_index_range(text: str) -> list[int]:
    """'3', '1..4', or '3,5' (comma list); all inclusive."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo_text, hi_text = part.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise InvalidConfigError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise InvalidConfigError(f"no indices in {text!r}")
    return out


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidConfigError(f"not a rational: {text!r}") from exc


def parse_coords(group: GroupDescriptor, text: str) -> Coords:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != group.dim:
        raise InvalidConfigError(
            f"coordinate tuple {text!r} has {len(parts)} entries, group has dimension {group.dim}"
        )
    return tuple(int(p) for p in parts)


def parse_window(group: GroupDescriptor, text: str) -> list[Coords]:
    """'ball:R' or per-coordinate 'lo..hi' ranges joined by commas."""
    if text.startswith("ball:"):
        radius = int(text.split(":", 1)[1])
        if radius < 0:
            raise InvalidConfigError(f"window radius must be >= 0, got {radius}")
        return list(enumerate_coords(group, (2 * radius + 1) ** group.dim))
    ranges = []
    parts = text.split(",")
    if len(parts) != group.dim:
        raise InvalidConfigError(
            f"window {text!r} has {len(parts)} ranges, group has dimension {group.dim}"
        )
    for part in parts:
        if ".." not in part:
            raise InvalidConfigError(f"window range {part!r} must look like lo..hi")
        lo_text, hi_text = part.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise InvalidConfigError(f"empty window range {part!r}")
        ranges.append(range(lo, hi + 1))
    out = [()]
    for rng in ranges:
        out = [prefix + (v,) for prefix in out for v in rng]
    return out


def parse_set_spec(group: GroupDescriptor, text: str) -> sumsets.SetFamily:
    """Set families: 'congruence:4r2@-500..500', 'scale-union[:primed]', 'explicit:1;3;5'."""
    kind, _, rest = text.partition(":")
    if kind == "congruence":
        spec, _, window = rest.partition("@")
        congruences = []
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            if "r" in part:
                mod_text, res_text = part.split("r", 1)
                congruences.append((int(mod_text), int(res_text)))
            else:
                congruences.append((int(part), 0))
        if len(congruences) != group.dim:
            raise InvalidConfigError(
                f"set spec {text!r} fixes {len(congruences)} congruences, group has dimension {group.dim}"
            )
        bounds = None
        if window:
            bounds = []
            for part in window.split(","):
                lo_text, hi_text = part.split("..", 1)
                bounds.append((int(lo_text), int(hi_text)))
            if len(bounds) != group.dim:
                raise InvalidConfigError(f"window in {text!r} does not match the group dimension")
        return sumsets.CongruenceFamily(group, congruences, bounds)
    if kind == "scale-union":
        if group.spec_string() != "heisenberg3":
            raise InvalidConfigError("scale-union families live on the heisenberg3 group")
        if rest == "primed":
            return sumsets.example61_family()
        if rest == "":
            return sumsets.example62_family()
        raise InvalidConfigError(f"unknown scale-union variant {rest!r}")
    if kind == "explicit":
        elements = [parse_coords(group, chunk) for chunk in rest.split(";") if chunk.strip()]
        if not elements:
            raise InvalidConfigError("explicit set spec lists no elements")
        return sumsets.ExplicitFamily(group, elements)
    raise InvalidConfigError(f"unknown set spec {text!r} (congruence:, scale-union, explicit:)")


def parse_family_spec(group: GroupDescriptor, text: str) -> folner.FolnerFamily:
    """Folner families: 'box', 'box:SLOPE', 'box:centered[:SLOPE]', 'square'."""
    parts = text.split(":")
    if parts[0] == "box":
        side = 1
        centered = False
        for part in parts[1:]:
            if part == "centered":
                centered = True
            else:
                side = int(part)
        return folner.box_folner(group, side=side, centered=centered)
    if parts[0] == "square" and len(parts) == 1:
        return folner.nilpotent_square_folner(group)
    raise InvalidConfigError(f"unknown family spec {text!r} (box[:centered][:slope], square)")


def _basis_shifts(group: GroupDescriptor) -> list[Coords]:
    out = []
    for i in range(group.dim):
        e = [0] * group.dim
        e[i] = 1
        out.append(tuple(e))
    return out


# ---------------------------------------------------------------------------
# report plumbing


_UNSET = object()  # placeholder default; resolved against the config file after parsing


def _require(args, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise InvalidConfigError(f"--{name.replace('_', '-')} is required (flag or config file)")


def _add(sub: argparse.ArgumentParser, table: dict, *names: str, default=None, **kw):
    """add_argument with the real default parked in ``table``.

    Arguments get the ``_UNSET`` placeholder so that after parsing we can
    tell an explicit flag from an omitted one; omitted ones fall back to
    the config file and then to the recorded default.
    """
    converter = kw.get("type")
    action = sub.add_argument(*names, default=_UNSET, **kw)
    table[action.dest] = (default, converter)
    return action


def _resolve_config(args: argparse.Namespace) -> None:
    """Fill unset options from the config file, then from defaults."""
    table: dict = args.option_defaults
    overrides = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InvalidConfigError(f"cannot read config file {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidConfigError(f"config file {args.config} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidConfigError(f"config file {args.config} must hold a JSON object")
        overrides = {str(k).replace("-", "_"): v for k, v in data.items()}
        unknown = sorted(set(overrides) - set(table))
        if unknown:
            raise InvalidConfigError(
                f"config file keys not recognized by this command: {', '.join(unknown)}"
            )
    for dest, (default, converter) in table.items():
        if getattr(args, dest) is _UNSET:
            value = overrides.get(dest, default)
            if converter is not None and isinstance(value, str):
                value = converter(value)
            setattr(args, dest, value)


def _emit_report(args, command: str, config: dict, result: dict, started: float, csv_rows=None) -> None:
    report = {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "result": result,
        "timing": {"seconds": round(time.monotonic() - started, 6)},
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "csv", None):
        if csv_rows is None:
            raise InvalidConfigError(f"the {command} command has no CSV table")
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            csv.writer(fh).writerows(csv_rows)


def _default_jobs() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_folner_gen(args) -> int:
    started = time.monotonic()
    _require(args, "group", "family", "indices")
    group = parse_group(args.group)
    family = parse_family_spec(group, args.family)
    indices = parse_index_range(args.indices)
    config = {
        "group": group.spec_string(),
        "family": args.family,
        "indices": args.indices,
        "list": bool(args.list),
        "limit": str(args.limit),
    }
    sets_out = []
    csv_rows = [["index", "cardinality"]]
    for n in indices:
        fset = family.set_at(n)
        card = len(fset)
        entry = {"index": str(n), "cardinality": str(card)}
        if args.list:
            if card > args.limit:
                raise BudgetExceededError(
                    f"listing index {n} would print {card} elements, over --limit {args.limit}",
                    required=card,
                    budget=args.limit,
                )
            entry["elements"] = [
                serialize.coords_to_json(x) for x in sorted(fset.materialize(args.budget))
            ]
        sets_out.append(entry)
        csv_rows.append([str(n), str(card)])
    result = {"family_kind": family.kind, "params": serialize.encode_value(family.params), "sets": sets_out}
    _emit_report(args, "folner-gen", config, result, started, csv_rows)
    return EXIT_OK


def _cmd_folner_check(args) -> int:
    started = time.monotonic()
    _require(args, "group", "family", "indices")
    group = parse_group(args.group)
    family = parse_family_spec(group, args.family)
    indices = parse_index_range(args.indices)
    if args.shifts:
        shifts = [parse_coords(group, chunk) for chunk in args.shifts.split(";") if chunk.strip()]
    else:
        shifts = _basis_shifts(group)
    config = {
        "group": group.spec_string(),
        "family": args.family,
        "indices": args.indices,
        "side": args.side,
        "shifts": ";".join(",".join(str(c) for c in s) for s in shifts),
    }
    reports = [
        folner.folner_defect(family, n, shifts, side=args.side, budget=args.budget) for n in indices
    ]
    result = {
        "reports": [serialize.defect_report_to_dict(r) for r in reports],
        "max_defect": serialize.encode_value(max((r.max_defect for r in reports), default=Fraction(0))),
    }
    _emit_report(args, "folner-check", config, result, started, serialize.defect_csv_rows(reports))
    return EXIT_OK


def _cmd_sac_cert(args) -> int:
    started = time.monotonic()
    _require(args, "group", "indices")
    group = parse_group(args.group)
    indices = parse_index_range(args.indices)
    epsilon = parse_fraction(args.epsilon) if args.epsilon else None
    config = {
        "group": group.spec_string(),
        "indices": args.indices,
        "epsilon": args.epsilon or "",
    }
    family = folner.nilpotent_square_folner(group)
    target = folner.reindex_family(family, 1)
    cert = folner.sac_certificate(
        family, target, mapping="square", indices=indices, fiber_bound=1, budget=args.budget
    )
    result = {"certificate": serialize.sac_certificate_to_dict(cert, epsilon)}
    csv_rows = [["index", "source", "image", "target", "ratio_num", "ratio_den", "max_fiber"]]
    for r in cert.records:
        csv_rows.append(
            [
                str(r.index),
                str(r.source_cardinality),
                str(r.image_cardinality),
                str(r.target_cardinality),
                str(r.ratio.numerator),
                str(r.ratio.denominator),
                str(r.max_fiber),
            ]
        )
    _emit_report(args, "sac-cert", config, result, started, csv_rows)
    return EXIT_OK


def _cmd_density(args) -> int:
    started = time.monotonic()
    _require(args, "group", "family", "set", "indices")
    group = parse_group(args.group)
    family = parse_family_spec(group, args.family)
    member_set = parse_set_spec(group, args.set)
    indices = parse_index_range(args.indices)
    config = {
        "group": group.spec_string(),
        "family": args.family,
        "set": args.set,
        "indices": args.indices,
    }
    report = folner.density_along(member_set, family, indices, budget=args.budget)
    result = {"density": serialize.density_report_to_dict(report)}
    _emit_report(args, "density", config, result, started, serialize.density_csv_rows(report))
    return EXIT_OK


def _parse_thin_targets(group: GroupDescriptor, text: str):
    targets: dict[int, list[int]] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        coord_text, _, seed_text = chunk.partition(":")
        coord = int(coord_text)
        seeds = [int(v) for v in seed_text.split(",") if v.strip()] if seed_text else []
        targets[coord] = seeds
    if not targets:
        raise InvalidConfigError(f"no thinning targets in {text!r}")
    return targets


def _cmd_thin(args) -> int:
    started = time.monotonic()
    _require(args, "group", "family", "targets")
    group = parse_group(args.group)
    family = parse_family_spec(group, args.family)
    targets = _parse_thin_targets(group, args.targets)
    config = {
        "group": group.spec_string(),
        "family": args.family,
        "targets": args.targets,
        "count": str(args.count),
        "search_limit": str(args.search_limit),
    }
    thinned, trace = folner.thin_folner(
        family, targets, search_limit=args.search_limit, budget=args.budget
    )
    emitted = []
    for k in range(1, args.count + 1):
        fset = thinned.set_at(k)
        emitted.append({"index": str(k), "cardinality": str(len(fset))})
    result = {"trace": serialize.thinning_trace_to_dict(trace), "emitted": emitted}
    csv_rows = [["stage_coordinate", "step", "source_index", "filtered", "kept", "dropped_lines"]]
    for stage in trace.stages:
        for s in stage.steps:
            csv_rows.append(
                [
                    str(stage.coordinate),
                    str(s.step),
                    str(s.source_index),
                    str(s.filtered_cardinality),
                    str(s.kept_cardinality),
                    str(s.dropped_lines),
                ]
            )
    _emit_report(args, "thin", config, result, started, csv_rows)
    return EXIT_OK


def _cmd_search(args) -> int:
    started = time.monotonic()
    _require(args, "group", "set", "candidates", "shifts", "k")
    group = parse_group(args.group)
    family = parse_set_spec(group, args.set)
    candidates = parse_window(group, args.candidates)
    shifts = parse_window(group, args.shifts)
    config = {
        "group": group.spec_string(),
        "set": args.set,
        "candidates": args.candidates,
        "shifts": args.shifts,
        "k": str(args.k),
        "side": args.side,
        "order": args.order,
        "members_must_belong": not args.any_members,
        "max_nodes": "" if args.max_nodes is None else str(args.max_nodes),
        "jobs": str(args.jobs),
    }
    outcome = sumsets.search_witness(
        family,
        candidates,
        args.k,
        shifts,
        side=args.side,
        order=args.order,
        members_must_belong=not args.any_members,
        max_nodes=args.max_nodes,
        jobs=args.jobs,
    )
    result = {"search": serialize.search_outcome_to_dict(outcome)}
    _emit_report(args, "search", config, result, started)
    return EXIT_OK


def _load_witness(path: str) -> sumsets.Witness:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidConfigError(f"cannot read witness file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(f"witness file {path} is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "members" not in data:
        nested = data.get("result", {}).get("search", {}).get("witness") or data.get("result", {}).get(
            "witness"
        )
        if nested:
            data = nested
        else:
            raise InvalidConfigError(f"witness file {path} holds no witness record")
    return serialize.witness_from_dict(data)


def _cmd_verify_witness(args) -> int:
    started = time.monotonic()
    _require(args, "set", "witness")
    witness = _load_witness(args.witness)
    group = witness.group
    family = parse_set_spec(group, args.set)
    config = {
        "group": group.spec_string(),
        "set": args.set,
        "witness": args.witness,
        "check_members": bool(args.check_members),
    }
    report = sumsets.verify_witness(family, witness, check_members=args.check_members)
    result = {
        "witness": serialize.witness_to_dict(witness),
        "verification": serialize.witness_report_to_dict(report),
    }
    _emit_report(args, "verify-witness", config, result, started)
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def _cmd_counterexample(args) -> int:
    started = time.monotonic()
    _require(args, "which")
    which = args.which
    config = {
        "which": which,
        "tbound": str(args.tbound),
        "jobs": str(args.jobs),
    }
    violation: Optional[ViolationFoundError] = None
    extra: dict = {}
    if which == "61":
        small = parse_index_range(args.N)
        large = parse_index_range(args.M)
        config.update(
            {
                "N": args.N,
                "M": args.M,
                "parity_filter": not args.no_parity_filter,
                "validate_filter": bool(args.validate_filter),
            }
        )
        try:
            cert = sumsets.verify_counterexample_61(
                small_scales=small,
                large_scales=large,
                shift_bound=args.tbound,
                parity_filter=not args.no_parity_filter,
                jobs=args.jobs,
            )
        except ViolationFoundError as exc:
            violation, cert = exc, exc.certificate
        if args.validate_filter:
            validation = sumsets.validate_parity_filter_61(
                small_scale=min(small), large_scale=min(large), shift_bound=min(args.tbound, 3)
            )
            extra["filter_validation"] = {
                "combinations_checked": str(validation.combinations_checked),
                "excluded_by_filter": str(validation.excluded_by_filter),
                "filter_sound": validation.filter_sound,
                "mismatches": serialize.encode_value(validation.filter_mismatches),
                "violations": serialize.encode_value(validation.violations),
            }
    elif which in ("62", "63"):
        large = parse_index_range(args.M)
        config.update({"M": args.M, "b_bound": str(args.b_bound)})
        runner = (
            sumsets.verify_counterexample_62 if which == "62" else sumsets.verify_counterexample_63
        )
        try:
            cert = runner(
                pivot_bound=args.b_bound,
                large_scales=large,
                shift_bound=args.tbound,
                jobs=args.jobs,
            )
        except ViolationFoundError as exc:
            violation, cert = exc, exc.certificate
    else:
        raise InvalidConfigError(f"unknown counterexample {which!r} (61, 62, 63)")
    result = {"certificate": serialize.emptiness_certificate_to_dict(cert)}
    result.update(extra)
    _emit_report(args, "counterexample", config, result, started)
    return EXIT_VIOLATION if violation is not None else EXIT_OK


def _cmd_extract(args) -> int:
    started = time.monotonic()
    _require(args, "group", "set", "k")
    group = parse_group(args.group)
    family = parse_set_spec(group, args.set)
    windows = dynamics.ExtractionWindows(
        agreement_radius=args.agree_radius,
        domain_radius=args.domain_radius,
        translate_radius=args.translate_radius,
        shift_radius=args.shift_radius,
        approach_count=args.approach_count,
    )
    config = {
        "group": group.spec_string(),
        "set": args.set,
        "k": str(args.k),
        "agree_radius": str(args.agree_radius),
        "domain_radius": str(args.domain_radius),
        "translate_radius": str(args.translate_radius),
        "shift_radius": str(args.shift_radius),
        "approach_count": "" if args.approach_count is None else str(args.approach_count),
    }
    outcome = dynamics.end_to_end_extract(family, windows, args.k)
    result = {"extraction": serialize.extraction_outcome_to_dict(outcome)}
    _emit_report(args, "extract", config, result, started)
    return EXIT_OK if outcome.found else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# parser assembly


def _add_common(sub: argparse.ArgumentParser, table: dict, with_group: bool = True) -> None:
    if with_group:
        _add(sub, table, "--group", help="group spec: lattice:D, h3, ut:N, fv:P:N")
    sub.add_argument("--config", default=None, help="JSON file of option values; flags override it")
    _add(sub, table, "--out", help="write the JSON report here instead of stdout")
    _add(sub, table, "--csv", help="also write the tabular result as CSV")
    _add(sub, table, "--budget", type=int, help="element budget override")
    _add(sub, table, "--jobs", type=int, default=_default_jobs(), help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="folnerkit", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    def subcommand(name: str, handler, help: str, with_group: bool = True):
        sub = commands.add_parser(name, help=help)
        table: dict = {}
        _add_common(sub, table, with_group)
        sub.set_defaults(handler=handler, option_defaults=table)
        return sub, table

    sub, table = subcommand("folner-gen", _cmd_folner_gen, "generate family sets and cardinalities")
    _add(sub, table, "--family", help="box[:centered][:slope] or square")
    _add(sub, table, "--indices", help="index range, e.g. 1..4")
    _add(sub, table, "--list", action="store_true", default=False, help="include the elements themselves")
    _add(sub, table, "--limit", type=int, default=4096, help="max elements listed per index")

    sub, table = subcommand("folner-check", _cmd_folner_check, "translation defect report")
    _add(sub, table, "--family")
    _add(sub, table, "--indices")
    _add(sub, table, "--side", choices=("left", "right"), default="left")
    _add(sub, table, "--shifts", help="semicolon-joined coordinate tuples; default: basis shifts")

    sub, table = subcommand("sac-cert", _cmd_sac_cert, "squaring-map certificate along the box family")
    _add(sub, table, "--indices", help="certificate index range, e.g. 1..3")
    _add(sub, table, "--epsilon", help="density to transfer, e.g. 1/10")

    sub, table = subcommand("density", _cmd_density, "exact counting density along a family")
    _add(sub, table, "--family")
    _add(sub, table, "--set", help="congruence:..., scale-union, explicit:...")
    _add(sub, table, "--indices")

    sub, table = subcommand("thin", _cmd_thin, "line-dropping thinning with escape trace")
    _add(sub, table, "--family")
    _add(sub, table, "--targets", help="coordinate[:seed,...] entries joined by ';'")
    _add(sub, table, "--count", type=int, default=3, help="emit this many thinned sets")
    _add(sub, table, "--search-limit", type=int, default=512)

    sub, table = subcommand("search", _cmd_search, "depth-first shifted-product witness search")
    _add(sub, table, "--set")
    _add(sub, table, "--candidates", help="window: ball:R or lo..hi[,lo..hi]")
    _add(sub, table, "--shifts", help="shift window, same syntax")
    _add(sub, table, "--k", type=int)
    _add(sub, table, "--side", choices=(sumsets.SIDE_LEFT, sumsets.SIDE_RIGHT), default="left")
    _add(
        sub,
        table,
        "--order",
        choices=(sumsets.ORDER_INCREASING, sumsets.ORDER_DECREASING, sumsets.ORDER_DISTINCT),
        default=sumsets.ORDER_INCREASING,
    )
    _add(sub, table, "--any-members", action="store_true", default=False, help="do not require members inside the set")
    _add(sub, table, "--max-nodes", type=int)

    sub, table = subcommand("verify-witness", _cmd_verify_witness, "re-check a serialized witness", with_group=False)
    _add(sub, table, "--set")
    _add(sub, table, "--witness", help="witness JSON (bare or inside a report)")
    _add(sub, table, "--check-members", action="store_true", default=False)

    sub, table = subcommand("counterexample", _cmd_counterexample, "finite-slice emptiness verifiers", with_group=False)
    _add(sub, table, "--which", choices=("61", "62", "63"))
    _add(sub, table, "--N", default="3,5", help="small scales for 61, e.g. 3,5")
    _add(sub, table, "--M", default="9..12", help="large scale range")
    _add(sub, table, "--tbound", type=int, default=9, help="sup-norm shift bound")
    _add(sub, table, "--b-bound", type=int, default=4, help="pivot window bound for 62/63")
    _add(sub, table, "--no-parity-filter", action="store_true", default=False, help="61: test every shift directly")
    _add(sub, table, "--validate-filter", action="store_true", default=False, help="61: audit the parity filter")

    sub, table = subcommand("extract", _cmd_extract, "symbolic extraction into a verified witness")
    _add(sub, table, "--set")
    _add(sub, table, "--k", type=int)
    _add(sub, table, "--agree-radius", type=int, default=2)
    _add(sub, table, "--domain-radius", type=int, default=8)
    _add(sub, table, "--translate-radius", type=int, default=4)
    _add(sub, table, "--shift-radius", type=int, default=4)
    _add(sub, table, "--approach-count", type=int)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _resolve_config(args)
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"folnerkit: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CertificateError, SearchExhaustedError) as exc:
        print(f"folnerkit: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except ViolationFoundError as exc:
        print(f"folnerkit: violation found: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InvalidConfigError, FolnerkitError) as exc:
        print(f"folnerkit: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID_CONFIG


if __name__ == "__main__":
    sys.exit(main())
