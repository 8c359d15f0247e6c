"""Command-line front end: batch computation, verification, report files.

Exit codes: 0 all checks pass; 1 mathematical mismatch or failed
certification; 2 usage or capacity errors; 3 prediction-only (no complex is
built when c < d + 4, closed-form predictions are emitted instead).

Reports are deterministic: identical configuration yields byte-identical
output.  Wall-clock timings are therefore only included on request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .dual_quotients import (
    MUTATIONS,
    VerificationResult,
    verify_linear_quotients,
    _verified,
)
from .errors import CapacityError, PreconditionError, ScrollError, VerificationError
from .facet_complex import enumerate_facets, facet_tree
from .invariants import (
    DEFAULT_FACE_NODE_CAPACITY,
    InvariantReport,
    closed_form,
    full_report,
)
from .oracle import DEFAULT_MODULUS, DEFAULT_ROW_CAPACITY, CrossCheckResult, cross_check
from .scroll_model import ScrollSpec

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2
EXIT_PREDICTION_ONLY = 3

SCHEMA_VERSION = 1
CSV_COLUMNS = ("c", "d", "facets", "reg", "a", "gorenstein", "pass")
MAX_REPORTED_FAILURES = 100


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Parsed, normalized invocation parameters."""

    n: tuple[int, ...]
    t_max: int = 3
    modulus: int | str = DEFAULT_MODULUS
    fmt: str = "text"
    row_capacity: int = DEFAULT_ROW_CAPACITY
    face_capacity: int = DEFAULT_FACE_NODE_CAPACITY
    hilbert_window: int = 5
    mutate_rule: str | None = None
    include_timings: bool = False
    out_dir: str | None = None
    normalized: bool = False

    @property
    def spec(self) -> ScrollSpec:
        return ScrollSpec(self.n)


@dataclass(slots=True)
class ReportEnvelope:
    """Schema-stable result wrapper; every field is always present."""

    spec: dict
    mode: str
    invariants: dict | None = None
    verification: dict | None = None
    oracle: dict | None = None
    timings: dict | None = None
    error: str | None = None
    schema_version: int = SCHEMA_VERSION
    tool: dict = field(default_factory=lambda: {"name": "scrollfiber", "version": __version__})

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "tool": self.tool,
            "spec": self.spec,
            "mode": self.mode,
            "invariants": self.invariants,
            "verification": self.verification,
            "oracle": self.oracle,
            "timings": self.timings,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportEnvelope":
        return cls(
            spec=data["spec"],
            mode=data["mode"],
            invariants=data.get("invariants"),
            verification=data.get("verification"),
            oracle=data.get("oracle"),
            timings=data.get("timings"),
            error=data.get("error"),
            schema_version=data.get("schema_version", SCHEMA_VERSION),
            tool=data.get("tool", {}),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _parse_n(text: str) -> tuple[tuple[int, ...], bool]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise PreconditionError(f"cannot parse block degrees from {text!r}")
    if not values or any(v < 1 for v in values):
        raise PreconditionError(f"block degrees must be positive integers: {text!r}")
    ordered = tuple(sorted(values))
    return ordered, ordered != values


def _parse_modulus(text: str) -> int | str:
    if text == "rational":
        return text
    try:
        return int(text)
    except ValueError:
        raise PreconditionError(f"modulus must be an integer or 'rational': {text!r}")


def _spec_dict(config: RunConfig) -> dict:
    spec = config.spec
    return {"n": list(spec.n), "c": spec.c, "d": spec.d, "normalized": config.normalized}


def _invariants_dict(report: InvariantReport) -> dict:
    return {
        "c": report.c,
        "d": report.d,
        "facet_count": report.facet_count,
        "h_vector": list(report.h_vector) if report.h_vector is not None else None,
        "dim": report.dim,
        "reg": report.reg,
        "a_invariant": report.a_invariant,
        "reduction_number": report.reduction_number,
        "gorenstein": report.gorenstein,
        "closed_form_match": report.closed_form_match,
        "mode": report.mode,
    }


def _verification_dict(result: VerificationResult) -> dict:
    failures = result.failures()
    entries = []
    for report in failures[:MAX_REPORTED_FAILURES]:
        entries.append(
            {
                "alpha": report.facet.alpha,
                "vertices": sorted(list(v) for v in report.facet.vertices),
                "linear": report.linear,
                "computed_generators": sorted(
                    sorted(list(v) for v in gen) for gen in report.computed_generators
                ),
                "predicted": sorted(list(v) for v in report.predicted_LG),
            }
        )
    return {
        "passed": result.passed,
        "facets": len(result.reports),
        "mode": result.mode,
        "mutation": result.mutation,
        "failure_count": len(failures),
        "failures": entries,
    }


def _oracle_dict(result: CrossCheckResult) -> dict:
    return {
        "t_max": result.t_max,
        "modulus": str(result.modulus),
        "passed": result.passed,
        "notes": list(result.notes),
        "rows": [[row.t, row.fiber_rank, row.face_count, row.equal] for row in result.rows],
    }


def _summary_row(envelope: ReportEnvelope) -> list[str]:
    inv = envelope.invariants
    if envelope.error is not None or inv is None:
        status = "error"
        return ["", "", "", "", "", "", status]
    if envelope.mode == "prediction-only":
        status = "prediction-only"
    else:
        verified = envelope.verification["passed"] if envelope.verification else False
        status = "true" if (inv["closed_form_match"] and verified) else "false"
    return [
        str(inv["c"]),
        str(inv["d"]),
        "" if inv["facet_count"] is None else str(inv["facet_count"]),
        str(inv["reg"]),
        str(inv["a_invariant"]),
        "true" if inv["gorenstein"] else "false",
        status,
    ]


def _render_csv(envelopes: Sequence[ReportEnvelope]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for envelope in envelopes:
        writer.writerow(_summary_row(envelope))
    return buffer.getvalue()


def _render_text(envelope: ReportEnvelope) -> str:
    lines = []
    spec = envelope.spec
    if spec.get("n") is None:
        lines.append(f"spec: unparsable input {spec.get('input')!r}")
    else:
        lines.append(
            f"spec: n=({','.join(str(v) for v in spec['n'])}) c={spec['c']} d={spec['d']}"
        )
    if spec.get("normalized"):
        lines.append("note: block degrees were reordered non-decreasingly")
    lines.append(f"mode: {envelope.mode}")
    if envelope.error is not None:
        lines.append(f"error: {envelope.error}")
    inv = envelope.invariants
    if inv is not None:
        if inv["facet_count"] is not None:
            lines.append(f"facets: {inv['facet_count']}")
        if inv["h_vector"] is not None:
            lines.append("h-vector: " + " ".join(str(v) for v in inv["h_vector"]))
        lines.append(f"dim: {inv['dim']}")
        lines.append(f"reg: {inv['reg']}")
        lines.append(f"a-invariant: {inv['a_invariant']}")
        lines.append(f"reduction number: {inv['reduction_number']}")
        lines.append(f"gorenstein: {'true' if inv['gorenstein'] else 'false'}")
        lines.append(f"closed-form match: {'true' if inv['closed_form_match'] else 'false'}")
    ver = envelope.verification
    if ver is not None:
        status = "pass" if ver["passed"] else f"FAIL ({ver['failure_count']} facets)"
        suffix = f" [mutation: {ver['mutation']}]" if ver.get("mutation") else ""
        lines.append(f"linear quotients: {status} over {ver['facets']} facets{suffix}")
        for entry in ver["failures"][:10]:
            gens = entry["computed_generators"]
            lines.append(f"  offending facet (alpha={entry['alpha']}): generators {gens}")
    orc = envelope.oracle
    if orc is not None:
        lines.append(f"oracle (modulus {orc['modulus']}, t <= {orc['t_max']}):")
        for t, fiber, faces_val, equal in orc["rows"]:
            mark = "ok" if equal else "MISMATCH"
            lines.append(f"  t={t}: fiber={fiber} faces={faces_val} {mark}")
        for note in orc["notes"]:
            lines.append(f"  note: {note}")
        lines.append(f"oracle: {'pass' if orc['passed'] else 'FAIL'}")
    if envelope.timings is not None:
        for key, value in envelope.timings.items():
            lines.append(f"timing {key}: {value}s")
    return "\n".join(lines) + "\n"


def _render(envelope: ReportEnvelope, fmt: str) -> str:
    if fmt == "json":
        return envelope.to_json()
    if fmt == "csv":
        return _render_csv([envelope])
    return _render_text(envelope)


def _write_output(text: str, config_out_dir: str | None, filename: str) -> None:
    sys.stdout.write(text)
    out_dir = config_out_dir or os.environ.get("SCROLLFIBER_OUT_DIR")
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / filename).write_text(text, encoding="utf-8")


def _out_name(command: str, config: RunConfig, fmt: str) -> str:
    tag = "-".join(str(v) for v in config.n)
    return f"{command}-n{tag}.{fmt}"


def cmd_invariants(config: RunConfig) -> tuple[ReportEnvelope, int]:
    """Full invariant report; prediction-only (exit 3) when c < d + 4."""
    spec = config.spec
    started = time.perf_counter()
    if spec.c < spec.d + 4:
        report = closed_form(spec.c, spec.d)
        envelope = ReportEnvelope(
            spec=_spec_dict(config), mode="prediction-only", invariants=_invariants_dict(report)
        )
        return envelope, EXIT_PREDICTION_ONLY

    try:
        report = full_report(
            spec,
            hilbert_window=config.hilbert_window,
            face_capacity=config.face_capacity,
        )
        verification = _verified(spec)
    except VerificationError as exc:
        envelope = ReportEnvelope(spec=_spec_dict(config), mode="computed", error=str(exc))
        return envelope, EXIT_MATH
    timings = {"total": round(time.perf_counter() - started, 3)} if config.include_timings else None
    envelope = ReportEnvelope(
        spec=_spec_dict(config),
        mode="computed",
        invariants=_invariants_dict(report),
        verification=_verification_dict(verification),
        timings=timings,
    )
    passed = report.closed_form_match and verification.passed
    return envelope, EXIT_OK if passed else EXIT_MATH


def cmd_verify(config: RunConfig) -> tuple[ReportEnvelope, int]:
    """Linear-quotients certification plus the rank-oracle cross-check."""
    spec = config.spec
    started = time.perf_counter()
    verification = verify_linear_quotients(spec, mutation=config.mutate_rule)
    oracle_result = cross_check(
        spec, config.t_max, modulus=config.modulus, capacity=config.row_capacity
    )
    timings = {"total": round(time.perf_counter() - started, 3)} if config.include_timings else None
    envelope = ReportEnvelope(
        spec=_spec_dict(config),
        mode="computed",
        verification=_verification_dict(verification),
        oracle=_oracle_dict(oracle_result),
        timings=timings,
    )
    passed = verification.passed and oracle_result.passed
    return envelope, EXIT_OK if passed else EXIT_MATH


def cmd_facets(config: RunConfig, alpha: int | None, limit: int) -> str:
    """Render the facet list (with trees) in the requested format."""
    spec = config.spec
    facets = enumerate_facets(spec)
    if alpha is not None:
        facets = [f for f in facets if f.alpha == alpha]
    if limit:
        facets = facets[:limit]
    if config.fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "spec": _spec_dict(config),
            "count": len(facets),
            "facets": [
                {
                    "alpha": f.alpha,
                    "vertices": sorted(list(v) for v in f.vertices),
                    "parents": sorted(
                        [list(v), list(p)] for v, p in facet_tree(f).parent.items()
                    ),
                }
                for f in facets
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines = [f"{len(facets)} facets of n=({','.join(str(v) for v in spec.n)})"]
    for f in facets:
        verts = " ".join(f"({a},{b})" for a, b in sorted(f.vertices))
        lines.append(f"alpha={f.alpha}  {verts}")
    return "\n".join(lines) + "\n"


def _batch_line(line: str, config: RunConfig) -> tuple[ReportEnvelope, int]:
    try:
        n, normalized = _parse_n(line)
    except PreconditionError as exc:
        envelope = ReportEnvelope(
            spec={"n": None, "c": None, "d": None, "normalized": False, "input": line},
            mode="error",
            error=str(exc),
        )
        return envelope, EXIT_USAGE
    line_config = RunConfig(
        n=n,
        fmt=config.fmt,
        hilbert_window=config.hilbert_window,
        face_capacity=config.face_capacity,
        normalized=normalized,
    )
    try:
        return cmd_invariants(line_config)
    except ScrollError as exc:
        envelope = ReportEnvelope(spec=_spec_dict(line_config), mode="error", error=str(exc))
        return envelope, EXIT_USAGE


def cmd_batch(path: str, config: RunConfig, jobs: int) -> tuple[list[ReportEnvelope], int]:
    """One invariant envelope per input line; errors never stop the run."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise PreconditionError(f"cannot read batch file {path}: {exc}")
    lines = [line.strip() for line in raw.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        return [], EXIT_OK
    with ThreadPoolExecutor(max_workers=max(1, min(jobs, len(lines)))) as pool:
        results = list(pool.map(lambda line: _batch_line(line, config), lines))
    envelopes = [envelope for envelope, _ in results]
    codes = [code for _, code in results]
    if any(code == EXIT_USAGE for code in codes):
        exit_code = EXIT_USAGE
    elif any(code == EXIT_MATH for code in codes):
        exit_code = EXIT_MATH
    else:
        exit_code = EXIT_OK
    return envelopes, exit_code


def cmd_selftest() -> int:
    """Built-in example checks; prints one line per check."""
    from .scroll_model import build_matrix, leaves_profile
    from .facet_complex import first_facet, is_facet
    from .dual_quotients import colon_generators, predict_LG
    from .invariants import h_vector_from_quotients
    from .oracle import fiber_hilbert_function
    from .invariants import hilbert_function_by_faces

    checks: list[tuple[str, bool]] = []

    spec = ScrollSpec((2, 2, 4, 4))
    top_row = tuple(col[0] for col in build_matrix(spec).columns)
    checks.append(
        (
            "matrix arrangement (2,2,4,4)",
            top_row
            == ((1, 0), (2, 0), (3, 0), (4, 0), (3, 1), (4, 1), (3, 2), (4, 2), (4, 3), (3, 3), (2, 1), (1, 1)),
        )
    )
    expected_leaves = frozenset({(2, 3), (3, 4), (4, 5), (5, 6), (10, 11), (11, 12)})
    checks.append(("leaf set (2,2,4,4) alpha=2", leaves_profile(spec, 2).leaves == expected_leaves))
    first = first_facet(spec, 2)
    expected_first = frozenset((k, 12) for k in range(1, 11)) | expected_leaves
    checks.append(("first facet (2,2,4,4) alpha=2", first.vertices == expected_first))
    checks.append(("first facet is a facet", is_facet(spec, first.vertices)))

    spec245 = ScrollSpec((2, 4, 5))
    from .facet_complex import Facet

    example = Facet(
        vertices=frozenset(
            {
                (1, 2), (1, 3), (1, 4), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11),
                (2, 3), (3, 4), (4, 5), (4, 6), (9, 11), (10, 11),
            }
        ),
        alpha=1,
        spec=spec245,
    )
    predicted = predict_LG(example)
    expected_lg = frozenset({(1, 2), (1, 3), (1, 4), (1, 6), (1, 9)})
    checks.append(("column-1 generators (2,4,5)", predicted == expected_lg))
    gens = colon_generators(example, enumerate_facets(spec245))
    checks.append(("colon generators match prediction", gens == frozenset(frozenset((v,)) for v in expected_lg)))

    spec5 = ScrollSpec((5,))
    result = _verified(spec5)
    checks.append(("linear quotients (5)", result.passed))
    checks.append(("h-vector (5)", h_vector_from_quotients(result.reports).h == (1, 4, 4, 1)))
    facets5 = enumerate_facets(spec5)
    oracle_ok = all(
        fiber_hilbert_function(spec5, t) == hilbert_function_by_faces(spec5, facets5, t)
        for t in range(3)
    )
    checks.append(("rank oracle agrees (5), t <= 2", oracle_ok))

    failed = 0
    for name, ok in checks:
        print(f"selftest: {name} ... {'ok' if ok else 'FAIL'}")
        if not ok:
            failed += 1
    print(f"selftest: {len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_MATH


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scrollfiber",
        description="Fiber-cone invariants of rational normal scrolls via the initial complex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_n: bool = True) -> None:
        if with_n:
            p.add_argument("--n", required=True, help="block degrees, e.g. 2,2,4,4")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out-dir", default=None, help="also write the report to this directory")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings")

    p_inv = sub.add_parser("invariants", help="compute and check all invariants")
    add_common(p_inv)
    p_inv.add_argument("--hilbert-window", type=int, default=5, metavar="T",
                       help="check the two Hilbert paths up to this degree (default 5)")
    p_inv.add_argument("--face-capacity", type=int, default=DEFAULT_FACE_NODE_CAPACITY)

    p_ver = sub.add_parser("verify", help="certify linear quotients and run the rank oracle")
    add_common(p_ver)
    p_ver.add_argument("--t-max", type=int, default=3)
    p_ver.add_argument("--modulus", default=str(DEFAULT_MODULUS),
                       help="prime modulus for the rank oracle, or 'rational'")
    p_ver.add_argument("--capacity", type=int, default=DEFAULT_ROW_CAPACITY,
                       help="row guard for the rank oracle")
    p_ver.add_argument("--mutate-rule", choices=sorted(MUTATIONS), default=None,
                       help="diagnostic rule mutation (checker self-test)")

    p_fac = sub.add_parser("facets", help="dump the facet list")
    add_common(p_fac)
    p_fac.add_argument("--alpha", type=int, default=None, help="restrict to one group")
    p_fac.add_argument("--limit", type=int, default=0, help="emit at most this many facets")

    p_bat = sub.add_parser("batch", help="one report per line of a file of block-degree lists")
    p_bat.add_argument("file", help="input file, one comma-separated n per line")
    p_bat.add_argument("--format", choices=("text", "json", "csv"), default="csv")
    p_bat.add_argument("--out-dir", default=None)
    p_bat.add_argument("--hilbert-window", type=int, default=5)
    p_bat.add_argument("--face-capacity", type=int, default=DEFAULT_FACE_NODE_CAPACITY)
    p_bat.add_argument("--jobs", type=int, default=4)

    sub.add_parser("selftest", help="run the built-in example checks")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "selftest":
            return cmd_selftest()

        if args.command == "batch":
            config = RunConfig(
                n=(1,),
                fmt=args.format,
                hilbert_window=args.hilbert_window,
                face_capacity=args.face_capacity,
                out_dir=args.out_dir,
            )
            envelopes, code = cmd_batch(args.file, config, args.jobs)
            if args.format == "json":
                text = "".join(
                    json.dumps(e.to_dict(), sort_keys=True) + "\n" for e in envelopes
                )
            elif args.format == "csv":
                text = _render_csv(envelopes)
            else:
                text = "".join(_render_text(e) for e in envelopes)
            _write_output(text, args.out_dir, f"batch.{args.format}")
            for envelope in envelopes:
                if envelope.error is not None:
                    print(f"error: {envelope.error}", file=sys.stderr)
            return code

        n, normalized = _parse_n(args.n)
        if normalized:
            print(f"note: n reordered non-decreasingly to {','.join(map(str, n))}", file=sys.stderr)

        if args.command == "facets":
            config = RunConfig(n=n, fmt=args.format, normalized=normalized, out_dir=args.out_dir)
            text = cmd_facets(config, args.alpha, args.limit)
            _write_output(text, args.out_dir, _out_name("facets", config, args.format))
            return EXIT_OK

        if args.command == "invariants":
            config = RunConfig(
                n=n,
                fmt=args.format,
                hilbert_window=args.hilbert_window,
                face_capacity=args.face_capacity,
                include_timings=args.timings,
                out_dir=args.out_dir,
                normalized=normalized,
            )
            envelope, code = cmd_invariants(config)
        else:  # verify
            config = RunConfig(
                n=n,
                t_max=args.t_max,
                modulus=_parse_modulus(args.modulus),
                fmt=args.format,
                row_capacity=args.capacity,
                mutate_rule=args.mutate_rule,
                include_timings=args.timings,
                out_dir=args.out_dir,
                normalized=normalized,
            )
            envelope, code = cmd_verify(config)
        _write_output(_render(envelope, args.format), args.out_dir,
                      _out_name(args.command, config, args.format))
        return code

    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScrollError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
