"""Command-line entry point: scenario configs, suite runner, report emission.

Reports are JSON lines (one record per scenario) with the wall time as the
last key, so report bodies are byte-identical across runs once wall times are
stripped.  Exit codes: 0 all pass, 1 any failure, 2 usage/config errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .spectra import family_search
from .spinrep import SUPPORTED_DIMS, build_rep
from .torsion import TorsionFormError, analyze_fix_algebra, make_form
from .verify import REGISTRY, run_registry_entry

KINDS = ("classify", "verify", "suite", "spectra-search", "rep-check")
FORM_KINDS = ("volume", "unipotent_pair", "spinor_square", "alpha_square", "su4",
              "from_file", "from_spectrum", "conjugate_by_vector")
RANDOMIZED_FORM_KINDS = {"spinor_square", "alpha_square"}


class ConfigError(ValueError):
    """Invalid scenario configuration; the message carries the field path."""


@dataclass
class Scenario:
    id: str
    kind: str
    seed: int | None = None
    form: dict | None = None
    check: str | None = None
    options: dict = field(default_factory=dict)
    expect: dict | None = None
    n: int | None = None


@dataclass
class ReportRecord:
    scenario_id: str
    kind: str
    inputs: dict
    result: dict
    expected: str | None
    passed: bool
    error: str | None
    wall_ms: int

    def to_line(self) -> str:
        payload = {
            "id": self.scenario_id,
            "kind": self.kind,
            "inputs": self.inputs,
            "result": self.result,
            "expected": self.expected,
            "pass": self.passed,
            "error": self.error,
            "wall_ms": self.wall_ms,
        }
        return json.dumps(payload, separators=(",", ":"))


def validate_scenario(raw: Mapping, path: str) -> Scenario:
    if not isinstance(raw, Mapping):
        raise ConfigError(f"{path}: scenario must be an object")
    sid = raw.get("id")
    if not isinstance(sid, str) or not sid:
        raise ConfigError(f"{path}.id: required non-empty string")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"{path}.kind: expected one of {KINDS}, got {kind!r}")
    seed = raw.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise ConfigError(f"{path}.seed: expected an integer")
    options = raw.get("options") or {}
    if not isinstance(options, Mapping):
        raise ConfigError(f"{path}.options: expected an object")
    expect = raw.get("expect")
    if expect is not None and not isinstance(expect, Mapping):
        raise ConfigError(f"{path}.expect: expected an object")
    scenario = Scenario(id=sid, kind=kind, seed=seed, options=dict(options),
                        expect=dict(expect) if expect else None)
    if kind == "classify":
        form = raw.get("form")
        if not isinstance(form, Mapping) or "kind" not in form:
            raise ConfigError(f"{path}.form: object with a 'kind' field required")
        if form["kind"] not in FORM_KINDS:
            raise ConfigError(f"{path}.form.kind: expected one of {FORM_KINDS}")
        if form["kind"] in RANDOMIZED_FORM_KINDS and seed is None:
            raise ConfigError(f"{path}.seed: required for randomized form {form['kind']!r}")
        scenario.form = dict(form)
    elif kind == "verify":
        check = raw.get("check")
        if check not in REGISTRY:
            raise ConfigError(f"{path}.check: expected one of {sorted(REGISTRY)}, got {check!r}")
        if seed is None:
            raise ConfigError(f"{path}.seed: required for kind 'verify'")
        scenario.check = check
    elif kind == "suite":
        if seed is None:
            raise ConfigError(f"{path}.seed: required for kind 'suite'")
        checks = raw.get("checks")
        if checks is not None:
            if not isinstance(checks, Sequence) or isinstance(checks, str):
                raise ConfigError(f"{path}.checks: expected a list of suite names")
            unknown = [c for c in checks if c not in REGISTRY]
            if unknown:
                raise ConfigError(f"{path}.checks: unknown suite names {unknown}")
            scenario.options["checks"] = list(checks)
    elif kind == "rep-check":
        n = raw.get("n")
        if n not in SUPPORTED_DIMS:
            raise ConfigError(f"{path}.n: unsupported n {n!r}; supported: {SUPPORTED_DIMS}")
        scenario.n = n
    return scenario


def expand_scenarios(scenarios: Sequence[Scenario]) -> list[Scenario]:
    """Replace every 'suite' scenario by one 'verify' scenario per entry."""
    out: list[Scenario] = []
    for s in scenarios:
        if s.kind != "suite":
            out.append(s)
            continue
        names = s.options.get("checks") or list(REGISTRY)
        for name in names:
            opts = {k: v for k, v in s.options.items() if k != "checks"}
            out.append(Scenario(id=f"{s.id}:{name}", kind="verify", seed=s.seed,
                                check=name, options=opts))
    return out


def run_scenario(s: Scenario) -> ReportRecord:
    start = time.perf_counter()
    inputs: dict = {"seed": s.seed}
    result: dict = {}
    expected = None
    passed = True
    error = None
    try:
        if s.kind == "classify":
            inputs["form"] = s.form
            form = make_form(s.form["kind"], s.form.get("params") or
                             {k: v for k, v in s.form.items() if k not in ("kind", "params")},
                             seed=s.seed)
            res = analyze_fix_algebra(form)
            result["descriptor"] = res.descriptor.to_record()
            result["holonomy_dim"] = res.holonomy.dim
            if s.expect and "label" in s.expect:
                expected = s.expect["label"]
                passed = res.descriptor.label == expected
        elif s.kind == "verify":
            inputs["check"] = s.check
            checks = run_registry_entry(s.check, s.seed, s.options)
            result["checks"] = [c.to_record() for c in checks]
            result["failed"] = [c.name for c in checks if not c.passed]
            expected = "all checks pass"
            passed = not result["failed"]
        elif s.kind == "spectra-search":
            bound = int(s.options.get("bound", 4))
            k_max = int(s.options.get("k_max", 6))
            inputs["bound"] = bound
            inputs["k_max"] = k_max
            hits = family_search(bound=bound, k_max=k_max)
            result["hits"] = [h.to_record() for h in hits]
            result["families"] = sorted({str(h.family) for h in hits})
            expected = "every passing spectrum matches a family"
            passed = all(h.family is not None for h in hits)
        elif s.kind == "rep-check":
            inputs["n"] = s.n
            rep = build_rep(s.n)
            result["n"] = rep.n
            result["dim_s"] = rep.dim_s
            result["valid"] = True
            passed = True
        else:  # pragma: no cover - suite scenarios are expanded before running
            raise ConfigError(f"cannot run scenario kind {s.kind!r} directly")
    except (TorsionFormError, ValueError, KeyError, AssertionError) as exc:
        error = f"{type(exc).__name__}: {exc}"
        passed = False
    wall_ms = int((time.perf_counter() - start) * 1000)
    return ReportRecord(s.id, s.kind, inputs, result, expected, passed, error, wall_ms)


def run_scenarios(scenarios: Sequence[Scenario], jobs: int = 1) -> list[ReportRecord]:
    expanded = expand_scenarios(scenarios)
    ids = [s.id for s in expanded]
    if len(set(ids)) != len(ids):
        raise ConfigError("scenario ids must be unique within a run")
    if jobs <= 1 or len(expanded) <= 1:
        return [run_scenario(s) for s in expanded]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_scenario, expanded))


def emit_report(records: Sequence[ReportRecord], out_path: str | None) -> int:
    """Write one JSON record per line, print a summary table, return the exit code."""
    lines = [r.to_line() for r in records]
    if out_path:
        with open(out_path, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
    width = max([len(r.scenario_id) for r in records], default=8)
    print(f"{'scenario':<{width}}  {'kind':<14}  result  wall_ms")
    for r in records:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.scenario_id:<{width}}  {r.kind:<14}  {status:<6}  {r.wall_ms}")
        if r.error:
            print(f"{'':<{width}}  error: {r.error}")
    failed = sum(not r.passed for r in records)
    print(f"{len(records)} scenario(s), {failed} failed")
    return 1 if failed else 0


def load_config(path: str) -> list[Scenario]:
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
    raw = payload.get("scenarios")
    if not isinstance(raw, list):
        raise ConfigError("config.scenarios: expected a list")
    return [validate_scenario(entry, f"scenarios[{i}]") for i, entry in enumerate(raw)]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized scenarios")
    parser.add_argument("--out", default=None, help="write the JSON-lines report here")
    parser.add_argument("--jobs", type=int, default=1, help="worker pool size")
    parser.add_argument("--kmax", type=int, default=None, help="power-identity depth")
    parser.add_argument("--config", default=None, help="scenario config file (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinhol",
                                     description="Exact fix/holonomy algebras of Clifford torsion elements")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the fix algebra of a constructed form")
    _add_common(p)
    p.add_argument("--form", choices=FORM_KINDS, help="constructor kind")
    p.add_argument("--n", type=int, default=None, help="ambient dimension for the constructor")
    p.add_argument("--path", default=None, help="multivector file for --form from_file")
    p.add_argument("--expect", default=None, help="expected label, e.g. so(8,1)")

    p = sub.add_parser("verify", help="run one verification suite")
    _add_common(p)
    p.add_argument("--check", choices=sorted(REGISTRY), help="suite name")

    p = sub.add_parser("suite", help="run verification suites")
    _add_common(p)
    p.add_argument("--all", action="store_true", help="run every suite in the registry")
    p.add_argument("--checks", default=None, help="comma-separated suite names")

    p = sub.add_parser("spectra", help="exhaustive spectrum-family search")
    _add_common(p)
    p.add_argument("--bound", type=int, default=4, help="integer eigenvalue bound")

    p = sub.add_parser("rep-check", help="build and validate a spinor representation")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            scenarios = load_config(args.config)
        else:
            scenarios = [_scenario_from_args(args)]
        records = run_scenarios(scenarios, jobs=args.jobs or 1)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return emit_report(records, args.out)
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return 2


def _scenario_from_args(args: argparse.Namespace) -> Scenario:
    options: dict = {}
    if args.kmax is not None:
        options["k_max"] = args.kmax
    if args.command == "classify":
        if not args.form:
            raise ConfigError("classify.form: required (or use --config)")
        form: dict = {"kind": args.form}
        if args.n is not None:
            form["n"] = args.n
        if args.path is not None:
            form["path"] = args.path
        raw = {"id": f"classify-{args.form}", "kind": "classify", "form": form,
               "seed": args.seed, "options": options}
        if args.expect:
            raw["expect"] = {"label": args.expect}
        return validate_scenario(raw, "classify")
    if args.command == "verify":
        if not args.check:
            raise ConfigError("verify.check: required (or use --config)")
        return validate_scenario({"id": f"verify-{args.check}", "kind": "verify",
                                  "check": args.check, "seed": args.seed,
                                  "options": options}, "verify")
    if args.command == "suite":
        raw: dict = {"id": "suite", "kind": "suite", "seed": args.seed, "options": options}
        if args.checks:
            raw["checks"] = [c.strip() for c in args.checks.split(",") if c.strip()]
        elif not getattr(args, "all", False):
            raise ConfigError("suite: pass --all or --checks (or use --config)")
        return validate_scenario(raw, "suite")
    if args.command == "spectra":
        options["bound"] = args.bound
        return validate_scenario({"id": "spectra-search", "kind": "spectra-search",
                                  "seed": args.seed, "options": options}, "spectra")
    if args.command == "rep-check":
        return validate_scenario({"id": f"rep-check-n{args.n}", "kind": "rep-check",
                                  "n": args.n, "seed": args.seed, "options": options},
                                 "rep-check")
    raise ConfigError(f"unknown command {args.command!r}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
