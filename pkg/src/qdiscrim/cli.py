"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 audit found a counterexample,
3 internal numeric inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

import numpy as np

from . import entangled as ent
from . import oracle, replicas
from .qlin import projector
from .discrimination import (
    Hypotheses,
    QubitState,
    bayes_posterior,
    helstrom_error,
    helstrom_measurement,
    outcome_probabilities,
)
from .errors import NumericConsistencyError, UndefinedConditionalError, ValidationError

EXIT_OK, EXIT_INVALID, EXIT_VIOLATION, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse's own exit status 2 would collide with the audit-violation code.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


class AuditViolation(Exception):
    def __init__(self, report):
        super().__init__("audit found counterexamples")
        self.report = report


# --- serialization -----------------------------------------------------------


def _num(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [_num(v.real), _num(v.imag)]
    v = float(v)
    return v if math.isfinite(v) else None


def _matrix(m) -> list:
    return [[_num(complex(c)) for c in row] for row in np.asarray(m)]


def _complex(value, field: str) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
    elif isinstance(value, (int, float)) and not isinstance(value, bool):
        re, im = value, 0.0
    else:
        raise ValidationError("expected a number or a [re, im] pair", field)
    try:
        return complex(float(re), float(im))
    except (TypeError, ValueError):
        raise ValidationError("expected a number or a [re, im] pair", field) from None


def _real(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError("expected a number", field)
    return float(value)


def _parse_complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _state_block(psi: ent.PairPureState) -> dict:
    return {k: _num(getattr(psi, k)) for k in ("alpha", "beta", "gamma")}


# --- instance specs -----------------------------------------------------------


def _require(raw: dict, key: str, field: str):
    if key not in raw:
        raise ValidationError("missing field", field)
    return raw[key]


def parse_instance(raw: dict) -> dict:
    """Validate an instance dictionary and return it in normalized form.

    The normalized form is what reports echo back under ``"instance"``.
    """
    if not isinstance(raw, dict):
        raise ValidationError("instance must be a JSON object", "instance")
    kind = _require(raw, "kind", "kind")
    if kind in ("single", "independent"):
        x1 = _real(_require(raw, "x1", "x1"), "x1")
        x2 = _real(_require(raw, "x2", "x2"), "x2")
        z = _complex(raw.get("z", 0.0), "z")
        out = {"kind": kind, "x1": x1, "x2": x2, "z": _num(z)}
        if kind == "single":
            z2 = _complex(raw.get("z2", out["z"]), "z2")
            priors = raw.get("priors", [0.5, 0.5])
            if not isinstance(priors, (list, tuple)) or len(priors) != 2:
                raise ValidationError("expected [prior1, prior2]", "priors")
            p1 = _real(priors[0], "priors[0]")
            p2 = _real(priors[1], "priors[1]")
            if abs(p1 + p2 - 1.0) > 1e-12:
                raise ValidationError("priors must sum to 1", "priors")
            out.update(z2=_num(z2), priors=[p1, 1.0 - p1])
        return out
    if kind == "entangled":
        out = {"kind": kind}
        for name in ("psi1", "psi2"):
            block = _require(raw, name, name)
            if not isinstance(block, dict):
                raise ValidationError("expected an object with alpha, beta, gamma", name)
            out[name] = {
                k: _num(_complex(_require(block, k, f"{name}.{k}"), f"{name}.{k}")) for k in ("alpha", "beta", "gamma")
            }
        out["mode"] = raw.get("mode", "canonicalize")
        if out["mode"] not in ("canonicalize", "validate"):
            raise ValidationError("expected 'canonicalize' or 'validate'", "mode")
        return out
    raise ValidationError(f"unknown kind {kind!r}", "kind")


def _expect_kind(instance: dict, *kinds: str) -> None:
    if instance["kind"] not in kinds:
        raise ValidationError(f"this command needs kind {' or '.join(kinds)}, got {instance['kind']!r}", "kind")


def _pair_problem(instance: dict) -> replicas.IndependentPairProblem:
    return replicas.IndependentPairProblem(instance["x1"], instance["x2"], complex(*instance["z"]))


def _entangled_problem(instance: dict) -> ent.EntangledProblem:
    states = []
    for name in ("psi1", "psi2"):
        b = instance[name]
        try:
            states.append(ent.PairPureState(*(complex(*b[k]) for k in ("alpha", "beta", "gamma"))))
        except ValidationError as exc:
            raise ValidationError(str(exc), name) from None
    return ent.validate_or_canonicalize(states[0], states[1], instance["mode"])[0]


def _single_hypotheses(instance: dict) -> Hypotheses:
    try:
        q1 = QubitState(instance["x1"], complex(*instance["z"]))
    except ValidationError as exc:
        raise ValidationError(str(exc), "rho1") from None
    try:
        q2 = QubitState(instance["x2"], complex(*instance["z2"]))
    except ValidationError as exc:
        raise ValidationError(str(exc), "rho2") from None
    return Hypotheses.from_qubits(q1, q2, instance["priors"][0])


def _instance_from_args(args, kind: str) -> dict:
    if getattr(args, "instance", None):
        try:
            with open(args.instance, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ValidationError(str(exc), "instance") from None
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}", "instance") from None
        return parse_instance(raw)
    if kind == "entangled":
        if args.psi1 is None or args.psi2 is None:
            raise ValidationError("--psi1 and --psi2 are required without --instance", "psi1/psi2")
        raw = {
            "kind": kind,
            "psi1": dict(zip(("alpha", "beta", "gamma"), ([c.real, c.imag] for c in args.psi1))),
            "psi2": dict(zip(("alpha", "beta", "gamma"), ([c.real, c.imag] for c in args.psi2))),
            "mode": args.mode,
        }
        return parse_instance(raw)
    if args.x1 is None or args.x2 is None:
        raise ValidationError("--x1 and --x2 are required without --instance", "x1/x2")
    raw = {"kind": kind, "x1": args.x1, "x2": args.x2, "z": [args.z.real, args.z.imag]}
    if kind == "single":
        z2 = args.z2 if args.z2 is not None else args.z
        raw.update(z2=[z2.real, z2.imag], priors=[args.prior1, 1.0 - args.prior1])
    return parse_instance(raw)


# --- reports -------------------------------------------------------------------


def _stage_report(report: replicas.SequentialStageReport) -> dict:
    branches = []
    for b in report.branches:
        branches.append(
            {
                "outcome": b.outcome,
                "p_given_1": _num(b.p_given_1),
                "p_given_2": _num(b.p_given_2),
                "p_total": _num(b.p_total),
                "lambda": _num(b.lambda_s),
                "lambda_infinite": math.isinf(b.lambda_s),
                "posterior": None if b.posterior is None else [_num(v) for v in b.posterior],
                "stage2_error": None if b.stage2_error is None else _num(b.stage2_error),
                "state1_possible": b.rho1_conditional is not None,
                "state2_possible": b.rho2_conditional is not None,
                "rho1_conditional": None if b.rho1_conditional is None else _matrix(b.rho1_conditional),
                "rho2_conditional": None if b.rho2_conditional is None else _matrix(b.rho2_conditional),
            }
        )
    return {
        "stage1_pi1": _matrix(report.stage1_measurement.pi1),
        "stage1_pi2": _matrix(report.stage1_measurement.pi2),
        "branches": branches,
        "total_error": _num(report.total_error),
        "total_error_ratio_form": _num(report.total_error_ratio_form),
        "degenerate_stage1": report.degenerate_stage1,
    }


def cmd_single(instance: dict, args) -> dict:
    _expect_kind(instance, "single")
    h = _single_hypotheses(instance)
    m = helstrom_measurement(h)
    dist = outcome_probabilities(h, m)
    posteriors = []
    for s in (1, 2):
        try:
            posteriors.append([_num(v) for v in bayes_posterior(h, dist, s)])
        except UndefinedConditionalError:
            posteriors.append(None)
    warnings = []
    if np.max(np.abs(h.rho1 - h.rho2)) <= args.tol_param:
        warnings.append("identical hypotheses: the test is trivial and always reports outcome 1")
    return {
        "command": "single",
        "instance": instance,
        "error": _num(helstrom_error(h)),
        "pi1": _matrix(m.pi1),
        "pi2": _matrix(m.pi2),
        "p_k_given_i": dist.p_k_given_i.tolist(),
        "p_total": [_num(v) for v in dist.p_total],
        "posteriors": posteriors,
        "warnings": warnings,
    }


def _comparison(p: replicas.IndependentPairProblem, args) -> dict:
    c = replicas.compare_independent(p, args.tol_param, args.tol_gap)
    return {
        "p_global": _num(c.p_global),
        "p_sequential": _num(c.p_sequential),
        "gap": _num(c.gap),
        "equality_class": c.equality_class.value,
        "p_global_closed_form": _num(c.p_global_closed_form),
        "gap_closed_form": _num(c.gap_closed_form),
        "p_single": _num(helstrom_error(p.hypotheses())),
    }


def cmd_pair(instance: dict, args) -> dict:
    _expect_kind(instance, "independent")
    p = _pair_problem(instance)
    out = {"command": "pair", "instance": instance}
    out.update(_comparison(p, args))
    out["sequential"] = _stage_report(replicas.sequential_pair_protocol(p))
    return out


def cmd_entangled(instance: dict, args) -> dict:
    _expect_kind(instance, "entangled")
    e = _entangled_problem(instance)
    g = ent.gap_diagnostics(e)
    d = ent.equality_conditions(e, args.tol_param, args.tol_gap)
    proto = ent.sequential_error_entangled_protocol(e)
    pg, pl = d.p_global, d.p_sequential
    return {
        "command": "entangled",
        "instance": instance,
        "canonical": {"psi1": _state_block(e.psi1), "psi2": _state_block(e.psi2), "basis": _matrix(e.basis)},
        "tau": _num(e.tau),
        "p_global": _num(pg),
        "p_global_pipeline": _num(ent.global_error_entangled_pipeline(e)),
        "p_sequential": _num(pl),
        "p_sequential_protocol": _num(proto.total_error),
        "gap": _num(pl - pg),
        "gap_diagnostics": {
            "u1": _num(g.u1),
            "u2": _num(g.u2),
            "tau_bar": _num(g.tau_bar),
            "tau_abs": _num(g.tau_abs),
            "gap_expression": _num(g.gap_expression),
        },
        "equality": {
            "n21": d.n21,
            "tau_condition": d.tau_condition,
            "u_condition": d.u_condition,
            "phase_condition": d.phase_condition,
            "phase_undefined": d.phase_condition is None,
            "magnitude_condition_s1": d.magnitude_condition_s1,
            "magnitude_condition_s2": d.magnitude_condition_s2,
            "product_states": d.product_states,
            "special_case": d.special_case,
            "methods_equal": d.methods_equal,
            "consistent": d.consistent,
        },
        "degenerate_stage1": e.degenerate_stage1,
        "sequential": _stage_report(proto),
    }


SCAN_FIELDS = ("x1", "x2", "z_re", "z_im")
SCAN_COLUMNS = SCAN_FIELDS + (
    "valid",
    "p_global",
    "p_sequential",
    "gap",
    "equality_class",
    "p_global_closed_form",
    "gap_closed_form",
)


def _parse_sweep(text: str) -> tuple[str, np.ndarray]:
    try:
        name, start, stop, count = text.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError:
        raise ValidationError(f"expected NAME:START:STOP:COUNT, got {text!r}", "sweep") from None
    if name not in SCAN_FIELDS:
        raise ValidationError(f"unknown parameter {name!r}; choose from {', '.join(SCAN_FIELDS)}", "sweep")
    if count < 1 or not (math.isfinite(start) and math.isfinite(stop)):
        raise ValidationError("count must be >= 1 and the range finite", f"sweep.{name}")
    return name, np.linspace(start, stop, count)


def cmd_scan(args) -> list[dict]:
    fixed = {"x1": args.x1, "x2": args.x2, "z_re": args.z.real, "z_im": args.z.imag}
    sweeps = [_parse_sweep(s) for s in args.sweep or []]
    names = [n for n, _ in sweeps]
    if len(set(names)) != len(names):
        raise ValidationError("a parameter may be swept only once", "sweep")
    rows = []
    for values in itertools.product(*(v for _, v in sweeps)):
        point = dict(fixed)
        point.update(zip(names, (float(v) for v in values)))
        if point["x1"] is None or point["x2"] is None:
            raise ValidationError("x1 and x2 need a fixed value or a sweep", "x1/x2")
        row = {k: point[k] for k in SCAN_FIELDS}
        try:
            p = replicas.IndependentPairProblem(point["x1"], point["x2"], complex(point["z_re"], point["z_im"]))
        except ValidationError:
            row.update(valid=False, p_global=math.nan, p_sequential=math.nan, gap=math.nan, equality_class="invalid",
                       p_global_closed_form=math.nan, gap_closed_form=math.nan)
        else:
            c = replicas.compare_independent(p, args.tol_param, args.tol_gap)
            row.update(valid=True, p_global=c.p_global, p_sequential=c.p_sequential, gap=c.gap,
                       equality_class=c.equality_class.value, p_global_closed_form=c.p_global_closed_form,
                       gap_closed_form=c.gap_closed_form)
        rows.append(row)
    return rows


def _independent_block(p: replicas.IndependentPairProblem) -> dict:
    return {"kind": "independent", "x1": p.x1, "x2": p.x2, "z": _num(p.z)}


def _entangled_block(e: ent.EntangledProblem) -> dict:
    return {"kind": "entangled", "psi1": _state_block(e.psi1), "psi2": _state_block(e.psi2), "mode": "validate"}


def cmd_audit(args) -> dict:
    limit = args.max_counterexamples
    if args.kind == "independent":
        s = replicas.audit_independent(args.count, args.seed, args.tol_gap, args.tol_param, margin=args.margin)
        report = {
            "command": "audit",
            "kind": "independent",
            "count": s.count,
            "seed": s.seed,
            "min_gap": _num(s.min_gap),
            "min_gap_closed_form": _num(s.min_gap_closed_form),
            "near_equal": s.near_equal,
            "ambiguous_skipped": s.ambiguous,
            "violations": len(s.violations),
            "unexplained_equalities": len(s.unexplained_equalities),
            "counterexamples": [
                {"index": i, "reason": reason, "gap": _num(gap), "instance": _independent_block(p)}
                for reason, items in (("inequality", s.violations), ("equality", s.unexplained_equalities))
                for i, p, gap in items[:limit]
            ],
        }
    else:
        sampler = ent.sample_product if args.kind == "product" else ent.sample_entangled
        s = ent.audit_entangled(args.count, args.seed, args.tol_gap, args.tol_param, sampler=sampler)
        report = {
            "command": "audit",
            "kind": args.kind,
            "count": s.count,
            "seed": s.seed,
            "max_gap_expression": _num(s.max_gap_expression),
            "max_global_excess": _num(s.max_global_excess),
            "near_equal": s.near_equal,
            "violations": len(s.violations),
            "unexplained_equalities": len(s.unexplained_equalities),
            "counterexamples": [
                {"index": i, "reason": reason, "value": _num(v), "instance": _entangled_block(e)}
                for reason, items in (("non_positivity", s.violations), ("equality", s.unexplained_equalities))
                for i, e, v in items[:limit]
            ],
        }
        if args.kind == "product":
            # Products of identical single-qubit states must always tie.
            report["product_mismatches"] = s.count - s.near_equal
            if s.near_equal != s.count:
                raise AuditViolation(report)
    if report["violations"] or report["unexplained_equalities"]:
        raise AuditViolation(report)
    return report


def cmd_oracle(instance: dict, args) -> dict:
    cfg = oracle.SearchConfig(args.grid_density, args.random_trials, args.refine_iterations, args.seed)
    if instance["kind"] == "single":
        h = _single_hypotheses(instance)
    elif instance["kind"] == "independent":
        p = _pair_problem(instance)
        h = Hypotheses(np.kron(p.rho1, p.rho1), np.kron(p.rho2, p.rho2))
    else:
        e = _entangled_problem(instance)
        h = Hypotheses(projector(e.psi1.vector()), projector(e.psi2.vector()))
    r = oracle.brute_force_min_error(h, cfg)
    hel = helstrom_error(h)
    out = {
        "command": "oracle",
        "instance": instance,
        "dim": h.dim,
        "helstrom_error": _num(hel),
        "search_error": _num(r.best_error),
        "excess": _num(r.best_error - hel),
        "evaluations": r.evaluations,
        "below_helstrom": bool(r.best_error < hel - 1e-10),
        "search": {
            "grid_density": cfg.grid_density,
            "random_trials": cfg.random_trials,
            "refine_iterations": cfg.refine_iterations,
            "seed": cfg.seed,
        },
    }
    if out["below_helstrom"]:
        raise NumericConsistencyError(f"search beat the Helstrom bound: {r.best_error!r} < {hel!r}")
    return out


def cmd_simulate(instance: dict, args) -> dict:
    _expect_kind(instance, "independent", "entangled")
    if instance["kind"] == "independent":
        problem = _pair_problem(instance)
        analytic = replicas.sequential_pair_protocol(problem).total_error
    else:
        problem = _entangled_problem(instance)
        analytic = ent.sequential_error_entangled_protocol(problem).total_error
    r = oracle.simulate_sequential(problem, args.trials, args.seed)
    deviation = (r.empirical_error - analytic) / r.std_error if r.std_error > 0 else r.empirical_error - analytic
    return {
        "command": "simulate",
        "instance": instance,
        "trials": r.trials,
        "errors": r.errors,
        "empirical_error": _num(r.empirical_error),
        "std_error": _num(r.std_error),
        "seed": r.seed,
        "analytic_error": _num(analytic),
        "deviation_in_std_errors": _num(deviation),
    }


# --- argument parsing ------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol-gap", type=float, default=replicas.TOL_GAP)
    p.add_argument("--tol-param", type=float, default=replicas.TOL_PARAM)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--output", default=None, help="write the report here instead of standard output")
    return p


def _qubit_args(p: argparse.ArgumentParser, single: bool = False) -> None:
    p.add_argument("--instance", help="JSON instance file")
    p.add_argument("--x1", type=float)
    p.add_argument("--x2", type=float)
    p.add_argument("--z", type=_parse_complex_arg, default=0j, help="shared coherence, e.g. 0.2 or 0.1+0.05j")
    if single:
        p.add_argument("--z2", type=_parse_complex_arg, default=None, help="coherence of rho2 (default: --z)")
        p.add_argument("--prior1", type=float, default=0.5)


def _entangled_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", help="JSON instance file")
    for name in ("--psi1", "--psi2"):
        p.add_argument(name, nargs=3, type=_parse_complex_arg, metavar=("ALPHA", "BETA", "GAMMA"))
    p.add_argument("--mode", choices=("canonicalize", "validate"), default="canonicalize")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="qdiscrim", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _qubit_args(sub.add_parser("single", parents=[common], help="Helstrom test for one qubit"), single=True)
    _qubit_args(sub.add_parser("pair", parents=[common], help="independent replicas: combined vs sequential"))
    _entangled_args(sub.add_parser("entangled", parents=[common], help="entangled replicas"))

    scan = sub.add_parser("scan", parents=[common], help="grid of independent-pair comparisons")
    scan.add_argument("--sweep", action="append", metavar="NAME:START:STOP:COUNT")
    scan.add_argument("--x1", type=float)
    scan.add_argument("--x2", type=float)
    scan.add_argument("--z", type=_parse_complex_arg, default=0j)

    audit = sub.add_parser("audit", parents=[common], help="randomized inequality/equality audit")
    audit.add_argument("kind", choices=("independent", "entangled", "product"))
    audit.add_argument("--count", type=lambda s: int(float(s)), default=100_000)
    audit.add_argument("--margin", type=float, default=replicas.AMBIGUITY_MARGIN)
    audit.add_argument("--max-counterexamples", type=int, default=20)

    orc = sub.add_parser("oracle", parents=[common], help="brute-force search vs Helstrom")
    orc.add_argument("kind", choices=("single", "pair", "entangled"))
    _qubit_args(orc, single=True)
    for name in ("--psi1", "--psi2"):
        orc.add_argument(name, nargs=3, type=_parse_complex_arg, metavar=("ALPHA", "BETA", "GAMMA"))
    orc.add_argument("--mode", choices=("canonicalize", "validate"), default="canonicalize")
    orc.add_argument("--grid-density", type=int, default=200)
    orc.add_argument("--random-trials", type=int, default=10_000)
    orc.add_argument("--refine-iterations", type=int, default=4000)

    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo run of the sequential protocol")
    sim.add_argument("kind", choices=("pair", "entangled"))
    _qubit_args(sim)
    for name in ("--psi1", "--psi2"):
        sim.add_argument(name, nargs=3, type=_parse_complex_arg, metavar=("ALPHA", "BETA", "GAMMA"))
    sim.add_argument("--mode", choices=("canonicalize", "validate"), default="canonicalize")
    sim.add_argument("--trials", type=lambda s: int(float(s)), default=1_000_000)
    return parser


_KIND = {"single": "single", "pair": "independent", "entangled": "entangled"}


def _render(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2, allow_nan=False) + "\n"
    rows = result if isinstance(result, list) else [_flatten(result)]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else list(SCAN_COLUMNS), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return buf.getvalue()


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def _csv_cell(v):
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format(v, ".17g")
    return "" if v is None else v


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code = EXIT_OK
    try:
        if args.command == "scan":
            result = cmd_scan(args)
            fmt = args.format or "csv"
        elif args.command == "audit":
            fmt = args.format or "json"
            try:
                result = cmd_audit(args)
            except AuditViolation as exc:
                result, code = exc.report, EXIT_VIOLATION
        else:
            kind = _KIND[getattr(args, "kind", args.command)]
            instance = _instance_from_args(args, kind)
            handler = {
                "single": cmd_single,
                "pair": cmd_pair,
                "entangled": cmd_entangled,
                "oracle": cmd_oracle,
                "simulate": cmd_simulate,
            }[args.command]
            result = handler(instance, args)
            fmt = args.format or "json"
        text = _render(result, fmt)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericConsistencyError, UndefinedConditionalError) as exc:
        print(f"numeric consistency failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
