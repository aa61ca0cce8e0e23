"""Command line front end for divisor analysis.

Subcommands:
  analyze PATH    analyze one divisor description file
  corpus-run DIR  re-run a directory of descriptions against stored reports

A description file is one JSON object:

  {
    "label": "quartic",
    "variables": ["x", "y"],
    "f": "x^3*y - x*y^3",
    "weights": [1, 1],
    "saito_matrix": [["x", "0"], ["y", "x^2*y - y^3"]]
  }

label, variables and f are required; weights and saito_matrix are
optional; unknown keys are rejected. saito_matrix entry [r][c] is the
coefficient of d/d(variables[r]) in basis field c (columns are fields).

The human report goes to stdout; --json PATH writes the machine report
(top-level "schema": 1). The "timings" block varies run to run and is
excluded from corpus comparisons.

Exit codes: 0 success (stages skipped by flags read "not computed"),
2 input or parse error, 3 divisor not reduced, 4 no free basis found
(or a provided matrix failed verification), 5 timeout or budget
exhausted.

The Groebner step budget can be overridden with the LOGDIV_BUDGET
environment variable (a positive integer of elementary reduction
steps; the default is groebner.DEFAULT_STEP_BUDGET).
"""

import argparse
import json
import os
import signal
import sys
import time

from . import groebner
from .classify import (DivisorProfile, connection_conditions, detect_weights,
                       is_koszul, is_linear, is_reductive,
                       lie_algebra_matrices, trace_test)
from .cohomology import ft1, h0, jacobian_degree_bound, lft1
from .cylinder import split_cylindrical
from .errors import (BudgetExceeded, LogdivError, NonReduced, NotFree,
                     NotHomogeneous, NotLinear, NotWeightedHomogeneous,
                     ParseError, ZeroOrConstantInput)
from .logder import (SaitoBasis, VectorField, compute_der_log,
                     find_saito_basis, format_field, structure_constants,
                     verify_saito, _check_divisor)
from .poly import (WeightSystem, poly_from_text, poly_to_text,
                   try_exact_div, weighted_degree)
from . import __version__

SCHEMA = 1
ALL_STAGES = ("classify", "koszul", "ft1", "lft1")
DEFAULT_MAX_WEIGHT = 64


class StageFailure(Exception):
    """Abort the pipeline with a specific exit code and message."""

    def __init__(self, code, stage, message):
        self.code = code
        self.stage = stage
        self.message = message
        super().__init__(message)


def _fail(code, stage, message):
    raise StageFailure(code, stage, message)


# ---- input documents ---------------------------------------------------

_REQUIRED = ("label", "variables", "f")
_OPTIONAL = ("weights", "saito_matrix")


def load_document(path):
    """Read and validate one divisor description file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        _fail(2, "input", f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        _fail(2, "input", f"{path} is not valid JSON: {e}")
    if not isinstance(doc, dict):
        _fail(2, "input", "document root must be an object")
    unknown = sorted(set(doc) - set(_REQUIRED) - set(_OPTIONAL))
    if unknown:
        _fail(2, "input", f"unknown fields: {', '.join(unknown)}")
    for key in _REQUIRED:
        if key not in doc:
            _fail(2, "input", f"missing required field: {key}")
    if not isinstance(doc["label"], str) or not doc["label"]:
        _fail(2, "input", "label must be a nonempty string")
    names = doc["variables"]
    if (not isinstance(names, list) or not names
            or not all(isinstance(v, str) and v for v in names)):
        _fail(2, "input", "variables must be a list of names")
    if len(set(names)) != len(names):
        _fail(2, "input", "variable names must be distinct")
    if not isinstance(doc["f"], str):
        _fail(2, "input", "f must be a polynomial text")
    n = len(names)
    if "weights" in doc:
        ws = doc["weights"]
        if (not isinstance(ws, list) or len(ws) != n
                or not all(isinstance(a, int) and a > 0 for a in ws)):
            _fail(2, "input", f"weights must be {n} positive integers")
    if "saito_matrix" in doc:
        mat = doc["saito_matrix"]
        if (not isinstance(mat, list) or len(mat) != n
                or not all(isinstance(row, list) and len(row) == n
                           and all(isinstance(x, str) for x in row)
                           for row in mat)):
            _fail(2, "input", f"saito_matrix must be {n}x{n} polynomial texts")
    return doc


def _parse_poly(text, ring, what):
    try:
        return poly_from_text(text, ring)
    except ParseError as e:
        _fail(2, "input", f"{what}: {e}")


# ---- pipeline ----------------------------------------------------------

def _detect_grading(f, provided):
    if provided is not None:
        weights = tuple(provided)
        try:
            k = weighted_degree(f, weights)
        except NotHomogeneous as e:
            _fail(2, "input",
                  f"f is not homogeneous for the given weights "
                  f"(degrees {sorted(e.degrees)})")
        return WeightSystem(weights, k)
    return detect_weights(f)


def _field_texts(fields, n):
    """Saito matrix as row-major polynomial texts, columns are fields."""
    return [[poly_to_text(fields[c].components[r]) for c in range(n)]
            for r in range(n)]


def _slice_weight_guard(w, field_weights, max_weight):
    targets = {0, w.degree}
    for a in field_weights:
        targets.add(a)
        for b in field_weights:
            targets.add(a + b)
    worst = max(abs(t) for t in targets)
    if worst > max_weight:
        raise BudgetExceeded(
            f"slice weight {worst} exceeds --max-weight {max_weight}")


def analyze_document(doc, stages, max_weight=DEFAULT_MAX_WEIGHT):
    """Run the analysis pipeline on a validated document.

    Returns the report dict; raises StageFailure for error exits. The
    partially filled report is attached to the failure as .report.
    """
    timings = {}
    report = {
        "schema": SCHEMA,
        "tool": {"name": "logdiv", "version": __version__},
        "input": {k: doc.get(k) for k in ("label", "variables", "f",
                                          "weights", "saito_matrix")},
        "profile": "not computed",
        "h0": "not computed",
        "ft1": "not computed",
        "lft1": "not computed",
        "bounds": "not computed",
        "timings": timings,
    }

    def run_stage(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        except BudgetExceeded as e:
            failure = StageFailure(5, name, str(e))
            failure.report = report
            raise failure
        except StageFailure as e:
            e.report = report
            raise
        finally:
            timings[name] = round(time.perf_counter() - t0, 6)

    ring = tuple(doc["variables"])
    f = _parse_poly(doc["f"], ring, "f")

    # reduction: only when the input does not pin a matrix to the ring
    def reduce_stage():
        if doc.get("saito_matrix") is not None:
            return None
        split = split_cylindrical(f) if not f.is_zero() else None
        return split if split is not None and not split.is_identity else None

    split = run_stage("reduce", reduce_stage)
    work_ring = split.ring if split else ring
    work_f = split.poly if split else f

    def divisor_stage():
        try:
            _check_divisor(work_f)
        except NonReduced:
            _fail(3, "divisor", "f is not squarefree")
        except (ValueError, ZeroOrConstantInput) as e:
            _fail(2, "divisor", str(e))

    run_stage("divisor", divisor_stage)

    provided_weights = doc.get("weights")
    if provided_weights is not None and split:
        provided_weights = [provided_weights[i] for i in split.kept]
    w = run_stage("grading", lambda: _detect_grading(work_f, provided_weights))

    def basis_stage():
        if doc.get("saito_matrix") is not None:
            mat = [[_parse_poly(doc["saito_matrix"][r][c], work_ring,
                                f"saito_matrix[{r}][{c}]")
                    for c in range(len(work_ring))]
                   for r in range(len(work_ring))]
            fields = [VectorField(work_ring, [mat[r][c] for r in range(len(work_ring))])
                      for c in range(len(work_ring))]
            res = verify_saito(fields, work_f)
            if not res.ok:
                _fail(4, "basis", f"provided matrix is not a basis: {res.reason}")
            for idx, delta in enumerate(fields):
                if try_exact_div(delta.apply(work_f), work_f) is None:
                    _fail(4, "basis",
                          f"provided matrix is not a basis: column {idx + 1} "
                          f"is not logarithmic")
            return SaitoBasis(fields, work_f, res.unit)
        gens = compute_der_log(work_f)
        try:
            return find_saito_basis(gens, work_f, w)
        except NotFree as e:
            _fail(4, "basis", str(e))

    saito = run_stage("basis", basis_stage)
    n = len(work_ring)
    field_weights = None
    if w:
        try:
            field_weights = saito.field_weights(w)
        except NotHomogeneous:
            field_weights = None

    profile = {
        "variables": list(work_ring),
        "f": poly_to_text(work_f),
        "reduction": {"dropped": [ring[i] for i in split.dropped]} if split else None,
        "weights": list(w.weights) if w else None,
        "degree": w.degree if w else None,
        "weighted_homogeneous": w is not None,
        "free": True,
        "unit": poly_to_text(saito.unit),
        "saito_matrix": _field_texts(saito.fields, n),
        "field_weights": field_weights,
        "linear": "not computed",
        "reductive": "not computed",
        "trace_witness": "not computed",
        "connection_conditions": "not computed",
        "koszul": "not computed",
    }
    report["profile"] = profile

    sc_cache = []

    def get_sc():
        if not sc_cache:
            sc_cache.append(structure_constants(saito))
        return sc_cache[0]

    linear = None
    if "classify" in stages:
        def classify_stage():
            result = {}
            result["linear"] = is_linear(saito)
            if result["linear"]:
                g = lie_algebra_matrices(saito)
                result["reductive"] = is_reductive(g)
                witness = trace_test(work_f)
                if witness.witnesses:
                    delta, tr = witness.witnesses[0]
                    result["trace_witness"] = {
                        "field": format_field(delta),
                        "trace": str(tr),
                    }
                else:
                    result["trace_witness"] = None
            else:
                result["reductive"] = None
                result["trace_witness"] = None
            c1, c2 = connection_conditions(saito, get_sc())
            result["connection_conditions"] = [c1, c2]
            return result

        outcome = run_stage("classify", classify_stage)
        profile.update(outcome)
        linear = outcome["linear"]

    if "koszul" in stages:
        profile["koszul"] = run_stage("koszul", lambda: is_koszul(saito))

    if "ft1" in stages:
        def ft1_stage():
            if w is None:
                return {"status": "refused: not weighted homogeneous"}
            _slice_weight_guard(w, field_weights or [], max_weight)
            rep = ft1(work_f, saito=saito if field_weights else None, w=w)
            return {
                "status": "computed",
                "dimension": rep.dimension,
                "representatives": [poly_to_text(p)
                                    for p in rep.deformed_equations],
            }

        report["ft1"] = run_stage("ft1", ft1_stage)

    if "lft1" in stages:
        def lft1_stage():
            try:
                rep = lft1(work_f, saito=saito)
            except NotLinear:
                return {"status": "refused: not a linear free divisor"}
            return {
                "status": "computed",
                "dimension": rep.dimension,
                "representatives": [poly_to_text(p)
                                    for p in rep.deformed_equations],
            }

        report["lft1"] = run_stage("lft1", lft1_stage)

    if "ft1" in stages or "lft1" in stages:
        def h0_stage():
            if w is not None:
                return h0(work_f, saito=saito, w=w)
            return "not computed"

        report["h0"] = run_stage("h0", h0_stage)

        def bounds_stage():
            if w is not None:
                return {"jacobian_degree_bound": jacobian_degree_bound(work_f, w=w)}
            return "not computed"

        report["bounds"] = run_stage("bounds", bounds_stage)

    return report


# ---- output ------------------------------------------------------------

def _human_lines(report):
    lines = []
    inp = report["input"]
    lines.append(f"label: {inp['label']}")
    if "error" in report:
        err = report["error"]
        lines.append(f"error at stage {err['stage']}: {err['message']}")
    prof = report["profile"]
    if isinstance(prof, dict):
        lines.append(f"f = {prof['f']}  in Q[{', '.join(prof['variables'])}]")
        if prof.get("reduction"):
            dropped = ", ".join(prof["reduction"]["dropped"])
            lines.append(f"reduced: dropped unused variables {dropped}")
        if prof["weighted_homogeneous"]:
            lines.append(f"weights: {tuple(prof['weights'])}, degree {prof['degree']}"
                         f", field weights {prof['field_weights']}")
        else:
            lines.append("weights: not weighted homogeneous")
        lines.append(f"free: yes (determinant unit {prof['unit']})")
        for key in ("linear", "reductive", "koszul"):
            if prof[key] not in ("not computed", None):
                lines.append(f"{key}: {prof[key]}")
        tw = prof["trace_witness"]
        if isinstance(tw, dict):
            lines.append(f"trace witness: {tw['field']} (trace {tw['trace']})")
        if prof["connection_conditions"] != "not computed":
            c1, c2 = prof["connection_conditions"]
            lines.append(f"connection conditions: {c1}, {c2}")
    for key in ("ft1", "lft1"):
        block = report[key]
        if block == "not computed":
            lines.append(f"{key}: not computed")
        elif block.get("status") == "computed":
            reps = ", ".join(block["representatives"]) or "-"
            lines.append(f"{key}: dimension {block['dimension']}"
                         f" (representatives: {reps})")
        else:
            lines.append(f"{key}: {block['status']}")
    if report["h0"] != "not computed":
        lines.append(f"h0: {report['h0']}")
    if isinstance(report["bounds"], dict):
        lines.append(f"jacobian degree bound: "
                     f"{report['bounds']['jacobian_degree_bound']}")
    return lines


def _emit(report, json_path):
    for line in _human_lines(report):
        print(line)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")


# ---- corpus ------------------------------------------------------------

def _strip_timings(obj):
    if isinstance(obj, dict):
        return {k: _strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _diff_fields(expected, actual, path, out):
    if isinstance(expected, dict) and isinstance(actual, dict):
        for key in sorted(set(expected) | set(actual)):
            sub = f"{path}.{key}" if path else key
            if key not in expected:
                out.append(f"{sub} (unexpected)")
            elif key not in actual:
                out.append(f"{sub} (missing)")
            else:
                _diff_fields(expected[key], actual[key], sub, out)
    elif isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            out.append(f"{path} (length {len(actual)} != {len(expected)})")
        else:
            for i, (e, a) in enumerate(zip(expected, actual)):
                _diff_fields(e, a, f"{path}[{i}]", out)
    elif expected != actual:
        out.append(path)


def run_corpus(directory, max_weight):
    entries = []
    try:
        names = sorted(os.listdir(directory))
    except OSError as e:
        print(f"cannot read directory: {e}", file=sys.stderr)
        return 2
    for name in names:
        if not name.endswith(".json") or name.endswith(".expected.json"):
            continue
        path = os.path.join(directory, name)
        golden_path = path[:-len(".json")] + ".expected.json"
        try:
            doc = load_document(path)
        except StageFailure as e:
            entries.append((name, name, [f"input ({e.message})"]))
            continue
        mismatches = []
        try:
            report = analyze_document(doc, ALL_STAGES, max_weight)
        except StageFailure as e:
            report = getattr(e, "report", {})
            report = dict(report)
            report["error"] = {"stage": e.stage, "message": e.message}
        if not os.path.exists(golden_path):
            mismatches.append("expected report file missing")
        else:
            with open(golden_path, "r", encoding="utf-8") as fh:
                golden = json.load(fh)
            _diff_fields(_strip_timings(golden), _strip_timings(report),
                         "", mismatches)
        entries.append((doc["label"], name, mismatches))
    entries.sort(key=lambda t: t[0])
    bad = 0
    for label, name, mismatches in entries:
        if mismatches:
            bad += 1
            print(f"{label:24s} MISMATCH  {', '.join(mismatches)}")
        else:
            print(f"{label:24s} ok")
    print(f"{len(entries)} corpus entries, {bad} mismatched")
    return 1 if bad else 0


# ---- entry point -------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="logdiv",
        description="free divisor classification and deformation spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="analyze one divisor description")
    an.add_argument("path")
    an.add_argument("--ft1", action="store_true",
                    help="compute the first-order deformation space")
    an.add_argument("--lft1", action="store_true",
                    help="compute the linear deformation space")
    an.add_argument("--classify", action="store_true",
                    help="linear/reductive classification (default)")
    an.add_argument("--koszul", action="store_true",
                    help="Koszul test via symbol ideal dimension")
    an.add_argument("--all", action="store_true", help="run every stage")
    an.add_argument("--json", metavar="PATH",
                    help="also write the machine report to PATH")
    an.add_argument("--timeout", type=float, metavar="SECONDS")
    an.add_argument("--max-weight", type=int, default=DEFAULT_MAX_WEIGHT,
                    metavar="N", help="refuse slices beyond weight N")

    co = sub.add_parser("corpus-run",
                        help="re-run a corpus directory against stored reports")
    co.add_argument("directory")
    co.add_argument("--timeout", type=float, metavar="SECONDS")
    co.add_argument("--max-weight", type=int, default=DEFAULT_MAX_WEIGHT,
                    metavar="N")
    return parser


def _stage_set(args):
    stages = set()
    if args.classify:
        stages.update(("classify", "koszul"))
    if args.koszul:
        stages.add("koszul")
    if args.ft1:
        stages.add("ft1")
    if args.lft1:
        stages.add("lft1")
    if args.all:
        stages.update(ALL_STAGES)
    if not stages:
        stages.update(("classify", "koszul"))
    return stages


def _install_timeout(seconds):
    def on_alarm(signum, frame):
        raise BudgetExceeded(f"timed out after {seconds} seconds")

    signal.signal(signal.SIGALRM, on_alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    override = os.environ.get("LOGDIV_BUDGET")
    if override:
        try:
            groebner.DEFAULT_STEP_BUDGET = int(override)
        except ValueError:
            print(f"LOGDIV_BUDGET must be an integer, got {override!r}",
                  file=sys.stderr)
            return 2
    if args.timeout:
        _install_timeout(args.timeout)

    if args.command == "corpus-run":
        try:
            return run_corpus(args.directory, args.max_weight)
        except BudgetExceeded as e:
            print(f"error: {e}", file=sys.stderr)
            return 5

    try:
        doc = load_document(args.path)
        report = analyze_document(doc, _stage_set(args), args.max_weight)
        if args.timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)
    except StageFailure as e:
        report = getattr(e, "report", None)
        if report is not None:
            report["error"] = {"stage": e.stage, "message": e.message}
            _emit(report, args.json)
        else:
            print(f"error: {e.message}", file=sys.stderr)
        return e.code
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 5
    except LogdivError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(report, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
