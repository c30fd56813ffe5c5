"""Command-line front end.

Input files are JSON documents::

    {
      "space": ["a", "b"],
      "gambles": {"1_a": ["1", "0"], "1_b": ["0", "1"]},
      "lower": {"1_a": "0.6"}
    }

with exactly one payload among ``lower``, ``upper``, ``envelope``
(``{"previsions": [[...], ...], "alphas": [...], "orientation": ...}``),
``possibility`` (one value per atom, plus optional ``events``) and
``risk`` (position id to capital requirement).  Numbers are strings such
as ``"0.7"`` or ``"7/10"``, or JSON integers; JSON floats are refused so
that every value stays exact.

Exit codes: 0 success (for ``check``: centered convex or coherent),
1 avoids sure loss only or a sampled property failed, 2 sure loss,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any

from .consistency import (CenteringWitness, ConsistencyReport, ExtensionWitness,
                          PreconditionError, SureLossWitness, classify)
from .core import (LOWER, UPPER, Assessment, Gamble, PrecisePrevision, Space,
                   SpaceMismatchError, as_lower, conjugate, to_rational)
from .correction import MODES, correct
from .envelope import EnvelopeSpec, envelope_eval
from .extension import (ExtensionResult, convex_natural_extension,
                        natural_extension)
from .models import PossibilityAssignment, all_events, event_label, possibility_measure
from .risk import (RiskAssessment, acceptability, check_axioms_T1_M2_CI,
                   check_convex_risk, check_liquidity_inequality,
                   induced_lower, internality_violations)

PAYLOADS = ("lower", "upper", "envelope", "possibility", "risk")
EXIT_OK, EXIT_ASL_ONLY, EXIT_SURE_LOSS, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_SEED = 0
DEFAULT_TRIALS = 500


class InputError(ValueError):
    """A malformed input document; the message names the offending field."""


# ---------------------------------------------------------------- parsing

def _number(x: Any, where: str) -> Fraction:
    if isinstance(x, float):
        raise InputError(f"{where}: binary float {x!r}; write it as a string such as \"{x!r}\"")
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: expected a number string, got {x!r}")
    try:
        return to_rational(x)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _vector(x: Any, n: int, where: str) -> list[Fraction]:
    if not isinstance(x, list):
        raise InputError(f"{where}: expected a list of {n} numbers")
    if len(x) != n:
        raise InputError(f"{where}: has {len(x)} entries but the space has {n} atoms")
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _mapping(doc: dict, key: str) -> dict:
    value = doc[key]
    if not isinstance(value, dict):
        raise InputError(f"{key}: expected an object")
    return value


@dataclass
class Document:
    space: Space
    gambles: dict[str, Gamble]
    kind: str
    payload: Any
    events: dict[str, list[str]] | None = None


def parse_document(doc: Any) -> Document:
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    if "space" not in doc:
        raise InputError("space: missing")
    atoms = doc["space"]
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise InputError("space: expected a list of atom labels")
    try:
        space = Space(atoms)
    except ValueError as exc:
        raise InputError(f"space: {exc}") from None
    m = len(space)

    gambles = {}
    for ident, vec in (_mapping(doc, "gambles") if "gambles" in doc else {}).items():
        gambles[ident] = Gamble(space, _vector(vec, m, f"gambles.{ident}"))

    present = [k for k in PAYLOADS if k in doc]
    if len(present) != 1:
        raise InputError(
            f"payload: exactly one of {', '.join(PAYLOADS)} is required, found {present or 'none'}")
    kind = present[0]

    def entries(key):
        out = []
        for ident, v in _mapping(doc, key).items():
            if ident not in gambles:
                raise InputError(f"{key}.{ident}: no gamble with this id")
            out.append((ident, gambles[ident], _number(v, f"{key}.{ident}")))
        if not out:
            raise InputError(f"{key}: no entries")
        return out

    events = None
    if kind in (LOWER, UPPER):
        payload = Assessment(space, entries(kind), kind)
    elif kind == "risk":
        payload = RiskAssessment(space, entries("risk"))
    elif kind == "envelope":
        env = _mapping(doc, "envelope")
        prev = env.get("previsions")
        if not isinstance(prev, list) or not prev:
            raise InputError("envelope.previsions: expected a non-empty list of mass vectors")
        previsions = []
        for j, vec in enumerate(prev):
            masses = _vector(vec, m, f"envelope.previsions[{j}]")
            try:
                previsions.append(PrecisePrevision(space, masses))
            except ValueError as exc:
                raise InputError(f"envelope.previsions[{j}]: {exc}") from None
        alphas = env.get("alphas")
        if not isinstance(alphas, list) or len(alphas) != len(previsions):
            raise InputError("envelope.alphas: expected one offset per prevision")
        orientation = env.get("orientation", LOWER)
        if orientation not in (LOWER, UPPER):
            raise InputError("envelope.orientation: expected 'lower' or 'upper'")
        payload = EnvelopeSpec(previsions,
                               [_number(a, f"envelope.alphas[{j}]") for j, a in enumerate(alphas)],
                               orientation)
        if not gambles:
            raise InputError("gambles: an envelope payload needs gambles to evaluate")
    else:
        try:
            payload = PossibilityAssignment(space, _vector(doc["possibility"], m, "possibility"))
        except ValueError as exc:
            raise InputError(f"possibility: {exc}") from None
        if "events" in doc:
            events = {}
            for ident, atoms in _mapping(doc, "events").items():
                if not isinstance(atoms, list) or not atoms:
                    raise InputError(f"events.{ident}: expected a non-empty list of atoms")
                unknown = [a for a in atoms if a not in space.atoms]
                if unknown:
                    raise InputError(f"events.{ident}: unknown atoms {unknown}")
                events[ident] = list(atoms)
    return Document(space, gambles, kind, payload, events)


def load_document(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return parse_document(raw)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def possibility_events(doc: Document) -> dict[str, list[str]]:
    if doc.events is not None:
        return doc.events
    return {event_label(ev): list(ev) for ev in all_events(doc.space)}


def as_assessment(doc: Document) -> Assessment:
    """The lower or upper assessment a document describes."""
    if doc.kind in (LOWER, UPPER):
        return doc.payload
    if doc.kind == "envelope":
        return envelope_eval(doc.payload, doc.gambles)
    if doc.kind == "possibility":
        return possibility_measure(doc.payload, possibility_events(doc))
    return induced_lower(doc.payload)


def assessment_document(a: Assessment, extra_gambles: dict[str, Gamble] | None = None) -> dict:
    gambles = dict(extra_gambles or {})
    gambles.update({k: g for k, g, _ in a.entries})
    return {
        "space": list(a.space.atoms),
        "gambles": {k: [str(v) for v in g.values] for k, g in gambles.items()},
        a.orientation: {k: str(v) for k, _, v in a.entries},
    }


def resolve_gamble(doc: Document, spec: str) -> tuple[str, Gamble]:
    """A gamble id from the file, or an inline comma-separated vector.

    A single number denotes the constant gamble, so ``0`` is the zero
    gamble on any space.
    """
    if spec in doc.gambles:
        return spec, doc.gambles[spec]
    text = spec.strip().removeprefix("[").removesuffix("]")
    parts = [p.strip().strip('"') for p in text.split(",")]
    try:
        values = [to_rational(p) for p in parts]
    except (ValueError, TypeError):
        raise InputError(f"--gamble: {spec!r} is neither a gamble id nor a vector") from None
    if len(values) == 1:
        values = values * len(doc.space)
    if len(values) != len(doc.space):
        raise InputError(f"--gamble: {len(values)} values for {len(doc.space)} atoms")
    return spec, Gamble(doc.space, values)


# ------------------------------------------------------------- rendering

def decimal(x: Fraction | float) -> str:
    """Six significant digits."""
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    with localcontext() as ctx:
        ctx.prec = 6
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d.normalize(), "f") if abs(d.adjusted()) < 7 else format(d, "g")


def exact(x: Fraction | float) -> str:
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return str(x)


def both(x) -> str:
    e, d = exact(x), decimal(x)
    return e if e == d else f"{e} ({d})"


def witness_json(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, SureLossWitness):
        return {"type": "sure_loss",
                "coefficients": {k: exact(v) for k, v in w.coefficients.items()},
                "sup_gain": exact(w.sup_gain)}
    if isinstance(w, ExtensionWitness):
        return {"type": "extension", "entry": w.entry, "kind": w.kind,
                "assessed": exact(w.assessed), "extension": exact(w.extension)}
    if isinstance(w, CenteringWitness):
        return {"type": "centering", "entry": w.entry, "value": exact(w.value)}
    raise TypeError(f"unknown witness {w!r}")


def witness_text(w) -> str:
    if isinstance(w, SureLossWitness):
        stakes = ", ".join(f"{k}: {exact(v)}" for k, v in w.coefficients.items() if v)
        return f"stakes {{{stakes}}} give sup G = {both(w.sup_gain)} < 0"
    if isinstance(w, ExtensionWitness):
        return (f"entry {w.entry}: {w.kind} extension {both(w.extension)} "
                f"differs from assessed {both(w.assessed)}")
    return f"zero entry {w.entry} has value {both(w.value)}, not 0"


def verdict_json(r: ConsistencyReport) -> dict:
    return dict(r.verdicts())


def verdict_text(v) -> str:
    return "n/a" if v is None else ("yes" if v else "no")


def report_lines(r: ConsistencyReport) -> list[str]:
    lines = [f"orientation: {r.orientation}"]
    for k, v in r.verdicts().items():
        lines.append(f"{k}: {verdict_text(v)}")
    lines.append(f"k_bar: {both(r.k_bar)}")
    for k, w in r.witnesses.items():
        lines.append(f"witness[{k}]: {witness_text(w)}")
    return lines


def check_exit_code(r: ConsistencyReport) -> int:
    if not r.avoids_sure_loss:
        return EXIT_SURE_LOSS
    if r.coherent or r.centered_convex:
        return EXIT_OK
    return EXIT_ASL_ONLY


@dataclass
class Output:
    """A report: the JSON document and its human-readable lines."""

    verdicts: dict | None = None
    k_bar: Fraction | None = None
    witnesses: dict | None = None
    values: dict | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    code: int = EXIT_OK

    def json(self) -> dict:
        out = {"verdicts": self.verdicts,
               "k_bar": None if self.k_bar is None else exact(self.k_bar),
               "witnesses": self.witnesses,
               "values": self.values,
               "seed": self.seed}
        out.update(self.extra)
        return out


def from_report(r: ConsistencyReport, out: Output | None = None) -> Output:
    out = out or Output()
    out.verdicts = verdict_json(r)
    out.k_bar = r.k_bar
    out.witnesses = {k: witness_json(w) for k, w in r.witnesses.items()}
    return out


# -------------------------------------------------------------- commands

def cmd_check(doc: Document, args) -> Output:
    if doc.kind == "risk":
        report = check_convex_risk(doc.payload)
        values = {k: exact(v) for k, _, v in doc.payload.entries}
    else:
        a = as_assessment(doc)
        report = classify(a)
        values = {k: exact(v) for k, _, v in a.entries}
    out = from_report(report, Output(values=values, seed=args.seed))
    out.lines = report_lines(report)
    out.code = check_exit_code(report)
    return out


def _extension_output(ext: ExtensionResult, sign: int, value_name: str) -> Output:
    """*sign* = -1 reports an upper (or risk) value from a lower extension."""
    out = Output()
    if not ext.is_finite:
        ray = {k: exact(v) for k, v in ext.coefficients.items()}
        out.values = {value_name: "inf" if sign > 0 else "-inf", "status": "unbounded"}
        out.witnesses = {"sure_loss_ray": ray}
        out.lines = [f"{value_name}: unbounded (incurs sure loss)",
                     "sure-loss stakes: " + ", ".join(f"{k}: {v}" for k, v in ray.items() if v != "0")]
        return out
    value = sign * ext.value
    q, r = ext.dual_witness if isinstance(ext.dual_witness, tuple) else (ext.dual_witness, Fraction(0))
    r = sign * r
    out.values = {value_name: exact(value), "decimal": decimal(value), "status": "optimal"}
    out.witnesses = {
        "primal": {"coefficients": {k: exact(v) for k, v in ext.coefficients.items()},
                   "alpha": exact(sign * ext.alpha)},
        "dual": {"Q": [exact(p) for p in q.masses], "r": exact(r)},
    }
    stakes = ", ".join(f"{k}: {exact(v)}" for k, v in ext.coefficients.items())
    out.lines = [f"{value_name}: {both(value)}",
                 f"primal witness s: {{{stakes}}}",
                 f"dual witness: Q = ({', '.join(exact(p) for p in q.masses)}), r = {exact(r)}"]
    return out


def cmd_extend(doc: Document, args) -> Output:
    ident, z = resolve_gamble(doc, args.gamble)
    extend = convex_natural_extension if args.kind == "convex" else natural_extension
    if doc.kind == "risk":
        lower = induced_lower(doc.payload)
        out = _extension_output(extend(lower, z), -1, "rho")
    else:
        a = as_assessment(doc)
        if a.orientation == LOWER:
            out = _extension_output(extend(a, z), 1, "value")
        else:
            out = _extension_output(extend(conjugate(a), -z), -1, "value")
    out.seed = args.seed
    out.extra = {"target": ident, "kind": args.kind}
    out.lines.insert(0, f"{args.kind} extension at {ident}")
    return out


def cmd_correct(doc: Document, args) -> Output:
    risk = doc.kind == "risk"
    a = as_assessment(doc)
    result = correct(a, args.mode, only_if_inconsistent=args.only_if_inconsistent)
    fixed = result.corrected
    if risk:
        new_doc = {"space": list(doc.space.atoms),
                   "gambles": {k: [str(v) for v in g.values] for k, g, _ in fixed.entries},
                   "risk": {k: str(-v) for k, _, v in fixed.entries}}
    else:
        new_doc = assessment_document(fixed, doc.gambles)
    sign = -1 if risk else 1
    out = from_report(result.report_after)
    out.values = {k: exact(sign * v) for k, _, v in fixed.entries}
    out.seed = args.seed
    out.extra = {"mode": args.mode, "skipped": result.skipped,
                 "ec_zero": exact(result.ec_zero),
                 "before": {"verdicts": verdict_json(result.report_before),
                            "k_bar": exact(result.report_before.k_bar)},
                 "corrected": new_doc}
    lines = [f"mode: {args.mode}" + (" (skipped: input already passes)" if result.skipped else ""),
             f"E_c(0): {both(result.ec_zero)}", "before:"]
    lines += ["  " + s for s in report_lines(result.report_before)]
    lines.append("corrected values:")
    lines += [f"  {k}: {both(sign * v)}" for k, _, v in fixed.entries]
    lines.append("after:")
    lines += ["  " + s for s in report_lines(result.report_after)]
    out.lines = lines
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(new_doc, fh, indent=2)
            fh.write("\n")
        out.lines.append(f"corrected file written to {args.output}")
    return out


def _require(doc: Document, kind: str) -> None:
    if doc.kind != kind:
        raise InputError(f"payload: this command needs a {kind!r} payload, found {doc.kind!r}")


def cmd_envelope(doc: Document, args) -> Output:
    _require(doc, "envelope")
    spec: EnvelopeSpec = doc.payload
    a = envelope_eval(spec, doc.gambles)
    report = classify(a)
    ties = {}
    for k, g, v in a.entries:
        ties[k] = [j for j, (p, al) in enumerate(zip(spec.previsions, spec.alphas)) if p(g) + al == v]
    out = from_report(report, Output(values={k: exact(v) for k, _, v in a.entries}, seed=args.seed))
    out.extra = {"orientation": spec.orientation, "centered": spec.centered,
                 "attained_by": {k: t[0] for k, t in ties.items()}, "ties": ties}
    out.lines = [f"{spec.orientation} envelope of {len(spec.previsions)} previsions"]
    for k, _, v in a.entries:
        tie = f" (ties: {ties[k]})" if len(ties[k]) > 1 else ""
        out.lines.append(f"{k}: {both(v)}  attained by #{ties[k][0]}{tie}")
    out.lines.append(f"centered: {verdict_text(spec.centered)}")
    out.lines += report_lines(report)
    return out


def cmd_possibility(doc: Document, args) -> Output:
    _require(doc, "possibility")
    p: PossibilityAssignment = doc.payload
    a = possibility_measure(p, possibility_events(doc))
    report = classify(a)
    banner = ("normalised: coherent upper probability" if p.normalised
              else "unnormalised: incurs sure loss")
    if p.normalised != report.coherent or p.normalised != report.avoids_sure_loss:
        banner += " (unexpected classification)"
    out = from_report(report, Output(values={k: exact(v) for k, _, v in a.entries}, seed=args.seed))
    out.extra = {"normalised": p.normalised, "banner": banner}
    out.lines = [banner] + [f"Pi{k}: {both(v)}" for k, _, v in a.entries] + report_lines(report)
    return out


def _risk_banner(r: ConsistencyReport) -> str:
    parts = ["convex" if r.convex else "not convex",
             "centered" if r.centered_convex else "not centered",
             "avoids sure loss" if r.avoids_sure_loss else "incurs sure loss"]
    banner = ", ".join(parts[:2]) + ", " + parts[2]
    if not r.avoids_sure_loss:
        banner += "; rho(0) would need >= 0"
    return banner


def cmd_risk(doc: Document, args) -> Output:
    _require(doc, "risk")
    r: RiskAssessment = doc.payload
    out = Output(seed=args.seed)
    action = args.action
    report = check_convex_risk(r)
    if action in ("classify", "all"):
        from_report(report, out)
        out.values = {k: exact(v) for k, _, v in r.entries}
        out.extra["banner"] = _risk_banner(report)
        out.extra["acceptable"] = acceptability(r)
        out.extra["internality_violations"] = internality_violations(r)
        out.lines += [_risk_banner(report)]
        out.lines += [f"rho({k}) = {both(v)}  {'acceptable' if v <= 0 else 'not acceptable'}"
                      for k, _, v in r.entries]
        out.lines += report_lines(report)
        out.code = check_exit_code(report)
    if action == "extend":
        if not args.gamble:
            raise InputError("--gamble: required for 'risk extend'")
        ident, z = resolve_gamble(doc, args.gamble)
        ext = _extension_output(convex_natural_extension(induced_lower(r), z), -1, "rho")
        out.values, out.witnesses = ext.values, ext.witnesses
        out.extra["target"] = ident
        out.lines += [f"risk extension at {ident}"] + ext.lines
    if action in ("axioms", "all"):
        out.extra["axioms"] = _sampled(out, "axioms T1/M2/CI", report.convex,
                                       lambda: check_axioms_T1_M2_CI(r, args.trials, args.seed),
                                       "requires a convex risk assessment")
    if action in ("liquidity", "all"):
        out.extra["liquidity"] = _sampled(out, "liquidity rho(lX) >= l rho(X)", report.centered_convex,
                                          lambda: check_liquidity_inequality(r, args.trials, args.seed),
                                          "requires a centered convex risk assessment")
    return out


def _sampled(out: Output, label: str, applicable, run, reason: str) -> dict:
    if not applicable:
        out.lines.append(f"{label}: skipped ({reason})")
        return {"ok": None, "skipped": reason}
    res = run()
    doc = {"ok": res.ok, "trials": res.trials, "seed": res.seed}
    if hasattr(res, "strict"):
        doc.update(strict=res.strict, equal=res.equal)
    text = f"{label}: {'holds' if res.ok else 'VIOLATED'} on {res.trials} samples (seed {res.seed})"
    if hasattr(res, "strict"):
        text += f", strict {res.strict}, equal {res.equal}"
    if not res.ok:
        doc["violation"] = [exact(x) if isinstance(x, Fraction) else
                            [exact(v) for v in x.values] if isinstance(x, Gamble) else x
                            for x in res.violation]
        out.code = max(out.code, EXIT_ASL_ONLY)
    out.lines.append(text)
    return doc


COMMANDS = {
    "check": cmd_check,
    "extend": cmd_extend,
    "correct": cmd_correct,
    "envelope": cmd_envelope,
    "possibility": cmd_possibility,
    "risk": cmd_risk,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="assessment file (JSON)")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for sampled checks (default %(default)s)")

    parser = argparse.ArgumentParser(
        prog="convexprev",
        description="Consistency checks, extensions and corrections for imprecise previsions.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="classify on the consistency ladder")
    p = sub.add_parser("extend", parents=[common], help="natural or convex natural extension")
    p.add_argument("--gamble", required=True, help="gamble id or inline vector such as 1,0")
    p.add_argument("--kind", choices=("convex", "natural"), default="convex")
    p = sub.add_parser("correct", parents=[common], help="repair an inconsistent assessment")
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--only-if-inconsistent", action="store_true",
                   help="leave inputs that already pass the mode's target unchanged")
    p.add_argument("--output", help="write the corrected assessment file here")
    sub.add_parser("envelope", parents=[common], help="evaluate an envelope payload")
    sub.add_parser("possibility", parents=[common], help="evaluate a possibility payload")
    p = sub.add_parser("risk", parents=[common], help="convex risk measure checks")
    p.add_argument("action", nargs="?", default="all",
                   choices=("classify", "extend", "axioms", "liquidity", "all"))
    p.add_argument("--gamble", help="position for 'extend'")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_document(args.file)
        out = COMMANDS[args.command](doc, args)
    except (InputError, PreconditionError, SpaceMismatchError) as exc:
        if args.format == "json":
            print(json.dumps({"error": str(exc)}, indent=2))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(out.json(), indent=2))
    else:
        print("\n".join(out.lines))
    return out.code
