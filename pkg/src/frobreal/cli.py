"""Command line front end.

Subcommands build, check, aut, orbit and report parse a manifold spec,
run the requested computation, and emit either a human-readable table or
machine JSON.  All output is deterministic: same config, same bytes.

Exit codes: 0 all requested checks pass, 1 a mathematical verdict failed,
2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .frobenius import FrobeniusError, FrobeniusStructure, check_axioms
from .manifolds import ManifoldSpec, ManifoldSpecError, build_structure
from .orbits import (BudgetExceededError, DEFAULT_BUDGET, OrbitError,
                     enumerate_algebra_automorphisms,
                     enumerate_frobenius_automorphisms, graded_linear_order,
                     orbit_of_structure, realization_count_report)
from .scalars import FieldError, FieldSpec, PrimeField, Rationals

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

BUDGET_ENV = "FROBREAL_BUDGET"


class SpecParseError(ValueError):
    """Malformed manifold spec text; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__("%s at byte %d" % (message, offset))
        self.offset = offset


class _SpecReader:

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise SpecParseError("expected %r" % ch, self.pos)
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        if self.pos == start:
            raise SpecParseError("expected a manifold kind", start)
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise SpecParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def spec(self) -> ManifoldSpec:
        self.skip_ws()
        at = self.pos
        kind = self.word()
        if kind == "connsum":
            self.expect("(")
            left = self.spec()
            self.expect(",")
            right = self.spec()
            self.expect(")")
            try:
                return ManifoldSpec("connsum", left=left, right=right)
            except ManifoldSpecError as e:
                raise SpecParseError(str(e), at) from None
        if kind in ("sphere", "cp", "surface"):
            self.expect(":")
            self.skip_ws()
            at_num = self.pos
            n = self.integer()
            try:
                return ManifoldSpec(kind, n)
            except ManifoldSpecError as e:
                raise SpecParseError(str(e), at_num) from None
        raise SpecParseError("unknown manifold kind %r" % kind, at)


def parse_spec(text: str) -> ManifoldSpec:
    """Parse `sphere:n`, `cp:n`, `surface:g`, or `connsum(spec,spec)`.

    Whitespace-insensitive; errors carry byte offsets.
    """
    reader = _SpecReader(text)
    node = reader.spec()
    reader.skip_ws()
    if reader.pos != len(text):
        raise SpecParseError("unexpected trailing input", reader.pos)
    return node


def parse_field(text: str) -> FieldSpec:
    if text == "rationals":
        return Rationals()
    if text.startswith("q="):
        body = text[2:]
        if not body.isdigit():
            raise FieldError("field must be 'rationals' or 'q=<prime>', got %r"
                             % (text,))
        return PrimeField(int(body))
    raise FieldError("field must be 'rationals' or 'q=<prime>', got %r" % (text,))


@dataclass
class RunConfig:
    mode: str
    spec_text: str = None
    infile: str = None
    field_text: str = "rationals"
    budget: int = None
    out: str = None
    as_json: bool = False


def _resolve_budget(config: RunConfig) -> int:
    if config.budget is not None:
        return config.budget
    env = os.environ.get(BUDGET_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_BUDGET


def _field_name(field: FieldSpec) -> str:
    if field.kind == "rationals":
        return "rationals"
    return "F_%d" % field.characteristic


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_structure(config: RunConfig):
    if config.infile:
        with open(config.infile, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return FrobeniusStructure.from_json(data), "loaded:%s" % os.path.basename(
            config.infile)
    if not config.spec_text:
        raise SpecParseError("a spec or an input file is required", 0)
    spec = parse_spec(config.spec_text)
    field = parse_field(config.field_text)
    return build_structure(spec, field), spec.text()


def _render_check(label: str, field: FieldSpec, report) -> str:
    lines = ["axiom report: %s over %s" % (label, _field_name(field))]
    for name, verdict, witness, note in report.axioms:
        mark = "pass" if verdict else "FAIL"
        suffix = "  (%s)" % note if note else ""
        lines.append("  %-20s %s%s" % (name, mark, suffix))
        if witness is not None and not verdict:
            lines.append("    witness input: %r" % (witness[0],))
    lines.append("lambda0 = %s" % field.serialize(report.lambda0))
    if report.lambda1 is not None:
        lines.append("lambda1 = %s" % field.serialize(report.lambda1))
    for flag in report.flags:
        lines.append("note: %s" % flag)
    lines.append("all axioms pass" if report.all_pass
                 else "FAILED: %d axiom(s)"
                 % sum(1 for _, v, _, _ in report.axioms if not v))
    return "\n".join(lines) + "\n"


def _require_prime(config: RunConfig) -> PrimeField:
    field = parse_field(config.field_text)
    if field.kind != "prime-field":
        raise FieldError("mode %r requires a prime field (use --field q=<prime>)"
                         % config.mode)
    return field


def run(config: RunConfig) -> int:
    budget = _resolve_budget(config)

    if config.mode == "build":
        spec = parse_spec(config.spec_text)
        field = parse_field(config.field_text)
        s = build_structure(spec, field)
        _emit(_json_text(s.to_json()), config.out)
        return EXIT_OK

    if config.mode == "check":
        s, label = _load_structure(config)
        report = check_axioms(s)
        if config.as_json:
            text = _json_text({"label": label, "report": report.to_json()})
        else:
            text = _render_check(label, s.field, report)
        _emit(text, config.out)
        return EXIT_OK if report.all_pass else EXIT_VERDICT

    if config.mode == "aut":
        field = _require_prime(config)
        spec = parse_spec(config.spec_text)
        s = build_structure(spec, field)
        algebra = enumerate_algebra_automorphisms(s, budget)
        frob = enumerate_frobenius_automorphisms(s, budget, algebra=algebra)
        equal = len(frob) == len(algebra)
        if config.as_json:
            text = _json_text({
                "spec": spec.text(),
                "q": field.characteristic,
                "graded_linear_order": graded_linear_order(
                    s.space, field.characteristic),
                "algebra_order": len(algebra),
                "frobenius_order": len(frob),
                "strict_automorphisms_match_algebra": equal,
                "algebra": [g.to_json() for g in algebra],
                "frobenius": [g.to_json() for g in frob],
            })
        else:
            lines = [
                "automorphism groups: %s over %s" % (spec.text(),
                                                     _field_name(field)),
                "|Aut_K (graded linear)| = %d"
                % graded_linear_order(s.space, field.characteristic),
                "|Aut_alg| = %d" % len(algebra),
                "|Aut_frob| = %d" % len(frob),
                "strict frobenius automorphisms match algebra automorphisms: %s"
                % ("yes" if equal else "no"),
            ]
            text = "\n".join(lines) + "\n"
        _emit(text, config.out)
        return EXIT_OK

    if config.mode == "orbit":
        field = _require_prime(config)
        spec = parse_spec(config.spec_text)
        s = build_structure(spec, field)
        alg_orbit = orbit_of_structure(s, "algebra", budget)
        frob_orbit = orbit_of_structure(s, "frobenius", budget)
        if config.as_json:
            text = _json_text({
                "spec": spec.text(),
                "q": field.characteristic,
                "graded_linear_order": graded_linear_order(
                    s.space, field.characteristic),
                "algebra_orbit": alg_orbit.to_json(),
                "frobenius_orbit": frob_orbit.to_json(),
            })
        else:
            lines = [
                "orbits under graded linear conjugation: %s over %s"
                % (spec.text(), _field_name(field)),
                "|Aut_K (graded linear)| = %d"
                % graded_linear_order(s.space, field.characteristic),
                "orbit size (algebra tensor) = %d [%s]"
                % (alg_orbit.size, alg_orbit.method),
                "orbit size (frobenius tensor) = %d [%s]"
                % (frob_orbit.size, frob_orbit.method),
            ]
            text = "\n".join(lines) + "\n"
        _emit(text, config.out)
        return EXIT_OK

    if config.mode == "report":
        field = _require_prime(config)
        spec = parse_spec(config.spec_text)
        report = realization_count_report(spec, field.characteristic, budget)
        if config.as_json:
            text = _json_text(report.to_json())
        else:
            lines = [
                "realization report: %s over %s" % (report.spec_text,
                                                    _field_name(field)),
                "euler characteristic = %d" % report.chi,
                "lambda0 = %s" % report.lambda0,
                "handle element check = %s"
                % ("pass" if report.handle_ok else "FAIL"),
                "|Aut_K (graded linear)| = %d" % report.aut_linear,
                "|Aut_alg| = %d" % report.aut_algebra,
                "|Aut_frob| = %d" % report.aut_frobenius,
                "coset count (algebra) = %d" % report.coset_algebra,
                "coset count (frobenius) = %d" % report.coset_frobenius,
                "relative count |Aut_alg|/|Aut_frob| = %d"
                % report.relative_count,
                "orbit size (algebra tensor) = %d [%s]"
                % (report.orbit_algebra.size, report.orbit_algebra.method),
                "orbit size (frobenius tensor) = %d [%s]"
                % (report.orbit_frobenius.size, report.orbit_frobenius.method),
                "strict frobenius automorphisms match algebra automorphisms: %s"
                % ("yes" if report.strict_equal else "no"),
            ]
            for note in report.notes:
                lines.append("note: %s" % note)
            text = "\n".join(lines) + "\n"
        _emit(text, config.out)
        return EXIT_OK if report.handle_ok else EXIT_VERDICT

    raise SpecParseError("unknown mode %r" % config.mode, 0)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobreal",
        description="Exact Frobenius structures on manifold cohomology: "
                    "build, check axioms, enumerate automorphisms, count "
                    "realization cosets.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, needs_spec in (("build", True), ("check", False), ("aut", True),
                             ("orbit", True), ("report", True)):
        p = sub.add_parser(mode)
        p.add_argument("--spec", required=needs_spec,
                       help="manifold spec, e.g. sphere:2, cp:3, surface:1, "
                            "connsum(cp:2,cp:2)")
        p.add_argument("--field", default="rationals",
                       help="'rationals' or 'q=<prime>'")
        p.add_argument("--budget", type=int, default=None,
                       help="candidate budget for finite-field enumeration "
                            "(default %d, env %s)" % (DEFAULT_BUDGET, BUDGET_ENV))
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--json", action="store_true", dest="as_json",
                       help="emit machine JSON instead of the table view")
        if mode == "check":
            p.add_argument("--in", dest="infile", default=None,
                           help="read a serialized structure instead of "
                                "building from --spec")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        mode=args.mode,
        spec_text=getattr(args, "spec", None),
        infile=getattr(args, "infile", None),
        field_text=args.field,
        budget=args.budget,
        out=args.out,
        as_json=args.as_json,
    )
    try:
        return run(config)
    except BudgetExceededError as e:
        print("budget exceeded: %s" % e, file=sys.stderr)
        return EXIT_BUDGET
    except (SpecParseError, ManifoldSpecError, FieldError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (FrobeniusError, OrbitError) as e:
        print("verdict failure: %s" % e, file=sys.stderr)
        return EXIT_VERDICT
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
