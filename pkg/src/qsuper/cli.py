"""Command-line front end: ``qsuper <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from .engine import MorphismError, PresentationError, check_confluence
from .expr import ExprError
from .qfield import ScalarParseError
from .report import Report

ALGEBRAS = ("O", "Lambda", "F", "Omega", "Weyl", "GL", "Dual", "MNPhi", "HKTheta", "Uq", "Tfields")
HOPF_ALGEBRAS = ("F", "GL", "MNPhi", "HKTheta", "Uq", "Tfields")
STAR_ALGEBRAS = ("O", "F", "Weyl")
SUITES = ("hopf", "star-bialgebra", "coaction", "calculus", "mc", "euler", "weyl-star", "dual",
          "hopf-lie", "equivalence", "confluence", "all")
CONFLUENT = ("O", "Lambda", "F", "Omega", "Weyl", "GL", "MNPhi", "HKTheta", "Uq", "Tfields")


class UsageError(Exception):
    pass


# -- algebras -------------------------------------------------------------------
def algebra(name: str):
    from .data import presentation
    if name not in ALGEBRAS or name == "Dual":
        raise UsageError("unknown algebra %r (choose from %s)" % (name, ", ".join(ALGEBRAS)))
    alg = presentation(name)
    if name == "Omega" and not alg.extras:
        from .calculus import mc_forms
        alg.extras.update(zip(("w1", "w2", "w3"), mc_forms()))
    return alg


def parse_in(name: str, text: str):
    if name == "Dual":
        from .duality import parse_dual
        return parse_dual(text)
    return algebra(name).parse(text)


def hopf_structure(name: str):
    from . import duality, hopf
    if name == "F":
        return hopf.F_hopf()
    if name == "GL":
        return hopf.GL_hopf()
    if name in duality.HOPF_LIE:
        return duality.hopf_lie(name)
    raise UsageError("no Hopf structure on %r (choose from %s)" % (name, ", ".join(HOPF_ALGEBRAS)))


# -- plain commands ---------------------------------------------------------------
def cmd_normalize(a):
    return str(parse_in(a.algebra or "F", a.expr))


def cmd_coproduct(a):
    name = a.algebra or "F"
    return str(hopf_structure(name).coproduct(parse_in(name, a.expr)))


def cmd_counit(a):
    name = a.algebra or "F"
    return str(hopf_structure(name).counit(parse_in(name, a.expr)))


def cmd_antipode(a):
    name = a.algebra or "F"
    h = hopf_structure(name)
    if h.S is None:
        raise UsageError("%s has no antipode" % name)
    return str(h.antipode(parse_in(name, a.expr)))


def cmd_star(a):
    name = a.algebra or "F"
    if name not in STAR_ALGEBRAS:
        raise UsageError("no star structure on %r (choose from %s)" % (name, ", ".join(STAR_ALGEBRAS)))
    e = parse_in(name, a.expr)
    if name == "Weyl":
        from .weyl import weyl_star
        return str(weyl_star(e))
    from .spaces import star
    return str(star(e))


def cmd_diff(a):
    from .calculus import differential
    name = a.algebra or "Omega"
    if name not in ("F", "Omega"):
        raise UsageError("diff acts on F or Omega")
    return str(differential(parse_in(name, a.expr)))


def cmd_partial(a):
    from .calculus import partial
    return str(partial(a.var, parse_in("F", a.expr)))


def cmd_pair(a):
    from .duality import pair
    return str(pair(parse_in("Dual", a.dual), parse_in("F", a.expr)))


def cmd_mc_forms(a):
    from .calculus import mc_forms
    return "\n".join("w%d = %s" % (i, w) for i, w in enumerate(mc_forms(), 1))


def cmd_weyl(a):
    from .weyl import module_action
    if a.action == "normalize":
        if len(a.operands) != 1:
            raise UsageError("weyl normalize takes one expression")
        return str(parse_in("Weyl", a.operands[0]))
    if len(a.operands) != 2:
        raise UsageError("weyl act takes an operator and a function")
    return str(module_action(parse_in("Weyl", a.operands[0]), parse_in("O", a.operands[1])))


def cmd_matrices(a):
    from .data import matrix_families
    from .spaces import representation_check
    families = [a.family] if a.family else list(matrix_families())
    try:
        return [representation_check(f) for f in families]
    except KeyError as e:
        raise UsageError(e.args[0]) from e


# -- check suites -----------------------------------------------------------------
def confluence_report(bound: int) -> Report:
    from .data import presentation
    from .hopf import comodule_algebra
    rep = Report("confluence")
    algs = [presentation(n) for n in CONFLUENT] + [comodule_algebra("O"), comodule_algebra("Lambda")]
    for p in algs:
        rep.checked["confluent to degree %d" % bound] += 1
        for word, left, right in check_confluence(p, bound):
            rep.require("confluent to degree %d" % bound, "%s: %s" % (p.name, word), False, left, right, left - right)
    rejected = check_confluence(presentation("Omega45"), bound)
    rep.note("alternative calculus", "%d words reduce ambiguously under the rejected rule set" % len(rejected),
             first=rejected[0][0] if rejected else "")
    return rep


def suite_reports(name: str, bound: int = 3, seed: int = 0, rules: str = "44", which=None) -> list:
    from . import calculus, duality, hopf, spaces, weyl
    half = max(2, bound - 1)
    if name == "hopf":
        return [hopf.check_hopf(-half, half)]
    if name == "star-bialgebra":
        return [spaces.check_star_algebra(bound + 1, spaces.O()),
                spaces.check_star_algebra(bound + 1, spaces.F()),
                hopf.check_star_bialgebra(bound + 1)]
    if name == "coaction":
        return [hopf.coaction_check("O"), hopf.coaction_check("Lambda"), hopf.check_supergroup(bound - 1)]
    if name == "calculus":
        return [calculus.check_consistency(rules), calculus.check_tau_sigma(bound), calculus.check_partials(bound),
                calculus.check_partial_relations(bound), calculus.check_differential(2 * bound, 200, seed),
                calculus.check_right_covariance()]
    if name == "mc":
        return [calculus.check_mc(window=bound - 1, lemma_max=bound + 1)]
    if name == "euler":
        return [weyl.euler_identity_check(bound + 2, 2 * bound), weyl.normal_element_check(),
                weyl.pbw_check(bound), weyl.representation_check(seed=seed)]
    if name == "weyl-star":
        return [weyl.weyl_star_check(bound)]
    if name == "dual":
        return [duality.check_dual(bound)]
    if name == "hopf-lie":
        names = [which] if which else list(duality.HOPF_LIE)
        for n in names:
            if n not in duality.HOPF_LIE:
                raise UsageError("unknown Hopf-Lie presentation %r (choose from %s)"
                                 % (n, ", ".join(duality.HOPF_LIE)))
        return [duality.hopf_lie_check(n, bound + 1) for n in names]
    if name == "equivalence":
        return [duality.equivalence_check()]
    if name == "confluence":
        return [confluence_report(bound + 1)]
    if name == "all":
        out = []
        for s in SUITES[:-1]:
            out.extend(suite_reports(s, bound, seed, rules))
        return out
    raise UsageError("unknown suite %r (choose from %s)" % (name, ", ".join(SUITES)))


def cmd_check(a):
    if a.suite not in SUITES:
        raise UsageError("unknown suite %r (choose from %s)" % (a.suite, ", ".join(SUITES)))
    if a.bound < 1:
        raise UsageError("--bound must be positive")
    return suite_reports(a.suite, a.bound, a.seed, a.rules, a.name)


COMMANDS = {
    "normalize": cmd_normalize, "coproduct": cmd_coproduct, "counit": cmd_counit, "antipode": cmd_antipode,
    "star": cmd_star, "diff": cmd_diff, "partial": cmd_partial, "pair": cmd_pair, "mc-forms": cmd_mc_forms,
    "weyl": cmd_weyl, "matrices": cmd_matrices, "check": cmd_check,
}


# -- argument parsing -------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", choices=ALGEBRAS, help="algebra to parse expressions in")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--bound", type=int, default=3, help="window bound for checks (default 3)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized pair sampling")
    common.add_argument("--rules", choices=("44", "45"), default="44", help="calculus rule set for check calculus")
    common.add_argument("--figure", metavar="PATH", help="write a pass/fail chart of the checks")

    parser = argparse.ArgumentParser(prog="qsuper",
                                     description="Exact computations on the quantum superspace C_q^(2|1).")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    add = lambda name, help: sub.add_parser(name, parents=[common], help=help)

    for name, help in (("normalize", "normal form of an expression"), ("coproduct", "coproduct"),
                       ("counit", "counit"), ("antipode", "antipode"), ("star", "star involution"),
                       ("diff", "exterior derivative in Omega")):
        add(name, help).add_argument("expr")
    p = add("partial", "partial derivative of a function")
    p.add_argument("var", choices=("x", "y", "theta"))
    p.add_argument("expr")
    p = add("pair", "dual pairing <u, f>")
    p.add_argument("dual")
    p.add_argument("expr")
    add("mc-forms", "left-invariant Maurer-Cartan forms")
    p = add("weyl", "Weyl superalgebra: normalize or act on functions")
    p.add_argument("action", choices=("normalize", "act"))
    p.add_argument("operands", nargs="+")
    p = add("matrices", "check the shipped representation matrices")
    p.add_argument("family", nargs="?")
    p = add("check", "run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("name", nargs="?", help="presentation for hopf-lie")
    return parser


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    for key in ("family", "name"):
        if not hasattr(args, key):
            setattr(args, key, None)
    return parser, args


def render(result, fmt: str, command: str, args) -> tuple[int, str]:
    if isinstance(result, list):
        passed = all(r.passed for r in result)
        if fmt == "json":
            body = {"suite": getattr(args, "suite", command), "pass": passed,
                    "reports": [r.to_dict() for r in result]}
            text = json.dumps(body, indent=2, ensure_ascii=False)
        else:
            total = sum(r.total() for r in result)
            failed = sum(len(r.failures) for r in result)
            lines = [r.to_text() for r in result]
            lines.append("%s: %d checks, %d failed" % ("PASS" if passed else "FAIL", total, failed))
            text = "\n".join(lines)
        return (0 if passed else 1), text
    if fmt == "json":
        return 0, json.dumps({"command": command, "result": result}, ensure_ascii=False)
    return 0, result


def _figure_title(args) -> str:
    if args.command == "check":
        return "check %s, bound %d" % (args.suite, args.bound)
    return "matrices"


def run(argv=None) -> tuple[int, str]:
    """Run one invocation; returns (exit code, output text)."""
    try:
        parser, args = _parse(argv)
    except SystemExit as e:
        return int(e.code or 0), ""
    try:
        result = COMMANDS[args.command](args)
    except UsageError as e:
        return 2, "%s\n%s" % (parser.format_usage().rstrip(), "error: %s" % e)
    except (ExprError, PresentationError, ScalarParseError, MorphismError) as e:
        return 2, "error: %s" % e
    code, text = render(result, args.format, args.command, args)
    if args.figure and isinstance(result, list):
        from .plots import report_figure
        report_figure(result, args.figure, title=_figure_title(args))
    return code, text


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, text = run(argv)
    if text:
        (sys.stdout if code != 2 else sys.stderr).write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
