"""``probinf`` command-line interface.

Each invocation runs one subcommand against a session.  With ``--session
PATH`` (or ``$PROBINF_SESSION``) the session is read from and written back
to that file, so commands chain across invocations::

    probinf --session s.json lottery --tickets 1000 --level 99/100
    probinf --session s.json query loses_7

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import corpus as corp
from . import statinf
from .algebra import Proposition, make_space, parse_formula
from .credal import (
    BettingQuotients,
    Coherent,
    CredalSet,
    Distribution,
    ProbabilityInterval,
    coherence_check,
    prob_interval,
)
from .errors import ProbinfError
from .rational import format_fraction, to_fraction
from .session import Session, load, save
from .updating import credal_condition, credal_jeffrey

SESSION_ENV = "PROBINF_SESSION"

# commands whose effect on the session is replayed from the history log
STATEFUL = {"space", "define", "dist", "credal", "condition", "jeffrey", "corpus", "lottery"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except ProbinfError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")

    parser = _Parser(prog="probinf", description="Probabilistic reasoning and acceptance.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    p = cmd("space", "start a session over a new world space")
    p.add_argument("atoms", nargs="+", metavar="ATOM")

    p = cmd("define", "name a proposition")
    p.add_argument("name")
    p.add_argument("formula")

    p = cmd("dist", "set a single distribution as the evidence")
    p.add_argument("weights", nargs="*", type=_rational, metavar="WEIGHT")
    p.add_argument("--uniform", action="store_true")

    p = cmd("credal", "set a credal set from generator points")
    p.add_argument("--point", nargs="+", type=_rational, action="append", required=True)

    p = cmd("prob", "lower/upper probability of a formula")
    p.add_argument("formula")
    p.add_argument("--given", metavar="FORMULA")

    p = cmd("condition", "condition the evidence on a formula")
    p.add_argument("--evidence", required=True, metavar="FORMULA")

    p = cmd("jeffrey", "Jeffrey-update the evidence")
    p.add_argument("--evidence", required=True, metavar="FORMULA")
    p.add_argument("--to", required=True, type=_rational, dest="new_pe", metavar="P")

    p = cmd("coherence", "check betting quotients for a Dutch book")
    p.add_argument("--bet", nargs=2, action="append", required=True, metavar=("FORMULA", "Q"))

    p = cmd("tinterval", "Student-t interval for a mean")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--values", nargs="+", type=float)
    src.add_argument("--csv")
    p.add_argument("--level", type=float, default=0.95)

    def binomial_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--n", type=int)
        src.add_argument("--csv")
        p.add_argument("--k", type=int)

    p = cmd("binci", "exact binomial confidence interval")
    binomial_source(p)
    p.add_argument("--level", type=float, default=0.95)

    p = cmd("bound", "3/sqrt(4n) proportion half-width")
    p.add_argument("--n", type=int, required=True)

    p = cmd("coverage", "exact coverage of a frequency band")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--half-width", type=float)

    p = cmd("test", "exact binomial hypothesis test")
    binomial_source(p)
    p.add_argument("--null", type=float, required=True, dest="null_p")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--tail", choices=["upper", "lower", "two-sided"], default="two-sided")

    p = cmd("reliability", "reliability interval of a default rule")
    p.add_argument("--successes", type=int, required=True)
    p.add_argument("--applications", type=int, required=True)
    p.add_argument("--gullibility", type=float, required=True)

    p = cmd("corpus", "set the acceptance level")
    lvl = p.add_mutually_exclusive_group(required=True)
    lvl.add_argument("--level", type=_rational)
    lvl.add_argument("--odds", type=_rational, help="derive the level from maximum stakes O:1")

    p = cmd("accept", "is each formula accepted?")
    p.add_argument("formulas", nargs="*", metavar="FORMULA")
    p.add_argument("--all", action="store_true", help="list every accepted proposition")

    p = cmd("query", "categorical answer or probability")
    p.add_argument("formula")

    cmd("consistency", "are the accepted propositions jointly consistent?")

    p = cmd("lottery", "start a session holding a fair lottery")
    p.add_argument("--tickets", type=int, required=True)
    p.add_argument("--level", type=_rational, required=True)

    p = cmd("advise", "advise on laying odds on an event")
    ev = p.add_mutually_exclusive_group(required=True)
    ev.add_argument("--interval", nargs=2, type=_rational, metavar=("LO", "HI"))
    ev.add_argument("--formula")
    ev.add_argument(
        "--frequency", nargs=2, type=_rational, metavar=("LO", "HI"),
        help="accepted heads frequency; event is 'not all of --tosses are heads'",
    )
    p.add_argument("--tosses", type=int, default=12)
    p.add_argument("--odds", type=_rational, required=True)

    p = cmd("save", "write the session to a file")
    p.add_argument("path")

    p = cmd("load", "replace the session from a file")
    p.add_argument("path")

    return parser


# --- helpers ----------------------------------------------------------------


def _need_space(s: Session):
    if s.space is None:
        raise UsageError("no world space defined")
    return s.space


def _need_credal(s: Session) -> CredalSet:
    _need_space(s)
    if s.credal is None:
        raise UsageError("no distribution loaded")
    return s.credal


def _need_corpus(s: Session) -> corp.Corpus:
    c = s.corpus
    if c is None:
        raise UsageError("no corpus loaded")
    return c


def _formula(s: Session, text: str) -> Proposition:
    return parse_formula(text, _need_space(s), s.bindings())


def _frac(x: Fraction) -> str:
    return format_fraction(x) if x.denominator != 1 else str(x.numerator)


def _prob_text(iv: ProbabilityInterval) -> str:
    if iv.is_degenerate:
        return f"probability {_frac(iv.lower)}"
    return f"probability in [{_frac(iv.lower)}, {_frac(iv.upper)}]"


def _interval_json(iv) -> dict:
    lo, hi = iv
    if isinstance(lo, Fraction):
        return {"lower": format_fraction(lo), "upper": format_fraction(hi)}
    return {"lower": lo, "upper": hi}


def _binomial(args) -> statinf.BinomialData:
    if args.csv:
        return statinf.read_binomial_csv(args.csv)
    if args.k is None:
        raise UsageError("--k is required with --n")
    return statinf.BinomialData(args.n, args.k)


# --- command handlers: (session, args) -> (new session, payload, text) -----------


def _space(s, args):
    space = make_space(args.atoms)
    return Session(space=space, history=s.history), {"atoms": list(space.atoms)}, (
        f"space with {len(space)} atoms: {' '.join(space.atoms)}"
    )


def _define(s, args):
    prop = _formula(s, args.formula).named(args.name)
    names = dict(s.names)
    names[args.name] = prop
    new = Session(s.space, names, s.credal, s.level, s.history)
    return new, {"name": args.name, "atoms": list(prop.labels)}, (
        f"{args.name} = {{{', '.join(prop.labels)}}}"
    )


def _dist(s, args):
    space = _need_space(s)
    if args.uniform:
        d = Distribution.uniform(space)
    elif args.weights:
        d = Distribution(space, tuple(args.weights))
    else:
        raise UsageError("give weights or --uniform")
    k = CredalSet(space, (d,))
    new = Session(s.space, s.names, k, s.level, s.history)
    return new, {"credal": k.to_json()}, "distribution: " + " ".join(_frac(w) for w in d.weights)


def _credal(s, args):
    space = _need_space(s)
    k = CredalSet(space, tuple(Distribution(space, tuple(pt)) for pt in args.point))
    new = Session(s.space, s.names, k, s.level, s.history)
    return new, {"credal": k.to_json()}, f"credal set with {len(k)} generators"


def _prob(s, args):
    k = _need_credal(s)
    a = _formula(s, args.formula)
    if args.given:
        k = credal_condition(k, _formula(s, args.given))
    iv = prob_interval(k, a)
    return s, {"formula": args.formula, "given": args.given, "interval": iv.to_json()}, (
        f"P({args.formula}{' | ' + args.given if args.given else ''}): {_prob_text(iv)}"
    )


def _condition(s, args):
    k = credal_condition(_need_credal(s), _formula(s, args.evidence))
    new = Session(s.space, s.names, k, s.level, s.history)
    return new, {"credal": k.to_json(), "discarded": k.discarded}, (
        f"conditioned on {args.evidence}: {len(k)} generators kept, {k.discarded} discarded"
    )


def _jeffrey(s, args):
    k = credal_jeffrey(_need_credal(s), _formula(s, args.evidence), args.new_pe)
    new = Session(s.space, s.names, k, s.level, s.history)
    return new, {"credal": k.to_json(), "discarded": k.discarded}, (
        f"shifted P({args.evidence}) to {_frac(args.new_pe)}: {len(k)} generators kept"
    )


def _coherence(s, args):
    entries = [(_formula(s, f), _rational(q)) for f, q in args.bet]
    result = coherence_check(BettingQuotients.of(entries))
    if isinstance(result, Coherent):
        w = result.witness.weights
        return s, {"coherent": True, "witness": [format_fraction(x) for x in w]}, (
            "Coherent; witness " + " ".join(_frac(x) for x in w)
        )
    return s, {
        "coherent": False,
        "stakes": [format_fraction(x) for x in result.stakes],
        "guaranteed_loss": format_fraction(result.guaranteed_loss),
    }, (
        "DutchBook; stakes " + " ".join(_frac(x) for x in result.stakes)
        + f"; sure loss {_frac(result.guaranteed_loss)}"
    )


def _tinterval(s, args):
    sample = statinf.read_sample_csv(args.csv) if args.csv else statinf.RealSample(tuple(args.values))
    iv = statinf.t_interval(sample, args.level)
    return s, {"level": args.level, "interval": _interval_json(iv)}, (
        f"{args.level:g} t-interval for the mean: [{iv.lower:.6g}, {iv.upper:.6g}]"
    )


def _binci(s, args):
    data = _binomial(args)
    iv = statinf.binomial_ci(data, args.level)
    return s, {"n": data.n, "k": data.k, "level": args.level, "interval": _interval_json(iv)}, (
        f"{args.level:g} exact interval for r: [{iv.lower:.6g}, {iv.upper:.6g}]"
    )


def _bound(s, args):
    b = statinf.proportion_bound(args.n)
    text = f"half-width {b.half_width:.6g}" + (" (vacuous)" if b.vacuous else "")
    return s, {"n": args.n, "half_width": b.half_width, "vacuous": b.vacuous}, text


def _coverage(s, args):
    hw = args.half_width if args.half_width is not None else statinf.proportion_bound(args.n).half_width
    cov = statinf.exact_coverage(args.n, args.p, hw)
    return s, {"n": args.n, "p": args.p, "half_width": hw, "coverage": cov}, f"coverage {cov:.6g}"


def _test(s, args):
    data = _binomial(args)
    res = statinf.hypothesis_test(data, args.null_p, args.alpha, args.tail)
    verdict = type(res).__name__
    return s, {"verdict": verdict, "p_value": res.p_value}, f"{verdict} (p-value {res.p_value:.6g})"


def _reliability(s, args):
    iv = statinf.default_rule_reliability(args.successes, args.applications, args.gullibility)
    return s, {"interval": _interval_json(iv)}, f"reliability in [{iv.lower:.6g}, {iv.upper:.6g}]"


def _corpus(s, args):
    _need_credal(s)
    level = args.level if args.level is not None else corp.threshold_from_stakes(args.odds)
    c = corp.Corpus(s.credal, level)
    new = Session(s.space, s.names, s.credal, c.acceptance_level, s.history)
    return new, {"acceptance_level": format_fraction(c.acceptance_level)}, (
        f"acceptance level {_frac(c.acceptance_level)}"
    )


def _accept(s, args):
    c = _need_corpus(s)
    if args.all:
        props = corp.accepted_set(c)
        listed = [list(p.labels) for p in props]
        text = "\n".join("{" + ", ".join(p) + "}" for p in listed)
        return s, {"accepted": listed}, f"{len(props)} accepted\n{text}"
    if not args.formulas:
        raise UsageError("give formulas or --all")
    results = {f: corp.is_accepted(c, _formula(s, f)) for f in args.formulas}
    text = "\n".join(f"{f}: {'accepted' if ok else 'not accepted'}" for f, ok in results.items())
    return s, {"accepted": results}, text


def _query(s, args):
    c = _need_corpus(s)
    ans = corp.query(c, _formula(s, args.formula))
    return s, {"formula": args.formula, "verdict": str(ans.verdict), "interval": ans.interval.to_json()}, (
        f"{ans.verdict} ({_prob_text(ans.interval)})"
    )


def _consistency(s, args):
    c = _need_corpus(s)
    res = corp.joint_consistency(c)
    if isinstance(res, corp.Consistent):
        return s, {"consistent": True, "common": list(res.common.labels)}, "Consistent"
    names = {p.mask: n for n, p in s.names.items()}
    shown = [names.get(p.mask, "{" + ",".join(p.labels) + "}") for p in res.witness]
    return s, {"consistent": False, "witness": shown}, (
        f"JointlyInconsistent: {len(shown)} accepted propositions with empty intersection"
    )


def _lottery(s, args):
    lot = corp.build_lottery(args.tickets, args.level)
    c = lot.corpus
    new = Session(c.space, lot.propositions, c.evidence, c.acceptance_level, s.history)
    return new, {"tickets": args.tickets, "acceptance_level": format_fraction(c.acceptance_level)}, (
        f"lottery with {args.tickets} tickets at acceptance level {_frac(c.acceptance_level)}"
    )


def _advise(s, args):
    c = _need_corpus(s)
    if args.formula:
        iv = prob_interval(c.evidence, _formula(s, args.formula))
    elif args.frequency:
        heads = corp.direct_inference(c, ProbabilityInterval(*args.frequency))
        n = args.tosses
        iv = ProbabilityInterval(1 - heads.upper**n, 1 - heads.lower**n)
    else:
        iv = ProbabilityInterval(*args.interval)
    advice = corp.bet_advice(c, iv, args.odds)
    if isinstance(advice, corp.TakeBet):
        return s, {"advice": "TakeBet", "interval": iv.to_json()}, "TakeBet"
    return s, {"advice": "RefuseBet", "reason": str(advice.reason), "interval": iv.to_json()}, (
        f"RefuseBet ({advice.reason})"
    )


def _save(s, args):
    save(s, args.path)
    return s, {"path": args.path}, f"saved to {args.path}"


def _load(s, args):
    new = load(args.path)
    return new, {"path": args.path}, f"loaded {args.path}"


HANDLERS = {
    "space": _space,
    "define": _define,
    "dist": _dist,
    "credal": _credal,
    "prob": _prob,
    "condition": _condition,
    "jeffrey": _jeffrey,
    "coherence": _coherence,
    "tinterval": _tinterval,
    "binci": _binci,
    "bound": _bound,
    "coverage": _coverage,
    "test": _test,
    "reliability": _reliability,
    "corpus": _corpus,
    "accept": _accept,
    "query": _query,
    "consistency": _consistency,
    "lottery": _lottery,
    "advise": _advise,
    "save": _save,
    "load": _load,
}


def execute(argv: Sequence[str], session: Session | None = None) -> tuple[Session, str]:
    """Run one command; return the new session and rendered output.

    Raises :class:`UsageError` for malformed commands or missing session
    state and :class:`~probinf.errors.ProbinfError` for domain errors.
    """
    session = session if session is not None else Session()
    argv = list(argv)
    args = build_parser().parse_args(argv)
    new, payload, text = HANDLERS[args.command](session, args)
    if args.command in STATEFUL:
        new = new.evolve([tok for tok in argv if tok != "--json"])
    if args.json:
        return new, json.dumps({"command": args.command, **payload}, sort_keys=True)
    return new, text


def replay(history) -> Session:
    """Rebuild a session from its history log."""
    session = Session()
    for command in history:
        session, _ = execute(command, session)
    return session


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    path = os.environ.get(SESSION_ENV)
    if argv[:1] == ["--session"]:
        if len(argv) < 2:
            print("probinf: error: --session needs a path", file=sys.stderr)
            return 2
        path, argv = argv[1], argv[2:]
    if argv[:1] == ["--json"]:
        argv = argv[1:] + ["--json"]
    if argv and argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0
    try:
        session = load(path) if path and os.path.exists(path) else Session()
        new, out = execute(argv, session)
        if path and new is not session:
            save(new, path)
    except UsageError as exc:
        print(f"probinf: error: {exc}", file=sys.stderr)
        return 2
    except (ProbinfError, OSError) as exc:
        print(f"probinf: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help inside a subcommand
        return int(exc.code or 0)
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
