import argparse
import logging
import sys

from dotenv import load_dotenv

from src import __version__
from src.core.arithmetical import Arithmetical
from src.core.elasticity_profile import ElasticityProfiles, Outcome
from src.core.errors import InvalidElasticities, MonoidError, NonIntegerResult
from src.core.factorizations import Factorizations
from src.core.monoid_core import MonoidCore, NumericalMonoid
from src.core.utils import Utils
from src.core.verification import run_suite
from src.services.exporters import open_output, render_svg, write_json, write_stats_csv
from src.utils import config

load_dotenv()

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_IO = 3
EXIT_NOT_ARITHMETICAL = 4
EXIT_RECOVERY_MISMATCH = 5


def _monoid(text: str) -> NumericalMonoid:
    return MonoidCore.new_monoid(Utils.parse_generators(text))


def _default_range(S: NumericalMonoid, lo, hi):
    """--from defaults to 0, --to to base + 10 * period."""
    lo = 0 if lo is None else lo
    if hi is None:
        hi = S.penultimate * S.largest + 10 * S.smallest * S.largest
    return lo, hi


def cmd_stats(args) -> int:
    S = _monoid(args.generators)
    lo, hi = _default_range(S, args.lo, args.hi)
    rows = Factorizations.length_stats_range(S, lo, hi)
    with open_output(args.output) as stream:
        write_stats_csv(rows, stream)
    return 0


def cmd_plot(args) -> int:
    S = _monoid(args.generators)
    lo, hi = _default_range(S, args.lo, args.hi)
    rows = Factorizations.length_stats_range(S, lo, hi)
    if args.kind == "rho":
        points = [(r.n, float(r.elasticity)) for r in rows]
    elif args.kind == "maxlen":
        points = [(r.n, float(r.max_len)) for r in rows]
    else:
        points = [(r.n, float(r.min_len)) for r in rows]

    title = f"{args.kind} of {S}"
    highlight = set()
    if args.against:
        other = _monoid(args.against)
        profile = ElasticityProfiles.build_profile(other)
        missing = {}
        for r in rows:
            if r.elasticity not in missing:
                missing[r.elasticity] = not ElasticityProfiles.contains_elasticity(profile, r.elasticity)
        highlight = {r.n for r in rows if missing[r.elasticity]}
        title += f" (red: rho not in R({other}))"
        logger.info(f"🔍 {len(highlight)} of {len(rows)} elements of {S} have an elasticity outside R({other})")

    with open_output(args.output) as stream:
        stream.write(render_svg(points, title, highlight))
    return 0


def cmd_recover(args) -> int:
    S = _monoid(args.generators)
    params = MonoidCore.detect_arithmetical(S)
    if params is None:
        print(f"❌ {S} is not arithmetical", file=sys.stderr)
        return EXIT_NOT_ARITHMETICAL

    # only elasticity data from here on; params is the cross-check
    values = sorted(Factorizations.elasticities_up_to(S, 20 * S.smallest * S.largest))
    try:
        d = Arithmetical.recover_d(values[1], values[2])
        sup = values[-1]
        a_over_k = Arithmetical.recover_a_over_k(sup, d)
    except (IndexError, InvalidElasticities, NonIntegerResult) as e:
        print(f"❌ Recovery failed for {S}: {e}", file=sys.stderr)
        return EXIT_RECOVERY_MISMATCH
    print(f"d={d} a/k={Utils.format_rational(a_over_k)} sup={Utils.format_rational(sup)}")

    if (d, a_over_k, sup) != (params.d, params.a_over_k, params.sup):
        print(f"❌ Recovered values disagree with {params}", file=sys.stderr)
        return EXIT_RECOVERY_MISMATCH
    return 0


def cmd_compare(args) -> int:
    S1, S2 = _monoid(args.first), _monoid(args.second)
    verdict = ElasticityProfiles.compare_profiles(S1, S2, args.tmax)
    if verdict.outcome is Outcome.NOT_EQUAL:
        print(f"NOT_EQUAL witness={Utils.format_rational(verdict.witness)}")
    elif verdict.outcome is Outcome.UNKNOWN:
        print(f"UNKNOWN bound={verdict.checked_bound}")
    else:
        print("EQUAL")

    P1, P2 = MonoidCore.detect_arithmetical(S1), MonoidCore.detect_arithmetical(S2)
    if P1 is not None and P2 is not None:
        equal = Arithmetical.elasticity_sets_equal_arithmetical(P1, P2)
        print(f"arithmetical criterion: {'EQUAL' if equal else 'NOT_EQUAL'}", file=sys.stderr)
        if verdict.outcome is not Outcome.UNKNOWN and equal != (verdict.outcome is Outcome.EQUAL):
            print(f"❌ Profile verdict {verdict.outcome.value} contradicts the arithmetical criterion", file=sys.stderr)
            return EXIT_FAILURE
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    for result in results:
        if result.passed:
            print(f"PASS {result.suite}/{result.name}")
        else:
            print(f"FAIL {result.suite}/{result.name}: {result.detail}")
    failed = sum(not r.passed for r in results)
    logger.info(f"📊 {len(results) - failed}/{len(results)} checks passed")
    return EXIT_FAILURE if failed else 0


def cmd_profile(args) -> int:
    S = _monoid(args.generators)
    profile = ElasticityProfiles.build_profile(S)
    with open_output(args.output) as stream:
        write_json(ElasticityProfiles.to_json_dict(profile), stream)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="app.py", description="Length and elasticity invariants of numerical monoids.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_range(p):
        p.add_argument("--from", dest="lo", type=int, default=None, help="first n (default 0)")
        p.add_argument("--to", dest="hi", type=int, default=None, help="last n (default base + 10*period)")
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p = sub.add_parser("stats", help="CSV of max/min length and elasticity per element")
    p.add_argument("generators", help="comma-separated generators, e.g. 7,12,17,22")
    add_range(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("plot", help="SVG scatter of elasticity or lengths")
    p.add_argument("generators")
    p.add_argument("--kind", choices=["rho", "maxlen", "minlen"], default="rho")
    p.add_argument("--against", default=None, help="second monoid; elements whose elasticity it lacks are drawn in red")
    add_range(p)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("recover", help="recover d and a/k of an arithmetical monoid from its elasticities")
    p.add_argument("generators")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("compare", help="compare the elasticity sets of two monoids")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--tmax", type=int, default=config.DEFAULT_T_MAX)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", choices=["core", "arith", "profile", "all"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("profile", help="JSON elasticity profile")
    p.add_argument("generators")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None) -> int:
    """Main function for running the command line tool."""
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MonoidError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except OSError as e:
        print(f"❌ Could not write output: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == '__main__':
    sys.exit(main())
