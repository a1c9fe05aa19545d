"""Command line front end.

Errors are reported on stderr as one line ``error: <reason>: <message>``
and mapped to the ``exit_code`` of the exception class.
"""

import argparse
from fractions import Fraction
import json
import sys

from . import core, genfun, normal, solver
from .encode import encode, load_tree
from .errors import (
    ClosedFormMismatch,
    DuplicateMove,
    GameFormatError,
    LatticeGameError,
    NoStrategyConstruction,
    NotAnOrderIdeal,
    PositivityInfeasible,
    StratificationMismatch,
    TangentConeViolation,
)


def fmt_vec(v):
    return "(%s)" % ",".join(str(x) for x in v)


def fmt_num(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def parse_position(text):
    text = text.strip().strip("()[]")
    try:
        return tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError:
        raise GameFormatError("position must be comma-separated integers, got %r" % text) from None


def parse_bound(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise GameFormatError("bound must be a nonnegative rational, got %r" % text) from None
    if value < 0:
        raise GameFormatError("bound must be nonnegative, got %s" % text)
    return value


def _read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise GameFormatError("cannot read %s: %s" % (path, e.strerror)) from None
    return core.loads_json(text, str(path))


def _game(path):
    return core.parse_game(_read_json(path))


def _bound(args, game, out):
    if args.bound is None:
        bound = solver.default_bound(game)
        print("bound: %s (default)" % fmt_num(bound), file=out)
        return bound
    return parse_bound(args.bound)


def cmd_validate(args, out):
    d, moves, defeated, convention, ell = core.parse_game_fields(_read_json(args.game))
    moves = core._check_moves(moves, d)
    failures = []

    def report(name, ok, detail=""):
        status = ok if isinstance(ok, str) else "ok" if ok else "FAIL"
        print("%-17s %s%s" % (name + ":", status, " " + detail if detail else ""), file=out)

    if len(set(moves)) != len(moves):
        failures.append(DuplicateMove("duplicate move"))
        report("distinct moves", False)
    else:
        report("distinct moves", True)
    try:
        rules = core.validate_ruleset(list(dict.fromkeys(moves)), d, ell=ell)
        report("positivity", True, "ell=%s" % fmt_vec(fmt_num(x) for x in rules.ell))
    except PositivityInfeasible as e:
        rules = None
        failures.append(e)
        report("positivity", False, "infeasible subsystem " + " ".join(fmt_vec(m) for m in e.subsystem))
    except TangentConeViolation:
        rules = None
        report("positivity", True)
    bad = core.check_tangent_cone(moves, d)
    if bad is None:
        report("tangent cone", True)
    else:
        failures.append(TangentConeViolation(bad))
        report("tangent cone", False, "coordinate %d" % bad)
    if rules is not None:
        if convention == core.MISERE:
            defeated = [(0,) * d]
        game = core.LatticeGame(rules, frozenset(tuple(p) for p in defeated or ()))
        witness = core.check_order_ideal(game)
        if witness is None:
            report("order ideal", True)
        else:
            failures.append(NotAnOrderIdeal(witness))
            report("order ideal", False, "witness %s" % fmt_vec(witness))
        contained = core.check_cone_containment(rules)
        report("cone containment", contained is None, "" if contained is None else "coordinate %d" % contained)
    else:
        report("order ideal", "skipped")
        report("cone containment", "skipped")
    print("squarefree:       %s" % str(core.is_squarefree(moves)).lower(), file=out)
    print("saturated:        %s" % str(core.is_saturated(moves, d)).lower(), file=out)
    print("valid:            %s" % str(not failures).lower(), file=out)
    if failures:
        raise failures[0]
    return 0


def cmd_solve(args, out):
    game = _game(args.game)
    bound = _bound(args, game, out if not args.json else sys.stderr)
    sol = solver.solve(game, bound)
    if args.json:
        out.write(sol.to_jsonl())
        return 0
    print("positions: %d  P: %d  N: %d" % (len(sol), len(sol.p_positions), len(sol.witness)), file=out)
    for p in sorted(sol.p_positions):
        print("P %s" % fmt_vec(p), file=out)
    return 0


def _closed_form(game, out):
    p0 = normal.solve_squarefree_normal(game)
    # the check region must cover the unit cube so a wrong P0 is always caught
    bound = max(solver.default_bound(game), game.rules.level((1,) * game.d))
    sol = solver.solve(game, bound)
    bad = normal.closed_form_mismatch(game, p0, sol)
    if bad is not None:
        exact = frozenset(p for p in sol.p_positions if max(p, default=0) <= 1)
        raise ClosedFormMismatch(
            "pattern %s disagrees with the solver at %s (solver says %s); "
            "solver's P0 is %s" % (p0, fmt_vec(bad), sol.classify(bad), normal.Pattern(game.d, exact))
        )
    return p0, bound


def cmd_pattern(args, out):
    game = _game(args.game)
    p0, bound = _closed_form(game, out)
    print("P0 = %s; P = P0 + 2N^d" % p0, file=out)
    print("checked against solver for ell <= %s" % fmt_num(bound), file=out)
    return 0


def cmd_genfun(args, out):
    game = _game(args.game)
    if game.convention != core.NORMAL or not game.rules.squarefree:
        raise NoStrategyConstruction(
            "rational strategies are only constructed for squarefree normal-play games"
        )
    bound = _bound(args, game, out if not args.json else sys.stderr)
    p0, _ = _closed_form(game, out)
    strategy = genfun.strategy_from_pattern(p0)
    sol = solver.solve(game, bound)
    series = genfun.expand(strategy, game.rules.ell, bound)
    if series != {p: 1 for p in sol.p_positions}:
        raise ClosedFormMismatch("strategy expansion differs from the solver")
    if args.json:
        print(genfun.dumps_strategy(strategy), file=out)
    else:
        print(strategy, file=out)
        print("expansion equals the P-indicator for ell <= %s" % fmt_num(bound), file=out)
    return 0


def cmd_verify_strat(args, out):
    game = _game(args.game)
    strat = genfun.parse_stratification(_read_json(args.strat))
    bound = _bound(args, game, out)
    sol = solver.solve(game, bound)
    bad = genfun.stratification_mismatches(strat, sol)
    if not bad:
        print("ok: %d positions checked, %d P-positions each covered once" % (
            len(sol.region.positions()), len(sol.p_positions)), file=out)
        return 0
    first = bad[0]
    print("failure at %s: membership count %d, expected %d" % (
        fmt_vec(first.position), first.count, first.expected), file=out)
    print("mismatched positions: %d" % len(bad), file=out)
    raise StratificationMismatch("%d positions mismatched, first %s" % (len(bad), fmt_vec(first.position)))


def cmd_best_move(args, out):
    game = _game(args.game)
    bound = _bound(args, game, out)
    p = parse_position(args.pos)
    sol = solver.solve(game, bound)
    g = solver.best_move(sol, p)
    print("move %s to %s" % (fmt_vec(g), fmt_vec(core.sub(p, g))), file=out)
    return 0


def cmd_congruent(args, out):
    game = _game(args.game)
    bound = _bound(args, game, out)
    p, q = parse_position(args.p), parse_position(args.q)
    for v in (p, q):
        if not game.on_board(v):
            raise GameFormatError("%s is not a board position" % fmt_vec(v))
    need = max(game.rules.level(p), game.rules.level(q)) + bound
    sol = solver.solve(game, need)
    print(str(solver.congruent_within(sol, p, q, bound)).lower(), file=out)
    return 0


def cmd_encode_tree(args, out):
    tree = load_tree(args.tree)
    game = encode(tree, convention=args.convention, dedupe=args.dedupe)
    print(json.dumps(core.game_to_json(game)), file=out)
    return 0


def cmd_play(args, out, stdin=None):
    stdin = stdin or sys.stdin
    game = _game(args.game)
    bound = _bound(args, game, out)
    sol = solver.solve(game, bound)
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        if line in ("q", "quit", "exit"):
            break
        try:
            p = parse_position(line)
        except GameFormatError as e:
            print("error: %s" % e, file=out)
            continue
        outcome = sol.classify(p)
        if outcome is solver.Outcome.N:
            g = sol.witness[p]
            print("%s N move %s to %s" % (fmt_vec(p), fmt_vec(g), fmt_vec(core.sub(p, g))), file=out)
        else:
            print("%s %s" % (fmt_vec(p), outcome), file=out)
        out.flush()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="latticegames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def game_cmd(name, func, bound=True, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("game", help="game definition JSON file")
        if bound:
            p.add_argument("--bound", "-L", help="region bound on ell (default 10 * max ell(move))")
        p.set_defaults(func=func)
        return p

    game_cmd("validate", cmd_validate, bound=False, help="check the rule set and board axioms")
    p = game_cmd("solve", cmd_solve, help="classify every position with ell <= L")
    p.add_argument("--json", action="store_true", help="JSON lines, one record per position")
    game_cmd("pattern", cmd_pattern, bound=False, help="mod-2 pattern of a squarefree normal-play game")
    p = game_cmd("genfun", cmd_genfun, help="rational strategy of a squarefree normal-play game")
    p.add_argument("--json", action="store_true")
    p = game_cmd("verify-strat", cmd_verify_strat, help="check an affine stratification")
    p.add_argument("--strat", required=True, help="stratification JSON file")
    p = game_cmd("best-move", cmd_best_move, help="a winning move from an N-position")
    p.add_argument("--pos", required=True, help='position as "a,b,..."')
    p = game_cmd("congruent", cmd_congruent, help="bounded congruence test")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p = sub.add_parser("encode-tree", help="encode a finite game tree as a lattice game")
    p.add_argument("tree", help='tree JSON file {"options": [[...], ...]}')
    p.add_argument("--convention", choices=[core.NORMAL, core.MISERE], default=core.NORMAL)
    p.add_argument("--dedupe", action="store_true", help="merge isomorphic followers first")
    p.set_defaults(func=cmd_encode_tree)
    game_cmd("play", cmd_play, help="read positions from stdin, print class and winning move")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except LatticeGameError as e:
        msg = " ".join(str(e).split())
        print("error: %s: %s" % (e.reason, msg), file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
