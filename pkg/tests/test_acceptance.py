"""Acceptance criteria, one test each.

Every test records a single ``criterion N: PASS|FAIL ...`` line; the lines
are printed as they happen and again in the terminal summary.
"""

import io
import random
import time

from conftest import ACCEPTANCE_RESULTS, GAME_FIXTURES, fixture_game, fixture_strat
from gen import random_game, random_games

from latticegames import core, data_path
from latticegames.cli import main
from latticegames.encode import encode, grundy_oracle, lift_position, load_tree
from latticegames.errors import TangentConeViolation
from latticegames.genfun import (
    AffineStratification,
    RationalStrategy,
    Term,
    expand,
    stratification_mismatches,
    verify_stratification,
)
from latticegames.normal import membership_closed_form, solve_squarefree_normal
from latticegames.solver import check_solution, congruent_within, solve, solve_naive


def report(n, ok, detail):
    line = "criterion %d: %s %s" % (n, "PASS" if ok else "FAIL", detail)
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    assert ok, line


def tree_game(name, convention=core.NORMAL):
    tree = load_tree(data_path(name + ".json"))
    return tree, encode(tree, convention=convention)


def test_criterion_1_nim2_normal_strategy():
    start = time.perf_counter()
    out = io.StringIO()
    code = main(["pattern", str(data_path("nim2_normal.json"))], out=out)
    pattern_line = out.getvalue().splitlines()[0]
    game = fixture_game("nim2_normal")
    strategy = RationalStrategy(2, [Term.make([((0, 0), 1)], [(2, 0), (0, 2)])])
    assert str(strategy) == "1 / ((1 - t1^2)(1 - t2^2))"
    series = expand(strategy, (1, 2), 30)
    P = solve(game, 30).p_positions
    elapsed = time.perf_counter() - start
    ok = (
        code == 0
        and pattern_line == "P0 = {(0,0)}; P = P0 + 2N^d"
        and series == {p: 1 for p in P}
        and elapsed < 1
    )
    report(1, ok, "%s; %d P-positions, expansion equal: %s; %.3fs" % (
        pattern_line, len(P), series == {p: 1 for p in P}, elapsed))


def test_criterion_2_nim2_misere_strategy_and_stratification():
    start = time.perf_counter()
    game = fixture_game("nim2_misere")
    strategy = RationalStrategy(
        2,
        [Term.make([((1, 0), 1)], [(2, 0)]), Term.make([((0, 2), 1)], [(2, 0), (0, 2)])],
    )
    strat = AffineStratification(2, [([(1, 0)], [(2, 0)]), ([(0, 2)], [(2, 0), (0, 2)])])
    sol = solve(game, 30)
    series_ok = expand(strategy, (1, 2), 30) == {p: 1 for p in sol.p_positions}
    verified = verify_stratification(strat, sol)
    stored = verify_stratification(fixture_strat("nim2_misere_stratification"), sol)
    elapsed = time.perf_counter() - start
    ok = series_ok and verified is None and stored is None and elapsed < 1
    report(2, ok, "%s: expansion equal %s, stratification %s; %.3fs" % (
        strategy, series_ok, "ok" if verified is None else verified, elapsed))


def test_criterion_3_d5_misere_stratification():
    start = time.perf_counter()
    game = fixture_game("misere_d5")
    assert game.rules.ell == (1, 2, 3, 4, 5) and game.defeated == {(0,) * 5}
    strat = fixture_strat("misere_d5_stratification")
    sol = solve(game, 60)
    bad = stratification_mismatches(strat, sol)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    if bad:
        first = bad[0]
        detail = "%d positions, %d P; %d mismatches, first %s count %d expected %d; %.1fs" % (
            len(sol.region.positions()), len(sol.p_positions), len(bad),
            first.position, first.count, first.expected, elapsed)
    else:
        detail = "%d positions, %d P, stratification ok; %.1fs" % (
            len(sol.region.positions()), len(sol.p_positions), elapsed)
    report(3, ok, detail)


def test_criterion_4_solver_matches_naive_recursion():
    rng = random.Random(4)
    total = agree = 0
    for convention in (core.NORMAL, core.MISERE):
        for game in random_games(400 + len(convention), 30, d_max=3, k_max=6, convention=convention):
            assert game.d <= 3 and len(game.rules.moves) <= 6
            L = rng.randint(0, 15)
            total += 1
            agree += solve(game, L) == solve_naive(game, L)
    report(4, total >= 50 and agree == total, "%d/%d random games agree (both conventions)" % (agree, total))


def test_criterion_5_squarefree_closed_form():
    rng = random.Random(5)
    games = [random_game(rng, d_max=4, squarefree=True) for _ in range(30)]
    failures = []
    for game in games:
        assert game.rules.squarefree and game.convention == core.NORMAL
        # the region must reach the unit cube for the comparison to see all of P0
        L = max(10, game.rules.level((1,) * game.d))
        sol = solve(game, L)
        p0 = solve_squarefree_normal(game)
        for p in sol.region.positions():
            if membership_closed_form(p0, p) is not sol.classify(p):
                failures.append((game.rules.moves, p))
                break
    detail = "%d/%d random squarefree normal-play games agree" % (len(games) - len(failures), len(games))
    if failures:
        detail += "; first disagreement: moves %s at %s" % failures[0]
    report(5, not failures, detail)


def test_criterion_6_solution_invariants_on_fixtures():
    solutions = [solve(fixture_game(name), 30) for name in GAME_FIXTURES]
    for name in ("star2_tree", "star3_tree"):
        for convention in (core.NORMAL, core.MISERE):
            solutions.append(solve(tree_game(name, convention)[1], 20))
    problems = [pr for sol in solutions for pr in check_solution(sol)]
    report(6, not problems, "%d solutions checked, %d violations" % (len(solutions), len(problems)))


def test_criterion_7_encoded_trees_match_grundy():
    details = []
    ok = True
    for name in ("star2_tree", "star3_tree"):
        tree, game = tree_game(name)
        sol = solve(game, 20)
        zero = {p for p in sol.region.positions() if grundy_oracle(tree, lift_position(tree, p)) == 0}
        ok &= zero == sol.p_positions
        details.append("%s d=%d %d P" % (name, game.d, len(sol.p_positions)))
    report(7, ok, "; ".join(details))


def test_criterion_8_axioms():
    accepted = [fixture_game(name).rules for name in GAME_FIXTURES]
    accepted += [g.rules for g in random_games(80, 100, d_max=4, k_max=6)]
    uncontained = [r.moves for r in accepted if core.check_cone_containment(r) is not None]

    example = core.parse_game_fields(
        core.loads_json(data_path("no_third_axis_move.json").read_text())
    )
    try:
        core.validate_ruleset(example[1], example[0])
        coordinate = None
    except TangentConeViolation as e:
        coordinate = e.coordinate

    # rule sets accepted by validation but rejected as not squarefree
    rejected = [r.moves for r in accepted if not r.squarefree]
    bad_counterexamples = 0
    for moves in rejected:
        gamma, p = core.squarefree_counterexample(moves)
        M = max(gamma)
        expected = ((M + 1) // 2,) * len(gamma)
        legal_from_p = core.is_nonnegative(core.sub(p, gamma))
        legal_from_2p = core.is_nonnegative(core.sub(core.add(p, p), gamma))
        if p != expected or M < 2 or legal_from_p or not legal_from_2p:
            bad_counterexamples += 1
    samples = len(rejected)
    ok = not uncontained and coordinate == 3 and samples >= 25 and bad_counterexamples == 0
    report(8, ok, "%d accepted sets contained; example rejected at coordinate %s; %d/%d counterexamples valid" % (
        len(accepted) - len(uncontained), coordinate, samples - bad_counterexamples, samples))


def test_criterion_9_twice_anything_is_congruent_to_zero():
    games = [fixture_game("nim2_normal")]
    games += [tree_game(name)[1] for name in ("star2_tree", "star3_tree")]
    checked = failures = 0
    for game in games:
        assert game.rules.squarefree and game.convention == core.NORMAL
        sol = solve(game, 24)
        zero = (0,) * game.d
        for p in sol.region.positions():
            if game.rules.level(p) <= 8:
                checked += 1
                failures += not congruent_within(sol, core.add(p, p), zero, 8)
    report(9, failures == 0, "%d positions sampled over %d fixtures, %d not congruent" % (
        checked, len(games), failures))
