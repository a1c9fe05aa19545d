"""Random game generators shared by the test modules."""

import random

from latticegames import core
from latticegames.errors import InvalidRuleSet


def axis_move(rng, d, i, low=-1, high=1):
    """A move pointing back along axis i: positive at i, nonpositive elsewhere."""
    v = [rng.randint(low, 0) for _ in range(d)]
    v[i] = rng.randint(1, high)
    return tuple(v)


def random_moves(rng, d, k, low=-2, high=2, squarefree=False, heap=False):
    """Moves covering every axis; ``heap`` moves have a single entry 1 and the rest <= 0."""
    top = 1 if squarefree or heap else high
    moves = [axis_move(rng, d, i, low, top) for i in range(d)]
    while len(moves) < k:
        v = [rng.randint(low, 0 if heap else top) for _ in range(d)]
        if squarefree or heap:
            v[rng.randrange(d)] = 1
        moves.append(tuple(v))
    return list(dict.fromkeys(m for m in moves if any(m)))


def random_game(
    rng, d_max=3, k_max=6, convention=core.NORMAL, squarefree=False, heap=False, tries=200
):
    """A valid game with d <= d_max and at most k_max moves."""
    for _ in range(tries):
        d = rng.randint(1, d_max)
        k = rng.randint(d, max(d, k_max))
        moves = random_moves(rng, d, k, squarefree=squarefree, heap=heap)
        rng.shuffle(moves)
        try:
            return core.make_game(d, moves, convention=convention)
        except InvalidRuleSet:
            continue
    raise RuntimeError("no valid rule set found")


def random_games(seed, n, **kw):
    rng = random.Random(seed)
    return [random_game(rng, **kw) for _ in range(n)]


def random_tree(rng, n, p=0.5):
    """Random DAG on n nodes, edges only from lower to higher index."""
    return [[j for j in range(i + 1, n) if rng.random() < p] for i in range(n)]
