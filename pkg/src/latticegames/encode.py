"""Encode the closure of a finite impartial game as a lattice game on N^d.

Coordinate i counts copies of follower G_i in a disjunctive sum, and a move
G_i -> G_j becomes the vector e_i - e_j.  Followers without options are
dropped from the coordinates (a copy of *0 changes nothing), so moving to
one of them becomes e_i; otherwise their axis would have no legal move.
"""

from dataclasses import dataclass

from .core import MISERE, NORMAL, loads_json, make_game
from .errors import CyclicOptionRelation, EmptyTree, GameFormatError


@dataclass(frozen=True)
class GameTree:
    """Node 0 is the root game; ``options[i]`` lists the options of node i."""

    options: tuple

    def __post_init__(self):
        opts = tuple(tuple(sorted(set(o))) for o in self.options)
        n = len(opts)
        if n == 0:
            raise EmptyTree("a game tree needs at least the root node")
        for i, o in enumerate(opts):
            for j in o:
                if type(j) is not int or not 0 <= j < n:
                    raise GameFormatError("node %d has option %r outside 0..%d" % (i, j, n - 1))
        object.__setattr__(self, "options", opts)

    def __len__(self):
        return len(self.options)


def parse_tree(obj):
    if not isinstance(obj, dict) or not isinstance(obj.get("options"), list):
        raise GameFormatError("tree definition needs an 'options' list")
    for o in obj["options"]:
        if not isinstance(o, list):
            raise GameFormatError("each node's options must be a list of indices")
    return GameTree(tuple(tuple(o) for o in obj["options"]))


def load_tree(path):
    with open(path) as fh:
        return parse_tree(loads_json(fh.read(), str(path)))


def _topological(tree):
    # children before parents
    state = [0] * len(tree)
    order = []
    for start in range(len(tree)):
        if state[start]:
            continue
        stack = [(start, iter(tree.options[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            for j in it:
                if state[j] == 1:
                    raise CyclicOptionRelation("node %d reaches itself through its options" % j)
                if state[j] == 0:
                    state[j] = 1
                    stack.append((j, iter(tree.options[j])))
                    break
            else:
                stack.pop()
                state[node] = 2
                order.append(node)
    return order


def birthdays(tree):
    """Length of the longest chain of options below each node."""
    b = [0] * len(tree)
    for i in _topological(tree):
        if tree.options[i]:
            b[i] = 1 + max(b[j] for j in tree.options[i])
    return b


def grundy_values(tree):
    g = [0] * len(tree)
    for i in _topological(tree):
        seen = {g[j] for j in tree.options[i]}
        m = 0
        while m in seen:
            m += 1
        g[i] = m
    return g


def grundy_oracle(tree, position):
    """Nim value of the sum with ``position[i]`` copies of node i."""
    if len(position) != len(tree):
        raise GameFormatError("position has %d entries, tree has %d nodes" % (len(position), len(tree)))
    g = grundy_values(tree)
    out = 0
    for i, k in enumerate(position):
        if k % 2:
            out ^= g[i]
    return out


def followers(tree):
    """Nodes reachable from the root, root included, in index order."""
    seen = {0}
    stack = [0]
    while stack:
        for j in tree.options[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return sorted(seen)


def deduplicate(tree):
    """Merge followers with identical option structure.

    Returns the reduced tree and, for each old node, its new index (or None
    when the node is not a follower of the root).
    """
    cls = {}
    for i in _topological(tree):
        cls[i] = frozenset(cls[j] for j in tree.options[i])
    reps = {}
    for i in followers(tree):
        reps.setdefault(cls[i], i)
    kept = sorted(reps.values())
    new_index = {old: k for k, old in enumerate(kept)}
    reachable = set(followers(tree))
    mapping = [new_index[reps[cls[i]]] if i in reachable else None for i in range(len(tree))]
    options = [tuple(sorted({new_index[reps[cls[j]]] for j in tree.options[old]})) for old in kept]
    return GameTree(tuple(options)), mapping


def coordinates(tree):
    """Tree nodes that become coordinates: followers that have options."""
    _topological(tree)
    return [i for i in followers(tree) if tree.options[i]]


def lift_position(tree, p):
    """Turn a position of the encoded game into copy counts per tree node."""
    out = [0] * len(tree)
    for k, i in enumerate(coordinates(tree)):
        out[i] = p[k]
    return tuple(out)


def encode(tree, convention=NORMAL, dedupe=False):
    """The lattice game whose positions are sums of followers of the root."""
    if convention not in (NORMAL, MISERE):
        raise GameFormatError("convention must be 'normal' or 'misere'")
    if dedupe:
        tree, _ = deduplicate(tree)
    b = birthdays(tree)
    coords = coordinates(tree)
    index = {node: k for k, node in enumerate(coords)}
    d = len(coords)
    moves = []
    for i in coords:
        for j in tree.options[i]:
            v = [0] * d
            v[index[i]] = 1
            if j in index:
                v[index[j]] = -1
            v = tuple(v)
            if v not in moves:
                moves.append(v)
    ell = [b[i] + 1 for i in coords]
    return make_game(d, moves, convention=convention, ell=ell)
