"""Exception hierarchy.

Every error carries a distinct ``exit_code`` used by the command line front
end, and a short ``reason`` slug for machine-readable error lines.
"""


class LatticeGameError(Exception):
    exit_code = 10
    reason = "error"


class GameFormatError(LatticeGameError):
    """Malformed game, tree, or stratification file."""

    exit_code = 3
    reason = "format"


class DimensionMismatch(LatticeGameError):
    exit_code = 11
    reason = "dimension-mismatch"


class InvalidRuleSet(LatticeGameError):
    exit_code = 12
    reason = "invalid-ruleset"


class ZeroMove(InvalidRuleSet):
    exit_code = 13
    reason = "zero-move"


class DuplicateMove(InvalidRuleSet):
    exit_code = 14
    reason = "duplicate-move"


class PositivityInfeasible(InvalidRuleSet):
    """No linear functional is positive on the orthant and on every move.

    ``weights`` maps each move in the infeasible subsystem to a nonnegative
    rational multiplier; the weighted sum of those moves is componentwise
    nonpositive, which rules out any positivity functional.
    """

    exit_code = 15
    reason = "positivity-infeasible"

    def __init__(self, weights):
        self.weights = dict(weights)
        self.subsystem = sorted(self.weights)
        super().__init__(
            "no positivity functional; infeasible subsystem %s" % (self.subsystem,)
        )


class TangentConeViolation(InvalidRuleSet):
    """No move points back into the orthant along coordinate axis ``coordinate``.

    ``coordinate`` is 1-based.
    """

    exit_code = 16
    reason = "tangent-cone"

    def __init__(self, coordinate):
        self.coordinate = coordinate
        super().__init__("tangent cone axiom fails on coordinate %d" % coordinate)


class NotAnOrderIdeal(LatticeGameError):
    exit_code = 17
    reason = "not-order-ideal"

    def __init__(self, position):
        self.position = tuple(position)
        super().__init__(
            "defeated set is not an order ideal: %s lies below it but outside"
            % (self.position,)
        )


class NotAnNPosition(LatticeGameError):
    exit_code = 20
    reason = "not-n-position"


class BoundTooSmall(LatticeGameError):
    exit_code = 21
    reason = "bound-too-small"


class ZeroInGamma2(LatticeGameError):
    exit_code = 30
    reason = "zero-in-gamma2"


class NotSquarefree(LatticeGameError):
    exit_code = 31
    reason = "not-squarefree"


class NotNormalPlay(LatticeGameError):
    exit_code = 32
    reason = "not-normal-play"


class ZeroDenominatorVector(LatticeGameError):
    exit_code = 40
    reason = "zero-denominator"


class DependentGenerators(LatticeGameError):
    exit_code = 41
    reason = "dependent-generators"

    def __init__(self, part):
        self.part = part
        super().__init__("generators of part %d are linearly dependent" % part)


class OverlappingTranslates(LatticeGameError):
    exit_code = 42
    reason = "overlapping-translates"

    def __init__(self, part, f, g, witness):
        self.part, self.f, self.g, self.witness = part, tuple(f), tuple(g), tuple(witness)
        super().__init__(
            "part %d: translates of %s and %s overlap at %s"
            % (part, self.f, self.g, self.witness)
        )


class NoStrategyConstruction(LatticeGameError):
    exit_code = 43
    reason = "no-strategy-construction"


class CyclicOptionRelation(LatticeGameError):
    exit_code = 50
    reason = "cyclic-options"


class EmptyTree(LatticeGameError):
    exit_code = 51
    reason = "empty-tree"


class ClosedFormMismatch(LatticeGameError):
    """The mod-2 closed form disagrees with the solver somewhere in the region."""

    exit_code = 33
    reason = "closed-form-mismatch"


class StratificationMismatch(LatticeGameError):
    exit_code = 44
    reason = "stratification-mismatch"
