"""Exception hierarchy shared by all modules."""


class JigsawError(Exception):
    pass


class ZeroMatrix(JigsawError, ValueError):
    pass


class DeterminantMismatch(JigsawError, ValueError):
    pass


class IdentityElement(JigsawError, ValueError):
    pass


class NotBalanced(JigsawError, ValueError):
    pass


class InvalidJigsaw(JigsawError, ValueError):
    """Base for structural problems with a gluing specification."""


class NotATree(InvalidJigsaw):
    pass


class DuplicateSideUse(InvalidJigsaw):
    pass


class MatchFailure(InvalidJigsaw):
    def __init__(self, tile_a, side_a, tile_b, side_b, detail=""):
        self.gluing = (tile_a, side_a, tile_b, side_b)
        msg = "sides do not match in gluing [%d, %d, %d, %d]" % self.gluing
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class FixesInfinity(JigsawError, ValueError):
    pass


class NoStripLift(JigsawError, RuntimeError):
    pass


class FamilyOutOfScope(JigsawError, ValueError):
    pass


class SpecParseError(JigsawError, ValueError):
    pass
