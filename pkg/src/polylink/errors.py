"""Structured exception types shared across the package."""


class PolylinkError(Exception):
    """Base class for all errors raised by this package."""


class EulerViolation(PolylinkError):
    """Rotation data does not describe a connected sphere embedding."""


class LoopEdge(PolylinkError):
    """Both darts of an edge are attached to the same vertex."""


class DanglingDart(PolylinkError):
    """Dart set, twin involution and rotations are inconsistent."""


class OddVertex(PolylinkError):
    """A checkerboard face coloring requires all vertex degrees even."""


class UnknownName(PolylinkError):
    """Unrecognised polytope name."""


class BadParameter(PolylinkError):
    """Parameter out of range for a named polytope family."""


class NotSimplePolytope(PolylinkError):
    """Operation requires a simple (3-valent) polytopal graph."""


class NotFourValent(PolylinkError):
    """Operation requires a 4-valent polytopal graph."""


class NotApplicable(PolylinkError):
    """Edge-twist preconditions not met for the given face and edges."""


class ResultNotIdealRA(PolylinkError):
    """Edge-twist self-check failed: result is not ideal right-angled."""


class NotConjugated(PolylinkError):
    """Flip requested at a vertex pair that is not conjugated."""


class TooLarge(PolylinkError):
    """Search space exceeds the configured enumeration cap."""


class WrongValenceProfile(PolylinkError):
    """Graph does not have the 3-valent/4-valent profile required here."""


class DegenerateContraction(PolylinkError):
    """Contraction would produce a bigon (multi-edge) or a loop."""


class OverlappingQuadrangles(PolylinkError):
    """Quadrangle shrinking requires pairwise vertex-disjoint quadrangles."""


class NotHub(PolylinkError):
    """Vertex cut-off must happen at a hub of the structure."""


class BadFace(PolylinkError):
    """The chosen face is not incident to the given vertex."""


class KindMismatch(PolylinkError):
    """Structure does not match the requested coloring kind."""


class NonTreeComponent(PolylinkError):
    """Face adjacency inside a disk component is not a tree (structure bug)."""


class InvalidColoring(PolylinkError):
    """Vector coloring fails the per-vertex manifold condition."""


class WrongKind(PolylinkError):
    """Link classification called with a structure of the wrong kind."""
