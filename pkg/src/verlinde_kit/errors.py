"""Error taxonomy shared by every module.

Errors are grouped by how the command line reports them: validation
failures exit with code 2, resource caps with 3, malformed input with 4.
"""

from __future__ import annotations


class VerlindeError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class ValidationFailure(VerlindeError):
    """Input is well-formed but mathematically inadmissible."""

    exit_code = 2


class CapError(VerlindeError):
    """A configured resource cap was exceeded."""

    exit_code = 3


class InputError(VerlindeError):
    """Input document malformed (bad schema, unknown ids)."""

    exit_code = 4


class InvalidType(ValidationFailure):
    """Not a valid simple Lie algebra type, e.g. (E, 9)."""


class DimensionMismatch(ValidationFailure):
    """Operands belong to different algebras or have wrong lengths."""


class InfiniteQuotient(ValidationFailure):
    """Sublattice rank below ambient rank; quotient is not finite."""


class MirrorElement(ValidationFailure):
    """Torus element lies in a mirror where the operation is undefined."""


class NotIntermediate(ValidationFailure):
    """Subgroup lattice does not sit between R_ell and the weight lattice."""


class RoundingFailure(ValidationFailure):
    """A quantity asserted to be integral had residue above tolerance."""


class NonIntegerEntry(ValidationFailure):
    """Representation extension produced a non-integer matrix; certifies
    the input is not a valid representation of the fusion ring."""


class NotGraded(ValidationFailure):
    """Operation requires a graded representation."""


class NonIntegral(ValidationFailure):
    """Exponent pairing failed to be an exact integer (convention guard)."""


class NotADE(ValidationFailure):
    """Graph is not a simply-laced Dynkin diagram with bipartite grading."""


class GradeMismatch(ValidationFailure):
    """Quiver grades violate grade(start) + grade(edge) = grade(target)."""


class Unreachable(VerlindeError):
    """Internal error: extension recursion found no derivation order."""

    exit_code = 2


class GroupTooLarge(CapError):
    """Weyl group enumeration exceeds the configured cap."""


class CapExceeded(CapError):
    """Generic configurable cap exceeded (weight systems, kernels)."""


class TorusTooLarge(CapError):
    """|T_ell| exceeds the configured torus cap."""


class SchemaError(InputError):
    """Document does not match the quiver/config JSON schema."""
