"""Exception types shared across the package.

Plain ``ValueError`` is used for out-of-domain arguments (bad bit index,
malformed mask, and so on). The classes here mark conditions the CLI maps
to distinct exit codes.
"""

from __future__ import annotations


class RayOracleError(Exception):
    """Base class for package-specific failures."""


class ParseError(RayOracleError):
    """Input text (scene file, PLA text) could not be parsed."""


class ValidationError(RayOracleError):
    """Parsed input violates a semantic constraint."""


class CapacityError(RayOracleError):
    """A size limit was exceeded (arity cap, wire cap, missing ancillas)."""


class InconsistencyError(RayOracleError):
    """Internal cross-check failed, e.g. primes do not cover the on-set."""


class VerificationError(RayOracleError):
    """A synthesized circuit does not implement its scene's lookup table."""
