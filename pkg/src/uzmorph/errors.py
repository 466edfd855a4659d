"""Exception types raised across the package.

Two broad families: input errors (a single token or file row is bad) and
lexicon errors (the loaded data itself is inconsistent).  The CLI maps the
former to exit code 1 and the latter to exit code 2.
"""


class UzMorphError(Exception):
    """Base class for all errors raised by this package."""

    #: short machine-readable code, defaults to the class name
    @property
    def code(self) -> str:
        return type(self).__name__


class InputError(UzMorphError):
    """A token, argument or data row supplied by the caller is invalid."""


class LexiconError(UzMorphError):
    """The lexicon data directory is malformed or internally inconsistent."""


# --- alphabet / normalization ---

class EmptyAfterNormalization(InputError):
    """Token is empty once separators are stripped."""


class NonAlphabetGrapheme(InputError):
    """Token contains a character outside the declared alphabet."""


# --- lexicon loading ---

class MalformedPattern(LexiconError):
    """Ending pattern violates the pattern grammar."""


class ConflictingConditions(LexiconError):
    """Allomorph expansion left no variant with a satisfiable condition."""


class DuplicateEnding(LexiconError):
    """Two lexicon rows share the same (pattern, pos) pair."""


class SchemaError(LexiconError):
    """A data file row does not fit its declared column layout."""


class InvariantViolation(LexiconError):
    """Loaded data breaks a structural invariant (bad cross-references etc.)."""


# --- analysis ---

class EmptyCandidateList(UzMorphError):
    """Ranking was asked to order an empty candidate list."""


# --- evaluation ---

class NotAPrefix(InputError):
    """Predicted stem is not a prefix of the token under evaluation."""


class EmptyGoldFile(InputError):
    """Gold standard file contains no usable rows."""


class MalformedGoldRow(InputError):
    """Gold standard row is not token<TAB>stem<TAB>lemma or breaks invariants."""


class CorpusTooSmall(InputError):
    """Benchmark corpus has fewer tokens than the required minimum."""
