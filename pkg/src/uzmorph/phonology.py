"""Junction checks and lemma restoration at the stem/ending boundary.

Rules come from ``rules.tsv`` and run in two directions.  Junction rules
describe sound changes that happen when an ending is attached (stem-final
k voices to g before a vowel-initial possessive: yurak + i -> yuragi), so a
surface that still shows the unchanged junction is rejected during analysis.
LemmaRestore rules undo those changes on the stripped stem (yurag + i ->
lemma yurak).  Whole-word lemma exceptions always win over rules.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from .alphabet import DEFAULT_ALPHABET, AlphabetSpec, graphemes
from .errors import InvariantViolation, SchemaError
from .lexicon import ANY, Condition, EndingVariant, LexiconBundle, parse_condition


class Direction(Enum):
    JUNCTION = "Junction"
    LEMMA_RESTORE = "LemmaRestore"


class RejectReason(Enum):
    CONDITION_FAILED = "ConditionFailed"
    RULE_FORBIDDEN = "RuleForbidden"
    SHORT_STEM_UNKNOWN = "ShortStemUnknown"


@dataclass(frozen=True)
class PhonRule:
    id: str
    direction: Direction
    stem_final: Condition
    ending_initial: Optional[Condition]  # None matches any ending
    rewrite: str
    note: str = ""

    def matches(self, stem_final_grapheme: str, ending_initial_grapheme: str,
                spec: AlphabetSpec) -> bool:
        if not self.stem_final.holds(stem_final_grapheme, spec):
            return False
        if self.ending_initial is None:
            return True
        return self.ending_initial.holds(ending_initial_grapheme, spec)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple  # of PhonRule, file order

    def __post_init__(self):
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise InvariantViolation("duplicate rule ids in rule set")

    @property
    def junction(self) -> tuple:
        return tuple(r for r in self.rules if r.direction is Direction.JUNCTION)

    @property
    def restore(self) -> tuple:
        return tuple(r for r in self.rules if r.direction is Direction.LEMMA_RESTORE)


EMPTY_RULESET = RuleSet(rules=())


def _parse_rule_condition(text: str, spec: AlphabetSpec) -> Optional[Condition]:
    """Rule columns accept *, V, C, in:/not: sets, or a bare grapheme list."""
    text = text.strip()
    if not text:
        return None
    if text in ("*", "V", "C") or ":" in text:
        return parse_condition(text, spec)
    return parse_condition("in:" + text, spec)


def load_rules(path, spec: AlphabetSpec = DEFAULT_ALPHABET) -> RuleSet:
    """Read rules.tsv: id, direction, stem_final, ending_initial, rewrite[, note]."""
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"missing data file: {path}")
    rules = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) not in (5, 6):
            raise SchemaError(f"rules.tsv:{lineno}: expected 5 or 6 columns")
        rule_id, direction_text, stem_final, ending_initial, rewrite = fields[:5]
        note = fields[5] if len(fields) == 6 else ""
        try:
            direction = Direction(direction_text)
        except ValueError:
            raise SchemaError(f"rules.tsv:{lineno}: unknown direction {direction_text!r}")
        stem_cond = _parse_rule_condition(stem_final, spec)
        if stem_cond is None:
            raise SchemaError(f"rules.tsv:{lineno}: stem_final condition required")
        if rewrite:
            graphemes(rewrite, spec)  # must be valid alphabet content
        rules.append(PhonRule(
            id=rule_id,
            direction=direction,
            stem_final=stem_cond,
            ending_initial=_parse_rule_condition(ending_initial, spec),
            rewrite=rewrite,
            note=note,
        ))
    return RuleSet(rules=tuple(rules))


@dataclass(frozen=True)
class AffixationCheck:
    ok: bool
    reason: Optional[RejectReason] = None

    def __bool__(self):
        return self.ok


_ACCEPT = AffixationCheck(True)


def check_affixation(stem: str, variant: EndingVariant, bundle: LexiconBundle,
                     rules: RuleSet, spec: AlphabetSpec = DEFAULT_ALPHABET) -> AffixationCheck:
    """May ``variant`` attach to ``stem``?

    Checks, in order: the variant's stem-final condition, the Junction rules
    (a matching rule means the unchanged junction cannot occur in real text),
    and the short-stem gate (stems of one or two graphemes must be listed in
    the short-stems set to count as words at all).
    """
    stem_gs = graphemes(stem, spec)
    final = stem_gs[-1]
    if not variant.condition.holds(final, spec):
        return AffixationCheck(False, RejectReason.CONDITION_FAILED)
    ending_initial = graphemes(variant.surface, spec)[0]
    for rule in rules.junction:
        if rule.matches(final, ending_initial, spec):
            return AffixationCheck(False, RejectReason.RULE_FORBIDDEN)
    if len(stem_gs) <= 2 and stem not in bundle.short_stems:
        return AffixationCheck(False, RejectReason.SHORT_STEM_UNKNOWN)
    return _ACCEPT


def restore_lemma(stem: str, variant: EndingVariant, bundle: LexiconBundle,
                  rules: RuleSet, spec: AlphabetSpec = DEFAULT_ALPHABET) -> str:
    """Dictionary form of ``stem`` as split off before ``variant``.

    Whole-word lemma exceptions are consulted first (singl + i -> singil),
    then the first matching LemmaRestore rule rewrites the stem-final
    grapheme (yurag + i -> yurak); with neither, the stem is the lemma.
    """
    word = stem + variant.surface
    hit = bundle.lemma_exceptions.get(word)
    if hit is not None:
        return hit[0]
    stem_gs = graphemes(stem, spec)
    ending_initial = graphemes(variant.surface, spec)[0]
    for rule in rules.restore:
        if rule.matches(stem_gs[-1], ending_initial, spec):
            return stem[:len(stem) - len(stem_gs[-1])] + rule.rewrite
    return stem


def forward_join(lemma: str, variant: EndingVariant, rules: RuleSet,
                 spec: AlphabetSpec = DEFAULT_ALPHABET) -> str:
    """Generate the surface form lemma + variant, applying Junction rewrites.

    The reverse of analysis: yurak + i becomes yuragi.  Used by round-trip
    tests and corpus generation.
    """
    lemma_gs = graphemes(lemma, spec)
    ending_initial = graphemes(variant.surface, spec)[0]
    stem = lemma
    for rule in rules.junction:
        if rule.matches(lemma_gs[-1], ending_initial, spec):
            stem = lemma[:len(lemma) - len(lemma_gs[-1])] + rule.rewrite
            break
    return stem + variant.surface
