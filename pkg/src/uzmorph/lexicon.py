"""Inflectional ending lexicon: patterns, allomorph expansion, suffix index.

The ending inventory lives in ``cse.tsv``.  Each row is one composite ending
(one or more morpheme segments), written as a pattern:

* plain graphemes match themselves: ``lar``, ``dan``
* ``(x)`` is an epenthetic element: present after consonant-final stems,
  absent after vowel-final stems, e.g. ``(i)m``
* ``{a|b|c}`` picks exactly one branch, e.g. the dative ``{ga|ka|qa}``;
  per-branch stem conditions come from the row's optional fourth column

Nesting is not allowed.  A row like ``(i)m`` + ``dan`` expands into the
concrete allomorphs ``imdan`` (consonant-final stems) and ``mdan``
(vowel-final stems); those expanded forms are what the suffix index stores
and what the matcher returns.

Alongside the ending table the bundle carries five auxiliary word lists used
by the analyzer pipeline: exceptional stems, non-affixed words, number
stems, short stems and whole-word lemma exceptions.
"""

import hashlib
import itertools
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from .alphabet import DEFAULT_ALPHABET, AlphabetSpec, graphemes, normalize
from .errors import (
    ConflictingConditions,
    DuplicateEnding,
    InvariantViolation,
    MalformedPattern,
    SchemaError,
)


class POS(Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    NUM = "NUM"
    ADJ = "ADJ"
    PRON = "PRON"
    ADV = "ADV"
    UNK = "UNK"  # analyses only; never a lexicon entry


#: ranking order used by the analyzer's tie-breaks
POS_RANK = {POS.NOUN: 0, POS.VERB: 1, POS.NUM: 2, POS.ADJ: 3, POS.PRON: 4,
            POS.ADV: 5, POS.UNK: 6}

#: closed feature-tag inventory; values per tag are documented in the data README
FEATURE_TAGS = frozenset({
    "Case", "Number", "Person", "Poss", "Tense", "Mood", "Voice",
    "Polarity", "Question", "Cop", "VerbForm", "Degree",
})


def parse_pos(text: str) -> POS:
    try:
        pos = POS(text)
    except ValueError:
        raise SchemaError(f"unknown part of speech {text!r}")
    if pos is POS.UNK:
        raise SchemaError("UNK is not a valid lexicon part of speech")
    return pos


def _check_feature(feature: str) -> str:
    tag, sep, value = feature.partition("=")
    if not sep or not value or not tag:
        raise SchemaError(f"feature must be Tag=Value, got {feature!r}")
    if tag not in FEATURE_TAGS:
        raise SchemaError(f"unknown feature tag {tag!r}")
    if not value.replace("_", "").isalnum():
        raise SchemaError(f"bad feature value in {feature!r}")
    return feature


# ---------------------------------------------------------------------------
# conditions

class ConditionKind(Enum):
    ANY = "Any"
    FINAL_VOWEL = "StemFinalVowel"
    FINAL_CONSONANT = "StemFinalConsonant"
    FINAL_IN = "StemFinalIn"


@dataclass(frozen=True)
class Condition:
    """Constraint on the final grapheme of the stem a variant may attach to."""

    kind: ConditionKind
    graphemes: Optional[frozenset] = None

    def holds(self, final_grapheme: str, spec: AlphabetSpec) -> bool:
        if self.kind is ConditionKind.ANY:
            return True
        if self.kind is ConditionKind.FINAL_VOWEL:
            return final_grapheme in spec.vowels
        if self.kind is ConditionKind.FINAL_CONSONANT:
            return final_grapheme not in spec.vowels
        return final_grapheme in self.graphemes

    def conjoin(self, other: "Condition", spec: AlphabetSpec) -> Optional["Condition"]:
        """Conjunction of two conditions, or None when unsatisfiable."""
        for side in (self, other):
            if side.kind is ConditionKind.FINAL_IN and not side.graphemes:
                return None
        if self.kind is ConditionKind.ANY:
            return other
        if other.kind is ConditionKind.ANY:
            return self
        if self.kind is other.kind and self.kind is not ConditionKind.FINAL_IN:
            return self
        a = self._as_set(spec)
        b = other._as_set(spec)
        merged = a & b
        if not merged:
            return None
        return Condition(ConditionKind.FINAL_IN, frozenset(merged))

    def _as_set(self, spec: AlphabetSpec) -> frozenset:
        if self.kind is ConditionKind.FINAL_VOWEL:
            return frozenset(spec.vowels)
        if self.kind is ConditionKind.FINAL_CONSONANT:
            return frozenset(spec.letters) - spec.vowels
        if self.kind is ConditionKind.FINAL_IN:
            return self.graphemes
        return frozenset(spec.letters)

    def describe(self) -> str:
        if self.kind is ConditionKind.FINAL_IN:
            return f"StemFinalIn({','.join(sorted(self.graphemes))})"
        return self.kind.value


ANY = Condition(ConditionKind.ANY)
FINAL_VOWEL = Condition(ConditionKind.FINAL_VOWEL)
FINAL_CONSONANT = Condition(ConditionKind.FINAL_CONSONANT)


def parse_condition(text: str, spec: AlphabetSpec) -> Condition:
    """Parse one condition column item: ``*``, ``V``, ``C``, ``in:…`` or ``not:…``."""
    text = text.strip()
    if text == "*":
        return ANY
    if text == "V":
        return FINAL_VOWEL
    if text == "C":
        return FINAL_CONSONANT
    op, sep, rest = text.partition(":")
    if sep and op in ("in", "not"):
        items = frozenset(g.strip() for g in rest.split(",") if g.strip())
        if not items:
            raise SchemaError(f"empty grapheme set in condition {text!r}")
        bad = items - spec.letters
        if bad:
            raise SchemaError(f"condition {text!r} names non-alphabet graphemes {sorted(bad)}")
        if op == "not":
            items = frozenset(spec.letters) - items
        return Condition(ConditionKind.FINAL_IN, items)
    raise SchemaError(f"cannot parse condition {text!r}")


# ---------------------------------------------------------------------------
# pattern grammar

def parse_pattern(pattern: str) -> list:
    """Split a pattern into pieces: ("lit", s) | ("opt", s) | ("alt", branches).

    Raises MalformedPattern on empty or unbalanced groups, nesting, stray
    metacharacters and duplicate alternation branches.
    """
    if not pattern:
        raise MalformedPattern("empty pattern")
    pieces = []
    literal = []
    i = 0

    def flush():
        if literal:
            pieces.append(("lit", "".join(literal)))
            literal.clear()

    while i < len(pattern):
        ch = pattern[i]
        if ch == "(":
            flush()
            end = pattern.find(")", i + 1)
            if end < 0:
                raise MalformedPattern(f"unclosed '(' in {pattern!r}")
            body = pattern[i + 1:end]
            if not body:
                raise MalformedPattern(f"empty optional in {pattern!r}")
            if any(c in "(){}|" for c in body):
                raise MalformedPattern(f"nested group in {pattern!r}")
            pieces.append(("opt", body))
            i = end + 1
        elif ch == "{":
            flush()
            end = pattern.find("}", i + 1)
            if end < 0:
                raise MalformedPattern(f"unclosed '{{' in {pattern!r}")
            body = pattern[i + 1:end]
            if any(c in "(){}" for c in body):
                raise MalformedPattern(f"nested group in {pattern!r}")
            branches = tuple(body.split("|"))
            if len(branches) < 2:
                raise MalformedPattern(f"alternation needs two or more branches in {pattern!r}")
            if any(not b for b in branches):
                raise MalformedPattern(f"empty alternation branch in {pattern!r}")
            if len(set(branches)) != len(branches):
                raise MalformedPattern(f"duplicate alternation branch in {pattern!r}")
            pieces.append(("alt", branches))
            i = end + 1
        elif ch in ")}|":
            raise MalformedPattern(f"unexpected {ch!r} in {pattern!r}")
        else:
            literal.append(ch)
            i += 1
    flush()
    return pieces


# ---------------------------------------------------------------------------
# entries and variants

@dataclass(frozen=True)
class MorphemeSegment:
    pattern: str
    feature: str  # Tag=Value


@dataclass(frozen=True)
class EndingEntry:
    id: str
    segments: tuple  # of MorphemeSegment, in order
    pos: POS

    @property
    def pattern(self) -> str:
        return "".join(seg.pattern for seg in self.segments)


@dataclass(frozen=True)
class EndingVariant:
    """One concrete allomorph of an entry, e.g. ``imdan`` out of ``(i)m dan``."""

    surface: str
    entry_id: str
    condition: Condition
    segment_spans: tuple  # of (surface_part, feature), tiling surface in order


def expand_allomorphs(entry: EndingEntry, spec: AlphabetSpec = DEFAULT_ALPHABET,
                      branch_conditions: Optional[tuple] = None) -> list:
    """Expand an entry's pattern into concrete EndingVariants.

    Optional pieces contribute a consonant-final variant (piece included) and
    a vowel-final variant (piece omitted).  Alternation branches contribute
    one variant each, constrained by ``branch_conditions`` when given.
    Combinations whose conjoined conditions are unsatisfiable are pruned;
    if nothing survives, ConflictingConditions is raised.
    """
    parsed = [(seg, parse_pattern(seg.pattern)) for seg in entry.segments]
    alt_count = sum(1 for _, pieces in parsed for kind, _ in pieces if kind == "alt")
    global_condition = ANY
    if branch_conditions:
        if alt_count == 0:
            if len(branch_conditions) != 1:
                raise SchemaError(
                    f"{entry.id}: {len(branch_conditions)} conditions but no alternation")
            global_condition = branch_conditions[0]
        elif alt_count > 1:
            raise SchemaError(f"{entry.id}: conditions with more than one alternation")

    saw_alt = False
    per_segment = []
    for seg, pieces in parsed:
        combos = [("", ANY)]
        for kind, value in pieces:
            nxt = []
            if kind == "lit":
                nxt = [(s + value, c) for s, c in combos]
            elif kind == "opt":
                for s, c in combos:
                    included = c.conjoin(FINAL_CONSONANT, spec)
                    if included is not None:
                        nxt.append((s + value, included))
                    omitted = c.conjoin(FINAL_VOWEL, spec)
                    if omitted is not None:
                        nxt.append((s, omitted))
            else:  # alt
                conditioned = branch_conditions if (branch_conditions and not saw_alt
                                                    and alt_count == 1) else None
                if conditioned and len(conditioned) != len(value):
                    raise SchemaError(
                        f"{entry.id}: {len(conditioned)} conditions for "
                        f"{len(value)} branches")
                saw_alt = True
                for s, c in combos:
                    for k, branch in enumerate(value):
                        bc = conditioned[k] if conditioned else ANY
                        joined = c.conjoin(bc, spec)
                        if joined is not None:
                            nxt.append((s + branch, joined))
            combos = nxt
        per_segment.append([(s, c, seg.feature) for s, c in combos])

    variants = []
    for combo in itertools.product(*per_segment):
        condition = global_condition
        for _, c, _ in combo:
            condition = condition.conjoin(c, spec) if condition is not None else None
        if condition is None:
            continue
        surface = "".join(s for s, _, _ in combo)
        if not surface:
            raise InvariantViolation(f"{entry.id}: pattern admits an empty surface")
        spans = tuple((s, feat) for s, _, feat in combo if s)
        variants.append(EndingVariant(surface, entry.id, condition, spans))
    if not variants:
        raise ConflictingConditions(entry.id)
    return variants


# ---------------------------------------------------------------------------
# bundle

@dataclass(frozen=True)
class LexiconBundle:
    """Everything loaded from a lexicon data directory, immutable after load."""

    entries: tuple            # of EndingEntry, file order
    variants: tuple           # of EndingVariant, expansion order
    entries_by_id: dict
    exceptional_stems: dict   # stem -> POS
    non_affixed: dict         # word -> POS
    number_stems: tuple       # longest-first, for prefix scans
    short_stems: frozenset
    lemma_exceptions: dict    # word -> (lemma, ending)
    entry_counts: dict        # POS -> int, fixed insertion order
    fingerprint: str          # sha256 over the data files
    data_dir: Path

    @property
    def surfaces(self) -> frozenset:
        return frozenset(v.surface for v in self.variants)


def _data_lines(path: Path):
    if not path.is_file():
        raise SchemaError(f"missing data file: {path}")
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _load_word_list(path: Path, spec: AlphabetSpec, with_pos: bool,
                    default_pos: POS = POS.NOUN) -> dict:
    out = {}
    for lineno, line in _data_lines(path):
        fields = [f.strip() for f in line.split("\t") if f.strip()]
        if with_pos and len(fields) == 2:
            word, pos = fields[0], parse_pos(fields[1])
        elif len(fields) == 1:
            word, pos = fields[0], default_pos
        else:
            raise SchemaError(f"{path.name}:{lineno}: expected word[<TAB>pos]")
        word = normalize(word, spec).text
        if word in out:
            raise InvariantViolation(f"{path.name}:{lineno}: duplicate entry {word!r}")
        out[word] = pos
    return out


def _split_segments(text: str) -> list:
    """Split the segments column on ``|``, ignoring ``|`` inside alternations."""
    parts = []
    current = []
    depth = 0
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "|" and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def fingerprint_dir(data_dir: Path) -> str:
    """Stable content hash over the directory's .tsv/.txt data files."""
    digest = hashlib.sha256()
    for path in sorted(p for p in data_dir.iterdir()
                       if p.is_file() and p.suffix in (".tsv", ".txt")):
        digest.update(path.name.encode("utf-8"))
        digest.update(b"\0")
        digest.update(path.read_bytes())
        digest.update(b"\0")
    return digest.hexdigest()


def load_bundle(data_dir, spec: AlphabetSpec = DEFAULT_ALPHABET) -> LexiconBundle:
    """Load and validate a lexicon directory.

    Expects cse.tsv, exceptional_stems.txt, non_affixed.txt, numbers.txt,
    short_stems.txt and lemma_exceptions.tsv.  Loading is deterministic:
    entry order follows file order, variant order follows expansion order.
    """
    data_dir = Path(data_dir)
    entries = []
    variants = []
    seen = {}
    cse = data_dir / "cse.tsv"
    for lineno, line in _data_lines(cse):
        fields = line.split("\t")
        if len(fields) not in (3, 4):
            raise SchemaError(f"cse.tsv:{lineno}: expected 3 or 4 columns, got {len(fields)}")
        pattern, pos_text, seg_text = (f.strip() for f in fields[:3])
        pos = parse_pos(pos_text)
        if (pattern, pos) in seen:
            raise DuplicateEnding(
                f"cse.tsv:{lineno}: duplicate of line {seen[(pattern, pos)]}: "
                f"{pattern!r} {pos.value}")
        seen[(pattern, pos)] = lineno
        segments = []
        for part in _split_segments(seg_text):
            seg_pattern, sep, feature = part.rpartition(":")
            if not sep:
                raise SchemaError(f"cse.tsv:{lineno}: segment needs pattern:Tag=Value")
            segments.append(MorphemeSegment(seg_pattern.strip(), _check_feature(feature.strip())))
        if "".join(s.pattern for s in segments) != pattern:
            raise SchemaError(
                f"cse.tsv:{lineno}: segment patterns do not concatenate to {pattern!r}")
        conditions = None
        if len(fields) == 4 and fields[3].strip():
            conditions = tuple(parse_condition(c, spec) for c in fields[3].split("|"))
        entry = EndingEntry(id=f"{pos.value}:{pattern}", segments=tuple(segments), pos=pos)
        entries.append(entry)
        for variant in expand_allomorphs(entry, spec, conditions):
            graphemes(variant.surface, spec)  # surfaces must segment cleanly
            variants.append(variant)
    if not entries:
        raise InvariantViolation("cse.tsv: no ending entries")

    exceptional = _load_word_list(data_dir / "exceptional_stems.txt", spec, with_pos=True)
    non_affixed = _load_word_list(data_dir / "non_affixed.txt", spec, with_pos=True)
    numbers = _load_word_list(data_dir / "numbers.txt", spec, with_pos=False)
    shorts = _load_word_list(data_dir / "short_stems.txt", spec, with_pos=False)
    for stem in shorts:
        if len(graphemes(stem, spec)) > 2:
            raise InvariantViolation(
                f"short_stems.txt: {stem!r} is longer than two graphemes")

    surfaces = {v.surface for v in variants}
    lemma_exceptions = {}
    lex_path = data_dir / "lemma_exceptions.tsv"
    for lineno, line in _data_lines(lex_path):
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) != 3 or not all(fields):
            raise SchemaError(
                f"lemma_exceptions.tsv:{lineno}: expected word<TAB>lemma<TAB>ending")
        word, lemma, ending = (normalize(f, spec).text for f in fields)
        if word in lemma_exceptions:
            raise InvariantViolation(f"lemma_exceptions.tsv:{lineno}: duplicate {word!r}")
        if not word.endswith(ending) or len(ending) >= len(word):
            raise InvariantViolation(
                f"lemma_exceptions.tsv:{lineno}: {ending!r} is not a proper suffix "
                f"of {word!r}")
        if ending not in surfaces:
            raise InvariantViolation(
                f"lemma_exceptions.tsv:{lineno}: ending {ending!r} matches no "
                f"lexicon variant")
        lemma_exceptions[word] = (lemma, ending)

    counts = {pos: 0 for pos in (POS.NOUN, POS.VERB, POS.NUM, POS.ADJ, POS.PRON, POS.ADV)}
    for entry in entries:
        counts[entry.pos] += 1

    return LexiconBundle(
        entries=tuple(entries),
        variants=tuple(variants),
        entries_by_id={e.id: e for e in entries},
        exceptional_stems=exceptional,
        non_affixed=non_affixed,
        number_stems=tuple(sorted(numbers, key=lambda w: (-len(w), w))),
        short_stems=frozenset(shorts),
        lemma_exceptions=lemma_exceptions,
        entry_counts=counts,
        fingerprint=fingerprint_dir(data_dir),
        data_dir=data_dir,
    )


# ---------------------------------------------------------------------------
# suffix index

@dataclass(frozen=True)
class Match:
    """One admissible split of a token: stem + concrete ending variant."""

    split: int  # character offset of the stem/ending boundary
    stem: str
    variant: EndingVariant
    entry: EndingEntry


class _Node:
    __slots__ = ("children", "hits")

    def __init__(self):
        self.children = {}
        self.hits = []


class EndingIndex:
    """Reversed-suffix trie over variant surfaces, keyed by grapheme.

    Walking a token's graphemes from the end descends the trie, so every
    match is automatically aligned to a grapheme boundary of the token.
    """

    def __init__(self, bundle: LexiconBundle, spec: AlphabetSpec):
        self._spec = spec
        self._root = _Node()
        self._by_surface = {}
        for variant in bundle.variants:
            entry = bundle.entries_by_id[variant.entry_id]
            node = self._root
            for g in reversed(graphemes(variant.surface, spec)):
                node = node.children.setdefault(g, _Node())
            node.hits.append((variant, entry))
            self._by_surface.setdefault(variant.surface, []).append((variant, entry))

    def lookup(self, surface: str) -> tuple:
        """All (variant, entry) pairs whose surface is exactly ``surface``."""
        return tuple(self._by_surface.get(surface, ()))

    def suffix_matches(self, token_graphemes: list) -> list:
        """(grapheme index, variant, entry) for every suffix ending the token.

        Only proper suffixes are returned: the stem keeps at least one
        grapheme, the ending at least one.
        """
        out = []
        node = self._root
        for j in range(len(token_graphemes) - 1, 0, -1):
            node = node.children.get(token_graphemes[j])
            if node is None:
                break
            for variant, entry in node.hits:
                out.append((j, variant, entry))
        return out


def build_index(bundle: LexiconBundle, spec: AlphabetSpec = DEFAULT_ALPHABET) -> EndingIndex:
    return EndingIndex(bundle, spec)


def match_endings(index: EndingIndex, token, spec: AlphabetSpec = DEFAULT_ALPHABET) -> list:
    """All splits of ``token`` into non-empty stem + known ending variant.

    Splits sit on grapheme boundaries of the token.  Results are ordered
    longest ending first, ties broken by part of speech rank, entry id and
    condition.
    """
    text = token.text if hasattr(token, "text") else token
    gs = graphemes(text, spec)
    offsets = [0]
    for g in gs:
        offsets.append(offsets[-1] + len(g))
    matches = []
    for j, variant, entry in index.suffix_matches(gs):
        split = offsets[j]
        matches.append(Match(split, text[:split], variant, entry))
    matches.sort(key=lambda m: (m.split, POS_RANK[m.entry.pos], m.entry.id,
                                m.variant.condition.describe()))
    return matches
