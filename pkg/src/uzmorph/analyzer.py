"""Token analysis pipeline: candidate collection, ranking, rendering.

For every token the engine gathers candidate splits from all routes and
ranks them; earlier routes outrank later ones, so a whole-word exception
always beats a rule-derived split:

1. whole-word lemma exceptions (bitta -> bir + ta)
2. non-affixed words (yoki)
3. exceptional stems by longest prefix, Junction rules bypassed (muzqaymoq)
4. number stems by longest prefix, always NUM (uchta)
5. general suffix matching with junction checks and lemma restoration
6. unknown fallback when nothing else produced a candidate

Every candidate preserves the surface exactly: stem + ending == token text.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from .alphabet import DEFAULT_ALPHABET, AlphabetSpec, Token, load_alphabet, normalize
from .errors import EmptyCandidateList, InputError
from .lexicon import (
    POS,
    POS_RANK,
    EndingEntry,
    EndingIndex,
    EndingVariant,
    LexiconBundle,
    build_index,
    load_bundle,
    match_endings,
)
from .phonology import RuleSet, check_affixation, load_rules, restore_lemma


class Source(Enum):
    LEMMA_EXCEPTION = "LemmaException"
    NON_AFFIXED = "NonAffixed"
    EXCEPTIONAL_STEM = "ExceptionalStem"
    NUMBER_STEM = "NumberStem"
    ENDING_MATCH = "EndingMatch"
    UNKNOWN_FALLBACK = "UnknownFallback"


_SOURCE_PRIORITY = {source: rank for rank, source in enumerate(Source)}


@dataclass(frozen=True)
class Candidate:
    """One admissible reading of a token before materialization."""

    stem: str
    lemma: str
    pos: POS
    source: Source
    variant: Optional[EndingVariant] = None
    entry: Optional[EndingEntry] = None

    @property
    def ending(self) -> str:
        return self.variant.surface if self.variant else ""


@dataclass(frozen=True)
class Analysis:
    """A fully materialized reading of one token."""

    token: Token
    stem: str
    lemma: str
    pos: POS
    ending: str
    segments: tuple  # of (surface, feature)
    features: tuple  # of feature strings, one per segment
    source: Source
    entry_id: Optional[str] = None


@dataclass(frozen=True)
class AnalysisSet:
    """All readings of a token, best first."""

    token: Token
    analyses: tuple

    @property
    def best(self) -> Analysis:
        return self.analyses[0]

    def __iter__(self):
        return iter(self.analyses)

    def __len__(self):
        return len(self.analyses)


def parse_pos_hint(hint) -> Optional[POS]:
    if hint is None or isinstance(hint, POS):
        return hint
    try:
        pos = POS(str(hint).upper())
    except ValueError:
        raise InputError(f"unknown part of speech hint {hint!r}")
    if pos is POS.UNK:
        raise InputError("UNK is not a usable part of speech hint")
    return pos


def _rank_key(candidate: Candidate, pos_hint: Optional[POS]):
    hint_miss = 0
    if pos_hint is not None:
        hint_miss = 0 if candidate.pos is pos_hint else 1
    return (
        _SOURCE_PRIORITY[candidate.source],
        hint_miss,
        -len(candidate.ending),
        POS_RANK[candidate.pos],
        candidate.entry.id if candidate.entry else "",
        candidate.variant.condition.describe() if candidate.variant else "",
        candidate.stem,
    )


def rank_candidates(candidates, pos_hint=None) -> list:
    """Candidates ordered best-first under the total ranking order.

    The hint only reorders: it never adds or removes candidates.
    """
    hint = parse_pos_hint(pos_hint)
    return sorted(candidates, key=lambda c: _rank_key(c, hint))


def select_best(candidates, pos_hint=None) -> Candidate:
    if not candidates:
        raise EmptyCandidateList("no candidates to rank")
    return rank_candidates(candidates, pos_hint)[0]


def render(analysis: Analysis) -> str:
    """Human-readable one-liner for an analysis.

    ``daftar[NOUN] + im[Poss=1Sg] + dan[Case=Abl] | lemma: daftar``;
    unknown tokens render as ``<token>[UNK]``.
    """
    if analysis.source is Source.UNKNOWN_FALLBACK:
        return f"{analysis.token.text}[UNK]"
    parts = [f"{analysis.stem}[{analysis.pos.value}]"]
    parts.extend(f"{surface}[{feature}]" for surface, feature in analysis.segments)
    return " + ".join(parts) + f" | lemma: {analysis.lemma}"


def stem_and_lemma(analysis_set: AnalysisSet) -> tuple:
    best = analysis_set.best
    return best.stem, best.lemma


def _packaged_data_dir() -> Path:
    return Path(__file__).parent / "data"


class Engine:
    """Loaded alphabet, lexicon, rules and index; immutable once constructed.

    ``analyze`` is a pure function of its arguments, so one engine can serve
    any number of callers concurrently.
    """

    def __init__(self, spec: AlphabetSpec, bundle: LexiconBundle, rules: RuleSet,
                 index: Optional[EndingIndex] = None):
        self.spec = spec
        self.bundle = bundle
        self.rules = rules
        self.index = index if index is not None else build_index(bundle, spec)
        # longest-first orders for the prefix routes
        self._exceptional_order = tuple(
            sorted(bundle.exceptional_stems, key=lambda w: (-len(w), w)))
        self._number_order = bundle.number_stems

    @classmethod
    def load(cls, data_dir=None) -> "Engine":
        """Load an engine from a data directory (default: packaged data).

        If the directory contains an ``alphabet.txt`` it overrides the
        built-in alphabet.
        """
        data_dir = Path(data_dir) if data_dir else _packaged_data_dir()
        alphabet_file = data_dir / "alphabet.txt"
        spec = load_alphabet(alphabet_file) if alphabet_file.is_file() else DEFAULT_ALPHABET
        bundle = load_bundle(data_dir, spec)
        rules = load_rules(data_dir / "rules.tsv", spec)
        return cls(spec, bundle, rules)

    # -- candidate routes ---------------------------------------------------

    def _pick_variant(self, pairs, prefer: Optional[POS]):
        """Deterministic choice among homographic ending variants."""
        def key(pair):
            variant, entry = pair
            miss = 0 if (prefer is not None and entry.pos is prefer) else 1
            return (miss, POS_RANK[entry.pos], entry.id, variant.condition.describe())
        return min(pairs, key=key)

    def _lemma_exception_candidate(self, text: str) -> Optional[Candidate]:
        hit = self.bundle.lemma_exceptions.get(text)
        if hit is None:
            return None
        lemma, ending = hit
        stem = text[:len(text) - len(ending)]
        variant, entry = self._pick_variant(self.index.lookup(ending), prefer=None)
        return Candidate(stem, lemma, entry.pos, Source.LEMMA_EXCEPTION, variant, entry)

    def _prefix_candidate(self, text: str, stems, source: Source,
                          declared_pos=None, force_pos: Optional[POS] = None):
        """Longest listed stem that prefixes ``text`` and leaves a known ending.

        Junction rules and variant conditions are deliberately not consulted:
        these lists exist for words the general rules mishandle.
        """
        for stem in stems:
            if not text.startswith(stem):
                continue
            remainder = text[len(stem):]
            stem_pos = declared_pos(stem) if declared_pos else POS.NUM
            if not remainder:
                pos = force_pos or stem_pos
                return Candidate(stem, stem, pos, source)
            pairs = self.index.lookup(remainder)
            if pairs:
                variant, entry = self._pick_variant(pairs, prefer=stem_pos)
                pos = force_pos or entry.pos
                return Candidate(stem, stem, pos, source, variant, entry)
        return None

    def analyze(self, raw, pos_hint=None) -> AnalysisSet:
        """All readings of one raw token, ranked best-first.

        Raises the normalization errors for unusable input; any token that
        survives normalization yields at least the unknown fallback.
        """
        hint = parse_pos_hint(pos_hint)
        token = raw if isinstance(raw, Token) else normalize(raw, self.spec)
        text = token.text
        candidates = []

        hit = self._lemma_exception_candidate(text)
        if hit:
            candidates.append(hit)

        non_affixed_pos = self.bundle.non_affixed.get(text)
        if non_affixed_pos is not None:
            candidates.append(Candidate(text, text, non_affixed_pos, Source.NON_AFFIXED))

        hit = self._prefix_candidate(
            text, self._exceptional_order, Source.EXCEPTIONAL_STEM,
            declared_pos=self.bundle.exceptional_stems.get)
        if hit:
            candidates.append(hit)

        hit = self._prefix_candidate(
            text, self._number_order, Source.NUMBER_STEM, force_pos=POS.NUM)
        if hit:
            candidates.append(hit)

        for match in match_endings(self.index, token, self.spec):
            verdict = check_affixation(match.stem, match.variant, self.bundle,
                                       self.rules, self.spec)
            if not verdict:
                continue
            lemma = restore_lemma(match.stem, match.variant, self.bundle,
                                  self.rules, self.spec)
            candidates.append(Candidate(match.stem, lemma, match.entry.pos,
                                        Source.ENDING_MATCH, match.variant, match.entry))

        if not candidates:
            candidates.append(Candidate(text, text, POS.UNK, Source.UNKNOWN_FALLBACK))

        ordered = rank_candidates(candidates, hint)
        # routes overlap (a listed stem is often also a regular match); keep
        # only the highest-ranked copy of each reading
        seen = set()
        unique = []
        for c in ordered:
            key = (c.stem, c.lemma, c.pos, c.ending,
                   c.entry.id if c.entry else None)
            if key in seen:
                continue
            seen.add(key)
            unique.append(c)
        analyses = tuple(self._materialize(token, c) for c in unique)
        return AnalysisSet(token, analyses)

    def _materialize(self, token: Token, candidate: Candidate) -> Analysis:
        segments = candidate.variant.segment_spans if candidate.variant else ()
        return Analysis(
            token=token,
            stem=candidate.stem,
            lemma=candidate.lemma,
            pos=candidate.pos,
            ending=candidate.ending,
            segments=segments,
            features=tuple(feature for _, feature in segments),
            source=candidate.source,
            entry_id=candidate.entry.id if candidate.entry else None,
        )
