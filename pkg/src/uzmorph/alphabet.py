"""Uzbek Latin alphabet: grapheme inventory, token normalization, segmentation.

The alphabet treats the digraphs o', g', sh, ch and ng as single graphemes.
Segmentation is greedy longest-match from the left, so every occurrence of a
digraph's letter pair is read as the digraph; no morpheme-boundary
re-segmentation happens at this layer.  All downstream modules (suffix
matching, stem-final sound checks, length gates) work in graphemes, never in
raw characters.

An alphabet can also be loaded from a small sectioned text file, see
:func:`load_alphabet`.
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from .errors import EmptyAfterNormalization, NonAlphabetGrapheme, SchemaError

#: canonical apostrophe used inside o', g' and as the stand-alone tutuq belgisi
APOSTROPHE = "'"

# alternative apostrophe-like code points seen in real text, all folded to '
_APOSTROPHE_ALTERNATES = (
    "‘",  # left single quotation mark
    "’",  # right single quotation mark
    "ʻ",  # modifier letter turned comma (the official oʻ/gʻ mark)
    "ʼ",  # modifier letter apostrophe
    "`",  # grave accent
)

# hyphen is both: stripped at token edges, kept (and valid) word-internally
_BASE_CHARS = "abcdefghijklmnopqrstuvxyz" + APOSTROPHE + "-"
_DIGRAPHS = ("o'", "g'", "sh", "ch", "ng")
_VOWELS = ("a", "e", "i", "o", "u", "o'")
_SEPARATORS = ".,;:!?\"()«»[]…–—- \t\r\n"


class SoundClass(Enum):
    VOWEL = "Vowel"
    CONSONANT = "Consonant"


@dataclass(frozen=True)
class AlphabetSpec:
    """Grapheme inventory plus normalization tables.

    ``letters`` holds every valid grapheme including the digraphs; the
    single-character subset is the base character set that digraphs must be
    built from.
    """

    letters: frozenset
    digraphs: tuple
    vowels: frozenset
    apostrophe_map: Mapping
    separator_chars: frozenset
    # digraphs sorted longest-first, precomputed for the segmentation loop
    _match_order: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        base = {g for g in self.letters if len(g) == 1}
        for d in self.digraphs:
            if len(d) < 2:
                raise SchemaError(f"digraph too short: {d!r}")
            if d not in self.letters:
                raise SchemaError(f"digraph {d!r} missing from letters")
            for ch in d:
                if ch not in base:
                    raise SchemaError(
                        f"digraph {d!r} uses {ch!r} which is not a base character")
        for v in self.vowels:
            if v not in self.letters:
                raise SchemaError(f"vowel {v!r} missing from letters")
        order = tuple(sorted(self.digraphs, key=len, reverse=True))
        object.__setattr__(self, "_match_order", order)
        object.__setattr__(self, "_base_chars", base)

    @classmethod
    def build(cls, base_letters: Iterable, digraphs: Iterable, vowels: Iterable,
              apostrophe_alternates: Iterable, separators: Iterable) -> "AlphabetSpec":
        digraphs = tuple(digraphs)
        return cls(
            letters=frozenset(base_letters) | frozenset(digraphs),
            digraphs=digraphs,
            vowels=frozenset(vowels),
            apostrophe_map={ch: APOSTROPHE for ch in apostrophe_alternates},
            separator_chars=frozenset(separators),
        )


@dataclass(frozen=True)
class Token:
    """A normalized word: lowercase, canonical apostrophes, no edge punctuation."""

    text: str

    def __str__(self):
        return self.text


#: built-in Uzbek Latin alphabet, used whenever no alphabet file is supplied
DEFAULT_ALPHABET = AlphabetSpec.build(
    _BASE_CHARS, _DIGRAPHS, _VOWELS, _APOSTROPHE_ALTERNATES, _SEPARATORS)


def graphemes(text: str, spec: AlphabetSpec = DEFAULT_ALPHABET) -> list:
    """Split ``text`` into alphabet graphemes, greedy longest-match from the left.

    Raises NonAlphabetGrapheme on the first character that neither starts a
    digraph nor is a base letter.  Joining the result always reproduces the
    input exactly.
    """
    out = []
    i = 0
    n = len(text)
    while i < n:
        for d in spec._match_order:
            if text.startswith(d, i):
                out.append(d)
                i += len(d)
                break
        else:
            ch = text[i]
            if ch not in spec._base_chars:
                raise NonAlphabetGrapheme(f"{ch!r} in {text!r}")
            out.append(ch)
            i += 1
    return out


def normalize(raw: str, spec: AlphabetSpec = DEFAULT_ALPHABET) -> Token:
    """Lowercase, fold apostrophe variants, strip edge separators, validate.

    Lowercasing runs before apostrophe folding so that code points whose
    lowercase form differs (e.g. a left quotation mark does not, but letters
    around it do) are already settled when the fold table is applied.
    """
    text = raw.lower()
    text = "".join(spec.apostrophe_map.get(ch, ch) for ch in text)
    start, end = 0, len(text)
    while start < end and text[start] in spec.separator_chars:
        start += 1
    while end > start and text[end - 1] in spec.separator_chars:
        end -= 1
    text = text[start:end]
    if not text:
        raise EmptyAfterNormalization(repr(raw))
    graphemes(text, spec)  # raises NonAlphabetGrapheme on bad content
    return Token(text)


def final_sound_class(text: str, spec: AlphabetSpec = DEFAULT_ALPHABET) -> SoundClass:
    """Sound class of the last grapheme; the digraph o' counts as a vowel."""
    gs = graphemes(text, spec)
    return SoundClass.VOWEL if gs[-1] in spec.vowels else SoundClass.CONSONANT


_SECTIONS = ("letters", "digraphs", "vowels", "apostrophes", "separators")


def load_alphabet(path) -> AlphabetSpec:
    """Read an alphabet spec from a sectioned UTF-8 text file.

    Sections are headed ``[letters]``, ``[digraphs]``, ``[vowels]``,
    ``[apostrophes]`` (alternate marks folded to the canonical apostrophe) and
    ``[separators]``; entries are whitespace-separated, ``#`` starts a comment.
    Whitespace characters cannot be listed as entries, so space, tab, CR and
    LF are always treated as separators.
    """
    sections = {name: [] for name in _SECTIONS}
    current = None
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in sections:
                raise SchemaError(f"{path}:{lineno}: unknown section [{name}]")
            current = name
            continue
        if current is None:
            raise SchemaError(f"{path}:{lineno}: entry before any section header")
        sections[current].extend(line.split())
    if not sections["letters"]:
        raise SchemaError(f"{path}: empty [letters] section")
    return AlphabetSpec.build(
        sections["letters"], sections["digraphs"], sections["vowels"],
        sections["apostrophes"], list(sections["separators"]) + list(" \t\r\n"))
