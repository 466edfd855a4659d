"""Rule-based morphological analysis for Uzbek Latin text.

Quick use::

    import uzmorph
    best = uzmorph.analyze("daftarimdan").best
    best.stem, best.lemma      # 'daftar', 'daftar'

The heavy lifting lives in the submodules: :mod:`uzmorph.alphabet`,
:mod:`uzmorph.lexicon`, :mod:`uzmorph.phonology`, :mod:`uzmorph.analyzer`,
:mod:`uzmorph.evaluation`.  Module-level :func:`analyze`, :func:`stem` and
:func:`lemma` lazily load the packaged lexicon once and reuse it.
"""

from .alphabet import (
    DEFAULT_ALPHABET,
    AlphabetSpec,
    SoundClass,
    Token,
    final_sound_class,
    graphemes,
    load_alphabet,
    normalize,
)
from .analyzer import Analysis, AnalysisSet, Engine, render, stem_and_lemma
from .errors import UzMorphError

__version__ = "0.1.0"

_default_engine = None


def load(data_dir=None) -> Engine:
    """Load an analysis engine from ``data_dir`` (default: packaged data)."""
    return Engine.load(data_dir)


def _engine() -> Engine:
    global _default_engine
    if _default_engine is None:
        _default_engine = Engine.load()
    return _default_engine


def analyze(text: str, pos: str = None) -> AnalysisSet:
    return _engine().analyze(text, pos_hint=pos)


def stem(text: str) -> str:
    return _engine().analyze(text).best.stem


def lemma(text: str) -> str:
    return _engine().analyze(text).best.lemma
