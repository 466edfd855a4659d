import pytest

from uzmorph.errors import InvariantViolation
from uzmorph.phonology import (
    Direction, RejectReason, check_affixation, forward_join, load_rules,
    restore_lemma,
)


def variant_by(engine, surface, pos=None):
    for v, e in engine.index.lookup(surface):
        if pos is None or e.pos.value == pos:
            return v
    raise AssertionError(f"no variant {surface!r}")


def test_rules_file_roundtrip(engine, data_dir):
    rules = load_rules(data_dir / "rules.tsv", engine.spec)
    assert {r.id for r in rules.rules} == {
        "k-voicing", "q-voicing", "g-devoicing", "g'-devoicing"}
    assert all(r.direction is Direction.JUNCTION for r in rules.junction)
    assert all(r.direction is Direction.LEMMA_RESTORE for r in rules.restore)


def test_duplicate_rule_ids_rejected(engine, tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("r1\tJunction\tin:k\tin:i\tg\nr1\tJunction\tin:q\tin:i\tg'\n",
                 encoding="utf-8")
    with pytest.raises(InvariantViolation):
        load_rules(p, engine.spec)


# -- affixation checks --------------------------------------------------------

def test_accepts_paper_pairs(engine):
    b = engine.bundle
    r = engine.rules
    s = engine.spec
    assert check_affixation("daftar", variant_by(engine, "imdan"), b, r, s)
    assert check_affixation("bu", variant_by(engine, "ni"), b, r, s)


def test_condition_failure(engine):
    # mdan is the after-vowel variant; daftar ends in a consonant
    got = check_affixation("daftar", variant_by(engine, "mdan"),
                           engine.bundle, engine.rules, engine.spec)
    assert not got
    assert got.reason is RejectReason.CONDITION_FAILED


def test_junction_rule_forbids_unvoiced_spelling(engine):
    # yurak+i must be written yuragi, so the raw join is rejected
    got = check_affixation("yurak", variant_by(engine, "i"),
                           engine.bundle, engine.rules, engine.spec)
    assert not got
    assert got.reason is RejectReason.RULE_FORBIDDEN
    # consonant-initial endings are unaffected
    assert check_affixation("yurak", variant_by(engine, "ni"),
                            engine.bundle, engine.rules, engine.spec)


def test_short_stem_gate(engine):
    b, r, s = engine.bundle, engine.rules, engine.spec
    got = check_affixation("el", variant_by(engine, "dan"), b, r, s)
    assert not got
    assert got.reason is RejectReason.SHORT_STEM_UNKNOWN
    # listed short stems pass; the gate counts graphemes, so the
    # three-character o'n is really two graphemes long
    assert check_affixation("ot", variant_by(engine, "ni"), b, r, s)
    assert check_affixation("daftar", variant_by(engine, "ni"), b, r, s)


# -- lemma restoration --------------------------------------------------------

def test_restore_reverses_voicing(engine):
    b, r, s = engine.bundle, engine.rules, engine.spec
    i = variant_by(engine, "i", pos="NOUN")
    assert restore_lemma("yurag", i, b, r, s) == "yurak"
    assert restore_lemma("qishlog'", i, b, r, s) == "qishloq"
    # no i-initial ending, no rewrite
    assert restore_lemma("yurak", variant_by(engine, "ni"), b, r, s) == "yurak"
    assert restore_lemma("daftar", variant_by(engine, "imdan"), b, r, s) == "daftar"


def test_restore_prefers_whole_word_exceptions(engine):
    b, r, s = engine.bundle, engine.rules, engine.spec
    i = variant_by(engine, "i", pos="NOUN")
    assert restore_lemma("singl", i, b, r, s) == "singil"
    # barg keeps its g because bargi is listed, root g is not a rewrite
    assert restore_lemma("barg", i, b, r, s) == "barg"
    assert restore_lemma("bit", variant_by(engine, "ta"), b, r, s) == "bir"


def test_forward_join_applies_voicing(engine):
    r, s = engine.rules, engine.spec
    i = variant_by(engine, "i", pos="NOUN")
    assert forward_join("yurak", i, r, s) == "yuragi"
    assert forward_join("qishloq", i, r, s) == "qishlog'i"
    assert forward_join("daftar", variant_by(engine, "imdan"), r, s) == "daftarimdan"
    assert forward_join("ota", variant_by(engine, "si"), r, s) == "otasi"


def test_forward_then_restore_is_identity_on_rewrites(engine):
    b, r, s = engine.bundle, engine.rules, engine.spec
    i = variant_by(engine, "i", pos="NOUN")
    for lemma in ("yurak", "eshik", "qishloq", "telpak", "qoshiq"):
        token = forward_join(lemma, i, r, s)
        stem = token[:-len(i.surface)]
        assert restore_lemma(stem, i, b, r, s) == lemma, lemma
