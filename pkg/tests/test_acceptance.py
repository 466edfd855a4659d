"""Acceptance gate: one test per release criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion
lines; each test prints exactly one PASS line with its measured numbers
once its assertions hold.
"""

import time

import pytest
from fastapi.testclient import TestClient

from conftest import oracle_suffix_splits
from test_roundtrip import KINDS, generate, load_exceptions

import uzmorph
from uzmorph.analyzer import Source, render, stem_and_lemma
from uzmorph.cli import main
from uzmorph.evaluation import (
    EvalCase,
    GoldRecord,
    bench_throughput,
    classify,
    evaluate,
    format_report,
    report_from_cases,
    report_tsv,
)
from uzmorph.lexicon import POS, match_endings, parse_pattern
from uzmorph.phonology import check_affixation, restore_lemma
from uzmorph.service import create_app


def _variant(engine, surface, pos=None):
    for variant, entry in engine.index.lookup(surface):
        if pos is None or entry.pos is pos:
            return variant
    raise AssertionError(f"no variant {surface!r}")


def test_a1_seed_gold_accuracy(engine, gold_records):
    """Gold set >= 200 tokens, all aux datasets covered, accuracy >= 90%."""
    tokens = {r.token for r in gold_records}
    assert len(tokens) >= 200
    # one exemplar per auxiliary dataset
    assert "muzqaymoqni" in tokens     # exceptional stems
    assert "yoki" in tokens            # non-affixed words
    assert "uchta" in tokens           # number stems
    assert "otda" in tokens            # short stems
    assert "bitta" in tokens           # whole-word lemma exceptions
    # noun and verb paradigms
    assert "daftarimdan" in tokens and "maktablarimizni" in tokens
    assert "bordi" in tokens and "boraman" in tokens
    started = time.perf_counter()
    report = evaluate(gold_records, engine)
    elapsed = time.perf_counter() - started
    assert report.accuracy >= 0.90
    assert elapsed < 1.0
    print(f"\nPASS A1 seed gold: accuracy {report.accuracy * 100:.1f}% >= 90% "
          f"on {report.unique_tokens} unique tokens in {elapsed:.3f}s")


def test_a2_taxonomy_percentage_arithmetic():
    """Constructed 4821/24/131/158/154 multiset -> 91.2/0.5/2.5/3.0/2.9."""
    cases = (
        [EvalCase.CORRECT] * 4821
        + [EvalCase.NOT_STRIPPED] * 24
        + [EvalCase.OVER_STRIPPED_WITH_AFFIXES] * 131
        + [EvalCase.PARTIAL_STRIPPED] * 158
        + [EvalCase.OVER_STRIPPED_NO_AFFIXES] * 154
    )
    report = report_from_cases(cases)
    got = [report.percentages[c] for c in (
        EvalCase.CORRECT,
        EvalCase.NOT_STRIPPED,
        EvalCase.OVER_STRIPPED_WITH_AFFIXES,
        EvalCase.PARTIAL_STRIPPED,
        EvalCase.OVER_STRIPPED_NO_AFFIXES,
    )]
    assert got == [91.2, 0.5, 2.5, 3.0, 2.9]
    print(f"\nPASS A2 taxonomy arithmetic: {got} at one decimal")


def test_a3_classification_fidelity():
    """The five daftarimdan-family pairs land in their exact bins."""
    inflected = GoldRecord("daftarimdan", "daftar", "daftar")
    bare = GoldRecord("daftar", "daftar", "daftar")
    pairs = [
        (inflected, "daftar", EvalCase.CORRECT),
        (inflected, "daftarimdan", EvalCase.NOT_STRIPPED),
        (inflected, "daft", EvalCase.OVER_STRIPPED_WITH_AFFIXES),
        (inflected, "daftarim", EvalCase.PARTIAL_STRIPPED),
        (bare, "daft", EvalCase.OVER_STRIPPED_NO_AFFIXES),
    ]
    passed = 0
    for gold, predicted, expected in pairs:
        assert classify(gold, predicted, predicted) is expected
        passed += 1
    assert passed == 5
    print(f"\nPASS A3 classification fidelity: {passed}/5 pairs")


def test_a4_throughput(engine, data_dir):
    """>= 1000 tokens/sec single-threaded, median of 5 runs, under 2 min."""
    corpus_path = data_dir / "eval" / "corpus.txt"
    corpus = [line.strip()
              for line in corpus_path.read_text(encoding="utf-8").splitlines()
              if line.strip() and not line.lstrip().startswith("#")]
    assert len(corpus) == 11952
    started = time.perf_counter()
    result = bench_throughput(corpus, engine, repetitions=5)
    elapsed = time.perf_counter() - started
    assert result.median_tokens_per_second >= 1000
    assert elapsed < 120
    print(f"\nPASS A4 throughput: median "
          f"{result.median_tokens_per_second:.0f} tokens/sec >= 1000 over 5 runs "
          f"on {result.tokens} tokens ({elapsed:.1f}s total)")


def test_a5_oracle_equivalence(engine, spec, gold_records):
    """match_endings equals the brute-force suffix scan on every gold token."""
    surfaces = set(engine.bundle.surfaces)
    checked = 0
    for record in gold_records:
        got = {(m.stem, m.variant.surface)
               for m in match_endings(engine.index, record.token, spec)}
        expected = set(oracle_suffix_splits(record.token, surfaces))
        assert got == expected, record.token
        checked += 1
    print(f"\nPASS A5 oracle equivalence: {checked}/{checked} gold tokens")


def test_a6_roundtrip_generation(engine):
    """>= 99% of generated forms re-analyze to their source split."""
    cases = generate(engine)
    exceptions = load_exceptions()
    failures = {kind: set() for kind in KINDS}
    for lemma, surface_stem, ending, form in cases:
        analyses = list(engine.analyze(form))
        hits = [a for a in analyses
                if a.stem == surface_stem and a.ending == ending]
        if not hits:
            failures["membership"].add(form)
            continue
        if not any(a.lemma == lemma for a in hits):
            failures["lemma"].add(form)
        if (analyses[0].stem, analyses[0].ending) != (surface_stem, ending):
            failures["best"].add(form)
    rate = 1 - len(failures["membership"]) / len(cases)
    assert rate >= 0.99
    for kind in KINDS:
        assert failures[kind] == exceptions[kind], kind
    ledgered = sum(len(v) for v in exceptions.values())
    print(f"\nPASS A6 round-trip: {rate * 100:.1f}% of {len(cases)} generated "
          f"forms re-analyze to source; {ledgered} ledgered rank deviations")


def test_a7_example_suite(engine, capsys):
    """The documented token examples reproduce verbatim."""
    # pattern grammar
    assert parse_pattern("(i)m") == [("opt", "i"), ("lit", "m")]

    # affixation checks
    assert check_affixation("daftar", _variant(engine, "imdan"),
                            engine.bundle, engine.rules)
    assert "bu" in engine.bundle.short_stems
    assert check_affixation("bu", _variant(engine, "ni", POS.PRON),
                            engine.bundle, engine.rules)

    # lemma restoration through the whole-word exception
    assert restore_lemma("singl", _variant(engine, "i"),
                         engine.bundle, engine.rules) == "singil"

    # analyzer best readings
    best = engine.analyze("daftarimdan").best
    assert (best.stem, best.lemma, best.ending) == ("daftar", "daftar", "imdan")
    assert tuple(best.features) == ("Poss=1Sg", "Case=Abl")
    best = engine.analyze("bitta").best
    assert (best.lemma, best.ending) == ("bir", "ta")
    best = engine.analyze("yoki").best
    assert (best.stem, best.lemma, best.ending) == ("yoki", "yoki", "")
    best = engine.analyze("muzqaymoq").best
    assert (best.stem, best.lemma) == ("muzqaymoq", "muzqaymoq")
    assert best.source is Source.EXCEPTIONAL_STEM
    best = engine.analyze("buni").best
    assert (best.stem, best.lemma, best.ending) == ("bu", "bu", "ni")

    # stem/lemma pairs
    assert stem_and_lemma(engine.analyze("daftarimdan")) == ("daftar", "daftar")
    assert stem_and_lemma(engine.analyze("singli")) == ("singl", "singil")
    assert uzmorph.stem("daftarimdan") == "daftar"
    assert uzmorph.lemma("bitta") == "bir"

    # command line rendering
    assert main(["analyze", "daftarimdan"]) == 0
    assert capsys.readouterr().out == (
        "daftar[NOUN] + im[Poss=1Sg] + dan[Case=Abl] | lemma: daftar\n")
    hinted = engine.analyze("maktablarimizni", pos_hint="NOUN").best
    assert hinted.pos is POS.NOUN and hinted.stem == "maktab"

    # service round trip
    client = TestClient(create_app())
    response = client.post("/analyze", json={"tokens": [
        {"text": "borgandik"},
        {"text": "maktablarimizni", "pos": "NOUN"},
    ]})
    assert response.status_code == 200
    first, second = response.json()["results"]
    assert (first["stem"], first["pos"]) == ("bor", "VERB")
    assert (second["stem"], second["pos"]) == ("maktab", "NOUN")

    print("\nPASS A7 example suite: all documented token examples verbatim")


def test_a8_determinism(engine, gold_records):
    """Two full gold evaluations render byte-identical reports."""
    first = evaluate(gold_records, engine)
    second = evaluate(gold_records, engine)
    assert format_report(first) == format_report(second)
    assert report_tsv(first) == report_tsv(second)
    print("\nPASS A8 determinism: two evaluation runs byte-identical")
