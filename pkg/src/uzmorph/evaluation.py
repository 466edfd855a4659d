"""Gold-standard evaluation: stem/lemma error taxonomy and throughput bench.

Every (gold, predicted) pair lands in exactly one of six bins.  With t the
token, g the gold stem and p the predicted stem (both prefixes of t):

* p == g, lemma right  -> Correct
* p == g, lemma wrong  -> LemmaMismatch
* p == t, g != t       -> NotStripped (real affixes left in place)
* g == t, p != t       -> OverStrippedNoAffixes (cut into an unaffixed word)
* p shorter than g     -> OverStrippedWithAffixes
* p longer than g      -> PartialStripped

Evaluation always runs on the unique-token set; the running count is kept
for reporting only.
"""

import statistics
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from .alphabet import graphemes, normalize
from .errors import (
    CorpusTooSmall,
    EmptyGoldFile,
    InputError,
    MalformedGoldRow,
    NotAPrefix,
)


class EvalCase(Enum):
    CORRECT = "Correct"
    NOT_STRIPPED = "NotStripped"
    OVER_STRIPPED_WITH_AFFIXES = "OverStrippedWithAffixes"
    PARTIAL_STRIPPED = "PartialStripped"
    OVER_STRIPPED_NO_AFFIXES = "OverStrippedNoAffixes"
    LEMMA_MISMATCH = "LemmaMismatch"


@dataclass(frozen=True)
class GoldRecord:
    token: str   # normalized text
    stem: str    # prefix of token at a grapheme boundary
    lemma: str


def classify(gold: GoldRecord, predicted_stem: str, predicted_lemma: str) -> EvalCase:
    """Place one prediction into its taxonomy bin.

    Raises NotAPrefix when the predicted stem is not a prefix of the token;
    any prefix prediction classifies into exactly one bin.
    """
    token = gold.token
    if not token.startswith(predicted_stem):
        raise NotAPrefix(f"{predicted_stem!r} is not a prefix of {token!r}")
    if predicted_stem == gold.stem:
        if predicted_lemma == gold.lemma:
            return EvalCase.CORRECT
        return EvalCase.LEMMA_MISMATCH
    if predicted_stem == token:
        return EvalCase.NOT_STRIPPED
    if gold.stem == token:
        return EvalCase.OVER_STRIPPED_NO_AFFIXES
    if len(predicted_stem) < len(gold.stem):
        return EvalCase.OVER_STRIPPED_WITH_AFFIXES
    return EvalCase.PARTIAL_STRIPPED


@dataclass(frozen=True)
class EvalReport:
    counts: dict          # EvalCase -> int, fixed enum order
    percentages: dict     # EvalCase -> float, one decimal
    unique_tokens: int
    running_tokens: int
    accuracy: float       # Correct / unique, LemmaMismatch excluded
    tokens_per_second: float


def report_from_cases(cases: Iterable[EvalCase], running_tokens: Optional[int] = None,
                      tokens_per_second: float = 0.0) -> EvalReport:
    """Aggregate classified cases into a report with one-decimal percentages."""
    cases = list(cases)
    unique = len(cases)
    if unique == 0:
        raise EmptyGoldFile("no cases to aggregate")
    counts = {case: 0 for case in EvalCase}
    for case in cases:
        counts[case] += 1
    percentages = {case: round(count / unique * 100, 1)
                   for case, count in counts.items()}
    return EvalReport(
        counts=counts,
        percentages=percentages,
        unique_tokens=unique,
        running_tokens=running_tokens if running_tokens is not None else unique,
        accuracy=counts[EvalCase.CORRECT] / unique,
        tokens_per_second=tokens_per_second,
    )


def load_gold(path, spec) -> list:
    """Read token<TAB>stem<TAB>lemma rows; # starts a comment.

    Tokens, stems and lemmas are normalized on load.  The stem must be a
    prefix of the token aligned to a grapheme boundary.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"gold file not found: {path}")
    records = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) != 3 or not all(fields):
            raise MalformedGoldRow(f"{path.name}:{lineno}: expected token<TAB>stem<TAB>lemma")
        try:
            token = normalize(fields[0], spec).text
            stem = normalize(fields[1], spec).text
            lemma = normalize(fields[2], spec).text
        except InputError as err:
            raise MalformedGoldRow(f"{path.name}:{lineno}: {err}")
        if not token.startswith(stem):
            raise MalformedGoldRow(
                f"{path.name}:{lineno}: stem {stem!r} is not a prefix of {token!r}")
        boundaries = {0}
        offset = 0
        for g in graphemes(token, spec):
            offset += len(g)
            boundaries.add(offset)
        if len(stem) not in boundaries:
            raise MalformedGoldRow(
                f"{path.name}:{lineno}: stem {stem!r} does not end on a grapheme "
                f"boundary of {token!r}")
        records.append(GoldRecord(token, stem, lemma))
    if not records:
        raise EmptyGoldFile(str(path))
    return records


def evaluate(records: list, engine) -> EvalReport:
    """Classify every unique gold token against the engine's best analysis.

    Duplicate tokens collapse to their first record.  No pos hints are
    supplied: evaluation measures the blind analyzer.
    """
    if not records:
        raise EmptyGoldFile("no gold records")
    unique = {}
    for record in records:
        unique.setdefault(record.token, record)
    cases = []
    started = time.perf_counter()
    for record in unique.values():
        best = engine.analyze(record.token).best
        cases.append(classify(record, best.stem, best.lemma))
    elapsed = time.perf_counter() - started
    tps = len(unique) / elapsed if elapsed > 0 else 0.0
    return report_from_cases(cases, running_tokens=len(records), tokens_per_second=tps)


@dataclass(frozen=True)
class BenchResult:
    tokens: int
    repetitions: int
    runs: tuple            # tokens/sec per timed run
    median_tokens_per_second: float


def bench_throughput(corpus: list, engine, repetitions: int = 5) -> BenchResult:
    """Median single-threaded throughput over ``repetitions`` timed passes.

    ``corpus`` is a list of raw tokens, at least 1000 of them; one untimed
    warm-up pass runs first.
    """
    if len(corpus) < 1000:
        raise CorpusTooSmall(f"{len(corpus)} tokens; need at least 1000")
    if repetitions < 1:
        raise InputError("repetitions must be positive")
    analyze = engine.analyze
    for raw in corpus:  # warm-up, untimed
        analyze(raw)
    runs = []
    for _ in range(repetitions):
        started = time.perf_counter()
        for raw in corpus:
            analyze(raw)
        elapsed = time.perf_counter() - started
        runs.append(len(corpus) / elapsed)
    return BenchResult(
        tokens=len(corpus),
        repetitions=repetitions,
        runs=tuple(runs),
        median_tokens_per_second=statistics.median(runs),
    )


# -- report rendering --------------------------------------------------------

def format_report(report: EvalReport) -> str:
    """Aligned plain-text report, byte-identical across runs on identical input.

    Measured throughput is deliberately left out: it varies run to run and
    would break report determinism.  Callers print it separately if wanted.
    """
    lines = [
        f"tokens:   {report.unique_tokens} unique ({report.running_tokens} running)",
        f"accuracy: {report.accuracy * 100:.1f}%",
        "",
    ]
    width = max(len(case.value) for case in EvalCase)
    lines.append(f"{'case'.ljust(width)}  count  percent")
    for case in EvalCase:
        lines.append(f"{case.value.ljust(width)}  {report.counts[case]:>5}  "
                     f"{report.percentages[case]:>7.1f}")
    return "\n".join(lines)


def report_tsv(report: EvalReport) -> str:
    """Machine-readable case<TAB>count<TAB>percent rows."""
    lines = ["# case\tcount\tpercent"]
    for case in EvalCase:
        lines.append(f"{case.value}\t{report.counts[case]}\t{report.percentages[case]:.1f}")
    return "\n".join(lines)
