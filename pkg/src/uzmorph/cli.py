"""Command line interface.

Subcommands: analyze, batch, lexicon validate, eval, bench.  The lexicon
directory resolves as --data flag, then the UZMORPH_DATA environment
variable, then the data shipped inside the package.

Exit codes: 0 success, 1 input error (bad arguments, unreadable token or
gold file), 2 lexicon error (the data directory itself is broken).  Inside
analyze/batch a failing token emits a diagnostic on stderr and processing
continues; the exit code still reports the failure.
"""

import sys
from pathlib import Path

import click

from .analyzer import Engine, render
from .errors import InputError, LexiconError, UzMorphError
from .evaluation import (
    bench_throughput,
    evaluate,
    format_report,
    load_gold,
    report_tsv,
)
from .lexicon import POS

FORMATS = ("human", "tsv", "structured-text")


def _engine(data_dir) -> Engine:
    return Engine.load(data_dir)


def _tsv_line(analysis) -> str:
    return "\t".join((
        analysis.token.text,
        analysis.stem,
        analysis.lemma,
        analysis.pos.value,
        analysis.ending,
        ",".join(analysis.features),
    ))


def _structured_block(analysis) -> str:
    segments = " ".join(f"{surface}:{feature}" for surface, feature in analysis.segments)
    return "\n".join((
        f"token: {analysis.token.text}",
        f"stem: {analysis.stem}",
        f"lemma: {analysis.lemma}",
        f"pos: {analysis.pos.value}",
        f"ending: {analysis.ending}",
        f"features: {','.join(analysis.features)}",
        f"segments: {segments}",
        f"rendered: {render(analysis)}",
        "",
    ))


def _emit(analysis, fmt):
    if fmt == "human":
        click.echo(render(analysis))
    elif fmt == "tsv":
        click.echo(_tsv_line(analysis))
    else:
        click.echo(_structured_block(analysis))


def _emit_error(raw: str, err: UzMorphError, fmt):
    click.echo(f"error: {raw}: {err.code}: {err}", err=True)
    if fmt == "tsv":
        click.echo(f"{raw}\t\t\t\t\t")  # keep one line per input token
    elif fmt == "structured-text":
        click.echo(f"token: {raw}\nerror: {err.code}\n")


def _run_tokens(tokens, engine, pos, fmt) -> int:
    failed = 0
    for raw in tokens:
        try:
            best = engine.analyze(raw, pos_hint=pos).best
        except InputError as err:
            failed += 1
            _emit_error(raw, err, fmt)
            continue
        _emit(best, fmt)
    return failed


@click.group()
@click.option("--data", "data_dir", envvar="UZMORPH_DATA", default=None,
              metavar="DIR", help="Lexicon data directory (or $UZMORPH_DATA).")
@click.pass_context
def cli(ctx, data_dir):
    """Morphological analysis for Uzbek Latin text."""
    ctx.obj = data_dir


@cli.command()
@click.argument("tokens", nargs=-1, required=True)
@click.option("--pos", type=click.Choice([p.value for p in POS if p is not POS.UNK]),
              default=None, help="Part-of-speech hint; reorders readings only.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="human")
@click.pass_context
def analyze(ctx, tokens, pos, fmt):
    """Analyze one or more tokens given as arguments."""
    failed = _run_tokens(tokens, _engine(ctx.obj), pos, fmt)
    if failed:
        ctx.exit(1)


@cli.command()
@click.argument("source")
@click.option("--pos", type=click.Choice([p.value for p in POS if p is not POS.UNK]),
              default=None, help="Part-of-speech hint applied to every token.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="tsv")
@click.pass_context
def batch(ctx, source, pos, fmt):
    """Analyze one token per line from FILE ('-' reads standard input).

    Output preserves input order; a failing token keeps its output line
    (tsv) and is reported on stderr.
    """
    if source == "-":
        lines = sys.stdin.read().splitlines()
    else:
        path = Path(source)
        if not path.is_file():
            raise InputError(f"batch file not found: {source}")
        lines = path.read_text(encoding="utf-8").splitlines()
    tokens = [line.strip() for line in lines if line.strip()]
    failed = _run_tokens(tokens, _engine(ctx.obj), pos, fmt)
    if failed:
        ctx.exit(1)


@cli.group()
def lexicon():
    """Lexicon data utilities."""


@lexicon.command()
@click.argument("directory", required=False)
@click.pass_context
def validate(ctx, directory):
    """Load DIRECTORY (default: resolved data dir) and print entry counts."""
    data_dir = directory or ctx.obj
    engine = _engine(data_dir)
    bundle = engine.bundle
    for pos, count in bundle.entry_counts.items():
        click.echo(f"{pos.value}\t{count}")
    click.echo(f"entries\t{len(bundle.entries)}")
    click.echo(f"variants\t{len(bundle.variants)}")
    click.echo(f"rules\t{len(engine.rules.rules)}")
    click.echo(f"fingerprint\t{bundle.fingerprint}")


@cli.command("eval")
@click.option("--gold", "gold_path", required=True, metavar="FILE",
              help="Gold file: token<TAB>stem<TAB>lemma.")
@click.option("--format", "fmt", type=click.Choice(["text", "tsv"]), default="text")
@click.pass_context
def eval_cmd(ctx, gold_path, fmt):
    """Evaluate the analyzer against a gold standard file."""
    engine = _engine(ctx.obj)
    records = load_gold(gold_path, engine.spec)
    report = evaluate(records, engine)
    click.echo(report_tsv(report) if fmt == "tsv" else format_report(report))
    click.echo(f"analyzed {report.unique_tokens} tokens at "
               f"~{report.tokens_per_second:.0f} tokens/sec", err=True)


@cli.command()
@click.option("--corpus", "corpus_path", required=True, metavar="FILE",
              help="Corpus file, one token per line (# comments allowed), "
                   "at least 1000 tokens.")
@click.option("--repetitions", default=5, show_default=True)
@click.pass_context
def bench(ctx, corpus_path, repetitions):
    """Measure single-threaded analysis throughput."""
    path = Path(corpus_path)
    if not path.is_file():
        raise InputError(f"corpus file not found: {corpus_path}")
    tokens = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()
              if line.strip() and not line.lstrip().startswith("#")]
    engine = _engine(ctx.obj)
    result = bench_throughput(tokens, engine, repetitions=repetitions)
    for i, run in enumerate(result.runs, 1):
        click.echo(f"run {i}: {run:.0f} tokens/sec", err=True)
    click.echo(f"{result.median_tokens_per_second:.0f}")


def main(argv=None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        # non-standalone click returns ctx.exit codes instead of raising
        rv = cli.main(args=argv, standalone_mode=False)
        return rv if isinstance(rv, int) else 0
    except click.exceptions.Exit as err:
        return err.exit_code
    except click.UsageError as err:
        err.show()
        return 1
    except click.ClickException as err:
        err.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except LexiconError as err:
        click.echo(f"lexicon error: {err}", err=True)
        return 2
    except (InputError, OSError) as err:
        click.echo(f"error: {err}", err=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
