import pytest

from uzmorph.analyzer import Engine
from uzmorph.evaluation import load_gold


@pytest.fixture(scope="session")
def engine():
    return Engine.load()


@pytest.fixture(scope="session")
def spec(engine):
    return engine.spec


@pytest.fixture(scope="session")
def bundle(engine):
    return engine.bundle


@pytest.fixture(scope="session")
def data_dir(bundle):
    return bundle.data_dir


@pytest.fixture(scope="session")
def gold_records(engine, data_dir):
    return load_gold(data_dir / "eval" / "gold.tsv", engine.spec)


# -- independent oracles ------------------------------------------------------
# Both are deliberately naive re-implementations used to cross-check the
# production code paths; keep them free of imports from the modules they test.

def oracle_graphemes(text, digraphs=("o'", "g'", "sh", "ch", "ng")):
    """Greedy left-to-right scan written as plain string slicing."""
    out = []
    i = 0
    while i < len(text):
        for d in sorted(digraphs, key=len, reverse=True):
            if text[i:i + len(d)] == d:
                out.append(d)
                i += len(d)
                break
        else:
            out.append(text[i])
            i += 1
    return out


def oracle_suffix_splits(token, surfaces):
    """All (stem, ending) splits where the ending is a known variant surface
    and both sides end/begin on grapheme boundaries of the token."""
    gs = oracle_graphemes(token)
    bounds = set()
    pos = 0
    for g in gs:
        pos += len(g)
        bounds.add(pos)
    splits = []
    for i in range(1, len(token)):
        if i in bounds and token[i:] in surfaces:
            splits.append((token[:i], token[i:]))
    return splits
