import pytest

import designdim as dd

PG_ORDERS = (2, 3, 4, 5, 7, 8, 9)
HADAMARD_DESIGN_ORDERS = (8, 12, 16, 20)
BIAFFINE_ORDERS = (2, 3, 4, 5)
HADAMARD_NET_ORDERS = (2, 4, 8, 12, 16)


@pytest.fixture(scope="session")
def corpus():
    """Every design family the suite exercises, built once."""
    designs = {}
    for q in PG_ORDERS:
        designs[f"pg{q}"] = dd.projective_plane(q)
    for n in HADAMARD_DESIGN_ORDERS:
        designs[f"hd{n}"] = dd.hadamard_design(dd.hadamard_matrix(n))
    for q in BIAFFINE_ORDERS:
        designs[f"ba{q}"] = dd.biaffine_plane(q)
    for n in HADAMARD_NET_ORDERS:
        designs[f"hstd{n}"] = dd.hadamard_std(dd.hadamard_matrix(n))
    return designs


@pytest.fixture(scope="session")
def fano(corpus):
    return corpus["pg2"]


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Designs small enough for per-subset or per-graph exhaustive work."""
    return {name: corpus[name] for name in ("pg2", "pg3", "ba2", "ba3", "hstd2", "hstd4")}


@pytest.fixture(scope="session")
def corpus_graphs(corpus):
    return {name: dd.incidence_graph(d) for name, d in corpus.items()}
