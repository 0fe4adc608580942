from fractions import Fraction
from pathlib import Path

import pytest

import numpy as np
import pandas as pd

import usageclusters as uc
from usageclusters.similarity.scores import score_counts

CORPORA = Path(__file__).parent / "corpora"


def usages_in(corpus, symbol="initCapacity", **kwargs):
    files = uc.scan_corpus(CORPORA / corpus)
    return uc.find_usages(uc.parse_corpus(files), uc.SymbolQuery(symbol, **kwargs))


def edit_similarity(a, b):
    """Normalized Levenshtein similarity of two strings, only used as a baseline."""
    distances = np.arange(len(b) + 1)
    for i, ca in enumerate(a, start=1):
        previous, distances = distances, np.empty(len(b) + 1, dtype=int)
        distances[0] = i
        for j, cb in enumerate(b, start=1):
            distances[j] = min(previous[j] + 1, distances[j-1] + 1, previous[j-1] + (ca != cb))
    return 1.0 - distances[-1] / max(len(a), len(b), 1)


# Score

@pytest.mark.parametrize("counts, expected", [
    ((10, 0, 0), 1.0),
    ((0, 5, 6), 0.0),
    ((8, 2, 2), 0.8),
    ((0, 0, 0), 1.0),
    ((4, 1, 2), 8/11),
])
def test_score_examples(counts, expected):
    assert uc.score(uc.DiffResult(*counts)) == pytest.approx(expected, abs=1e-12)


def test_score_on_random_counts():
    rng = np.random.default_rng(seed=0)
    triples = rng.integers(0, 1000, size=(10_000, 3))
    for shared, u1, u2 in triples:
        s = uc.score(uc.DiffResult(int(shared), int(u1), int(u2)))
        assert 0.0 <= s <= 1.0
        if shared + u1 + u2 > 0:
            assert abs(s - float(Fraction(2*int(shared), 2*int(shared) + int(u1) + int(u2)))) <= 1e-12
            assert (s == 1.0) == (u1 == 0 and u2 == 0 and shared > 0)


def test_score_increases_with_shared():
    rng = np.random.default_rng(seed=1)
    for u1, u2 in rng.integers(0, 50, size=(200, 2)):
        if u1 + u2 == 0:
            continue
        values = [score_counts(shared, int(u1), int(u2)) for shared in range(30)]
        assert all(a < b for a, b in zip(values, values[1:]))


# Matrix

def test_matrix_validation():
    with pytest.raises(uc.ContractViolation):
        uc.SimilarityMatrix([[1.0, 0.5], [0.4, 1.0]])  # not symmetric
    with pytest.raises(uc.ContractViolation):
        uc.SimilarityMatrix([[0.9, 0.5], [0.5, 1.0]])  # diagonal
    with pytest.raises(uc.ContractViolation):
        uc.SimilarityMatrix([[1.0, 1.5], [1.5, 1.0]])  # range
    with pytest.raises(uc.ContractViolation):
        uc.SimilarityMatrix([[1.0, 0.5, 0.5], [0.5, 1.0, 0.5]])  # shape
    with pytest.raises(uc.ContractViolation):
        uc.SimilarityMatrix([[1.0]], labels=["a", "b"])


def test_matrix_is_read_only():
    m = uc.SimilarityMatrix.from_array(np.eye(2))
    with pytest.raises(ValueError):
        m.scores[0, 1] = 0.5


def test_empty_matrix():
    assert uc.SimilarityMatrix([]).n == 0
    assert uc.build_matrix([]).n == 0


def test_matrix_to_csv():
    m = uc.SimilarityMatrix([[1.0, 0.25], [0.25, 1.0]], labels=["A.java:3", "B.java:7"])
    csv = m.to_csv()
    assert csv.splitlines()[0] == ",A.java:3,B.java:7"
    assert csv.splitlines()[1] == "A.java:3,1.000000,0.250000"
    assert isinstance(m.to_dataframe(), pd.DataFrame)


def test_single_usage_matrix():
    usages = usages_in("small", arity_filter=2)
    assert len(usages) == 1
    m = uc.build_matrix(usages)
    np.testing.assert_array_equal(m.scores, [[1.0]])


def test_usages_in_the_same_method():
    usages = usages_in("small")[:2]  # both calls in Buffers.grow
    assert usages[0].context.root is usages[1].context.root
    m = uc.build_matrix(usages)
    np.testing.assert_array_equal(m.scores, np.ones((2, 2)))


def test_matrix_matches_pairwise_scores():
    usages = usages_in("small")
    m = uc.build_matrix(usages)
    assert m.n == 3
    assert m.labels == [u.location for u in usages]
    for i in range(3):
        for j in range(3):
            if i < j:
                expected = uc.score(uc.diff(usages[i].context, usages[j].context))
                assert m[i, j] == m[j, i] == pytest.approx(expected, abs=1e-12)
    np.testing.assert_array_equal(np.diag(m.scores), np.ones(3))


def test_two_from_a_template_and_one_unrelated():
    usages = usages_in("guava_mini")
    maps = [u for u in usages if u.file.endswith("Maps.java") and not u.file.endswith("Multimaps.java")]
    lists = [u for u in usages if u.file.endswith("Lists.java")]
    selection = sorted([maps[0], maps[1], lists[0]], key=lambda u: u.sort_key)
    m = uc.build_matrix(selection)
    same_template = [(i, j) for i in range(3) for j in range(i+1, 3) if selection[i].file == selection[j].file]
    assert len(same_template) == 1
    for i in range(3):
        for j in range(i+1, 3):
            if (i, j) in same_template:
                assert m[i, j] > 0.88
            else:
                assert m[i, j] < 0.88


def test_unsorted_usages():
    usages = usages_in("small")
    with pytest.raises(uc.ContractViolation):
        uc.build_matrix(usages[::-1])


def test_parallel_matrix():
    pytest.importorskip("joblib")
    usages = usages_in("guava_mini")[:8]
    sequential = uc.build_matrix(usages, n_jobs=1)
    parallel = uc.build_matrix(usages, n_jobs=2)
    np.testing.assert_allclose(sequential.scores, parallel.scores, rtol=0.0, atol=1e-12)


def test_formatting_does_not_change_the_tree_similarity():
    grammar = uc.JavaGrammar()
    compact = b"class A { int f(int x) { return g(x + 1); } }"
    formatted = b"""class A {
    // Increment then call g.
    int f(int x) {
        return g(
            x + 1
        );
    }
}"""
    t1, t2 = grammar.parse(compact), grammar.parse(formatted)
    assert uc.score(uc.diff(t1, t2)) == 1.0
    assert edit_similarity(compact.decode(), formatted.decode()) < 0.8
