import pytest

import numpy as np

import usageclusters as uc
from usageclusters.diff.matchers import compute_mapping
from usageclusters.io.sexpr import dumps, loads
from tree_factories import random_tree, random_tree_pair


def tree(text):
    return uc.SyntaxTree(loads(text))


FIVE = '(a (b (c "x") (d "y") (e "z")))'
SIX = '(f (g "w") (b (c "x") (d "y") (e "z")))'

METHOD_16 = ('(method_declaration (identifier "foo") (block'
             ' (expression_statement (method_invocation (identifier "init") (decimal_integer_literal "16")))'
             ' (return_statement (parenthesized_expression (binary_expression (identifier "a") (identifier "b"))))))')
METHOD_32 = METHOD_16.replace('"16"', '"32"')


def check_mapping(mapping, t1, t2):
    nodes1 = {id(n) for n in t1.nodes}
    nodes2 = {id(n) for n in t2.nodes}
    sources = [n1 for n1, _ in mapping.pairs()]
    destinations = [n2 for _, n2 in mapping.pairs()]
    assert len({id(n) for n in sources}) == len(sources)
    assert len({id(n) for n in destinations}) == len(destinations)
    assert all(id(n) in nodes1 for n in sources)
    assert all(id(n) in nodes2 for n in destinations)
    assert all(n1.label == n2.label for n1, n2 in mapping.pairs())


# MatcherConfig and NodeMapping

def test_default_matcher_config():
    cfg = uc.MatcherConfig()
    assert cfg.min_height == 2
    assert cfg.dice_threshold == 0.5
    assert cfg.exportable_settings == {"min_height": 2, "dice_threshold": 0.5}


@pytest.mark.parametrize("kwargs", [{"min_height": 0}, {"min_height": 1.5}, {"dice_threshold": 0.0}, {"dice_threshold": 1.2}])
def test_invalid_matcher_config(kwargs):
    with pytest.raises(ValueError):
        uc.MatcherConfig(**kwargs)


def test_mapping_rejects_different_labels():
    mapping = uc.NodeMapping()
    with pytest.raises(uc.ContractViolation):
        mapping.add(uc.SyntaxNode("a"), uc.SyntaxNode("b"))


def test_mapping_is_injective():
    a1, a2, a3 = uc.SyntaxNode("a"), uc.SyntaxNode("a"), uc.SyntaxNode("a")
    mapping = uc.NodeMapping()
    mapping.add(a1, a2)
    with pytest.raises(uc.ContractViolation):
        mapping.add(a1, a3)
    with pytest.raises(uc.ContractViolation):
        mapping.add(a3, a2)
    assert len(mapping) == 1
    assert (a1, a2) in mapping


def test_mapping_copy_is_independent():
    mapping = uc.NodeMapping()
    mapping.add(uc.SyntaxNode("a"), uc.SyntaxNode("a"))
    other = mapping.copy()
    other.add(uc.SyntaxNode("b"), uc.SyntaxNode("b"))
    assert len(mapping) == 1 and len(other) == 2


def test_diff_result_counts_are_non_negative():
    with pytest.raises(uc.ContractViolation):
        uc.DiffResult(shared=1, unmatched1=-1, unmatched2=0)


# Top-down phase

def test_top_down_same_tree():
    t = tree(METHOD_16)
    mapping = uc.match_top_down(t, t, uc.MatcherConfig())
    assert len(mapping) == t.node_count


def test_top_down_identical_small_trees_below_min_height():
    t1, t2 = tree('(identifier "x")'), tree('(identifier "x")')
    assert len(uc.match_top_down(t1, t2, uc.MatcherConfig(min_height=2))) == 1


def test_top_down_nothing_high_enough():
    t1, t2 = tree('(a (b "x") (c "y"))'), tree('(a (b "x") (c "z"))')
    assert len(uc.match_top_down(t1, t2, uc.MatcherConfig(min_height=2))) == 0


def test_top_down_with_min_height_one():
    t1, t2 = tree('(a (b "x") (c "y"))'), tree('(a (b "x") (c "z"))')
    mapping = uc.match_top_down(t1, t2, uc.MatcherConfig(min_height=1))
    assert len(mapping) == 1
    assert mapping.dst(t1.root.children[0]) is t2.root.children[0]


def test_top_down_two_candidate_copies():
    t1 = tree('(r (p (x "1") (y "2")))')
    t2 = tree('(r (p (x "1") (y "2")) (p (x "1") (y "2")))')
    mapping = uc.match_top_down(t1, t2, uc.MatcherConfig())
    assert len(mapping) == 3
    first_copy, second_copy = t2.root.children
    assert mapping.dst(t1.root.children[0]) is first_copy
    assert not mapping.has_dst(second_copy)


def test_top_down_prefers_candidate_with_similar_parent():
    # The second copy of (p ...) in t2 sits in a container similar to the one in t1.
    t1 = tree('(r (s (k (m "1") (n "2")) (p (x "1") (y "2"))))')
    t2 = tree('(r (p (x "1") (y "2")) (s (k (m "1") (n "2")) (p (x "1") (y "2")) (q "9")))')
    mapping = uc.match_top_down(t1, t2, uc.MatcherConfig())
    p1 = t1.root.children[0].children[1]
    p2 = t2.root.children[1].children[1]
    assert mapping.dst(p1) is p2


def test_top_down_unique_subtree():
    t1, t2 = tree(FIVE), tree(SIX)
    mapping = uc.match_top_down(t1, t2, uc.MatcherConfig())
    assert len(mapping) == 4
    assert mapping.dst(t1.root.children[0]) is t2.root.children[1]


# Bottom-up phase

def test_bottom_up_total_mapping_unchanged():
    t = tree(METHOD_16)
    partial = uc.match_top_down(t, t, uc.MatcherConfig())
    completed = uc.match_bottom_up(t, t, partial, uc.MatcherConfig())
    assert completed.pairs() == partial.pairs()


def test_bottom_up_maps_containers():
    t1, t2 = tree(METHOD_16), tree(METHOD_32)
    cfg = uc.MatcherConfig()
    partial = uc.match_top_down(t1, t2, cfg)
    assert len(partial) == 5  # the return statement
    completed = uc.match_bottom_up(t1, t2, partial, cfg)
    assert len(partial) == 5  # not modified
    assert len(completed) == 7
    block1, block2 = t1.root.children[1], t2.root.children[1]
    assert completed.dst(block1) is block2
    assert completed.dst(t1.root) is t2.root
    check_mapping(completed, t1, t2)


def test_bottom_up_requires_mapped_descendants():
    t1, t2 = tree('(a (b "x"))'), tree('(a (c "y"))')
    cfg = uc.MatcherConfig()
    completed = uc.match_bottom_up(t1, t2, uc.match_top_down(t1, t2, cfg), cfg)
    assert len(completed) == 0


def test_bottom_up_dice_threshold():
    t1, t2 = tree(METHOD_16), tree(METHOD_32)
    # The block has a dice coefficient of 10/18 and the method of 12/22.
    completed = compute_mapping(t1, t2, uc.MatcherConfig(dice_threshold=0.56))
    assert len(completed) == 5


# Full diff

def test_diff_identical_ten_nodes():
    text = '(a (b (c "1") (d "2")) (e (f "3") (g (h "4") (i "5"))) (j "6"))'
    d = uc.diff(tree(text), tree(text))
    assert (d.shared, d.unmatched1, d.unmatched2) == (10, 0, 0)


def test_diff_disjoint_labels():
    t1, t2 = tree('(a (b (c "x")) (d "y"))'), tree('(w (x (y "x")) (z "y"))')
    d = uc.diff(t1, t2)
    assert (d.shared, d.unmatched1, d.unmatched2) == (0, 4, 4)


@pytest.mark.parametrize("first, second, expected", [
    (FIVE, SIX, (4, 1, 2)),
    (SIX, FIVE, (4, 2, 1)),
    ('(r (p (x "1") (y "2")))', '(r (p (x "1") (y "2")) (p (x "1") (y "2")))', (4, 0, 3)),
    (METHOD_16, METHOD_32, (7, 5, 5)),
])
def test_diff_hand_traced(first, second, expected):
    d = uc.diff(tree(first), tree(second))
    assert (d.shared, d.unmatched1, d.unmatched2) == expected


def test_diff_accepts_nodes():
    d = uc.diff(loads(FIVE), loads(SIX))
    assert d.shared == 4


def test_diff_is_deterministic():
    t1, t2 = tree(METHOD_16), tree(METHOD_32)
    assert uc.diff(t1, t2) == uc.diff(t1, t2)


def test_diff_invariants_on_random_pairs():
    rng = np.random.default_rng(seed=42)
    cfg = uc.MatcherConfig()
    for _ in range(500):
        t1, t2 = random_tree_pair(rng, max_nodes=60)
        d = uc.diff(t1, t2, cfg)
        assert d.shared + d.unmatched1 == t1.node_count
        assert d.shared + d.unmatched2 == t2.node_count
        assert d.shared == len(d.mapping)
        check_mapping(d.mapping, t1, t2)


def test_diff_with_itself_is_total():
    rng = np.random.default_rng(seed=43)
    for _ in range(200):
        t = random_tree(rng, max_nodes=60)
        d = uc.diff(t, t)
        assert (d.unmatched1, d.unmatched2) == (0, 0)
        # Also for an equal copy of the tree
        copy = uc.SyntaxTree(loads(dumps(t.root)))
        assert uc.diff(t, copy).shared == t.node_count


@pytest.mark.parametrize("first, second, expected", [
    ('(a (b (c "x")) (d "y"))', '(w (x (y "x")) (z "y"))', (0, 4, 4)),
    ('(a (p (c "x") (d "y")) (b (c "x") (d "y")))', '(a (p (c "x") (d "v")) (b (c "x") (d "y")))', (3, 4, 4)),
    (FIVE, SIX, (4, 1, 2)),
    (METHOD_16, METHOD_32, (7, 5, 5)),
])
def test_diff_with_colliding_hashes(monkeypatch, first, second, expected):
    d = uc.diff(tree(first), tree(second))
    assert (d.shared, d.unmatched1, d.unmatched2) == expected
    monkeypatch.setattr("usageclusters.trees.metrics._hash_node", lambda label, value, children_hashes: "0" * 32)
    d = uc.diff(tree(first), tree(second))
    assert (d.shared, d.unmatched1, d.unmatched2) == expected
