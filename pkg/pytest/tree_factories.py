"""Random trees for the property tests, built through their serialized form
such that the spans of the nodes are consistent."""

import numpy as np

from usageclusters.io.sexpr import loads
from usageclusters.trees.nodes import SyntaxTree


def _random_shape(rng, nb_nodes):
    children = [[] for _ in range(nb_nodes)]
    for i in range(1, nb_nodes):
        children[int(rng.integers(0, i))].append(i)
    return children


def _write(children, labels, values, i=0):
    if len(children[i]) == 0:
        return f'({labels[i]} "{values[i]}")'
    return f"({labels[i]} " + " ".join(_write(children, labels, values, c) for c in children[i]) + ")"


def random_sexpr(rng, max_nodes=30, labels="abcd", values="xy"):
    nb_nodes = int(rng.integers(1, max_nodes + 1))
    children = _random_shape(rng, nb_nodes)
    node_labels = [labels[int(rng.integers(len(labels)))] for _ in range(nb_nodes)]
    node_values = [values[int(rng.integers(len(values)))] for _ in range(nb_nodes)]
    return _write(children, node_labels, node_values)


def random_tree(rng, max_nodes=30, labels="abcd", values="xy"):
    return SyntaxTree(loads(random_sexpr(rng, max_nodes, labels, values)), source_id="<random>")


def random_tree_pair(rng, max_nodes=60):
    """Either two independent trees, or a tree and a mutated copy of it."""
    if rng.random() < 0.5:
        return random_tree(rng, max_nodes), random_tree(rng, max_nodes)
    nb_nodes = int(rng.integers(1, max_nodes + 1))
    children = _random_shape(rng, nb_nodes)
    labels = [str(rng.choice(list("abcd"))) for _ in range(nb_nodes)]
    values = [str(rng.choice(list("xy"))) for _ in range(nb_nodes)]
    mutated_labels = [str(rng.choice(list("abcd"))) if rng.random() < 0.1 else label for label in labels]
    mutated_values = [str(rng.choice(list("xyz"))) if rng.random() < 0.1 else value for value in values]
    t1 = SyntaxTree(loads(_write(children, labels, values)), source_id="<random>")
    t2 = SyntaxTree(loads(_write(children, mutated_labels, mutated_values)), source_id="<random>")
    return t1, t2


def default_rng(seed):
    return np.random.default_rng(seed)
