"""Size, height and structural hash of subtrees, and the isomorphism test used by the matchers."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import hashlib
from dataclasses import dataclass

from usageclusters.trees.nodes import SyntaxNode


@dataclass(frozen=True)
class NodeMetrics:
    """Metrics of the subtree rooted at a node.

    Attributes
    ----------
    size: int
        Number of nodes in the subtree.
    height: int
        Number of nodes on the longest root-to-leaf path (a leaf has height 1).
    struct_hash: str
        Order-sensitive digest of the labels, leaf values and shape of the subtree.
    """
    size: int
    height: int
    struct_hash: str


def _hash_node(label, value, children_hashes):
    h = hashlib.blake2b(digest_size=16)
    for part in (label, value):
        encoded = part.encode("utf-8")
        h.update(len(encoded).to_bytes(4, "little"))
        h.update(encoded)
    h.update(len(children_hashes).to_bytes(4, "little"))
    for child_hash in children_hashes:
        h.update(bytes.fromhex(child_hash))
    return h.hexdigest()


def compute_metrics(node: SyntaxNode) -> NodeMetrics:
    """Size, height and structural hash of the subtree rooted at `node`.

    The metrics of all the nodes of the subtree are computed in a single
    postorder traversal and cached on the nodes, since trees are not modified
    after construction.
    """
    if node._metrics is not None:
        return node._metrics
    for n in node.postorder():
        if n._metrics is not None:
            continue
        children_metrics = [child._metrics for child in n.children]
        n._metrics = NodeMetrics(
            size=1 + sum(m.size for m in children_metrics),
            height=1 + max((m.height for m in children_metrics), default=0),
            struct_hash=_hash_node(n.label, n.value, [m.struct_hash for m in children_metrics]),
        )
    return node._metrics


def isomorphic(a: SyntaxNode, b: SyntaxNode) -> bool:
    """True iff both subtrees have the same labels, leaf values and children order.

    Hashes are only used to reject quickly; a positive answer is always
    confirmed by a full structural comparison.
    """
    if a is b:
        return True
    ma, mb = compute_metrics(a), compute_metrics(b)
    if ma.struct_hash != mb.struct_hash or ma.size != mb.size or ma.height != mb.height:
        return False
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x.label != y.label or x.value != y.value or len(x.children) != len(y.children):
            return False
        stack.extend(zip(x.children, y.children))
    return True
