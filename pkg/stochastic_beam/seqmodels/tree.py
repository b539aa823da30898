"""Explicit probability tree model"""
import math

from typing import Dict, Iterable, List, NamedTuple

from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.exceptions.model import ModelException
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.stable_math import NEG_INF
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq
from stochastic_beam.settings import Settings


class Edge(NamedTuple):
    """Edge of the tree file: parent node, child node, token and conditional probability."""
    parent: int
    child: int
    token: int
    prob: float


class ExplicitTreeModel(SequenceModel):
    """Sequence model given by an explicit tree of conditional probabilities.

    Every path from the root (node 0) to a leaf is a complete sequence. The EOS id is one
    past the largest token id in the file and is only used for padding.

    Attributes:
        children: node id -> {token: (child id, conditional probability)}
    """

    ROOT: int = 0

    def __init__(self, edges: Iterable[Edge]) -> None:
        self.children: Dict[int, Dict[int, tuple]] = {}
        parents: Dict[int, int] = {}
        max_token = -1
        for edge in edges:
            if edge.child == self.ROOT or edge.child in parents:
                raise ModelException(f'node {edge.child} has more than one parent or closes a cycle')
            if not 0.0 <= edge.prob <= 1.0:
                raise ModelException(f'probability {edge.prob} of edge {edge.parent}->{edge.child} outside [0, 1]')
            if edge.token < 0:
                raise ModelException(f'negative token id {edge.token}')
            node = self.children.setdefault(edge.parent, {})
            if edge.token in node:
                raise ModelException(f'node {edge.parent} has two children with token {edge.token}')
            node[edge.token] = (edge.child, edge.prob)
            parents[edge.child] = edge.parent
            max_token = max(max_token, edge.token)

        if self.ROOT not in self.children:
            raise ModelException('tree has no edges leaving the root node 0')
        reachable = {self.ROOT}
        frontier = [self.ROOT]
        while frontier:
            for child, _ in self.children.get(frontier.pop(), {}).values():
                reachable.add(child)
                frontier.append(child)
        unreachable = (set(self.children) | set(parents)) - reachable
        if unreachable:
            raise ModelException(f'nodes {sorted(unreachable)} are not reachable from the root')
        for parent, node in self.children.items():
            total = math.fsum(prob for _, prob in node.values())
            if abs(total - 1.0) > Settings.NORMALIZATION_TOL:
                raise ModelException(f'conditionals of node {parent} sum to {total}, not 1')

        self.eos = max_token + 1
        self.vocab_size = self.eos + 1
        self.max_len = self._depth(self.ROOT)

    def _depth(self, node: int) -> int:
        depth = 0
        frontier = [(node, 0)]
        while frontier:
            current, level = frontier.pop()
            depth = max(depth, level)
            for child, _ in self.children.get(current, {}).values():
                frontier.append((child, level + 1))
        return depth

    def node_of(self, prefix: TokenSeq) -> int:
        """Node reached by following the tokens of `prefix` from the root.

        Raises:
            DomainException: the prefix leaves the tree
        """
        node = self.ROOT
        for token in prefix:
            if token == self.eos and node not in self.children:
                continue
            try:
                node = self.children[node][token][0]
            except KeyError:
                raise DomainException(f'prefix {prefix} is not a path of the tree')
        return node

    def is_leaf(self, node: int) -> bool:
        return node not in self.children

    def is_complete(self, prefix: TokenSeq) -> bool:
        return len(prefix) >= self.max_len or self.is_leaf(self.node_of(prefix))

    def logits(self, prefix: TokenSeq) -> List[float]:
        scores = [NEG_INF] * self.vocab_size
        for token, (_, prob) in self.children[self.node_of(prefix)].items():
            scores[token] = math.log(prob) if prob > 0.0 else NEG_INF
        return scores


def parse_tree(lines: Iterable[str]) -> ExplicitTreeModel:
    """Build a tree model from lines `parent_id child_id token_id cond_prob`.

    Raises:
        ModelException
    """
    edges: List[Edge] = []
    for number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        col = line.split()
        if len(col) != 4:
            raise ModelException(f'line {number}: expected 4 columns, got {len(col)}')
        try:
            edges.append(Edge(int(col[0]), int(col[1]), int(col[2]), float(col[3])))
        except ValueError as ex:
            raise ModelException(f'line {number}: {ex}')
    return ExplicitTreeModel(edges)


def load_tree_model(path: str) -> ExplicitTreeModel:
    """Read a tree model file.

    Raises:
        ModelException
    """
    try:
        with open(path, 'r', encoding='utf-8') as tree_file:
            return parse_tree(tree_file)
    except (IOError, UnicodeDecodeError) as ex:
        raise ModelException(ex)


def random_tree(stream: RandomStream, max_depth: int = 3, max_children: int = 3,
                grow: float = 0.7) -> ExplicitTreeModel:
    """Random tree with up to `max_children` children per node and random conditionals.

    The root always has children; any other node above `max_depth` has children with
    probability `grow`.
    """
    edges: List[Edge] = []
    frontier = [(ExplicitTreeModel.ROOT, 0)]
    next_id = 1
    while frontier:
        node, depth = frontier.pop(0)
        if depth >= max_depth or (depth > 0 and stream.uniform() >= grow):
            continue
        count = 1 + int(stream.uniform() * max_children)
        weights = [0.05 + u for u in stream.uniforms(count)]
        total = math.fsum(weights)
        for token, weight in enumerate(weights):
            edges.append(Edge(node, next_id, token, weight / total))
            frontier.append((next_id, depth + 1))
            next_id += 1
    return ExplicitTreeModel(edges)
