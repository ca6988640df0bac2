"""Flat word-level hypernym graph standing in for a full lexical database.

The backing file is tab-separated ``child<TAB>parent`` pairs, one edge
per line, ``#`` comments allowed. Categories used by rule constraints
("person", "group", "language") are ordinary nodes in the same
namespace as the words below them.
"""
from __future__ import annotations

from pathlib import Path

from .errors import BadRow, CycleDetected


class TaxonomyGraph:
    def __init__(self, edges: list[tuple[str, str]]):
        self._parents: dict[str, list[str]] = {}
        for child, parent in edges:
            bucket = self._parents.setdefault(child, [])
            if parent not in bucket:
                bucket.append(parent)
        self._check_acyclic()
        self._ancestors: dict[str, frozenset] = {}

    def _check_acyclic(self):
        # 0/absent = unvisited, 1 = on the current path, 2 = done
        color: dict[str, int] = {}
        path: list[str] = []

        def visit(node: str):
            color[node] = 1
            path.append(node)
            for parent in self._parents.get(node, []):
                state = color.get(parent, 0)
                if state == 1:
                    raise CycleDetected(path[path.index(parent):] + [parent])
                if state == 0:
                    visit(parent)
            path.pop()
            color[node] = 2

        for node in list(self._parents):
            if color.get(node, 0) == 0:
                visit(node)

    def hypernyms(self, word: str) -> list[str]:
        """Direct parents only, in file order; unknown words give []."""
        return list(self._parents.get(word, []))

    def ancestors(self, word: str) -> frozenset:
        cached = self._ancestors.get(word)
        if cached is not None:
            return cached
        seen: set[str] = set()
        frontier = list(self._parents.get(word, []))
        while frontier:
            node = frontier.pop()
            if node in seen:
                continue
            seen.add(node)
            frontier.extend(self._parents.get(node, []))
        result = frozenset(seen)
        self._ancestors[word] = result
        return result

    def is_instance(self, word: str, category: str) -> bool:
        if word == category:
            return True
        return category in self.ancestors(word)

    def has_node(self, name: str) -> bool:
        if name in self._parents:
            return True
        return any(name in parents for parents in self._parents.values())

    def __len__(self) -> int:
        return sum(len(parents) for parents in self._parents.values())


def load_taxonomy(path) -> TaxonomyGraph:
    edges: list[tuple[str, str]] = []
    text = Path(path).read_text(encoding="utf-8")
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = [cell.strip() for cell in line.split("\t")]
        if len(cells) < 2 or not cells[0] or not cells[1]:
            raise BadRow(str(path), line_no, "expected child<TAB>parent")
        edges.append((cells[0], cells[1]))
    return TaxonomyGraph(edges)


def is_instance(graph: TaxonomyGraph, word: str, category: str) -> bool:
    return graph.is_instance(word, category)


def hypernyms(graph: TaxonomyGraph, word: str) -> list[str]:
    return graph.hypernyms(word)
