from __future__ import annotations
from typing import Dict, Generic, Hashable, Iterable, List, TypeVar

T = TypeVar('T', bound=Hashable)


class UnionFind(Generic[T]):
    """
    Система непересекающихся множеств со сжатием путей.

    Представитель класса всегда минимальный элемент, поэтому результат
    не зависит от порядка объединений.
    """

    def __init__(self, items: Iterable[T] = ()) -> None:
        self._parent: Dict[T, T] = {}
        for item in items:
            self.add(item)

    def add(self, item: T) -> None:
        self._parent.setdefault(item, item)

    def __contains__(self, item: object) -> bool:
        return item in self._parent

    def find(self, item: T) -> T:
        root = item
        while self._parent[root] != root:
            root = self._parent[root]

        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]

        return root

    def union(self, a: T, b: T) -> T:
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return root_a

        root, child = (root_a, root_b) if root_a < root_b else (root_b, root_a)
        self._parent[child] = root
        return root

    def classes(self) -> Dict[T, List[T]]:
        result: Dict[T, List[T]] = {}
        for item in sorted(self._parent):
            result.setdefault(self.find(item), []).append(item)
        return result
