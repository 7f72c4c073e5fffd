"""Interlacing pairs and their labelled interlacing patterns.

Vertices sit on two staggered rows: ``top`` carries lambda_1..lambda_{n+1},
``bottom`` carries mu_1..mu_n, with bottom vertex i between top vertices i
and i+1. Edges join nearest neighbours with equal labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import RationalLike, as_rational, rat_to_json

TOP = "top"
BOTTOM = "bottom"

W_SHAPE = "W"
M_SHAPE = "M"
P_SHAPE = "P"


class InterlacingError(ValueError):
    """Input spectra are not a valid interlacing pair.

    ``kind`` is one of ``"length"``, ``"monotone"``, ``"interlacing"``;
    ``index`` is the 1-based position of the offending inequality, if any.
    """

    def __init__(self, message: str, kind: str, index: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.index = index


@dataclass(frozen=True)
class SpectrumPair:
    lam: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.mu)


@dataclass(frozen=True)
class MultisetStats:
    distinct: tuple[Fraction, ...]
    multiplicity: dict[Fraction, int]

    @property
    def m(self) -> int:
        return len(self.distinct)


def _check_non_increasing(seq: Sequence[Fraction], name: str) -> None:
    for i in range(len(seq) - 1):
        if seq[i] < seq[i + 1]:
            raise InterlacingError(
                f"{name} is not non-increasing: {name}_{i + 1} = {seq[i]} < "
                f"{name}_{i + 2} = {seq[i + 1]}",
                kind="monotone",
                index=i + 1,
            )


def validate_interlacing(
    lam: Iterable[RationalLike], mu: Iterable[RationalLike]
) -> SpectrumPair:
    lam = tuple(as_rational(v) for v in lam)
    mu = tuple(as_rational(v) for v in mu)
    if len(mu) < 1 or len(lam) != len(mu) + 1:
        raise InterlacingError(
            f"need len(lambda) = len(mu) + 1 with len(mu) >= 1, got "
            f"{len(lam)} and {len(mu)}",
            kind="length",
        )
    _check_non_increasing(lam, "lambda")
    _check_non_increasing(mu, "mu")
    for i, m in enumerate(mu, start=1):
        if lam[i - 1] < m:
            raise InterlacingError(
                f"violated lambda_{i} >= mu_{i}: {lam[i - 1]} < {m}",
                kind="interlacing",
                index=i,
            )
        if m < lam[i]:
            raise InterlacingError(
                f"violated mu_{i} >= lambda_{i + 1}: {m} < {lam[i]}",
                kind="interlacing",
                index=i,
            )
    return SpectrumPair(lam, mu)


def multiset_stats(seq: Iterable[RationalLike]) -> MultisetStats:
    seq = [as_rational(v) for v in seq]
    counts = Counter(seq)
    distinct = tuple(sorted(counts, reverse=True))
    return MultisetStats(distinct, {v: counts[v] for v in distinct})


Vertex = tuple[str, int]


@dataclass(frozen=True)
class Component:
    label: Fraction
    top_count: int
    bottom_count: int
    shape: str
    vertices: tuple[Vertex, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class InterlacingPattern:
    pair: SpectrumPair
    edges: tuple[tuple[Vertex, Vertex], ...]
    components: tuple[Component, ...]

    @property
    def vertices(self) -> list[tuple[str, int, Fraction]]:
        out = [(TOP, i, v) for i, v in enumerate(self.pair.lam, start=1)]
        out += [(BOTTOM, i, v) for i, v in enumerate(self.pair.mu, start=1)]
        return out

    def component(self, label: RationalLike) -> Component:
        label = as_rational(label)
        for comp in self.components:
            if comp.label == label:
                return comp
        raise KeyError(f"no component labelled {label}")

    def shape_of(self, label: RationalLike) -> str:
        return self.component(label).shape

    def labels(self, shape: str) -> list[Fraction]:
        """Labels of components of the given shape, decreasing."""
        return [c.label for c in self.components if c.shape == shape]

    def shape_signature(self) -> tuple[tuple[str, int, int], ...]:
        return tuple(sorted((c.shape, c.top_count, c.bottom_count) for c in self.components))


def classify(top_count: int, bottom_count: int) -> str:
    if top_count == bottom_count + 1:
        return W_SHAPE
    if bottom_count == top_count + 1:
        return M_SHAPE
    if top_count == bottom_count and top_count >= 1:
        return P_SHAPE
    raise ValueError(f"not an interlacing component: {top_count} top, {bottom_count} bottom")


def nearest_neighbour_pairs(n: int) -> list[tuple[Vertex, Vertex]]:
    """All vertex pairs that may carry an edge, for a pattern with n bottom vertices."""
    pairs: list[tuple[Vertex, Vertex]] = []
    for i in range(1, n + 1):
        pairs.append(((TOP, i), (TOP, i + 1)))
        pairs.append(((TOP, i), (BOTTOM, i)))
        pairs.append(((TOP, i + 1), (BOTTOM, i)))
    for i in range(1, n):
        pairs.append(((BOTTOM, i), (BOTTOM, i + 1)))
    return pairs


def connected_components(
    vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]]
) -> list[list[Vertex]]:
    parent: dict[Vertex, Vertex] = {v: v for v in vertices}

    def find(v: Vertex) -> Vertex:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict[Vertex, list[Vertex]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def chain_position(v: Vertex) -> int:
    """Position in the chain lambda_1, mu_1, lambda_2, mu_2, ..."""
    row, i = v
    return 2 * (i - 1) if row == TOP else 2 * i - 1


def build_pattern(pair: SpectrumPair) -> InterlacingPattern:
    lam, mu = pair.lam, pair.mu

    def label(v: Vertex) -> Fraction:
        return lam[v[1] - 1] if v[0] == TOP else mu[v[1] - 1]

    edges = tuple(
        (a, b) for a, b in nearest_neighbour_pairs(pair.n) if label(a) == label(b)
    )
    verts = [(TOP, i) for i in range(1, pair.n + 2)] + [(BOTTOM, i) for i in range(1, pair.n + 1)]
    comps = []
    for group in connected_components(verts, edges):
        group.sort(key=chain_position)
        tops = sum(1 for v in group if v[0] == TOP)
        bottoms = len(group) - tops
        comps.append(
            Component(label(group[0]), tops, bottoms, classify(tops, bottoms), tuple(group))
        )
    comps.sort(key=lambda c: chain_position(c.vertices[0]))
    return InterlacingPattern(pair, edges, tuple(comps))


def sum_identity_residual(pair: SpectrumPair, pattern: InterlacingPattern | None = None) -> Fraction:
    """(sum lambda - sum mu) minus (sum of W labels - sum of M labels); always zero."""
    pattern = pattern or build_pattern(pair)
    lhs = sum(pair.lam, Fraction(0)) - sum(pair.mu, Fraction(0))
    rhs = sum(pattern.labels(W_SHAPE), Fraction(0)) - sum(pattern.labels(M_SHAPE), Fraction(0))
    return lhs - rhs


def pattern_to_json(pattern: InterlacingPattern) -> dict:
    def vkey(v: Vertex) -> dict:
        return {"row": v[0], "index": v[1]}

    vertices = []
    for row, i, lab in pattern.vertices:
        x = i - 1 if row == TOP else i - 0.5
        y = 0 if row == TOP else -1
        vertices.append({"row": row, "index": i, "label": rat_to_json(lab), "x": x, "y": y})
    return {
        "vertices": vertices,
        "edges": [[vkey(a), vkey(b)] for a, b in pattern.edges],
        "components": [
            {
                "label": rat_to_json(c.label),
                "shape": c.shape,
                "top_count": c.top_count,
                "bottom_count": c.bottom_count,
            }
            for c in pattern.components
        ],
    }
