"""Faces of the polytope of mu interlacing a fixed lambda.

A face is named by its tight set: which of the inequalities
``lambda_i >= mu_i`` (flag ``("up", i)``) and ``mu_i >= lambda_{i+1}``
(flag ``("down", i)``) hold with equality on its relative interior. Tight
sets are closed under forced consequences before comparison; the closed
sets are in bijection with the faces, ordered by reverse inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .exactmath import RationalLike, as_rational, rat_to_json
from .normalform import DimReport, MgsData, compute_mgs, dimension_report
from .pattern import (
    BOTTOM,
    TOP,
    InterlacingError,
    SpectrumPair,
    Vertex,
    chain_position,
    classify,
    connected_components,
    multiset_stats,
    nearest_neighbour_pairs,
    validate_interlacing,
)

MAX_N = 12
UP = "up"
DOWN = "down"

Flag = tuple[str, int]


class EnumerationBoundError(ValueError):
    pass


@dataclass(frozen=True)
class FaceDescriptor:
    tight_set: frozenset[Flag]
    dimension: int
    shape_signature: tuple[tuple[str, int, int], ...]
    representative_mu: tuple[Fraction, ...]


@dataclass(frozen=True)
class FaceLattice:
    lam: tuple[Fraction, ...]
    faces: tuple[FaceDescriptor, ...]
    order_relation: tuple[tuple[int, int], ...]  # Hasse covers (sub-face, super-face) by index

    def f_vector(self) -> tuple[int, ...]:
        top = max(f.dimension for f in self.faces)
        return tuple(sum(1 for f in self.faces if f.dimension == d) for d in range(top + 1))

    def index(self, tight_set: Iterable[Flag]) -> int:
        key = frozenset(tight_set)
        for i, f in enumerate(self.faces):
            if f.tight_set == key:
                return i
        raise KeyError(f"no face with tight set {sorted(key)}")

    def maximal_face(self) -> FaceDescriptor:
        return min(self.faces, key=lambda f: len(f.tight_set))


def _check_lambda(lam: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    lam = tuple(as_rational(v) for v in lam)
    if len(lam) < 2:
        raise InterlacingError("lambda needs at least two entries", kind="length")
    for i in range(len(lam) - 1):
        if lam[i] < lam[i + 1]:
            raise InterlacingError(
                f"lambda is not non-increasing at position {i + 1}", kind="monotone", index=i + 1
            )
    return lam


def close_tight_set(lam: Sequence[RationalLike], flags: Iterable[Flag]) -> frozenset[Flag] | None:
    """Closure of a set of equalities, or None if it contradicts lambda.

    Equal adjacent lambdas pin the mu between them; any mu tight on both
    sides forces its two lambda neighbours equal.
    """
    lam = _check_lambda(lam)
    n = len(lam) - 1
    verts = [(TOP, i) for i in range(1, n + 2)] + [(BOTTOM, i) for i in range(1, n + 1)]
    links: list[tuple[Vertex, Vertex]] = []
    for i in range(1, n + 1):
        if lam[i - 1] == lam[i]:
            links += [((TOP, i), (TOP, i + 1)), ((TOP, i), (BOTTOM, i))]
    for kind, i in flags:
        if not 1 <= i <= n or kind not in (UP, DOWN):
            raise ValueError(f"bad flag {(kind, i)!r}")
        links.append(((TOP, i if kind == UP else i + 1), (BOTTOM, i)))
    cls: dict[Vertex, int] = {}
    for k, group in enumerate(connected_components(verts, links)):
        if len({lam[i - 1] for row, i in group if row == TOP}) > 1:
            return None
        for v in group:
            cls[v] = k
    closed = set()
    for i in range(1, n + 1):
        if cls[(TOP, i)] == cls[(BOTTOM, i)]:
            closed.add((UP, i))
        if cls[(TOP, i + 1)] == cls[(BOTTOM, i)]:
            closed.add((DOWN, i))
    return frozenset(closed)


def _slot_states(lam: tuple[Fraction, ...]) -> list[list[frozenset[Flag]]]:
    """Closed flag sets available to each mu slot; faces are their products."""
    states = []
    for i in range(1, len(lam)):
        if lam[i - 1] == lam[i]:
            states.append([frozenset({(UP, i), (DOWN, i)})])
        else:
            states.append([frozenset({(UP, i)}), frozenset({(DOWN, i)}), frozenset()])
    return states


def _lambda_runs(lam: tuple[Fraction, ...]) -> list[int]:
    """Component id of each top vertex: runs of equal lambda."""
    run = [0] * len(lam)
    for i in range(1, len(lam)):
        run[i] = run[i - 1] + (lam[i - 1] != lam[i])
    return run


def _describe(lam: tuple[Fraction, ...], tight: frozenset[Flag]) -> FaceDescriptor:
    run = _lambda_runs(lam)
    options = _slot_options(lam, run)
    choice = []
    for i, opts in enumerate(options, start=1):
        slot = tight & {(UP, i), (DOWN, i)}
        choice.append(next(o for o in opts if o[0] == slot))
    return _assemble(run, choice)


def _slot_options(lam, run):
    # (flags, mu value, run id the bottom joins or None when free)
    options = []
    for i, flags in enumerate(_slot_states(lam), start=1):
        opts = []
        for f in flags:
            if (UP, i) in f:
                opts.append((f, lam[i - 1], run[i - 1]))
            elif (DOWN, i) in f:
                opts.append((f, lam[i], run[i]))
            else:
                opts.append((f, (lam[i - 1] + lam[i]) / 2, None))
        options.append(opts)
    return options


_FREE_COMPONENT = (classify(0, 1), 0, 1)


def _assemble(run: list[int], choice, _cache: dict = {}) -> FaceDescriptor:
    tops = [0] * (run[-1] + 1)
    for r in run:
        tops[r] += 1
    bottoms = [0] * len(tops)
    free = 0
    tight: set[Flag] = set()
    for flags, _, r in choice:
        tight |= flags
        if r is None:
            free += 1
        else:
            bottoms[r] += 1
    sig = []
    for tb in zip(tops, bottoms):
        shape = _cache.get(tb)
        if shape is None:
            shape = _cache[tb] = (classify(*tb), *tb)
        sig.append(shape)
    sig += [_FREE_COMPONENT] * free
    sig.sort()
    return FaceDescriptor(
        frozenset(tight), free, tuple(sig), tuple(value for _, value, _ in choice)
    )


def enumerate_faces(lam: Iterable[RationalLike], max_n: int = MAX_N) -> FaceLattice:
    lam = _check_lambda(lam)
    n = len(lam) - 1
    if n > max_n:
        raise EnumerationBoundError(f"n = {n} exceeds the enumeration bound {max_n}")
    run = _lambda_runs(lam)
    options = _slot_options(lam, run)
    # Each slot state is closed on its own and slots do not interact, so the
    # product of per-slot states is exactly the set of closed tight sets.
    keys = list(product(*(range(len(o)) for o in options)))
    faces = [_assemble(run, [options[i][j] for i, j in enumerate(key)]) for key in keys]
    order = sorted(range(len(faces)), key=lambda k: faces[k].dimension)
    rank = {keys[k]: pos for pos, k in enumerate(order)}
    covers = []
    for key in keys:
        for i, j in enumerate(key):
            # Options are (up, down, free); pinned up/down relax to free.
            if len(options[i]) == 3 and j < 2:
                covers.append((rank[key], rank[key[:i] + (2,) + key[i + 1 :]]))
    covers.sort()
    return FaceLattice(lam, tuple(faces[k] for k in order), tuple(covers))


def enumerate_faces_bruteforce(lam: Iterable[RationalLike]) -> set[frozenset[Flag]]:
    """All closed feasible tight sets, by closing every one of the 2^(2n) flag subsets."""
    lam = _check_lambda(lam)
    n = len(lam) - 1
    all_flags = [(UP, i) for i in range(1, n + 1)] + [(DOWN, i) for i in range(1, n + 1)]
    out = set()
    for mask in range(1 << len(all_flags)):
        chosen = [f for b, f in enumerate(all_flags) if mask >> b & 1]
        closed = close_tight_set(lam, chosen)
        if closed is not None:
            out.add(closed)
    return out


def is_subface(a: FaceDescriptor, b: FaceDescriptor) -> bool:
    """Face ``a`` lies in the closure of face ``b``."""
    return a.tight_set >= b.tight_set


def face_representative(lam: Iterable[RationalLike], face: FaceDescriptor) -> SpectrumPair:
    return validate_interlacing(_check_lambda(lam), face.representative_mu)


def face_invariants(
    lam: Iterable[RationalLike], face: FaceDescriptor, mu: Sequence[RationalLike] | None = None
) -> tuple[MgsData, DimReport]:
    """Normal form data on a face, at its midpoint representative or at a given interior ``mu``."""
    lam = _check_lambda(lam)
    pair = face_representative(lam, face) if mu is None else validate_interlacing(lam, mu)
    data = compute_mgs(pair)
    return data, dimension_report(data, multiset_stats(pair.lam))


def face_of(pair: SpectrumPair) -> frozenset[Flag]:
    """Tight set of the face whose relative interior contains ``pair.mu``."""
    tight = set()
    for i, m in enumerate(pair.mu, start=1):
        if m == pair.lam[i - 1]:
            tight.add((UP, i))
        if m == pair.lam[i]:
            tight.add((DOWN, i))
    return frozenset(tight)


def close_edge_set(n: int, edges: Iterable[tuple[Vertex, Vertex]]) -> frozenset[frozenset[Vertex]]:
    """Smallest edge set containing ``edges`` that an actual labelling could produce.

    Labels are non-increasing along the chain lambda_1, mu_1, lambda_2, ...,
    so each class of equal labels must be a contiguous run of that chain,
    and every nearest-neighbour pair inside a class carries an edge.
    """
    length = 2 * n + 1
    group = list(range(length))  # class id per chain position

    def find(k: int) -> int:
        while group[k] != k:
            group[k] = group[group[k]]
            k = group[k]
        return k

    for a, b in edges:
        pa, pb = sorted((chain_position(a), chain_position(b)))
        for k in range(pa, pb):
            group[find(k + 1)] = find(k)
    closed = set()
    for a, b in nearest_neighbour_pairs(n):
        if find(chain_position(a)) == find(chain_position(b)):
            closed.add(frozenset((a, b)))
    return frozenset(closed)


def is_unlabelled_pattern(n: int, edges: Iterable[tuple[Vertex, Vertex]]) -> bool:
    edges = list(edges)
    allowed = {frozenset(p) for p in nearest_neighbour_pairs(n)}
    given = {frozenset(e) for e in edges}
    if not given <= allowed:
        return False
    return close_edge_set(n, edges) == given


def lattice_to_json(lattice: FaceLattice, invariants: bool = True) -> dict:
    from .normalform import mgs_to_json

    faces = []
    for f in lattice.faces:
        entry = {
            "dimension": f.dimension,
            "tight_set": [f"{kind}{i}" for kind, i in sorted(f.tight_set, key=lambda t: (t[1], t[0]))],
            "shape_signature": [list(s) for s in f.shape_signature],
            "representative_mu": [rat_to_json(v) for v in f.representative_mu],
        }
        if invariants:
            data, dims = face_invariants(lattice.lam, f)
            entry["invariants"] = mgs_to_json(data, dims)
        faces.append(entry)
    return {
        "lambda": [rat_to_json(v) for v in lattice.lam],
        "f_vector": list(lattice.f_vector()),
        "faces": faces,
        "hasse": [list(e) for e in lattice.order_relation],
    }
