"""The canonical point over diag(mu) and exact orbit-membership checks.

A point of the fibre over M = diag(mu) is the bordered matrix

    [[c,  z^H],
     [z,  M  ]]

and only the squared norms of the blocks of z (grouped by equal mu
values) matter for membership, so the exact checks never take a square
root. Floats appear only in :func:`render_numeric`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmath import PolyQ, poly_from_roots, prod_linear, rat_to_json
from .normalform import all_r_squared, compute_c
from .pattern import M_SHAPE, W_SHAPE, InterlacingPattern, SpectrumPair, build_pattern, multiset_stats


@dataclass(frozen=True)
class PointBlock:
    mu_value: Fraction
    size: int
    z_norm_squared: Fraction


@dataclass(frozen=True)
class PointSpec:
    c: Fraction
    blocks: tuple[PointBlock, ...]

    def __post_init__(self):
        for b in self.blocks:
            if b.z_norm_squared < 0:
                raise ValueError(f"negative squared norm at mu = {b.mu_value}")
            if b.size < 1:
                raise ValueError("block sizes must be positive")

    @property
    def order(self) -> int:
        return 1 + sum(b.size for b in self.blocks)

    def with_norm(self, mu_value: Fraction, z_norm_squared: Fraction) -> "PointSpec":
        return PointSpec(
            self.c,
            tuple(
                PointBlock(b.mu_value, b.size, z_norm_squared) if b.mu_value == mu_value else b
                for b in self.blocks
            ),
        )


class HermitianMatrix:
    """Dense complex Hermitian matrix; symmetrized on construction."""

    __slots__ = ("entries",)

    def __init__(self, entries, atol: float = 1e-9):
        a = np.array(entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
        scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
        if dev > atol * scale:
            raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e})")
        if dev:
            a = (a + a.conj().T) / 2
        a.setflags(write=False)
        self.entries = a

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __repr__(self) -> str:
        return f"HermitianMatrix(order={self.order})"


def build_point_spec(pair: SpectrumPair, pattern: InterlacingPattern | None = None) -> PointSpec:
    r2 = all_r_squared(pair, pattern)
    stats = multiset_stats(pair.mu)
    return PointSpec(
        compute_c(pair),
        tuple(PointBlock(v, stats.multiplicity[v], r2[v]) for v in stats.distinct),
    )


def charpoly_rhs(spec: PointSpec) -> PolyQ:
    """Characteristic polynomial of the bordered point, written in terms of block norms."""
    factors = {b.mu_value: PolyQ.linear(b.mu_value) ** b.size for b in spec.blocks}
    full = PolyQ.const(1)
    for f in factors.values():
        full = full * f
    result = PolyQ.linear(spec.c) * full
    for b in spec.blocks:
        if b.z_norm_squared == 0:
            continue
        term = PolyQ.linear(b.mu_value) ** (b.size - 1)
        for other in spec.blocks:
            if other.mu_value != b.mu_value:
                term = term * factors[other.mu_value]
        result = result - term * b.z_norm_squared
    return result


def lambda_polynomial(pair: SpectrumPair) -> PolyQ:
    stats = multiset_stats(pair.lam)
    return poly_from_roots((v, stats.multiplicity[v]) for v in stats.distinct)


def membership_check(pair: SpectrumPair, spec: PointSpec) -> bool:
    """True iff the bordered point described by ``spec`` has spectrum lambda."""
    return charpoly_rhs(spec) == lambda_polynomial(pair)


def reduced_polynomials(
    pair: SpectrumPair, pattern: InterlacingPattern | None = None
) -> tuple[PolyQ, PolyQ]:
    """Both sides of the reduced identity over W-shape and M-shape labels."""
    pattern = pattern or build_pattern(pair)
    r2 = all_r_squared(pair, pattern)
    m_labels = pattern.labels(M_SHAPE)
    lhs = prod_linear(pattern.labels(W_SHAPE))
    rhs = PolyQ.linear(compute_c(pair)) * prod_linear(m_labels)
    for mu in m_labels:
        rhs = rhs - prod_linear([t for t in m_labels if t != mu]) * r2[mu]
    return lhs, rhs


def reduced_identity_check(pair: SpectrumPair, pattern: InterlacingPattern | None = None) -> bool:
    lhs, rhs = reduced_polynomials(pair, pattern)
    return lhs == rhs


def factorization_check(pair: SpectrumPair, pattern: InterlacingPattern | None = None) -> bool:
    """Divide the canonical charpoly by its repeated part; the quotient must be the reduced polynomial."""
    pattern = pattern or build_pattern(pair)
    spec = build_point_spec(pair, pattern)
    divisor = PolyQ.const(1)
    for b in spec.blocks:
        k = b.size - 1 if pattern.shape_of(b.mu_value) == M_SHAPE else b.size
        divisor = divisor * PolyQ.linear(b.mu_value) ** k
    quot, rem = charpoly_rhs(spec).divmod(divisor)
    _, reduced = reduced_polynomials(pair, pattern)
    return rem.is_zero() and quot == reduced and quot.degree == len(pattern.labels(M_SHAPE)) + 1


def render_numeric(spec: PointSpec) -> HermitianMatrix:
    N = spec.order
    a = np.zeros((N, N), dtype=complex)
    a[0, 0] = float(spec.c)
    k = 1
    for b in spec.blocks:
        for j in range(b.size):
            a[k + j, k + j] = float(b.mu_value)
        if b.z_norm_squared:
            r = _sqrt_fraction(b.z_norm_squared)
            a[k, 0] = r
            a[0, k] = r
        k += b.size
    return HermitianMatrix(a)


def _sqrt_fraction(q: Fraction) -> float:
    # Correctly rounded for perfect squares, and avoids float overflow on big terms.
    p, d = q.numerator, q.denominator
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp == p and rd * rd == d:
        return rp / rd
    return math.sqrt(p / d)


def moment_projection(m: HermitianMatrix) -> HermitianMatrix:
    """Bottom-right principal submatrix of one order less."""
    if m.order < 2:
        raise ValueError("moment projection needs order >= 2")
    return HermitianMatrix(m.entries[1:, 1:].copy())


def point_spec_to_json(spec: PointSpec) -> dict:
    return {
        "c": rat_to_json(spec.c),
        "blocks": [
            {
                "mu_value": rat_to_json(b.mu_value),
                "size": b.size,
                "z_norm_squared": rat_to_json(b.z_norm_squared),
            }
            for b in spec.blocks
        ],
    }


def matrix_to_json(m: HermitianMatrix) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in m.entries]


def matrix_from_json(rows: list) -> HermitianMatrix:
    return HermitianMatrix([[complex(re, im) for re, im in row] for row in rows])
