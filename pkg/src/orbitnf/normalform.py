"""Local normal form data (moment value, isotropy subgroup, slice, form).

Everything here is exact. The isotropy subgroup is recorded block by block
as ``(size, pinned)``: a pinned block of size s is the subgroup
diag(1, k), k in U(s-1), of U(s); an unpinned block is all of U(s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import RationalLike, as_rational, rat_to_json
from .pattern import (
    M_SHAPE,
    P_SHAPE,
    W_SHAPE,
    InterlacingPattern,
    MultisetStats,
    SpectrumPair,
    build_pattern,
    multiset_stats,
)


class AccountingError(RuntimeError):
    """Dimension bookkeeping did not balance; indicates a bug."""


@dataclass(frozen=True)
class LBlock:
    size: int
    pinned: bool

    @property
    def dim(self) -> int:
        """Real dimension of the block subgroup."""
        return (self.size - 1) ** 2 if self.pinned else self.size**2


@dataclass(frozen=True)
class WSummand:
    value: Fraction
    dim_complex: int
    C: Fraction

    @property
    def coefficient(self) -> Fraction:
        """Scale of the standard pairing on this summand, 1/C."""
        return 1 / self.C


@dataclass(frozen=True)
class MgsData:
    mu_blocks: tuple[tuple[Fraction, int], ...]
    L_blocks: tuple[LBlock, ...]
    W_summands: tuple[WSummand, ...]
    r_squared: dict[Fraction, Fraction]
    c: Fraction
    mstar_summands: tuple[tuple[Fraction, int], ...]
    shapes: dict[Fraction, str]

    @property
    def n(self) -> int:
        return sum(size for _, size in self.mu_blocks)


@dataclass(frozen=True)
class DimReport:
    dim_orbit: int
    dim_KmodL: int
    dim_mstar: int
    dim_W: int

    def balanced(self) -> bool:
        return self.dim_orbit == self.dim_KmodL + self.dim_mstar + self.dim_W


def compute_c(pair: SpectrumPair) -> Fraction:
    return sum(pair.lam, Fraction(0)) - sum(pair.mu, Fraction(0))


def _pattern(pair: SpectrumPair, pattern: InterlacingPattern | None) -> InterlacingPattern:
    return pattern if pattern is not None else build_pattern(pair)


def compute_r_squared(
    pair: SpectrumPair, mu_value: RationalLike, pattern: InterlacingPattern | None = None
) -> Fraction:
    """Forced squared norm of the border block at ``mu_value``; zero off M-shapes."""
    mu_value = as_rational(mu_value)
    if mu_value not in pair.mu:
        raise ValueError(f"{mu_value} is not an entry of mu")
    pattern = _pattern(pair, pattern)
    if pattern.shape_of(mu_value) != M_SHAPE:
        return Fraction(0)
    num = Fraction(1)
    for lam in pattern.labels(W_SHAPE):
        num *= mu_value - lam
    den = Fraction(1)
    for tau in pattern.labels(M_SHAPE):
        if tau != mu_value:
            den *= mu_value - tau
    return -num / den


def all_r_squared(
    pair: SpectrumPair, pattern: InterlacingPattern | None = None
) -> dict[Fraction, Fraction]:
    pattern = _pattern(pair, pattern)
    return {v: compute_r_squared(pair, v, pattern) for v in multiset_stats(pair.mu).distinct}


def compute_C(
    pair: SpectrumPair,
    mu_value: RationalLike,
    pattern: InterlacingPattern | None = None,
    r_squared: dict[Fraction, Fraction] | None = None,
) -> Fraction:
    """Symplectic scaling constant at a non-M-shape label.

    Defined for any label whose component is not an M-shape, including
    W-shape labels from lambda alone, where it vanishes.
    """
    mu_value = as_rational(mu_value)
    pattern = _pattern(pair, pattern)
    if pattern.shape_of(mu_value) == M_SHAPE:
        raise ValueError(f"C is undefined at M-shape label {mu_value}")
    if r_squared is None:
        r_squared = all_r_squared(pair, pattern)
    total = compute_c(pair) - mu_value
    for tau in pattern.labels(M_SHAPE):
        total += r_squared[tau] / (mu_value - tau)
    return total


def compute_mgs(pair: SpectrumPair, pattern: InterlacingPattern | None = None) -> MgsData:
    pattern = _pattern(pair, pattern)
    stats = multiset_stats(pair.mu)
    r2 = all_r_squared(pair, pattern)
    shapes = {c.label: c.shape for c in pattern.components}
    mu_blocks, l_blocks, w_summands, mstar = [], [], [], []
    for value in stats.distinct:
        size = stats.multiplicity[value]
        shape = shapes[value]
        mu_blocks.append((value, size))
        l_blocks.append(LBlock(size, shape == M_SHAPE))
        if shape == P_SHAPE:
            C = compute_C(pair, value, pattern, r2)
            if C == 0:
                raise AccountingError(f"C vanishes at parallelogram label {value}")
            w_summands.append(WSummand(value, size, C))
        elif shape == M_SHAPE:
            mstar.append((value, size - 1))
    return MgsData(
        mu_blocks=tuple(mu_blocks),
        L_blocks=tuple(l_blocks),
        W_summands=tuple(w_summands),
        r_squared=r2,
        c=compute_c(pair),
        mstar_summands=tuple(mstar),
        shapes=shapes,
    )


def dimension_report(data: MgsData, lambda_stats: MultisetStats) -> DimReport:
    n = data.n
    n1 = sum(lambda_stats.multiplicity.values())
    if n1 != n + 1:
        raise AccountingError(f"lambda has {n1} entries, expected {n + 1}")
    report = DimReport(
        dim_orbit=n1**2 - sum(k**2 for k in lambda_stats.multiplicity.values()),
        dim_KmodL=n**2 - sum(b.dim for b in data.L_blocks),
        dim_mstar=sum(1 + 2 * k for _, k in data.mstar_summands),
        dim_W=sum(2 * s.dim_complex for s in data.W_summands),
    )
    if not report.balanced():
        raise AccountingError(
            f"dim orbit {report.dim_orbit} != {report.dim_KmodL} + "
            f"{report.dim_mstar} + {report.dim_W}"
        )
    return report


def mgs_to_json(data: MgsData, dims: DimReport | None = None) -> dict:
    out = {
        "c": rat_to_json(data.c),
        "M": [rat_to_json(v) for v, size in data.mu_blocks for _ in range(size)],
        "mu_blocks": [
            {"value": rat_to_json(v), "size": size, "shape": data.shapes[v]}
            for v, size in data.mu_blocks
        ],
        "L_blocks": [
            {
                "value": rat_to_json(v),
                "size": b.size,
                "pinned": b.pinned,
                "group": describe_block(b),
                "dim": b.dim,
            }
            for (v, _), b in zip(data.mu_blocks, data.L_blocks)
        ],
        "W_summands": [
            {
                "value": rat_to_json(s.value),
                "dim_complex": s.dim_complex,
                "C": rat_to_json(s.C),
                "coefficient": rat_to_json(s.coefficient),
            }
            for s in data.W_summands
        ],
        "W": describe_W(data),
        "r_squared": {rat_to_json(v): rat_to_json(r) for v, r in data.r_squared.items()},
        "mstar_summands": [
            {"value": rat_to_json(v), "complex_dim": k, "description": _mstar_text(k)}
            for v, k in data.mstar_summands
        ],
    }
    if dims is not None:
        out["dimensions"] = {
            "dim_orbit": dims.dim_orbit,
            "dim_KmodL": dims.dim_KmodL,
            "dim_mstar": dims.dim_mstar,
            "dim_W": dims.dim_W,
        }
    return out


def describe_block(block: LBlock) -> str:
    size = block.size - 1 if block.pinned else block.size
    return "1" if size == 0 else f"U({size})"


def describe_W(data: MgsData) -> str:
    """Human-readable slice, one factor per distinct mu value, e.g. '{0} + C + C^2'."""
    by_value = {s.value: s.dim_complex for s in data.W_summands}
    parts = []
    for value, _ in data.mu_blocks:
        k = by_value.get(value)
        parts.append("{0}" if k is None else ("C" if k == 1 else f"C^{k}"))
    return " + ".join(parts)


def _mstar_text(k: int) -> str:
    return "R" if k == 0 else ("R x C" if k == 1 else f"R x C^{k}")
