"""Floating-point brute-force checks of the normal form at the canonical point.

Everything is realified: an anti-Hermitian n x n matrix is n**2 real
parameters (i E_kk, E_jk - E_kj, i(E_jk + E_kj)), a complex n-vector is
2n. The slice and isotropy computations are null spaces of real linear
maps, with rank decided by an SVD threshold relative to the largest
singular value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .normalform import compute_mgs
from .pattern import M_SHAPE, P_SHAPE, SpectrumPair, build_pattern
from .realization import HermitianMatrix, PointSpec, build_point_spec, render_numeric

MASK64 = (1 << 64) - 1
DEFAULT_RANK_TOL = 1e-9


class NumericError(ArithmeticError):
    """Iterative numerical routine failed to converge."""


class Prng:
    """SplitMix64 stream with Box-Muller normals.

    Not thread safe; derive independent streams with :meth:`fork`.
    """

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._state = self.seed
        self._spare: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in (0, 1]."""
        return ((self.next_u64() >> 11) + 1) * (1.0 / (1 << 53))

    def normal(self) -> float:
        if self._spare is not None:
            out, self._spare = self._spare, None
            return out
        rad = math.sqrt(-2.0 * math.log(self.uniform()))
        theta = 2.0 * math.pi * self.uniform()
        self._spare = rad * math.sin(theta)
        return rad * math.cos(theta)

    def complex_normal(self, shape: tuple[int, ...]) -> np.ndarray:
        count = int(np.prod(shape))
        vals = [complex(self.normal(), self.normal()) for _ in range(count)]
        return np.array(vals, dtype=complex).reshape(shape)

    def fork(self, index: int) -> "Prng":
        mixer = Prng((self.seed ^ ((index + 1) * 0xD1B54A32D192ED03)) & MASK64)
        return Prng(mixer.next_u64())


# -- eigenvalues ------------------------------------------------------------


def eig_hermitian(m: HermitianMatrix | np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations, non-increasing."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.array(m.entries if isinstance(m, HermitianMatrix) else m, dtype=complex)
    N = a.shape[0]
    norm = np.linalg.norm(a)
    target = tol * norm

    def off() -> float:
        return float(np.linalg.norm(a - np.diag(np.diagonal(a))))

    for _ in range(max_sweeps):
        if off() <= target:
            break
        for p in range(N - 1):
            for q in range(p + 1, N):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # Phase q so the pivot is real, then a real rotation zeroes it.
                phase = apq / mag
                theta = 0.5 * math.atan2(2.0 * mag, (a[q, q] - a[p, p]).real)
                cs, sn = math.cos(theta), math.sin(theta)
                rot = np.array([[cs, sn], [-sn * phase.conjugate(), cs * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
    else:
        if off() > target:
            raise NumericError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return sorted((float(x.real) for x in np.diagonal(a)), reverse=True)


# -- sampling ---------------------------------------------------------------


def random_unitary(size: int, prng: Prng) -> np.ndarray:
    """Orthonormalized complex Gaussian columns (modified Gram-Schmidt, two passes)."""
    while True:
        g = prng.complex_normal((size, size))
        q = g.copy()
        ok = True
        for k in range(size):
            v = q[:, k]
            for _ in range(2):
                for j in range(k):
                    v = v - (q[:, j].conj() @ v) * q[:, j]
            nv = np.linalg.norm(v)
            if nv <= 1e-10 * np.linalg.norm(g[:, k]):
                ok = False
                break
            q[:, k] = v / nv
        if ok:
            return q


def block_unitary(spec: PointSpec, prng: Prng) -> np.ndarray:
    """Random element of the stabilizer of diag(mu), embedded in U(n+1)."""
    u = np.zeros((spec.order, spec.order), dtype=complex)
    u[0, 0] = 1.0
    k = 1
    for b in spec.blocks:
        u[k : k + b.size, k : k + b.size] = random_unitary(b.size, prng)
        k += b.size
    return u


def sample_KM_conjugate(spec: PointSpec, prng: Prng) -> HermitianMatrix:
    p = render_numeric(spec).entries
    u = block_unitary(spec, prng)
    return HermitianMatrix(u @ p @ u.conj().T)


# -- realified parameterizations -------------------------------------------


def u_basis(n: int) -> list[np.ndarray]:
    """Real basis of anti-Hermitian n x n matrices (n**2 elements)."""
    basis = []
    for k in range(n):
        e = np.zeros((n, n), dtype=complex)
        e[k, k] = 1j
        basis.append(e)
    for j in range(n):
        for k in range(j + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[j, k], e[k, j] = 1.0, -1.0
            basis.append(e)
            e = np.zeros((n, n), dtype=complex)
            e[j, k] = e[k, j] = 1j
            basis.append(e)
    return basis


def hermitian_coords(h: np.ndarray) -> np.ndarray:
    """n**2 real coordinates of a (near) Hermitian matrix."""
    n = h.shape[0]
    out = [h[k, k].real for k in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            out += [h[j, k].real, h[j, k].imag]
    return np.array(out)


def realify(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


@dataclass
class RankInfo:
    rank: int
    threshold: float
    unstable: bool


def numerical_rank(
    a: np.ndarray, tol: float, scale: float | None = None
) -> tuple[RankInfo, np.ndarray]:
    """Rank by singular-value threshold ``tol * scale``; also returns a null-space basis (columns).

    ``scale`` defaults to the largest singular value of ``a``. Pass a
    common scale when ranking sub-blocks of a larger map, so that a block
    that is zero up to round-off is not judged against its own noise.
    """
    cols = a.shape[1]
    if a.size == 0:
        return RankInfo(0, 0.0, False), np.eye(cols)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if scale is None:
        scale = smax
    if scale == 0.0:
        return RankInfo(0, 0.0, False), np.eye(cols)
    thr = tol * scale
    rank = int(np.sum(s > thr))
    unstable = bool(np.any((s > thr / 10) & (s < thr * 10)))
    return RankInfo(rank, thr, unstable), vh[rank:].T


def split_point(p: HermitianMatrix) -> tuple[float, np.ndarray, np.ndarray]:
    """(c, z, M) of a bordered point [[c, z^H], [z, M]]."""
    a = p.entries
    return float(a[0, 0].real), a[1:, 0].copy(), a[1:, 1:].copy()


# -- tangent slice ----------------------------------------------------------


@dataclass
class BlockSlice:
    value: Fraction
    size: int
    shape: str
    dim_V: int
    dim_U: int
    predicted: int

    @property
    def dim_quotient(self) -> int:
        return self.dim_V - self.dim_U


@dataclass
class SliceReport:
    blocks: list[BlockSlice]
    dim_V_total: int
    constraint_residual: float
    max_form_deviation: float
    warnings: list[str] = field(default_factory=list)

    @property
    def quotient_dims(self) -> list[int]:
        return [b.dim_quotient for b in self.blocks]

    @property
    def predicted(self) -> list[int]:
        return [b.predicted for b in self.blocks]

    def matches_prediction(self) -> bool:
        return self.quotient_dims == self.predicted


@dataclass
class _Slice:
    """Null space of the slice equations and its image under T."""

    n: int
    c: float
    z: np.ndarray
    M: np.ndarray
    p: np.ndarray
    Xs: list[np.ndarray]
    xs: list[np.ndarray]
    images: np.ndarray  # complex n x k, columns T(X, x)
    residual: float
    rank: RankInfo


def _solve_slice(point: HermitianMatrix, tol: float) -> _Slice:
    c, z, M = split_point(point)
    n = z.shape[0]
    ub = u_basis(n)
    cols = []
    for X in ub:
        H = X @ M - M @ X
        cols.append(np.concatenate([[0.0], hermitian_coords(H)]))
    for unit in (1.0, 1j):
        for k in range(n):
            x = np.zeros(n, dtype=complex)
            x[k] = unit
            H = np.outer(x, z.conj()) + np.outer(z, x.conj())
            cols.append(np.concatenate([[2.0 * (x.conj() @ z).real], hermitian_coords(H)]))
    A = np.array(cols).T
    rank, null = numerical_rank(A, tol)
    residual = float(np.max(np.abs(A @ null))) if null.size else 0.0
    Xs, xs, images = [], [], []
    cM = c * np.eye(n) - M
    for v in null.T:
        X = sum((coef * b for coef, b in zip(v[: n * n], ub)), np.zeros((n, n), dtype=complex))
        x = v[n * n : n * n + n] + 1j * v[n * n + n :]
        Xs.append(X)
        xs.append(x)
        images.append(cM @ x + X @ z)
    images_arr = np.array(images).T if images else np.zeros((n, 0), dtype=complex)
    return _Slice(n, c, z, M, point.entries, Xs, xs, images_arr, residual, rank)


def _block_offsets(spec: PointSpec) -> list[tuple[int, int]]:
    out, k = [], 0
    for b in spec.blocks:
        out.append((k, b.size))
        k += b.size
    return out


def tangent_slice_dims(
    pair: SpectrumPair, tol: float = DEFAULT_RANK_TOL, point: HermitianMatrix | None = None
) -> SliceReport:
    """Per-block dimensions of V_i and U_i from the slice equations.

    By default the canonical point is used; ``point`` may be any other
    point of the same fibre (e.g. a block-unitary conjugate), in which case
    the symplectic-form comparison is skipped.
    """
    pattern = build_pattern(pair)
    spec = build_point_spec(pair, pattern)
    canonical = point is None
    point = render_numeric(spec) if canonical else point
    sl = _solve_slice(point, tol)
    warnings = []
    if sl.rank.unstable:
        warnings.append("slice equations: singular value within 10x of the rank threshold")
    total, _ = numerical_rank(realify(sl.images), tol)
    scale = max(1.0, float(np.max(np.abs(point.entries))))
    blocks = []
    for b, (off, size) in zip(spec.blocks, _block_offsets(spec)):
        shape = pattern.shape_of(b.mu_value)
        vi = realify(sl.images[off : off + size, :])
        rv, _ = numerical_rank(vi, tol, scale)
        zi = sl.z[off : off + size]
        ui = np.array([realify(Y @ zi) for Y in u_basis(size)]).T
        ru, _ = numerical_rank(ui, tol, scale)
        if ru.unstable or rv.unstable:
            warnings.append(f"block {b.mu_value}: rank decision near threshold")
        blocks.append(
            BlockSlice(b.mu_value, size, shape, rv.rank, ru.rank, 2 * size if shape == P_SHAPE else 0)
        )
    if total.rank != sum(bl.dim_V for bl in blocks):
        warnings.append("V does not split as a direct sum of its block projections")
    deviation = 0.0
    if canonical and any(bl.shape == P_SHAPE for bl in blocks):
        deviation = _form_deviation(pair, sl, spec)
    return SliceReport(blocks, total.rank, sl.residual, deviation, warnings)


# -- symplectic form --------------------------------------------------------


class EmptyCheckError(ValueError):
    """The requested check has nothing to compare."""


def _embed(X: np.ndarray, x: np.ndarray) -> np.ndarray:
    n = X.shape[0]
    xi = np.zeros((n + 1, n + 1), dtype=complex)
    xi[1:, 0] = x
    xi[0, 1:] = -x.conj()
    xi[1:, 1:] = X
    return xi


def orbit_form(p: np.ndarray, xi: np.ndarray, eta: np.ndarray) -> float:
    """KKS form at p on the tangent vectors [xi, p], [eta, p]: Tr(p [xi, eta]) / i."""
    val = np.trace(p @ (xi @ eta - eta @ xi)) / 1j
    return float(val.real)


def _form_deviation(pair: SpectrumPair, sl: _Slice, spec: PointSpec) -> float:
    mgs = compute_mgs(pair)
    coeff = {s.value: float(s.coefficient) for s in mgs.W_summands}
    offsets = dict(zip((b.mu_value for b in spec.blocks), _block_offsets(spec)))
    xis = [_embed(X, x) for X, x in zip(sl.Xs, sl.xs)]
    k = len(xis)
    dev = 0.0
    for a in range(k):
        for b in range(a + 1, k):
            lhs = orbit_form(sl.p, xis[a], xis[b])
            rhs = 0.0
            for value, scale in coeff.items():
                off, size = offsets[value]
                u = sl.images[off : off + size, a]
                w = sl.images[off : off + size, b]
                # (1/i)(-u^H w + w^H u) / C = 2 Im(w^H u) / C
                rhs += 2.0 * float(np.imag(w.conj() @ u)) * scale
            dev = max(dev, abs(lhs - rhs))
    return dev


def symplectic_form_check(pair: SpectrumPair, tol: float = DEFAULT_RANK_TOL) -> float:
    """Max |orbit form - slice form (via T)| over pairs of slice basis vectors."""
    pattern = build_pattern(pair)
    if not pattern.labels(P_SHAPE):
        raise EmptyCheckError("no parallelogram labels: the slice is zero")
    spec = build_point_spec(pair, pattern)
    sl = _solve_slice(render_numeric(spec), tol)
    return _form_deviation(pair, sl, spec)


# -- isotropy ---------------------------------------------------------------


@dataclass
class IsotropyResult:
    ok: bool
    dim: int
    expected: int
    generator_residual: float
    message: str

    def __bool__(self) -> bool:
        return self.ok


def isotropy_generators(spec: PointSpec, pinned: list[bool]) -> list[np.ndarray]:
    n = spec.order - 1
    gens = []
    for (off, size), pin in zip(_block_offsets(spec), pinned):
        start, s = (off + 1, size - 1) if pin else (off, size)
        for g in u_basis(s):
            G = np.zeros((n, n), dtype=complex)
            G[start : start + s, start : start + s] = g
            gens.append(G)
    return gens


def isotropy_group_check(pair: SpectrumPair, tol: float = DEFAULT_RANK_TOL) -> IsotropyResult:
    """Compare the Lie algebra of the stabilizer of the canonical point with the declared blocks."""
    spec = build_point_spec(pair)
    mgs = compute_mgs(pair)
    p = render_numeric(spec).entries
    n = spec.order - 1
    zero = np.zeros(n, dtype=complex)

    def comm(Y: np.ndarray) -> np.ndarray:
        e = _embed(Y, zero)
        return e @ p - p @ e

    A = np.array([realify(comm(Y).ravel()) for Y in u_basis(n)]).T
    info, _ = numerical_rank(A, tol)
    dim = n * n - info.rank
    expected = sum(b.dim for b in mgs.L_blocks)
    gens = isotropy_generators(spec, [b.pinned for b in mgs.L_blocks])
    scale = max(1.0, float(np.max(np.abs(p))))
    resid = max((float(np.max(np.abs(comm(G)))) for G in gens), default=0.0)
    ok = dim == expected and resid <= tol * scale * 10
    msg = "ok" if ok else f"stabilizer dim {dim}, declared {expected}, generator residual {resid:.3e}"
    if info.unstable:
        msg += " (rank near threshold)"
    return IsotropyResult(ok, dim, expected, resid, msg)
