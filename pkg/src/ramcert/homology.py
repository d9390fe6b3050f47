"""Cellular (co)chains of product-cell skeletons and reduced Betti numbers over GF(p)."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .complexes import InvalidInput, iter_bits
from .polytopal import Skeleton, is_prime


class StructuralError(RuntimeError):
    """The skeleton is not closed under faces, or the boundary fails to square to zero."""


class InsufficientDepth(InvalidInput):
    pass


@dataclass
class SparseMatrixGFp:
    """Column-major sparse matrix over GF(p); ``columns[c]`` maps row -> value in ``1..p-1``."""

    rows: int
    cols: int
    p: int
    columns: list[dict[int, int]]

    @classmethod
    def from_entries(cls, rows: int, cols: int, p: int, entries) -> "SparseMatrixGFp":
        columns: list[dict[int, int]] = [{} for _ in range(cols)]
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise InvalidInput(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            col = columns[c]
            val = (col.get(r, 0) + v) % p
            if val:
                col[r] = val
            else:
                col.pop(r, None)
        return cls(rows, cols, p, columns)

    def entries(self) -> list[tuple[int, int, int]]:
        return sorted((r, c, v) for c, col in enumerate(self.columns) for r, v in col.items())

    def nnz(self) -> int:
        return sum(len(col) for col in self.columns)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrixGFp":
        return SparseMatrixGFp.from_entries(self.cols, self.rows, self.p, ((c, r, v) for r, c, v in self.entries()))


def boundary_columns(skeleton: Skeleton, d: int) -> list[list[tuple[int, int]]]:
    """Integer boundary of every ``d``-cell as ``[(row index of face, +-1), ...]``.

    Product (Leibniz) rule: the face dropping the ``t``-th smallest vertex of
    part ``i`` carries sign ``(-1)^(dim of parts before i + t)``.
    """
    lower = skeleton.index(d - 1)
    cols = []
    for cell in skeleton.cells[d]:
        col = []
        offset = 0
        for i, part in enumerate(cell):
            size = part.bit_count()
            if size > 1:
                for t, v in enumerate(iter_bits(part)):
                    face = cell[:i] + (part ^ (1 << v),) + cell[i + 1 :]
                    row = lower.get(face)
                    if row is None:
                        raise StructuralError(f"face of {cell} missing from dimension {d - 1}")
                    col.append((row, -1 if (offset + t) & 1 else 1))
            offset += size - 1
        cols.append(col)
    return cols


@dataclass
class SkeletonComplex:
    """A skeleton with its integer incidence: ``boundaries[d]`` maps d-cells to (d-1)-cells."""

    skeleton: Skeleton
    boundaries: dict[int, list[list[tuple[int, int]]]] = field(default_factory=dict)

    @property
    def top_dim(self) -> int:
        return len(self.skeleton.cells) - 1

    def matrix(self, d: int, p: int) -> SparseMatrixGFp:
        rows = len(self.skeleton.cells[d - 1])
        cols = self.boundaries[d]
        return SparseMatrixGFp.from_entries(
            rows, len(cols), p, ((r, c, s) for c, col in enumerate(cols) for r, s in col)
        )


def check_boundary_squared(cx: SkeletonComplex) -> None:
    """Raise :class:`StructuralError` unless the composite of consecutive boundaries vanishes over Z."""
    for d in range(2, cx.top_dim + 1):
        lower = cx.boundaries[d - 1]
        for c, col in enumerate(cx.boundaries[d]):
            acc: dict[int, int] = {}
            for r, s in col:
                for rr, ss in lower[r]:
                    acc[rr] = acc.get(rr, 0) + s * ss
            if any(acc.values()):
                raise StructuralError(f"boundary does not square to zero on {d}-cell #{c}")


def incidence_matrices(skeleton: Skeleton, verify: bool = True) -> SkeletonComplex:
    cx = SkeletonComplex(skeleton)
    for d in range(1, len(skeleton.cells)):
        cx.boundaries[d] = boundary_columns(skeleton, d)
    if verify:
        check_boundary_squared(cx)
    return cx


def _rank_gf2(columns) -> tuple[int, dict]:
    pivots: dict[int, set] = {}
    max_fill = 0
    ops = 0
    for col in sorted((set(c) for c in columns), key=len):
        while col:
            piv = max(col)
            other = pivots.get(piv)
            if other is None:
                pivots[piv] = col
                max_fill = max(max_fill, len(col))
                break
            col ^= other
            ops += 1
    return len(pivots), {"pivots": len(pivots), "max_fill": max_fill, "row_ops": ops}


def _rank_odd(columns, p: int) -> tuple[int, dict]:
    pivots: dict[int, dict] = {}
    max_fill = 0
    ops = 0
    for col in sorted((dict(c) for c in columns), key=len):
        while col:
            piv = max(col)
            other = pivots.get(piv)
            if other is None:
                inv = pow(col[piv], -1, p)
                pivots[piv] = {r: v * inv % p for r, v in col.items()}
                max_fill = max(max_fill, len(col))
                break
            factor = col[piv]
            for r, v in other.items():
                nv = (col.get(r, 0) - factor * v) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
            ops += 1
    return len(pivots), {"pivots": len(pivots), "max_fill": max_fill, "row_ops": ops}


def rank_mod_p(M: SparseMatrixGFp, with_stats: bool = False):
    """Rank over GF(p) by sparse column elimination (sparsest columns first, pivot on the largest row)."""
    if not is_prime(M.p):
        raise InvalidInput(f"{M.p} is not prime")
    t0 = time.monotonic()
    if M.p == 2:
        rank, stats = _rank_gf2(M.columns)
    else:
        rank, stats = _rank_odd(M.columns, M.p)
    stats["seconds"] = round(time.monotonic() - t0, 3)
    return (rank, stats) if with_stats else rank


@dataclass
class BettiTable:
    p: int
    values: dict[int, int]
    truncation: int

    def vanishes_through(self, D: int) -> bool:
        return all(self.values[i] == 0 for i in range(-1, D + 1))

    def to_json(self) -> dict:
        return {"p": self.p, "betti": {str(i): self.values[i] for i in sorted(self.values)}, "truncation": self.truncation}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        return cls(int(data["p"]), {int(k): int(v) for k, v in data["betti"].items()}, int(data["truncation"]))


def _rank_job(args):
    d, p, cols, rows = args
    M = SparseMatrixGFp.from_entries(rows, len(cols), p, ((r, c, s) for c, col in enumerate(cols) for r, s in col))
    return d, rank_mod_p(M, with_stats=True)


def reduced_betti(
    skeleton: Skeleton | SkeletonComplex,
    p: int,
    up_to: int,
    workers: int = 1,
    stats: Optional[dict] = None,
) -> BettiTable:
    """Reduced cohomology dimensions over GF(p) in degrees ``-1..up_to``.

    Uses ``b^i = c_i - r_i - r_{i-1}`` where ``r_i`` is the rank of the
    coboundary out of degree ``i`` (equally, of the boundary out of degree
    ``i + 1``), with the augmentation ``c_{-1} = 1``.  Needs cells through
    dimension ``up_to + 1`` unless the skeleton is already complete.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if up_to < -1:
        raise InvalidInput("up_to must be >= -1")
    cx = skeleton if isinstance(skeleton, SkeletonComplex) else incidence_matrices(skeleton)
    skel = cx.skeleton
    if skel.max_dim < up_to + 1 and not skel.complete:
        raise InsufficientDepth(
            f"degrees through {up_to} need cells through dimension {up_to + 1}; skeleton stops at {skel.max_dim}"
        )
    counts = skel.dims

    def c(i: int) -> int:
        return counts[i] if 0 <= i < len(counts) else 0

    jobs = [
        (d, p, cx.boundaries[d], c(d - 1))
        for d in range(1, up_to + 2)
        if d in cx.boundaries and cx.boundaries[d] and c(d - 1)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_rank_job, jobs))
    else:
        results = dict(map(_rank_job, jobs))

    # r[i]: rank of the coboundary C^i -> C^{i+1}
    r = {i: 0 for i in range(-2, up_to + 1)}
    r[-1] = 1 if c(0) else 0
    for d, (rank, _) in results.items():
        r[d - 1] = rank
    values = {-1: 1 - r[-1]}
    for i in range(0, up_to + 1):
        values[i] = c(i) - r[i] - r[i - 1]
    if stats is not None:
        stats["elimination"] = {str(d): results[d][1] for d in sorted(results)}
    return BettiTable(p, values, up_to)


def euler_check(skeleton: Skeleton, table: BettiTable) -> bool:
    """For a complete skeleton whose table covers every dimension: alternating sums agree."""
    if not skeleton.complete:
        raise InvalidInput("Euler check needs an untruncated skeleton")
    cells = sum((-1) ** i * n for i, n in enumerate(skeleton.dims))
    betti = sum((-1) ** i * b for i, b in table.values.items() if i >= 0)
    return cells == betti - table.values[-1] + 1


__all__ = [
    "BettiTable",
    "InsufficientDepth",
    "SkeletonComplex",
    "SparseMatrixGFp",
    "StructuralError",
    "boundary_columns",
    "check_boundary_squared",
    "euler_check",
    "incidence_matrices",
    "rank_mod_p",
    "reduced_betti",
]
