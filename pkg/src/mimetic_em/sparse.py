"""Immutable sparse matrices for operator assembly.

Storage is compressed sparse row (scipy CSR). Every matrix goes through a
coordinate-triplet stage on construction, duplicates are summed and exact
zeros dropped, so two matrices built from the same triplets have the same
entries in the same order.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np
import scipy.sparse as sp
from numpy.typing import ArrayLike, NDArray


class DimensionError(ValueError):
    """Operand shapes are incompatible."""


class SparseMatrix:
    """Real-valued sparse matrix with explicit dimensions.

    Instances are immutable; arithmetic returns new matrices.
    """

    __slots__ = ("_csr",)

    def __init__(self, csr: sp.csr_matrix):
        csr = sp.csr_matrix(csr, dtype=np.float64, copy=True)
        csr.sum_duplicates()
        csr.eliminate_zeros()
        csr.sort_indices()
        csr.data.flags.writeable = False
        self._csr = csr

    # -- construction --------------------------------------------------

    @classmethod
    def from_triplets(
        cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, float]]
    ) -> SparseMatrix:
        """Build a ``rows x cols`` matrix from ``(row, col, value)`` triplets.

        Repeated coordinates are summed. Raises :class:`IndexError` naming the
        first triplet that falls outside the declared shape.
        """
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape ({rows}, {cols})")
        triplets = list(triplets)
        for t in triplets:
            r, c, _ = t
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(
                    f"triplet {t!r} out of bounds for {rows}x{cols} matrix"
                )
        if triplets:
            r, c, v = zip(*triplets)
        else:
            r, c, v = (), (), ()
        coo = sp.coo_matrix(
            (np.asarray(v, dtype=np.float64), (np.asarray(r, dtype=np.int64),
                                               np.asarray(c, dtype=np.int64))),
            shape=(rows, cols),
        )
        return cls(coo.tocsr())

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(sp.identity(n, dtype=np.float64, format="csr"))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> SparseMatrix:
        return cls(sp.csr_matrix((rows, cols), dtype=np.float64))

    @classmethod
    def from_dense(cls, a: ArrayLike) -> SparseMatrix:
        a = np.atleast_2d(np.asarray(a, dtype=np.float64))
        return cls(sp.csr_matrix(a))

    # -- inspection ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self._csr.shape

    @property
    def rows(self) -> int:
        return self._csr.shape[0]

    @property
    def cols(self) -> int:
        return self._csr.shape[1]

    @property
    def nnz(self) -> int:
        return self._csr.nnz

    @property
    def csr(self) -> sp.csr_matrix:
        """Read-only view of the underlying CSR storage."""
        return self._csr

    def entries(self) -> Iterator[tuple[int, int, float]]:
        """Yield stored entries in row-major order."""
        indptr, indices, data = self._csr.indptr, self._csr.indices, self._csr.data
        for i in range(self.rows):
            for p in range(indptr[i], indptr[i + 1]):
                yield i, int(indices[p]), float(data[p])

    def row(self, i: int) -> NDArray[np.float64]:
        return self._csr.getrow(i).toarray().ravel()

    def toarray(self) -> NDArray[np.float64]:
        return self._csr.toarray()

    def dump(self) -> str:
        """Coordinate-triplet text, one ``row col value`` line per entry."""
        return "".join(f"{i} {j} {v:.17g}\n" for i, j, v in self.entries())

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and list(self.entries()) == list(
            other.entries()
        )

    __hash__ = None  # type: ignore[assignment]

    # -- algebra -------------------------------------------------------

    def matvec(self, x: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1 or x.shape[0] != self.cols:
            raise DimensionError(
                f"cannot apply {self.rows}x{self.cols} matrix to vector of "
                f"shape {x.shape}"
            )
        return self._csr @ x

    def matmul(self, other: SparseMatrix) -> SparseMatrix:
        if self.cols != other.rows:
            raise DimensionError(
                f"matmul shape mismatch: {self.shape} @ {other.shape}"
            )
        return SparseMatrix(self._csr @ other._csr)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return self.matmul(other)
        return self.matvec(other)

    def scale(self, alpha: float) -> SparseMatrix:
        return SparseMatrix(self._csr * float(alpha))

    def __mul__(self, alpha: float) -> SparseMatrix:
        if isinstance(alpha, (int, float, np.floating, np.integer)):
            return self.scale(alpha)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> SparseMatrix:
        return self.scale(-1.0)

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"add shape mismatch: {self.shape} + {other.shape}")
        return SparseMatrix(self._csr + other._csr)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self + (-other)

    @property
    def T(self) -> SparseMatrix:
        return SparseMatrix(self._csr.T.tocsr())


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product ``a ⊗ b``.

    Entry ``(ia*b.rows + ib, ja*b.cols + jb)`` equals ``a[ia, ja] * b[ib, jb]``.
    """
    return SparseMatrix(sp.kron(a.csr, b.csr, format="csr"))


def vstack(*blocks: SparseMatrix) -> SparseMatrix:
    cols = {b.cols for b in blocks}
    if len(cols) != 1:
        raise DimensionError(f"vstack needs equal column counts, got {sorted(cols)}")
    return SparseMatrix(sp.vstack([b.csr for b in blocks], format="csr"))


def hstack(*blocks: SparseMatrix) -> SparseMatrix:
    rows = {b.rows for b in blocks}
    if len(rows) != 1:
        raise DimensionError(f"hstack needs equal row counts, got {sorted(rows)}")
    return SparseMatrix(sp.hstack([b.csr for b in blocks], format="csr"))
