"""
Cyclotomic Matrices
Square matrices over CycloNumber: products, powers, exact inverses,
determinants and kernels by Gaussian elimination.

Matrices are immutable; every operation returns a new UMatrix.
"""

from fractions import Fraction
from functools import reduce
from math import lcm

import numpy as np

from cyclotomic import ONE, ZERO, CycloNumber


class UMatrix:
    """Exact n x n matrix with CycloNumber entries."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        rows = tuple(tuple(CycloNumber.coerce(v) for v in row) for row in rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ValueError("UMatrix needs a non-empty square table of entries")
        self._rows = rows

    # ------------------------------------------------------------------
    # Constructors

    @classmethod
    def identity(cls, n=3):
        return cls([[ONE if r == c else ZERO for c in range(n)] for r in range(n)])

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[r] if r == c else ZERO for c in range(n)] for r in range(n)])

    @classmethod
    def scalar(cls, value, n=3):
        return cls.diagonal([value] * n)

    @classmethod
    def permutation(cls, images):
        """Permutation matrix sending basis vector e_j to e_images[j]."""
        n = len(images)
        return cls([[ONE if images[c] == r else ZERO for c in range(n)] for r in range(n)])

    # ------------------------------------------------------------------
    # Accessors

    @property
    def size(self):
        return len(self._rows)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, index):
        r, c = index
        return self._rows[r][c]

    @property
    def field_order(self):
        """Least n such that every entry lies in Q(zeta_n)."""
        return reduce(lcm, (v.order for row in self._rows for v in row), 1)

    def canonical_key(self, order=None):
        order = self.field_order if order is None else order
        return tuple(v.canonical_key(order)[1] for row in self._rows for v in row)

    def embed(self):
        return np.array([[v.embed() for v in row] for row in self._rows], dtype=complex)

    # ------------------------------------------------------------------
    # Arithmetic

    def __mul__(self, other):
        if isinstance(other, UMatrix):
            return self._matmul(other)
        if isinstance(other, (CycloNumber, int, Fraction)):
            scale = CycloNumber.coerce(other)
            return UMatrix([[v * scale for v in row] for row in self._rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (CycloNumber, int, Fraction)):
            return self * other
        return NotImplemented

    def _matmul(self, other):
        n = self.size
        if other.size != n:
            raise ValueError(f"Cannot multiply {n}x{n} by {other.size}x{other.size}")
        columns = list(zip(*other._rows))
        out = []
        for row in self._rows:
            out_row = []
            for col in columns:
                total = ZERO
                for a, b in zip(row, col):
                    if a.is_structurally_zero or b.is_structurally_zero:
                        continue
                    total = total + a * b
                out_row.append(total)
            out.append(out_row)
        return UMatrix(out)

    def __add__(self, other):
        if not isinstance(other, UMatrix):
            return NotImplemented
        return UMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)])

    def __sub__(self, other):
        if not isinstance(other, UMatrix):
            return NotImplemented
        return UMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)])

    def __neg__(self):
        return UMatrix([[-v for v in row] for row in self._rows])

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base, exponent = self.inverse(), -exponent
        result = UMatrix.identity(self.size)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def adjoint(self):
        """Conjugate transpose."""
        return UMatrix([[v.conj() for v in col] for col in zip(*self._rows)])

    def apply(self, vector):
        """Matrix-vector product for a length-n sequence of entries."""
        vector = [CycloNumber.coerce(v) for v in vector]
        return tuple(
            sum((a * b for a, b in zip(row, vector) if not a.is_structurally_zero), ZERO)
            for row in self._rows
        )

    def trace(self):
        return sum((self._rows[i][i] for i in range(self.size)), ZERO)

    def det(self):
        rows = self._rows
        n = self.size
        if n == 1:
            return rows[0][0]
        if n == 2:
            return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        if n == 3:
            (a, b, c), (d, e, f), (g, h, i) = rows
            return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        work = [list(row) for row in rows]
        det = ONE
        for col in range(n):
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
            if pivot is None:
                return ZERO
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            det = (det * work[col][col]).compact()
            inverse = work[col][col].inv()
            for r in range(col + 1, n):
                if work[r][col].is_zero():
                    continue
                factor = work[r][col] * inverse
                work[r] = [(x - factor * y).compact() for x, y in zip(work[r], work[col])]
        return det

    def _row_reduce(self, augment=None):
        """Reduced row echelon form of [self | augment]; returns rows and pivot columns."""
        n = self.size
        work = [list(row) for row in self._rows]
        if augment is not None:
            work = [row + list(extra) for row, extra in zip(work, augment.rows)]
        pivots = []
        r = 0
        for col in range(n):
            pivot = next((i for i in range(r, n) if not work[i][col].is_zero()), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inverse = work[r][col].inv()
            work[r] = [(v * inverse).compact() for v in work[r]]
            for i in range(n):
                if i != r and not work[i][col].is_zero():
                    factor = work[i][col]
                    work[i] = [(a - factor * b).compact() for a, b in zip(work[i], work[r])]
            pivots.append(col)
            r += 1
            if r == n:
                break
        return work, pivots

    def inverse(self):
        work, pivots = self._row_reduce(UMatrix.identity(self.size))
        if len(pivots) < self.size:
            raise ZeroDivisionError("Matrix is singular")
        n = self.size
        return UMatrix([row[n:] for row in work])

    def kernel(self):
        """
        Basis of the right null space, one vector per free column.

        Returns:
            List of n-tuples of CycloNumber (empty for an invertible matrix)
        """
        n = self.size
        work, pivots = self._row_reduce()
        basis = []
        for free in (c for c in range(n) if c not in pivots):
            vector = [ZERO] * n
            vector[free] = ONE
            for row_index, pivot_col in enumerate(pivots):
                vector[pivot_col] = -work[row_index][free]
            basis.append(tuple(vector))
        return basis

    # ------------------------------------------------------------------
    # Predicates

    def is_identity(self):
        return self == UMatrix.identity(self.size)

    def is_scalar(self):
        first = self._rows[0][0]
        return self == UMatrix.scalar(first, self.size)

    def is_unitary(self):
        return (self * self.adjoint()).is_identity()

    def __eq__(self, other):
        if not isinstance(other, UMatrix):
            return NotImplemented
        if other.size != self.size:
            return False
        return all(a == b for r1, r2 in zip(self._rows, other._rows) for a, b in zip(r1, r2))

    def __hash__(self):
        return hash(tuple(hash(v) for row in self._rows for v in row))

    def __repr__(self):
        return f"UMatrix({self})"

    def __str__(self):
        return "[" + "; ".join(", ".join(str(v) for v in row) for row in self._rows) + "]"
