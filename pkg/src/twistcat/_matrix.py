"""Dense matrices of exact cyclotomic scalars, with the small amount of
linear algebra the functor machinery needs: products, inverses, block sums,
and exact rank/nullspace computations over the scalar field."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import ShapeMismatch
from .scalar import Scalar, Unit


class SMatrix:
    """Immutable rectangular matrix of Scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]) -> None:
        out = []
        for row in rows:
            conv = []
            for val in row:
                if isinstance(val, Unit):
                    val = val.to_scalar()
                elif not isinstance(val, Scalar):
                    val = Scalar.from_rational(val)
                conv.append(val)
            out.append(tuple(conv))
        if not out or not out[0]:
            raise ShapeMismatch("matrix must have positive dimensions")
        if len({len(r) for r in out}) != 1:
            raise ShapeMismatch("rows have inconsistent lengths")
        object.__setattr__(self, "rows", tuple(out))

    def __setattr__(self, name, value):
        raise AttributeError("SMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "SMatrix":
        one, zero = Scalar.one(), Scalar.zero()
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_unit(cls, u: Unit) -> "SMatrix":
        return cls([[u.to_scalar()]])

    @classmethod
    def block_diag(cls, blocks: Sequence["SMatrix"]) -> "SMatrix":
        if not blocks:
            raise ShapeMismatch("block_diag needs at least one block")
        total_r = sum(b.nrows for b in blocks)
        total_c = sum(b.ncols for b in blocks)
        zero = Scalar.zero()
        grid = [[zero] * total_c for _ in range(total_r)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    grid[r0 + i][c0 + j] = b.rows[i][j]
            r0 += b.nrows
            c0 += b.ncols
        return cls(grid)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def __matmul__(self, other: "SMatrix") -> "SMatrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}")
        return SMatrix([[sum((self.rows[i][k] * other.rows[k][j]
                              for k in range(self.ncols)), Scalar.zero())
                         for j in range(other.ncols)]
                        for i in range(self.nrows)])

    def __add__(self, other: "SMatrix") -> "SMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeMismatch("matrix shapes differ")
        return SMatrix([[a + b for a, b in zip(r1, r2)]
                        for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, s) -> "SMatrix":
        if isinstance(s, Unit):
            s = s.to_scalar()
        return SMatrix([[s * v for v in row] for row in self.rows])

    def transpose(self) -> "SMatrix":
        return SMatrix([[self.rows[i][j] for i in range(self.nrows)]
                        for j in range(self.ncols)])

    def inverse(self) -> Optional["SMatrix"]:
        """Exact inverse, or None when the matrix is singular."""
        if self.nrows != self.ncols:
            raise ShapeMismatch("only square matrices can be inverted")
        n = self.nrows
        aug = [list(self.rows[i]) + [Scalar.one() if i == j else Scalar.zero()
                                     for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n)
                          if not aug[r][col].is_zero()), None)
            if pivot is None:
                return None
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return SMatrix([row[n:] for row in aug])

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return all((v.is_one() if i == j else v.is_zero())
                   for i, row in enumerate(self.rows)
                   for j, v in enumerate(row))

    def __eq__(self, other):
        if not isinstance(other, SMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(v) for v in row) for row in self.rows)
        return f"SMatrix[{body}]"

    def to_json(self) -> list:
        return [[v.to_json() for v in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "SMatrix":
        return cls([[Scalar.from_json(v) for v in row] for row in data])


def _echelon(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    mat = [list(r) for r in rows]
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    pivots: list[int] = []
    row = 0
    for col in range(nc):
        if row == nr:
            break
        pr = next((r for r in range(row, nr) if not mat[r][col].is_zero()), None)
        if pr is None:
            continue
        mat[row], mat[pr] = mat[pr], mat[row]
        inv = mat[row][col].inverse()
        mat[row] = [v * inv for v in mat[row]]
        for r in range(nr):
            if r != row and not mat[r][col].is_zero():
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    return mat, pivots


def matrix_rank(rows: list[list[Scalar]]) -> int:
    """Rank of a list-of-rows system over the scalar field."""
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def nullspace_basis(rows: list[list[Scalar]], ncols: int) -> list[list[Scalar]]:
    """Basis of {v : A v = 0}, exact, one vector per free column."""
    if not rows:
        return [[Scalar.one() if i == j else Scalar.zero()
                 for i in range(ncols)] for j in range(ncols)]
    mat, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Scalar.zero()] * ncols
        vec[fc] = Scalar.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(vec)
    return basis
