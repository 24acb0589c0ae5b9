"""Dense exact matrices over Q(zeta_m) and the kernel/solve primitives.

Matrices with zero rows or zero columns are first-class citizens: they
represent maps to or from the zero space and show up constantly in
graded modules.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Scalar
from .errors import NotInSpanError, OrderMismatchError
from . import kernels


def _unwrap_rationals(data: list) -> tuple[list, list]:
    nums, dens = [], []
    for x in data:
        f = x.coeffs[0]
        nums.append(f.numerator)
        dens.append(f.denominator)
    return nums, dens


def _wrap_rationals(nums: list, dens: list) -> list:
    out = []
    append = out.append
    mk = Scalar._mk
    new = Fraction.__new__
    for n, d in zip(nums, dens):
        f = new(Fraction)
        f._numerator = n
        f._denominator = d
        append(mk((f,), 1))
    return out


class Mat:
    """Immutable dense matrix, row-major, entries in Q(zeta_order)."""

    __slots__ = ("rows", "cols", "order", "data")

    def __init__(self, rows: int, cols: int, data: list, order: int = 1, _copy: bool = True):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "data", list(data) if _copy else data)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Mat is immutable")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zeros(rows: int, cols: int, order: int = 1) -> "Mat":
        z = Scalar.zero(order)
        return Mat(rows, cols, [z] * (rows * cols), order, _copy=False)

    @staticmethod
    def identity(n: int, order: int = 1) -> "Mat":
        z, o = Scalar.zero(order), Scalar.one(order)
        data = [z] * (n * n)
        for t in range(n):
            data[t * n + t] = o
        return Mat(n, n, data, order, _copy=False)

    @staticmethod
    def from_rows(rows_list, order: int = 1) -> "Mat":
        """Build from a list of rows whose entries are Scalars or rationals."""
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        data = []
        for row in rows_list:
            if len(row) != c:
                raise ValueError("ragged rows")
            for x in row:
                data.append(x if isinstance(x, Scalar) else Scalar.rational(x, order))
        return Mat(r, c, data, order, _copy=False)

    @staticmethod
    def column(entries, order: int = 1) -> "Mat":
        return Mat.from_rows([[x] for x in entries], order)

    def scaled(self, s: Scalar) -> "Mat":
        return Mat(self.rows, self.cols, [s * x for x in self.data], self.order, _copy=False)

    # -- access ----------------------------------------------------------
    def __getitem__(self, rc):
        r, c = rc
        return self.data[r * self.cols + c]

    def row(self, r: int) -> list:
        return self.data[r * self.cols:(r + 1) * self.cols]

    def col(self, c: int) -> "Mat":
        return Mat(self.rows, 1, [self.data[r * self.cols + c] for r in range(self.rows)],
                   self.order, _copy=False)

    def is_zero(self) -> bool:
        return not any(self.data)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols, self.order) == (other.rows, other.cols, other.order) \
            and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.order, tuple(self.data)))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(r)) for r in range(self.rows))
        return f"Mat({self.rows}x{self.cols}: {body})"

    # -- arithmetic --------------------------------------------------------
    def _check_order(self, other: "Mat"):
        if self.order != other.order:
            raise OrderMismatchError("matrices from different cyclotomic fields")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_order(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Mat(self.rows, self.cols,
                   [a + b for a, b in zip(self.data, other.data)], self.order, _copy=False)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_order(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return Mat(self.rows, self.cols,
                   [a - b for a, b in zip(self.data, other.data)], self.order, _copy=False)

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [-a for a in self.data], self.order, _copy=False)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_order(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.rows, other.cols, self.order)
        if self.order == 1 and kernels.mat_mul_q is not None:
            a_n, a_d = _unwrap_rationals(self.data)
            b_n, b_d = _unwrap_rationals(other.data)
            o_n, o_d = kernels.mat_mul_q(a_n, a_d, b_n, b_d,
                                         self.rows, self.cols, other.cols)
            return Mat(self.rows, other.cols, _wrap_rationals(o_n, o_d), 1, _copy=False)
        data = kernels.mat_mul(self.data, other.data, self.rows, self.cols,
                               other.cols, Scalar.zero(self.order))
        return Mat(self.rows, other.cols, data, self.order, _copy=False)

    def transpose(self) -> "Mat":
        data = [self.data[r * self.cols + c] for c in range(self.cols) for r in range(self.rows)]
        return Mat(self.cols, self.rows, data, self.order, _copy=False)

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = Scalar.zero(self.order)
        for r in range(self.rows):
            t = t + self.data[r * self.cols + r]
        return t

    def with_order(self, order: int) -> "Mat":
        """Explicitly embed a rational matrix into Q(zeta_order)."""
        if order == self.order:
            return self
        return Mat(self.rows, self.cols, [x.embed(order) for x in self.data], order, _copy=False)


def hstack(mats: list[Mat]) -> Mat:
    rows = mats[0].rows
    order = mats[0].order
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack row mismatch")
    data = []
    for r in range(rows):
        for m in mats:
            data.extend(m.row(r))
    return Mat(rows, sum(m.cols for m in mats), data, order, _copy=False)


def vstack(mats: list[Mat]) -> Mat:
    cols = mats[0].cols
    order = mats[0].order
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack column mismatch")
    data = []
    for m in mats:
        data.extend(m.data)
    return Mat(sum(m.rows for m in mats), cols, data, order, _copy=False)


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; index (i1*b.rows+i2, j1*b.cols+j2) = a[i1,j1]*b[i2,j2]."""
    a._check_order(b)
    rows, cols = a.rows * b.rows, a.cols * b.cols
    z = Scalar.zero(a.order)
    data = [z] * (rows * cols)
    for i1 in range(a.rows):
        for j1 in range(a.cols):
            x = a[i1, j1]
            if not x:
                continue
            for i2 in range(b.rows):
                base = (i1 * b.rows + i2) * cols + j1 * b.cols
                brow = i2 * b.cols
                for j2 in range(b.cols):
                    y = b.data[brow + j2]
                    if y:
                        data[base + j2] = x * y
    return Mat(rows, cols, data, a.order, _copy=False)


class BlockBuilder:
    """Mutable scratch matrix used to assemble block maps, then frozen."""

    __slots__ = ("rows", "cols", "order", "data")

    def __init__(self, rows: int, cols: int, order: int = 1):
        self.rows = rows
        self.cols = cols
        self.order = order
        self.data = [Scalar.zero(order)] * (rows * cols)

    def add_block(self, r0: int, c0: int, m: Mat):
        for r in range(m.rows):
            src = r * m.cols
            dst = (r0 + r) * self.cols + c0
            for c in range(m.cols):
                x = m.data[src + c]
                if x:
                    self.data[dst + c] = self.data[dst + c] + x

    def build(self) -> Mat:
        return Mat(self.rows, self.cols, self.data, self.order, _copy=False)


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Unique reduced row-echelon form and its strictly increasing pivot columns."""
    if a.order == 1 and kernels.rref_q is not None:
        nums, dens = _unwrap_rationals(a.data)
        f_n, f_d, piv = kernels.rref_q(nums, dens, a.rows, a.cols)
        return Mat(a.rows, a.cols, _wrap_rationals(f_n, f_d), 1, _copy=False), tuple(piv)
    flat, piv = kernels.rref(a.data, a.rows, a.cols,
                             Scalar.zero(a.order), Scalar.one(a.order))
    return Mat(a.rows, a.cols, flat, a.order, _copy=False), tuple(piv)


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def kernel_basis(a: Mat) -> Mat:
    """Deterministic basis of the null space {v : a v = 0} as matrix columns.

    Columns come from the RREF with free variables taken in ascending
    column order, so the output is reproducible across runs.
    """
    red, piv = rref(a)
    pivset = set(piv)
    free = [c for c in range(a.cols) if c not in pivset]
    z, o = Scalar.zero(a.order), Scalar.one(a.order)
    data = [z] * (a.cols * len(free))
    width = len(free)
    for k, f in enumerate(free):
        data[f * width + k] = o
        for r, c in enumerate(piv):
            x = red[r, f]
            if x:
                data[c * width + k] = -x
    return Mat(a.cols, width, data, a.order, _copy=False)


def solve_in_span(basis: Mat, target: Mat) -> Mat:
    """Solve basis @ X = target; raise NotInSpanError if any column escapes.

    ``target`` may have several columns.  The columns of ``basis`` are
    expected to be independent (kernel bases and embeddings always are);
    a dependent basis still yields one valid solution.
    """
    basis._check_order(target)
    if basis.rows != target.rows:
        raise ValueError("solve_in_span row mismatch")
    if target.cols == 0 or basis.rows == 0 and target.is_zero():
        return Mat.zeros(basis.cols, target.cols, basis.order)
    red, piv = rref(hstack([basis, target]))
    for c in piv:
        if c >= basis.cols:
            raise NotInSpanError("target is outside the span of the basis")
    z = Scalar.zero(basis.order)
    data = [z] * (basis.cols * target.cols)
    for r, c in enumerate(piv):
        for t in range(target.cols):
            data[c * target.cols + t] = red[r, basis.cols + t]
    return Mat(basis.cols, target.cols, data, basis.order, _copy=False)


def intersect_kernels(maps: list[Mat], ambient_dim: int, order: int = 1) -> Mat:
    """Basis of the common kernel of the given maps out of one space.

    An empty list means no constraints: the identity on the ambient space.
    Equals the kernel basis of the vertically stacked matrix.
    """
    mats = [m for m in maps]
    for m in mats:
        if m.cols != ambient_dim:
            raise ValueError("intersect_kernels domain mismatch")
    if not mats:
        return Mat.identity(ambient_dim, order)
    return kernel_basis(vstack(mats))
