"""Dense matrices over the quaternions, and complex matrices as the image of χₙ.

`QMatrix` carries the quaternionic trace Tr(A) = 2·Re(Σ aᵢᵢ), the adjoint A*, the embedding
χₙ: Mₙ(ℍ) → M₂ₙ(ℂ) and the left-regular real representation Mₙ(ℍ) → M₄ₙ(ℝ).
`CMatrix` stores complex entries as quaternions with vanishing 𝗃 and 𝗄 parts so that exact
Gaussian-rational arithmetic shares the scalar code.
"""
import logging
from fractions import Fraction
from numbers import Real
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from quatlab.errors import InputError, NotSquare, ShapeMismatch, SingularMatrix
from quatlab.jsonable import Jsonable, JsonParsingError, RealScalar, getIntKey, getListKey
from quatlab.quaternion import Quaternion, ONE, ZERO, random_quaternion, random_unit, random_complex

logger = logging.getLogger(__name__)


class _QuaternionGrid(Jsonable):
    """ Row-major rectangular array of quaternions with ring arithmetic. Immutable. """

    def __init__(self, rows: int, cols: int, entries: Iterable[Any]) -> None:
        values = tuple(Quaternion.coerce(q) for q in entries)
        if rows <= 0 or cols <= 0:
            raise ShapeMismatch("matrix dimensions must be positive, got %dx%d" % (rows, cols))
        if len(values) != rows * cols:
            raise ShapeMismatch("%dx%d matrix needs %d entries, got %d" % (rows, cols, rows * cols, len(values)))
        self.rows = rows
        self.cols = cols
        self.entries = values

    # ---------------------------- construction ----------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]):
        if not rows or not rows[0]:
            raise ShapeMismatch("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), width, [q for r in rows for q in r])

    @classmethod
    def identity(cls, n: int, exact: bool = True):
        one = ONE if exact else ONE.to_float()
        zero = ZERO if exact else ZERO.to_float()
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None, exact: bool = True):
        zero = ZERO if exact else ZERO.to_float()
        cols = rows if cols is None else cols
        return cls(rows, cols, [zero] * (rows * cols))

    @classmethod
    def diag(cls, *values: Any):
        n = len(values)
        qs = [Quaternion.coerce(v) for v in values]
        exact = all(q.is_exact for q in qs)
        zero = ZERO if exact else ZERO.to_float()
        return cls(n, n, [qs[i] if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Quaternion]]):
        n = len(columns[0])
        return cls(n, len(columns), [columns[j][i] for i in range(n) for j in range(len(columns))])

    # ---------------------------- access ----------------------------
    def __getitem__(self, ij: Tuple[int, int]) -> Quaternion:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_exact(self) -> bool:
        return all(q.is_exact for q in self.entries)

    def row(self, i: int) -> List[Quaternion]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> List[Quaternion]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> List[List[Quaternion]]:
        return [self.row(i) for i in range(self.rows)]

    def submatrix(self, row_ids: Sequence[int], col_ids: Sequence[int]):
        return type(self)(len(row_ids), len(col_ids), [self[i, j] for i in row_ids for j in col_ids])

    def map(self, fn):
        return type(self)(self.rows, self.cols, [fn(q) for q in self.entries])

    def to_float(self):
        return self.map(lambda q: q.to_float())

    def _require_square(self) -> None:
        if not self.is_square:
            raise NotSquare("expected a square matrix, got %dx%d" % self.shape)

    # ---------------------------- arithmetic ----------------------------
    def _check_same_shape(self, other: "_QuaternionGrid") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch("shapes %s and %s differ" % (self.shape, other.shape))

    def __add__(self, other):
        if not isinstance(other, _QuaternionGrid):
            return NotImplemented
        self._check_same_shape(other)
        return type(self)(self.rows, self.cols, [p + q for p, q in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, _QuaternionGrid):
            return NotImplemented
        self._check_same_shape(other)
        return type(self)(self.rows, self.cols, [p - q for p, q in zip(self.entries, other.entries)])

    def __neg__(self):
        return type(self)(self.rows, self.cols, [-q for q in self.entries])

    def __mul__(self, other):
        if isinstance(other, _QuaternionGrid):
            if self.cols != other.rows:
                raise ShapeMismatch("cannot multiply %dx%d by %dx%d" % (self.rows, self.cols, other.rows, other.cols))
            out = []
            for i in range(self.rows):
                left = self.row(i)
                for j in range(other.cols):
                    acc = left[0] * other[0, j]
                    for k in range(1, self.cols):
                        acc = acc + left[k] * other[k, j]
                    out.append(acc)
            return type(self)(self.rows, other.cols, out)
        if isinstance(other, (Quaternion, Real)):
            q = Quaternion.coerce(other)
            return type(self)(self.rows, self.cols, [p * q for p in self.entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Quaternion, Real)):
            q = Quaternion.coerce(other)
            return type(self)(self.rows, self.cols, [q * p for p in self.entries])
        return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)

    # ---------------------------- predicates ----------------------------
    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, _QuaternionGrid):
            return NotImplemented
        return type(self) is type(other) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.rows, self.cols, self.entries))

    def frobenius_norm(self) -> float:
        return float(np.sqrt(sum(float(q.norm_sq()) for q in self.entries)))

    def is_zero(self, tol: float = 0.0) -> bool:
        if tol == 0.0:
            return all(q.is_zero() for q in self.entries)
        return self.frobenius_norm() <= tol

    def allclose(self, other: "_QuaternionGrid", tol: float = 1e-9) -> bool:
        self._check_same_shape(other)
        return (self - other).frobenius_norm() <= tol

    def is_upper_triangular(self, tol: float = 0.0) -> bool:
        below = [self[i, j] for i in range(self.rows) for j in range(min(i, self.cols))]
        if tol == 0.0:
            return all(q.is_zero() for q in below)
        return all(q.norm() <= tol for q in below)

    # ---------------------------- JSON ----------------------------
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [q.to_json() for q in self.entries]}

    @classmethod
    def _from_json(cls, data: Any):
        rows = getIntKey(data, "rows")
        cols = getIntKey(data, "cols")
        entries = getListKey(data, "entries")
        if len(entries) != rows * cols:
            raise JsonParsingError("Matrix of shape %dx%d needs %d entries, got %d. " % (rows, cols, rows * cols, len(entries)), data)
        return cls(rows, cols, [Quaternion.from_json(e) for e in entries])

    def __repr__(self) -> str:
        return "%s(%s)" % (type(self).__name__, [[str(q) for q in r] for r in self.to_rows()])


# ---------------------------- Quaternionic matrices ----------------------------

class QMatrix(_QuaternionGrid):
    """
    Dense matrix over ℍ.
    """

    def qtrace(self) -> RealScalar:
        return qtrace(self)

    def adjoint(self) -> "QMatrix":
        return adjoint(self)

    def chi(self) -> "CMatrix":
        return chi(self)

    @staticmethod
    def from_json(data: Any) -> "QMatrix":
        return QMatrix._from_json(data)


class CMatrix(_QuaternionGrid):
    """
    Dense complex matrix. Entries are quaternions a + b𝗂 with c = d = 0.
    """

    def __init__(self, rows: int, cols: int, entries: Iterable[Any]) -> None:
        super(CMatrix, self).__init__(rows, cols, entries)
        for q in self.entries:
            if q.c != 0 or q.d != 0:
                raise ShapeMismatch("complex matrix entry %s has a 𝗃 or 𝗄 part" % q)

    def tr(self) -> Quaternion:
        """ The standard complex trace, as a complex quaternion. """
        self._require_square()
        acc = self[0, 0]
        for i in range(1, self.rows):
            acc = acc + self[i, i]
        return acc

    def conj_transpose(self) -> "CMatrix":
        return CMatrix(self.cols, self.rows, [self[i, j].conj() for j in range(self.cols) for i in range(self.rows)])

    def to_numpy(self) -> np.ndarray:
        return np.array([[self[i, j].to_complex() for j in range(self.cols)] for i in range(self.rows)], dtype=complex)

    @staticmethod
    def from_numpy(arr: np.ndarray) -> "CMatrix":
        rows, cols = arr.shape
        return CMatrix(rows, cols, [Quaternion.from_complex(complex(z)) for z in arr.reshape(-1)])

    def as_qmatrix(self) -> QMatrix:
        """ The same entries viewed in Mₙ(ℍ) (ℂ ⊂ ℍ). """
        return QMatrix(self.rows, self.cols, self.entries)

    @staticmethod
    def from_json(data: Any) -> "CMatrix":
        try:
            return CMatrix._from_json(data)
        except ShapeMismatch as e:
            raise JsonParsingError(e.get_msg(), data)


AnyMatrix = Union[QMatrix, CMatrix]


# ---------------------------- Operations ----------------------------

def qtrace(A: QMatrix) -> RealScalar:
    """ Tr(A) = 2·Re(Σ aᵢᵢ) """
    A._require_square()
    total = A[0, 0].a
    for i in range(1, A.rows):
        total = total + A[i, i].a
    return 2 * total


def adjoint(A: QMatrix) -> QMatrix:
    return QMatrix(A.cols, A.rows, [A[i, j].conj() for j in range(A.cols) for i in range(A.rows)])


def commutator(A: AnyMatrix, B: AnyMatrix) -> AnyMatrix:
    """ [A,B] = AB − BA """
    return A * B - B * A


def power(A: AnyMatrix, k: int) -> AnyMatrix:
    A._require_square()
    if not isinstance(k, int) or k < 0:
        raise ValueError("only nonnegative integer powers, got %r" % (k,))
    result = type(A).identity(A.rows, exact=A.is_exact)
    base = A
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def chi(A: QMatrix) -> CMatrix:
    """
    χₙ(A) = [[A₁, −Ā₂], [A₂, Ā₁]] where A = A₁ + 𝗃A₂ with complex A₁, A₂.
    An entry a + b𝗂 + c𝗃 + d𝗄 splits as A₁ = a + b𝗂, A₂ = c − d𝗂.
    """
    r, c = A.rows, A.cols
    out = [ZERO] * (4 * r * c)
    width = 2 * c
    for i in range(r):
        for j in range(c):
            q = A[i, j]
            out[i * width + j] = Quaternion(q.a, q.b)
            out[i * width + c + j] = Quaternion(-q.c, -q.d)
            out[(r + i) * width + j] = Quaternion(q.c, -q.d)
            out[(r + i) * width + c + j] = Quaternion(q.a, -q.b)
    return CMatrix(2 * r, 2 * c, out)


def unchi(M: CMatrix) -> QMatrix:
    """ Left inverse of χₙ, reading A₁ and A₂ off the first block column. """
    if M.rows % 2 or M.cols % 2:
        raise ShapeMismatch("χ images have even dimensions")
    r, c = M.rows // 2, M.cols // 2
    out = []
    for i in range(r):
        for j in range(c):
            z1 = M[i, j]
            z2 = M[r + i, j]
            out.append(Quaternion(z1.a, z1.b, z2.a, -z2.b))
    return QMatrix(r, c, out)


def _plain(x: RealScalar) -> Any:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _left_block(q: Quaternion) -> List[List[RealScalar]]:
    a, b, c, d = [_plain(x) for x in q.parts()]
    return [[a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a]]


def real_block(A: QMatrix, dtype: Any = object) -> np.ndarray:
    """
    Left-regular representation Mₙ(ℍ) → M₄ₙ(ℝ); an injective ℝ-algebra homomorphism with
    tr(real_block(A)) = 2·Tr(A). Exact entries stay Python numbers under dtype=object.
    """
    out = np.zeros((4 * A.rows, 4 * A.cols), dtype=dtype)
    for i in range(A.rows):
        for j in range(A.cols):
            out[4 * i:4 * i + 4, 4 * j:4 * j + 4] = np.array(_left_block(A[i, j]), dtype=dtype)
    return out


def real_block_trace(M: np.ndarray) -> Any:
    """ Tr of the quaternionic matrix whose real block is M. """
    t = M.trace()
    if isinstance(t, (int, np.integer)):
        return int(t) // 2
    if isinstance(t, Fraction):
        return t / 2
    return t / 2


def inverse(A: QMatrix) -> QMatrix:
    """
    Gauss-Jordan elimination over ℍ with left row operations, so the accumulated operator is A⁻¹.
    Exact in rational mode; partial pivoting by norm in float mode.
    """
    A._require_square()
    n = A.rows
    exact = A.is_exact
    work = [A.row(i) + QMatrix.identity(n, exact).row(i) for i in range(n)]
    for col in range(n):
        if exact:
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        else:
            pivot = max(range(col, n), key=lambda r: work[r][col].norm())
            if work[pivot][col].norm() < 1e-14 * max(1.0, A.frobenius_norm()):
                pivot = None
        if pivot is None:
            raise SingularMatrix("matrix is singular (column %d)" % col)
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [inv * q for q in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero():
                f = work[r][col]
                work[r] = [q - f * p for q, p in zip(work[r], work[col])]
    return QMatrix(n, n, [q for r in range(n) for q in work[r][n:]])


def is_unitary(U: QMatrix, tol: float = 1e-9) -> bool:
    """ U ∈ Sp(n): U*U = I exactly (rational) or within `tol` in Frobenius norm (float). """
    if not U.is_square:
        return False
    gram = adjoint(U) * U
    ident = QMatrix.identity(U.rows, exact=U.is_exact)
    if U.is_exact:
        return gram == ident
    return (gram - ident).frobenius_norm() < tol


# ---------------------------- Random generation ----------------------------

def random_matrix(n: int, rng: np.random.Generator, exact: bool = True, bound: int = 10,
                  cols: Optional[int] = None, max_den: int = 1) -> QMatrix:
    cols = n if cols is None else cols
    return QMatrix(n, cols, [random_quaternion(rng, exact, bound, max_den) for _ in range(n * cols)])


def random_complex_matrix(n: int, rng: np.random.Generator, exact: bool = True, bound: int = 10) -> CMatrix:
    return CMatrix(n, n, [random_complex(rng, exact, bound) for _ in range(n * n)])


def random_upper(n: int, rng: np.random.Generator, exact: bool = True, bound: int = 10, max_den: int = 1) -> QMatrix:
    zero = ZERO if exact else ZERO.to_float()
    return QMatrix(n, n, [random_quaternion(rng, exact, bound, max_den) if j >= i else zero
                          for i in range(n) for j in range(n)])


def random_invertible(n: int, rng: np.random.Generator, exact: bool = True, bound: int = 10,
                      max_tries: int = 100) -> Tuple[QMatrix, QMatrix]:
    """ Returns (P, P⁻¹); singular draws are resampled. """
    for _ in range(max_tries):
        P = random_matrix(n, rng, exact, bound)
        if not exact:
            s = np.linalg.svd(chi(P).to_numpy(), compute_uv=False)
            if s[-1] < 1e-3 * s[0]:
                continue
        try:
            return P, inverse(P)
        except SingularMatrix:
            logger.debug("resampling singular conjugator")
    raise SingularMatrix("no invertible sample in %d tries" % max_tries)


def _gram_schmidt(columns: List[List[Quaternion]]) -> List[List[Quaternion]]:
    """ Orthonormalization in the right ℍ-vector space ℍⁿ with ⟨u,v⟩ = u*v. """
    basis = []  # type: List[List[Quaternion]]
    for v in columns:
        w = list(v)
        for u in basis:
            coeff = sum((ui.conj() * wi for ui, wi in zip(u, w)), ZERO.to_float())
            w = [wi - ui * coeff for ui, wi in zip(u, w)]
        norm = float(np.sqrt(sum(float(q.norm_sq()) for q in w)))
        if norm < 1e-12:
            continue
        basis.append([q / norm for q in w])
    return basis


def complete_unitary(v: Sequence[Quaternion]) -> QMatrix:
    """ Float unitary whose first column is v/|v|. """
    n = len(v)
    candidates = [list(v)]
    for k in range(n):
        candidates.append([ONE.to_float() if i == k else ZERO.to_float() for i in range(n)])
    basis = _gram_schmidt([[q.to_float() for q in c] for c in candidates])
    return QMatrix.from_columns(basis[:n])


def cayley(S: QMatrix) -> QMatrix:
    """ (I − S)(I + S)⁻¹, unitary whenever S is skew-Hermitian. """
    ident = QMatrix.identity(S.rows, exact=S.is_exact)
    return (ident - S) * inverse(ident + S)


def random_skew_hermitian(n: int, rng: np.random.Generator, bound: int = 3) -> QMatrix:
    entries = {}
    for i in range(n):
        q = random_quaternion(rng, True, bound)
        entries[(i, i)] = q.pure_part()
        for j in range(i + 1, n):
            q = random_quaternion(rng, True, bound)
            entries[(i, j)] = q
            entries[(j, i)] = -q.conj()
    return QMatrix(n, n, [entries[(i, j)] for i in range(n) for j in range(n)])


def random_signed_permutation(n: int, rng: np.random.Generator) -> QMatrix:
    perm = [int(x) for x in rng.permutation(n)]
    signs = [1 if s else -1 for s in rng.integers(0, 2, size=n)]
    return QMatrix(n, n, [Quaternion(signs[i]) if perm[i] == j else ZERO for i in range(n) for j in range(n)])


def random_unitary(n: int, rng: np.random.Generator, exact: bool = False) -> QMatrix:
    """
    Float: Gram-Schmidt orthonormalization of a Gaussian quaternionic matrix.
    Exact: Cayley(S)·D·P with S rational skew-Hermitian, D diagonal of rational unit quaternions
    and P a signed permutation.
    """
    if exact:
        D = QMatrix.diag(*[random_unit(rng, exact=True) for _ in range(n)])
        return cayley(random_skew_hermitian(n, rng)) * D * random_signed_permutation(n, rng)
    G = random_matrix(n, rng, exact=False)
    return QMatrix.from_columns(_gram_schmidt([G.column(j) for j in range(n)]))


def from_json_matrix(data: Any) -> QMatrix:
    """ Accepts the documented matrix encoding or a bare list of rows. """
    if isinstance(data, list):
        try:
            return QMatrix.from_rows([[Quaternion.from_json(q) for q in row] for row in data])
        except (ShapeMismatch, TypeError) as e:
            raise JsonParsingError("Cannot read matrix rows (%s). " % e, data)
    if not isinstance(data, dict):
        raise JsonParsingError("A matrix is encoded as {\"rows\", \"cols\", \"entries\"}. ", data)
    return QMatrix.from_json(data)


def require_size(A: QMatrix, n: int) -> None:
    if A.shape != (n, n):
        raise InputError("expected a %dx%d matrix, got %dx%d" % (n, n, A.rows, A.cols))
