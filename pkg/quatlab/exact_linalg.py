""" Exact linear algebra over ℚ and 𝔽_p.

Ranks of large integer evaluation matrices are computed modulo a few random primes near 2⁶²;
disagreement between primes escalates to fraction-free (Bareiss) elimination over ℤ.
Kernels are returned as primitive integer vectors, either read off the Bareiss echelon form or
reconstructed from kernels modulo small primes and then checked exactly.
"""
import logging
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.ntheory.modular import crt

from quatlab.errors import RankUnstable

logger = logging.getLogger(__name__)


def random_primes(rng: np.random.Generator, count: int, bits: int = 62) -> List[int]:
    """ `count` distinct primes in [2^(bits-1), 2^bits), drawn reproducibly from `rng`. """
    lo, hi = 1 << (bits - 1), 1 << bits
    primes = []  # type: List[int]
    while len(primes) < count:
        start = int(rng.integers(lo, hi - (1 << (bits - 8))))
        p = int(sympy.nextprime(start))
        if p < hi and p not in primes:
            primes.append(p)
    return primes


def _as_object_array(M: Any) -> np.ndarray:
    A = np.array(M, dtype=object)
    if A.size == 0:
        return np.zeros((0, 0), dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a matrix, got an array of shape %s" % (A.shape,))
    return A


# ---------------------------- modulo a prime ----------------------------

def rank_mod_p(M: Any, p: int) -> Tuple[int, List[int], List[int]]:
    """
    Gaussian elimination over 𝔽_p.

    :return: (rank, pivot columns, original indices of an independent set of rows)
    """
    A = _as_object_array(M) % p
    m, n = A.shape
    rows = list(range(m))
    r = 0
    pivot_cols = []  # type: List[int]
    for c in range(n):
        if r == m:
            break
        nz = [i for i in range(r, m) if A[i, c] != 0]
        if not nz:
            continue
        piv = nz[0]
        if piv != r:
            A[[r, piv], :] = A[[piv, r], :]
            rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r, :] = (A[r, :] * inv) % p
        if r + 1 < m:
            factors = A[r + 1:, c].copy()
            A[r + 1:, :] = (A[r + 1:, :] - np.outer(factors, A[r, :])) % p
        pivot_cols.append(c)
        r += 1
    return r, pivot_cols, sorted(rows[:r])


class ModSpan(object):
    """ Incrementally grown subspace of 𝔽_p^n, rows kept reduced against earlier pivots. """
    def __init__(self, p: int) -> None:
        self.p = p
        self.pivots = {}  # type: Dict[int, Dict[int, int]]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _reduce(self, v: Sequence[int]) -> Dict[int, int]:
        p = self.p
        r = {j: int(x) % p for j, x in enumerate(v) if int(x) % p}
        for pc in sorted(self.pivots):
            coeff = r.get(pc, 0)
            if not coeff:
                continue
            for c, pv in self.pivots[pc].items():
                val = (r.get(c, 0) - coeff * pv) % p
                if val:
                    r[c] = val
                else:
                    r.pop(c, None)
        return r

    def add(self, v: Sequence[int]) -> bool:
        """ Adds v; True iff it enlarged the span. """
        r = self._reduce(v)
        if not r:
            return False
        pc = min(r)
        inv = pow(r[pc], self.p - 2, self.p)
        self.pivots[pc] = {c: (x * inv) % self.p for c, x in r.items()}
        return True

    def contains(self, v: Sequence[int]) -> bool:
        return not self._reduce(v)


# ---------------------------- over the integers ----------------------------

def bareiss_echelon(M: Any) -> Tuple[np.ndarray, List[int]]:
    """
    Fraction-free row echelon form of an integer matrix. Every intermediate entry is a minor
    of M, so each division is exact.
    """
    A = _as_object_array(M).copy()
    m, n = A.shape
    prev = 1
    r = 0
    pivot_cols = []  # type: List[int]
    for c in range(n):
        if r == m:
            break
        nz = [i for i in range(r, m) if A[i, c] != 0]
        if not nz:
            continue
        piv = nz[0]
        if piv != r:
            A[[r, piv], :] = A[[piv, r], :]
        if r + 1 < m and c + 1 < n:
            A[r + 1:, c + 1:] = (A[r, c] * A[r + 1:, c + 1:] - np.outer(A[r + 1:, c], A[r, c + 1:])) // prev
        if r + 1 < m:
            A[r + 1:, c] = 0
        prev = A[r, c]
        pivot_cols.append(c)
        r += 1
    return A[:r, :], pivot_cols


def bareiss_rank(M: Any) -> int:
    return len(bareiss_echelon(M)[1])


def primitive(v: Sequence[Fraction]) -> List[int]:
    """ The primitive integer vector on the ray of v, first nonzero entry positive. """
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return ints if lead > 0 else [-x for x in ints]


def integer_kernel(M: Any) -> List[List[int]]:
    """ Basis of {x : M x = 0} over ℚ as primitive integer vectors, one per free column. """
    A = _as_object_array(M)
    n = A.shape[1]
    R, pivots = bareiss_echelon(A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            acc = sum((R[i, j] * x[j] for j in range(pc + 1, n) if x[j]), Fraction(0))
            x[pc] = -acc / R[i, pc]
        basis.append(primitive(x))
    return basis


class ExactSpan(object):
    """ Incrementally grown subspace of ℚ^n with rows reduced against earlier pivots. """
    def __init__(self) -> None:
        self.pivots = {}  # type: Dict[int, Dict[int, Fraction]]
        self.members = []  # type: List[Any]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _reduce(self, v: Sequence[Any]) -> Dict[int, Fraction]:
        r = {j: Fraction(x) for j, x in enumerate(v) if x != 0}
        for pc in sorted(self.pivots):
            coeff = r.get(pc)
            if not coeff:
                continue
            for c, pv in self.pivots[pc].items():
                val = r.get(c, Fraction(0)) - coeff * pv
                if val:
                    r[c] = val
                else:
                    r.pop(c, None)
        return r

    def add(self, v: Sequence[Any], member: Any = None) -> bool:
        """ Adds v (tagged with `member`); True iff it enlarged the span. """
        r = self._reduce(v)
        if not r:
            return False
        pc = min(r)
        lead = r[pc]
        self.pivots[pc] = {c: x / lead for c, x in r.items()}
        self.members.append(member if member is not None else list(v))
        return True

    def contains(self, v: Sequence[Any]) -> bool:
        return not self._reduce(v)


# ---------------------------- multi-modular rank ----------------------------

class RankResult(object):
    def __init__(self, rank: int, stable: bool, pivot_cols: List[int], pivot_rows: List[int]) -> None:
        self.rank = rank
        self.stable = stable
        self.pivot_cols = pivot_cols
        self.pivot_rows = pivot_rows

    def __repr__(self) -> str:
        return "RankResult(rank=%d, stable=%s)" % (self.rank, self.stable)


def multimodular_rank(M: Any, primes: Sequence[int]) -> RankResult:
    """
    Rank over ℚ of an integer matrix. All primes must agree; otherwise the rank is recomputed
    exactly, which can only confirm or exceed the largest modular rank.
    """
    A = _as_object_array(M)
    results = [rank_mod_p(A, p) for p in primes]
    ranks = [res[0] for res in results]
    best = max(range(len(results)), key=lambda i: ranks[i])
    _, cols, rows = results[best]
    if len(set(ranks)) == 1:
        return RankResult(ranks[0], True, cols, rows)
    logger.warning("modular ranks disagree (%s), falling back to exact elimination", ranks)
    exact = bareiss_rank(A)
    if exact < ranks[best]:
        raise RankUnstable("exact rank %d is below modular rank %d" % (exact, ranks[best]))
    if exact > ranks[best]:
        cols = bareiss_echelon(A)[1]
        rows = bareiss_echelon(A.T.copy())[1]
    return RankResult(exact, False, cols, rows)


# ---------------------------- kernels by reconstruction ----------------------------

def kernel_mod_p(M: Any, p: int) -> Tuple[List[int], List[List[int]]]:
    """
    Reduced row echelon form over 𝔽_p in int64 (p < 2³¹).

    :return: (pivot columns, kernel basis with a 1 in each free column)
    """
    if p >= (1 << 31):
        raise ValueError("kernel_mod_p works in int64 and needs p < 2^31, got %d" % p)
    A = np.array(_as_object_array(M) % p, dtype=np.int64)
    m, n = A.shape
    r = 0
    pivots = []  # type: List[int]
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], :] = A[[piv, r], :]
        A[r, :] = (A[r, :] * pow(int(A[r, c]), p - 2, p)) % p
        factors = A[:, c].copy()
        factors[r] = 0
        A = (A - np.outer(factors, A[r, :]) % p) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = int(-A[i, f] % p)
        basis.append(x)
    return pivots, basis


def rational_reconstruction(a: int, m: int) -> Optional[Fraction]:
    """ The fraction r/s ≡ a (mod m) with |r|, s ≤ √(m/2), if there is one. """
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    frac = Fraction(r1, s1)
    if (frac.numerator - a * frac.denominator) % m:
        return None
    return frac


def rational_kernel(M: Any, primes: Sequence[int], check: Any = None) -> List[List[int]]:
    """
    Kernel of an integer matrix over ℚ, as primitive integer vectors. Kernels modulo several
    small primes are combined by CRT and rational reconstruction and the result is verified
    exactly against `check` (default M). Falls back to Bareiss elimination.
    """
    A = _as_object_array(M)
    C = A if check is None else _as_object_array(check)
    images = []  # type: List[List[List[int]]]
    moduli = []  # type: List[int]
    ref = None
    for p in primes:
        pivots, basis = kernel_mod_p(A, p)
        if ref is None:
            ref = pivots
        elif pivots != ref:
            logger.debug("prime %d has pivots %s instead of %s, skipped", p, pivots, ref)
            continue
        images.append(basis)
        moduli.append(p)
        if len(moduli) < 2:
            continue
        candidate = _reconstruct(images, moduli)
        if candidate is not None and _verified(C, candidate):
            return candidate
    logger.warning("modular kernel reconstruction failed with %d primes, using exact elimination", len(moduli))
    kernel = integer_kernel(A)
    if not _verified(C, kernel):
        raise RankUnstable("exact kernel does not annihilate the check matrix")
    return kernel


def _reconstruct(images: List[List[List[int]]], moduli: List[int]) -> Optional[List[List[int]]]:
    out = []
    for k in range(len(images[0])):
        coords = []
        for j in range(len(images[0][k])):
            value, modulus = crt(moduli, [img[k][j] for img in images])
            frac = rational_reconstruction(int(value), int(modulus))
            if frac is None:
                return None
            coords.append(frac)
        out.append(primitive(coords))
    return out


def _verified(C: np.ndarray, kernel: List[List[int]]) -> bool:
    for v in kernel:
        if any(x != 0 for x in C.dot(np.array(v, dtype=object))):
            return False
    return True
