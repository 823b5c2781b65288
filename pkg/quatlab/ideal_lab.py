""" Bigraded invariants of pairs of 2x2 quaternionic matrices.

𝒫′(k,l) denotes the GL₂(ℍ)-invariant polynomials on M₂(ℍ)² of degree k in the first matrix and
l in the second; they are spanned by products of traces of words. 𝓘′(k,l) is the subspace of
those vanishing on W₂. Dimensions come from evaluation matrices (one row per sample pair, one
column per trace monomial): the rank at generic samples is dim 𝒫′(k,l), the rank at W₂ samples
is dim 𝒫′(k,l) − dim 𝓘′(k,l). Invariants are constant on conjugacy classes, so W₂ is sampled
through its upper triangular representatives.

Sample pairs are evaluated in the real left-regular representation as stacked integer arrays,
one matrix product per word prefix for all samples at once.
"""
import itertools
import logging
from collections import OrderedDict
from fractions import Fraction
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from quatlab.config import LabConfig
from quatlab.errors import InconsistentResult, InputError, NotInIdeal
from quatlab.exact_linalg import ModSpan, bareiss_rank, multimodular_rank, primitive, random_primes, rational_kernel
from quatlab.jsonable import Jsonable, PropertyReport, getKey, getListKey
from quatlab.qmatrix import QMatrix, random_invertible, random_matrix, random_upper, real_block
from quatlab.triangular import tr_comm_cube, wn_property_suite
from quatlab.w2 import w2_membership
from quatlab.word_syntax import parse_trace_polynomial
from quatlab.words import (Bidegree, Factors, TracePolynomial, Word, WordEvaluator, bidegree, canonical_rotation,
                           eval_trace, is_primitive, trace_derivative, trace_gradient)

logger = logging.getLogger(__name__)

Pair = Tuple[QMatrix, QMatrix]
KERNEL_PRIME_BITS = 31
KERNEL_PRIMES = 6


# ---------------------------- Necklaces and monomials ----------------------------

class Necklace(Jsonable):
    def __init__(self, word: Word) -> None:
        self.word = canonical_rotation(word)
        self.bidegree = bidegree(self.word)
        self.aperiodic = is_primitive(self.word)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Necklace) and self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    def __repr__(self) -> str:
        return "Necklace(%r)" % self.word

    def to_json(self) -> Dict[str, Any]:
        return {"word": self.word, "bidegree": list(self.bidegree), "aperiodic": self.aperiodic}


def necklaces(a: int, b: int) -> List[Necklace]:
    """ One representative per rotation class of words with a x's and b y's. """
    if a < 0 or b < 0 or a + b < 1:
        raise InputError("necklaces need a, b >= 0 and a + b >= 1, got (%d, %d)" % (a, b))
    n = a + b
    out = []
    for ys in itertools.combinations(range(n), b):
        w = "".join('y' if i in ys else 'x' for i in range(n))
        if canonical_rotation(w) == w:
            out.append(Necklace(w))
    return out


def necklace_count(a: int, b: int) -> int:
    """ Burnside: (1/n) Σ_{d | gcd(a,b)} φ(d) C(n/d, a/d). """
    n = a + b
    g = sympy.igcd(a, b)
    total = sum(int(sympy.totient(d)) * comb(n // d, a // d) for d in sympy.divisors(g))
    return total // n


class InvariantMonomial(Jsonable):
    """ Tr(w₁)···Tr(w_r) for a sorted multiset of necklace words. """
    def __init__(self, factors: Sequence[Word]) -> None:
        self.factors = tuple(sorted(canonical_rotation(w) for w in factors))
        self.bidegree = TracePolynomial.term_bidegree(self.factors)

    def as_trace_polynomial(self) -> TracePolynomial:
        return TracePolynomial({self.factors: 1})

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, InvariantMonomial) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return str(self.as_trace_polynomial())

    def to_json(self) -> List[str]:
        return list(self.factors)


def invariant_monomials(k: int, l: int) -> List[InvariantMonomial]:
    """ All multisets of nonempty necklaces with total bidegree (k, l); (0, 0) gives the constant. """
    if k < 0 or l < 0:
        raise InputError("bidegree must be nonnegative, got (%d, %d)" % (k, l))
    pieces = [nk.word for a in range(k + 1) for b in range(l + 1) if a + b > 0 for nk in necklaces(a, b)]
    pieces.sort(key=lambda w: (len(w), w))
    out = []  # type: List[InvariantMonomial]

    def extend(start: int, rest: Bidegree, chosen: List[Word]) -> None:
        if rest == (0, 0):
            out.append(InvariantMonomial(chosen))
            return
        for i in range(start, len(pieces)):
            a, b = bidegree(pieces[i])
            if a <= rest[0] and b <= rest[1]:
                chosen.append(pieces[i])
                extend(i, (rest[0] - a, rest[1] - b), chosen)
                chosen.pop()

    extend(0, (k, l), [])
    return out


# ---------------------------- Sampling ----------------------------

def sample_generic(rng: np.random.Generator, bound: int = 10) -> Pair:
    """ Integer pair with entries in [−bound, bound]. """
    return random_matrix(2, rng, True, bound), random_matrix(2, rng, True, bound)


def w2_representative(rng: np.random.Generator, bound: int = 5) -> Pair:
    """ Upper triangular integer pair; every W₂ pair is conjugate to one of these. """
    return random_upper(2, rng, True, bound), random_upper(2, rng, True, bound)


def sample_w2(rng: np.random.Generator, bound: int = 5, max_den: int = 3, conj_bound: int = 3) -> Pair:
    """ g·(T₁, T₂)·g⁻¹ with rational upper triangular Tᵢ and invertible rational g. """
    T1 = random_upper(2, rng, True, bound, max_den)
    T2 = random_upper(2, rng, True, bound, max_den)
    g, g_inv = random_invertible(2, rng, True, conj_bound)
    return g * T1 * g_inv, g * T2 * g_inv


def _stack_trace(M: np.ndarray) -> Any:
    return np.trace(M, axis1=-2, axis2=-1) // 2


class SamplePool(object):
    """
    Real-block images of many integer pairs, evaluated word by word for all pairs at once.
    int64 is used while every word up to `max_length` provably fits, Python integers otherwise.
    """
    def __init__(self, pairs: Sequence[Pair], bound: int, max_length: int) -> None:
        self.size = len(pairs)
        m = 8
        dtype = np.int64 if m * (m * bound) ** max_length < (1 << 62) else object
        X = np.stack([real_block(A) for A, _ in pairs]).astype(dtype)
        Y = np.stack([real_block(B) for _, B in pairs]).astype(dtype)
        ident = np.eye(m, dtype=np.int64).astype(dtype)
        self.evaluator = WordEvaluator(X, Y, identity=ident, trace=_stack_trace, product=np.matmul)
        self.monomial_cache = {}  # type: Dict[Factors, np.ndarray]

    def trace(self, w: Word) -> np.ndarray:
        return np.asarray(self.evaluator.trace(w), dtype=object) * np.ones(self.size, dtype=object)

    def monomial(self, factors: Factors) -> np.ndarray:
        hit = self.monomial_cache.get(factors)
        if hit is None:
            hit = np.ones(self.size, dtype=object)
            for w in factors:
                hit = hit * self.trace(w)
            self.monomial_cache[factors] = hit
        return hit

    def matrix(self, monomials: Sequence[InvariantMonomial]) -> np.ndarray:
        M = np.empty((self.size, len(monomials)), dtype=object)
        for j, mono in enumerate(monomials):
            M[:, j] = self.monomial(mono.factors)
        return M

    def values(self, t: TracePolynomial) -> np.ndarray:
        """ Exact values of t; integers when the coefficients are. """
        total = np.zeros(self.size, dtype=object)
        for factors, c in t.terms.items():
            coeff = c.numerator if c.denominator == 1 else c
            total = total + self.monomial(factors) * coeff
        return total


# ---------------------------- Dimension tables ----------------------------

class BidegreeEntry(Jsonable):
    def __init__(self, k: int, l: int, n_monomials: int, samples: int, span_dim: int, rank_w2: int,
                 rank_stable: bool, mirrored: bool = False) -> None:
        self.k = k
        self.l = l
        self.n_monomials = n_monomials
        self.samples = samples
        self.span_dim = span_dim
        self.rank_w2 = rank_w2
        self.rank_stable = rank_stable
        self.mirrored = mirrored

    @property
    def d(self) -> int:
        return self.span_dim - self.rank_w2

    def mirror(self) -> "BidegreeEntry":
        return BidegreeEntry(self.l, self.k, self.n_monomials, self.samples, self.span_dim, self.rank_w2,
                             self.rank_stable, mirrored=True)

    def to_json(self) -> Dict[str, Any]:
        return OrderedDict([("k", self.k), ("l", self.l), ("monomials", self.n_monomials),
                            ("samples", self.samples), ("span_dim", self.span_dim), ("rank_w2", self.rank_w2),
                            ("d", self.d), ("rank_stable", self.rank_stable), ("mirrored", self.mirrored)])

    @staticmethod
    def from_json(data: Any) -> "BidegreeEntry":
        return BidegreeEntry(getKey(data, "k"), getKey(data, "l"), getKey(data, "monomials"), getKey(data, "samples"),
                             getKey(data, "span_dim"), getKey(data, "rank_w2"), getKey(data, "rank_stable"),
                             bool(data.get("mirrored", False)))


class BidegreeTable(Jsonable):
    CSV_COLUMNS = ("k", "l", "monomials", "samples", "span_dim", "rank_w2", "d", "rank_stable")

    def __init__(self, max_total: int, seed: int, entries: Dict[Bidegree, BidegreeEntry]) -> None:
        self.max_total = max_total
        self.seed = seed
        self.entries = entries

    def d(self, k: int, l: int) -> int:
        return self.entries[(k, l)].d

    def check_symmetry(self) -> None:
        for (k, l), e in self.entries.items():
            other = self.entries.get((l, k))
            if other is not None and other.d != e.d:
                raise InconsistentResult("d(%d,%d) = %d but d(%d,%d) = %d" % (k, l, e.d, l, k, other.d))

    def to_json(self) -> Dict[str, Any]:
        return {"max_total": self.max_total, "seed": self.seed,
                "entries": [self.entries[key].to_json() for key in sorted(self.entries)]}

    @staticmethod
    def from_json(data: Any) -> "BidegreeTable":
        entries = [BidegreeEntry.from_json(e) for e in getListKey(data, "entries")]
        return BidegreeTable(getKey(data, "max_total"), getKey(data, "seed"), {(e.k, e.l): e for e in entries})

    def to_csv_rows(self) -> List[List[Any]]:
        rows = []
        for key in sorted(self.entries):
            e = self.entries[key].to_json()
            rows.append([e[c] for c in self.CSV_COLUMNS])
        return rows


class _Cell(object):
    """ Evaluation data of one bidegree kept for kernel and generator work. """
    def __init__(self, entry: BidegreeEntry, monomials: List[InvariantMonomial], basis_cols: List[int],
                 w2_rows: List[int]) -> None:
        self.entry = entry
        self.monomials = monomials
        self.basis_cols = basis_cols
        self.w2_rows = w2_rows


class InvariantLab(object):
    """
    Shared samples, primes and caches for the rank computations of one run. Only cells with
    k <= l are computed; swapping the two letters maps W₂ to itself, so (l, k) is the mirror image.
    """
    def __init__(self, config: Optional[LabConfig] = None, max_total: Optional[int] = None) -> None:
        self.config = config or LabConfig()
        self.max_total = max_total if max_total is not None else self.config.max_total
        if self.max_total > LabConfig.HARD_TOTAL_CAP:
            raise InputError("total degree %d exceeds the cap %d" % (self.max_total, LabConfig.HARD_TOTAL_CAP))
        self.rng = np.random.default_rng(self.config.seed)
        self.primes = random_primes(self.rng, self.config.n_primes, self.config.prime_bits)
        self.kernel_primes = random_primes(self.rng, KERNEL_PRIMES, KERNEL_PRIME_BITS)
        largest = max(len(invariant_monomials(k, self.max_total - k)) for k in range(self.max_total + 1))
        self.samples = self.config.sample_count(largest)
        logger.info("sampling %d generic and %d W2 pairs (largest cell has %d monomials)",
                    self.samples, self.samples, largest)
        self.generic = SamplePool([sample_generic(self.rng, self.config.entry_bound) for _ in range(self.samples)],
                                  self.config.entry_bound, self.max_total)
        self.w2 = SamplePool([w2_representative(self.rng, self.config.w2_entry_bound) for _ in range(self.samples)],
                             self.config.w2_entry_bound, self.max_total)
        self.cells = {}  # type: Dict[Bidegree, _Cell]

    def _require(self, k: int, l: int) -> None:
        if k < 0 or l < 0 or k + l > self.max_total:
            raise InputError("bidegree (%d, %d) outside this run's bound k + l <= %d" % (k, l, self.max_total))

    def cell(self, k: int, l: int) -> _Cell:
        self._require(k, l)
        if k > l:
            return self._mirror(self.cell(l, k))
        hit = self.cells.get((k, l))
        if hit is not None:
            return hit
        monomials = invariant_monomials(k, l)
        gen = multimodular_rank(self.generic.matrix(monomials), self.primes)
        basis_cols = gen.pivot_cols
        w2 = multimodular_rank(self.w2.matrix([monomials[c] for c in basis_cols]), self.primes)
        entry = BidegreeEntry(k, l, len(monomials), self.samples, gen.rank, w2.rank, gen.stable and w2.stable)
        logger.debug("cell (%d,%d): %d monomials, span %d, W2 rank %d", k, l, len(monomials), gen.rank, w2.rank)
        cell = _Cell(entry, monomials, basis_cols, w2.pivot_rows)
        self.cells[(k, l)] = cell
        return cell

    def _mirror(self, cell: _Cell) -> _Cell:
        monomials = [InvariantMonomial([swap_letters_word(w) for w in m.factors]) for m in cell.monomials]
        return _Cell(cell.entry.mirror(), monomials, cell.basis_cols, cell.w2_rows)

    def entry(self, k: int, l: int) -> BidegreeEntry:
        return self.cell(k, l).entry

    def ideal_basis(self, k: int, l: int) -> List[TracePolynomial]:
        """ Primitive integer trace polynomials spanning 𝓘′(k,l). """
        cell = self.cell(k, l)
        cols = [cell.monomials[c] for c in cell.basis_cols]
        if cell.entry.d == 0:
            return []
        if k > l:
            return [swap_letters(t) for t in self.ideal_basis(l, k)]
        M = self.w2.matrix(cols)
        if cell.w2_rows:
            kernel = rational_kernel(M[cell.w2_rows, :], self.kernel_primes, check=M)
        else:
            kernel = [[1 if i == j else 0 for j in range(len(cols))] for i in range(len(cols))]
        if len(kernel) != cell.entry.d:
            raise InconsistentResult("kernel of dimension %d at (%d,%d), expected %d" % (len(kernel), k, l, cell.entry.d))
        out = []
        for v in kernel:
            terms = {}  # type: Dict[Factors, int]
            for c, mono in zip(v, cols):
                if c:
                    terms[mono.factors] = c
            out.append(TracePolynomial(terms))
        return out


def swap_letters_word(w: Word) -> Word:
    return w.translate(str.maketrans("xy", "yx"))


def swap_letters(t: TracePolynomial) -> TracePolynomial:
    return TracePolynomial({tuple(swap_letters_word(w) for w in factors): c for factors, c in t.terms.items()})


def dim_bigraded(k: int, l: int, config: Optional[LabConfig] = None) -> BidegreeEntry:
    return InvariantLab(config, max_total=max(k + l, 1)).entry(k, l)


def bidegree_table(config: Optional[LabConfig] = None, lab: Optional[InvariantLab] = None) -> BidegreeTable:
    """ d_{k,l} for every k + l <= max_total. """
    lab = lab or InvariantLab(config)
    entries = {}  # type: Dict[Bidegree, BidegreeEntry]
    for total in range(1, lab.max_total + 1):
        for k in range(total + 1):
            entries[(k, total - k)] = lab.entry(k, total - k)
    table = BidegreeTable(lab.max_total, lab.config.seed, entries)
    table.check_symmetry()
    return table


# ---------------------------- Generators ----------------------------

class Generator(Jsonable):
    def __init__(self, name: str, poly: TracePolynomial, bidegree: Optional[Bidegree] = None) -> None:
        self.name = name
        self.poly = poly
        self.bidegree = bidegree if bidegree is not None else poly.bidegree()

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "bidegree": list(self.bidegree), "text": str(self.poly)}


class GeneratorSet(Jsonable):
    def __init__(self, generators: Sequence[Generator]) -> None:
        self.generators = list(generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def to_json(self) -> List[Dict[str, Any]]:
        return [g.to_json() for g in self.generators]


TABLE2 = (
    ("f1", "Tr(xy^2x[x,y])", (3, 3)),
    ("f2", "Tr(xy^3x[x,y])", (3, 4)),
    ("f3", "Tr(yx^3y[x,y])", (4, 3)),
    ("f4", "Tr(y^2x^2y^2[x,y])", (3, 5)),
    ("f5", "Tr(xy^3x[x^2,y])", (4, 4)),
    ("f6", "Tr([x,y][[x^2,y],[x,y^2]])", (4, 4)),
    ("f7", "Tr(x^2y^2x^2[x,y])", (5, 3)),
    ("f8", "Tr(yxy^3xy[x,y])", (3, 6)),
    ("f9", "Tr([[x,y],y]^3)", (3, 6)),
    ("f10", "Tr(y^2x^3y^2[x,y])", (4, 5)),
    ("f11", "Tr([x,y][x,y^2][x^2,y^2])", (4, 5)),
    ("f12", "Tr([[x,y],x][[x,y],y]^2)", (4, 5)),
    ("f13", "Tr(x^2y^3x^2[x,y])", (5, 4)),
    ("f14", "Tr([x,y][x^2,y][x^2,y^2])", (5, 4)),
    ("f15", "Tr([[x,y],y][[x,y],x]^2)", (5, 4)),
    ("f16", "Tr(xyx^3yx[x,y])", (6, 3)),
    ("f17", "Tr([[x,y],x]^3)", (6, 3)),
)


def table2_generators() -> GeneratorSet:
    """ Seventeen generators of the ideal up to total degree 9. """
    gens = []
    for name, text, declared in TABLE2:
        poly = parse_trace_polynomial(text)
        if poly.bidegree() != declared:
            raise InconsistentResult("%s has bidegree %s, declared %s" % (name, poly.bidegree(), declared))
        gens.append(Generator(name, poly, declared))
    return GeneratorSet(gens)


def vanishes_on_w2(t: TracePolynomial, rng: np.random.Generator, samples: int = 20) -> bool:
    """ Exact check on conjugated rational W₂ samples. """
    return all(eval_trace(t, *sample_w2(rng)) == 0 for _ in range(samples))


def check_generator(g: Generator, rng: np.random.Generator, samples: int = 20, generic: int = 20) -> PropertyReport:
    """
    g has its declared bidegree, vanishes on W₂ samples and is nonzero at some generic pair.
    f1 also satisfies −3·f1 = Tr([x,y]³).
    """
    report = PropertyReport("generator_" + g.name)
    out = report.collector
    report.count()
    if g.poly.bidegree() != g.bidegree:
        out.addViolation("bidegree", "computed %s, declared %s" % (g.poly.bidegree(), g.bidegree))
    for _ in range(samples):
        A, B = sample_w2(rng)
        value = eval_trace(g.poly, A, B)
        report.count()
        if value != 0:
            out.addViolation("vanishing", "value %s on a W2 sample" % value, {"A": A.to_json(), "B": B.to_json()})
    nonzero = 0
    for _ in range(generic):
        A, B = sample_generic(rng, 3)
        value = eval_trace(g.poly, A, B)
        nonzero += value != 0
        if g.name == "f1":
            report.count()
            if -3 * value != tr_comm_cube(A, B):
                out.addViolation("cube_bridge", "-3*f1 = %s but Tr([A,B]^3) = %s" % (-3 * value, tr_comm_cube(A, B)))
    report.count()
    if nonzero == 0:
        out.addViolation("generic_nonvanishing", "zero at all %d generic samples" % generic)
    report.details["generic_nonzero"] = nonzero
    return report


def derive_generator(p: TracePolynomial, var: str, rng: Optional[np.random.Generator] = None,
                     samples: int = 10) -> TracePolynomial:
    """ ∂p/∂var; p and the result are both checked to vanish on W₂ samples. """
    if var not in ('x', 'y'):
        raise InputError("derivation variable must be 'x' or 'y', got %r" % var)
    rng = rng if rng is not None else np.random.default_rng(0)
    if not vanishes_on_w2(p, rng, samples):
        raise NotInIdeal("%s does not vanish on W2" % p)
    d = trace_derivative(p, var)
    if not vanishes_on_w2(d, rng, samples):
        raise NotInIdeal("the derivative %s does not vanish on W2" % d)
    return d


def jacobian_rank(fs: Sequence[TracePolynomial], A: QMatrix, B: QMatrix) -> int:
    """ Rank over ℚ of the exact Jacobian in the 32 real coordinates of (A, B). """
    rows = [primitive([Fraction(x) for x in trace_gradient(f, A, B)]) for f in fs]
    return bareiss_rank(rows) if rows else 0


# ---------------------------- Minimal generating sets ----------------------------

class MSGResult(Jsonable):
    """ Generators found degree by degree: counts[(k, l)] new ones at each bidegree. """
    def __init__(self, max_total: int, seed: int) -> None:
        self.max_total = max_total
        self.seed = seed
        self.counts = {}  # type: Dict[Bidegree, int]
        self.generators = []  # type: List[Generator]

    def counts_at(self, m: int) -> Dict[Bidegree, int]:
        return {kl: c for kl, c in sorted(self.counts.items()) if sum(kl) == m and c}

    def to_json(self) -> Dict[str, Any]:
        return {"max_total": self.max_total, "seed": self.seed,
                "counts": [{"k": k, "l": l, "new": c} for (k, l), c in sorted(self.counts.items()) if c],
                "generators": [g.to_json() for g in self.generators]}


def _complement_products(lab: InvariantLab, k: int, l: int, gens: Sequence[Generator]) -> List[np.ndarray]:
    rows = []
    for g in gens:
        a, b = g.bidegree
        if a > k or b > l or (a, b) == (k, l):
            continue
        values = lab.generic.values(g.poly)
        for mono in invariant_monomials(k - a, l - b):
            rows.append(values * lab.generic.monomial(mono.factors))
    return rows


def msg_steps(config: Optional[LabConfig] = None, m_max: Optional[int] = None,
              lab: Optional[InvariantLab] = None) -> MSGResult:
    """
    Builds a minimal generating set of the ideal degree by degree up to total degree m_max. At
    (k, l) the number of new generators is d_{k,l} − dim 𝒥(k,l), where 𝒥(k,l) is spanned by
    products of earlier generators with monomials of the complementary bidegree.
    """
    config = config or LabConfig()
    m_max = m_max if m_max is not None else config.msg_max
    lab = lab or InvariantLab(config, max_total=m_max)
    result = MSGResult(m_max, lab.config.seed)
    p = lab.primes[0]
    for m in range(1, m_max + 1):
        found = []  # type: List[Generator]
        for k in range(m + 1):
            l = m - k
            if k > l:
                continue
            entry = lab.entry(k, l)
            if entry.d == 0:
                continue
            products = _complement_products(lab, k, l, result.generators)
            dim_j = multimodular_rank(np.stack(products), lab.primes).rank if products else 0
            new = entry.d - dim_j
            if new < 0:
                raise InconsistentResult("products span %d dimensions at (%d,%d) but d = %d" % (dim_j, k, l, entry.d))
            result.counts[(k, l)] = new
            if new == 0:
                continue
            span = ModSpan(p)
            for row in products:
                span.add(list(row))
            picked = []  # type: List[TracePolynomial]
            for t in lab.ideal_basis(k, l):
                if len(picked) == new:
                    break
                if span.add(list(lab.generic.values(t))):
                    picked.append(t)
            if len(picked) != new:
                raise InconsistentResult("found %d new generators at (%d,%d), expected %d" % (len(picked), k, l, new))
            for t in picked:
                found.append(Generator("g%d" % (len(result.generators) + len(found) + 1), t, (k, l)))
        mirrored = []
        for g in found:
            k, l = g.bidegree
            if k != l:
                mirrored.append(Generator(g.name + "'", swap_letters(g.poly), (l, k)))
                result.counts[(l, k)] = result.counts[(k, l)]
        result.generators.extend(found + mirrored)
        logger.info("total degree %d: %d new generators", m, len(found) + len(mirrored))
    return result


def msg_step(m: int, config: Optional[LabConfig] = None) -> Dict[Bidegree, int]:
    """ New generator counts at total degree m (all lower degrees are computed first). """
    return msg_steps(config, m).counts_at(m)


# ---------------------------- The open pair ----------------------------

def problem83_pair() -> Pair:
    """ A pair outside W₂ on which every listed generator vanishes. """
    return QMatrix.from_rows([[1, 0], [0, 0]]), QMatrix.from_rows([[0, 1], [1, 0]])


def problem83_report() -> Dict[str, Any]:
    A, B = problem83_pair()
    verdict = w2_membership(A, B)
    values = OrderedDict((g.name, str(eval_trace(g.poly, A, B))) for g in table2_generators())
    suite = wn_property_suite(A, B)
    return {"pair": [A.to_json(), B.to_json()],
            "member": verdict.member,
            "generator_values": values,
            "all_generators_vanish": all(v == "0" for v in values.values()),
            "wn_properties": suite.to_json()}
