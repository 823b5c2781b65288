""" Tolerances and computation bounds. Defaults live here; the command line overrides them
through `dataclasses.replace`.
"""
from dataclasses import dataclass, asdict, field
from typing import Any, Dict

from quatlab.errors import InputError


@dataclass(frozen=True)
class Tolerances:
    """
    Float-mode thresholds. Exact mode never consults these.
    """
    eps_pure: float = 1e-9
    eps_unit: float = 1e-9
    unitary: float = 1e-9
    triangular: float = 1e-8
    invariant_rel: float = 1e-7
    invariant_abs: float = 1e-9
    eig_gap: float = 1e-6
    eig_equal: float = 1e-6
    pure_spectrum: float = 1e-7


@dataclass(frozen=True)
class LabConfig:
    """
    Bounds and sampling parameters for the rank based computations.
    """
    seed: int = 0
    max_total: int = 8
    msg_max: int = 9
    entry_bound: int = 10
    w2_entry_bound: int = 5
    sample_margin: int = 32
    samples: int = 0  # 0: derive from the monomial count
    n_primes: int = 3
    prime_bits: int = 62
    qt_max_dimension: int = 12
    eig_max_n: int = 6
    tolerances: Tolerances = field(default_factory=Tolerances)

    HARD_TOTAL_CAP = 10

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise InputError("seed must be a nonnegative integer, got %d" % self.seed)
        if self.max_total > self.HARD_TOTAL_CAP or self.max_total < 1:
            raise InputError("max_total must lie in 1..%d, got %d" % (self.HARD_TOTAL_CAP, self.max_total))
        if self.msg_max > self.HARD_TOTAL_CAP or self.msg_max < 1:
            raise InputError("msg_max must lie in 1..%d, got %d" % (self.HARD_TOTAL_CAP, self.msg_max))
        if self.entry_bound < 1 or self.w2_entry_bound < 1:
            raise InputError("entry bounds must be positive")
        if self.n_primes < 1:
            raise InputError("at least one prime is required")
        if self.samples < 0:
            raise InputError("samples must be nonnegative")

    def sample_count(self, n_monomials: int) -> int:
        """ N >= 2 * (#monomials) + margin; an explicit `samples` only raises it. """
        return max(self.samples, 2 * n_monomials + self.sample_margin)

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)
