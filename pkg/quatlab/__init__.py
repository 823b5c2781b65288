""" Quaternionic linear algebra and the trace invariants of pairs of 2x2 quaternionic matrices.

Modules:

  quaternion    exact (Fraction) and float quaternions, pure exponentials, similarity classes
  qmatrix       matrices over the quaternions, the complex embedding χₙ, real block form, inverses
  spectral      standard eigenvalues and Schur triangularization over ℍ
  canon         Sp(2) canonical form and the six separating invariants
  words         words, necklaces of trace factors, noncommutative and trace polynomials
  word_syntax   text syntax for (trace) polynomials, e.g. "Tr(xy^2x[x,y])"
  identities    trace identities over ℍ and M₂(ℂ)
  exact_linalg  exact and multimodular ranks, rational kernels
  triangular    quasi-triangularizability, closures, Friedland's conditions, W_n property suites
  w2            membership in the set of simultaneously triangularizable 2x2 pairs
  ideal_lab     dimensions of the vanishing ideal and minimal generating sets
  cli           the `quatlab` command line
"""

__version__ = "0.3.0"

__all__ = ["quaternion", "qmatrix", "spectral", "canon", "words", "word_syntax", "identities",
           "exact_linalg", "triangular", "w2", "ideal_lab", "config", "errors", "jsonable",
           "manifest", "utils", "cli"]
