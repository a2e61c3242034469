#pragma once

#include "gft/algebra.hpp"

namespace gft {

struct ExpOptions {
  double tol = 1e-17;  // stop once a series term's magnitude drops below this
  int max_terms = 200;
};

/// Power series exp(a) = sum_j a^j / j!, summed in ascending j with the
/// recurrence term_j = term_{j-1} * a / j. Throws NoConvergence when
/// max_terms is reached before a term drops below opts.tol.
Multivector exp_series(const Multivector& a, const ExpOptions& opts = {});

/// True for 0 and for real multiples of square roots of -1, judged on f/|f|
/// so the verdict does not depend on the scale of f.
bool is_imaginary(const Multivector& f, double tol = kStructuralTol);

/// Closed form of exp(-f) for f = 0 or f a real multiple of a square root of
/// -1: with r = sqrt(-<f^2>_0), exp(-f) = cos(r) - (f/r) sin(r).
/// Throws NotImaginary unless is_imaginary(f, tol).
Multivector exp_imag(const Multivector& f, double tol = kStructuralTol);

}  // namespace gft
