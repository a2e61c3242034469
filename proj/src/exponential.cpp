#include "gft/exponential.hpp"

#include <cmath>
#include <string>

#include "gft/notation.hpp"

namespace gft {

namespace {
constexpr double kRemovableSingularity = 1e-14;
}

Multivector exp_series(const Multivector& a, const ExpOptions& opts) {
  if (!(opts.tol > 0.0) || opts.max_terms < 1) {
    throw InvalidArgument("exp_series: tol must be positive and max_terms at least 1");
  }
  const Signature sig = a.signature();
  Multivector sum = Multivector::scalar(sig, 1.0);
  Multivector term = sum;
  for (int j = 1; j <= opts.max_terms; ++j) {
    term = gp(term, a) / static_cast<double>(j);
    sum += term;
    if (magnitude(term) < opts.tol) return sum;
  }
  throw NoConvergence("exp_series: no convergence after " + std::to_string(opts.max_terms) +
                      " terms");
}

bool is_imaginary(const Multivector& f, double tol) {
  const double mag = magnitude(f);
  if (mag == 0.0) return true;
  return is_root_of_minus_one(f / mag, tol);
}

Multivector exp_imag(const Multivector& f, double tol) {
  const Signature sig = f.signature();
  const double mag = magnitude(f);
  if (mag == 0.0) return Multivector::scalar(sig, 1.0);

  // Judged on the unit direction so that tiny exponents are not rejected.
  const Multivector unit = f / mag;
  const Multivector sq = gp(unit, unit);
  if (!(sq.scalar_part() < -tol) || sq.non_scalar_residue() >= tol) {
    throw NotImaginary("exponent " + format_multivector(f) + " does not square to a negative real");
  }
  const double r = mag * std::sqrt(-sq.scalar_part());
  if (r < kRemovableSingularity) return Multivector::scalar(sig, 1.0) - f;

  Multivector out = f * (-std::sin(r) / r);
  out[0] += std::cos(r);
  return out;
}

}  // namespace gft
