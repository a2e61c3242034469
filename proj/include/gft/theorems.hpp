#pragma once

#include <span>
#include <string>
#include <vector>

#include "gft/algebra.hpp"
#include "gft/kernels.hpp"
#include "gft/transform.hpp"

namespace gft {

/// Outcome of one two-sided check. residual is the largest magnitude of
/// lhs - rhs over the evaluated frequency nodes; lhs_norm and rhs_norm are
/// the largest magnitudes of either side.
struct TheoremReport {
  std::string name;
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double residual = 0.0;
  /// residual must not exceed this; tol * max(1, lhs_norm) for identities.
  double bound = 0.0;
  bool pass = false;
  bool skipped = false;
  /// Largest number of nonzero summands on the right-hand side at any node.
  int terms = 1;
  std::string note;
};

/// "THEOREM name residual=R bound=T PASS|FAIL|SKIP(reason)".
std::string format_report_line(const TheoremReport& report);

/// A skipped report carrying the reason, e.g. for a failed precondition.
TheoremReport skipped_report(std::string name, std::string reason);

/// F(bB + cC) against b F(B) + c F(C). Throws DimensionMismatch when B and C
/// live on different grids.
TheoremReport check_linearity(const GftSpec& spec, const SampledField& b_field,
                              const SampledField& c_field, double b, double c,
                              const FreqGrid& freqs, double tol = 1e-12);

/// F(A)(u) against |a|^{-m} F(B)(u / a) with A(x) = B(a x). A is sampled on
/// the grid with spacing dx / |a| whose nodes map onto B's nodes under
/// x -> a x, so both sides are exact Riemann sums of the same data. Throws
/// MisalignedScale when a is zero or not finite.
TheoremReport check_scaling(const GftSpec& spec, const SampledField& b_field, double a,
                            const FreqGrid& freqs, double tol = 1e-10);

/// F(C B) against sum_j C_{c^j(<- i_1..i_mu)} F_{F1(j),F2}(B), splitting C by
/// the constant left kernel directions. Throws NotSeparable.
TheoremReport check_left_product(const GftSpec& spec, const Multivector& c,
                                 const SampledField& b_field, const FreqGrid& freqs,
                                 double tol = 1e-10);

/// F(B C) against sum_k F_{F1,F2(k)}(B) C_{c^k(-> i_{mu+1}..i_nu)}.
/// Throws NotSeparable.
TheoremReport check_right_product(const GftSpec& spec, const Multivector& c,
                                  const SampledField& b_field, const FreqGrid& freqs,
                                  double tol = 1e-10);

/// F(A) for A(x) = B(x - x0) against the sum over lower (left kernels) and
/// upper (right kernels) triangular sign matrices. When both kernel sets are
/// mutually commutative the collapsed single-term form is checked as well and
/// the larger residual reported. Throws NotSeparable, or OffGridShift when x0
/// is not a whole number of grid steps or the shifted support leaves the grid.
TheoremReport check_shift(const GftSpec& spec, const SampledField& b_field,
                          std::span<const double> x0, const FreqGrid& freqs, double tol = 1e-10);

/// max_u |F(B)(u)| against 2^nu sum_x |B(x)| * cell volume. Here residual is
/// the spectrum maximum and bound the right-hand side.
TheoremReport check_existence_bound(const GftSpec& spec, const SampledField& b_field,
                                    const FreqGrid& freqs);

}  // namespace gft
