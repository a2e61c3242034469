#include "gft/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gft {

namespace {

// Number of transpositions needed to bring the factors of a·b into canonical
// order: for every factor of b, count the factors of a with a higher index.
inline int reorder_swaps(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  return swaps;
}

inline double product_sign(std::uint32_t a, std::uint32_t b, std::uint32_t neg_mask) {
  const int parity = reorder_swaps(a, b) + std::popcount(a & b & neg_mask);
  return (parity & 1) ? -1.0 : 1.0;
}

void require_same_signature(const Multivector& a, const Multivector& b, const char* what) {
  if (a.signature() != b.signature()) {
    throw SignatureMismatch(std::string(what) + ": operands belong to Cl(" +
                            std::to_string(a.signature().p()) + "," +
                            std::to_string(a.signature().q()) + ") and Cl(" +
                            std::to_string(b.signature().p()) + "," +
                            std::to_string(b.signature().q()) + ")");
  }
}

}  // namespace

Signature::Signature(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0 || p + q > kMaxDimension) {
    throw UnsupportedSignature("signature (" + std::to_string(p) + "," + std::to_string(q) +
                               ") outside 0 <= p+q <= " + std::to_string(kMaxDimension));
  }
}

BladeProduct blade_mul(BladeIndex a, BladeIndex b, Signature sig) {
  return {product_sign(a.bits, b.bits, sig.negative_mask()), BladeIndex{a.bits ^ b.bits}};
}

Multivector::Multivector(Signature sig, std::vector<double> coeffs)
    : sig_(sig), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != sig.blade_count()) {
    throw DimensionMismatch("multivector needs " + std::to_string(sig.blade_count()) +
                            " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

Multivector Multivector::scalar(Signature sig, double value) {
  Multivector out(sig);
  out.coeffs_[0] = value;
  return out;
}

Multivector Multivector::blade(Signature sig, BladeIndex blade, double coeff) {
  if (blade.bits >= sig.blade_count()) {
    throw DimensionMismatch("blade mask out of range for the signature");
  }
  Multivector out(sig);
  out.coeffs_[blade.bits] = coeff;
  return out;
}

Multivector Multivector::basis_vector(Signature sig, int j) {
  if (j < 1 || j > sig.n()) throw DimensionMismatch("basis vector index out of range");
  return blade(sig, BladeIndex{std::uint32_t{1} << (j - 1)});
}

bool Multivector::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double Multivector::non_scalar_residue() const noexcept {
  double r = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) r = std::max(r, std::abs(coeffs_[k]));
  return r;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  require_same_signature(*this, rhs, "addition");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  require_same_signature(*this, rhs, "subtraction");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Multivector& Multivector::operator*=(double s) noexcept {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector& Multivector::operator/=(double s) noexcept {
  for (double& c : coeffs_) c /= s;
  return *this;
}

void gp_accumulate(const Multivector& a, const Multivector& b, Multivector& out) {
  require_same_signature(a, b, "geometric product");
  require_same_signature(a, out, "geometric product");
  const std::uint32_t neg = a.signature().negative_mask();
  const auto ac = a.coefficients();
  const auto bc = b.coefficients();
  auto oc = out.coefficients();
  const auto count = static_cast<std::uint32_t>(ac.size());
  // Exponentials and kernel values are sparse; skipping zero rows makes the
  // transform inner loop cheap without changing the summation order.
  for (std::uint32_t i = 0; i < count; ++i) {
    const double ai = ac[i];
    if (ai == 0.0) continue;
    for (std::uint32_t j = 0; j < count; ++j) {
      const double bj = bc[j];
      if (bj == 0.0) continue;
      oc[i ^ j] += product_sign(i, j, neg) * ai * bj;
    }
  }
}

Multivector gp(const Multivector& a, const Multivector& b) {
  require_same_signature(a, b, "geometric product");
  Multivector out(a.signature());
  gp_accumulate(a, b, out);
  return out;
}

Multivector reverse(const Multivector& a) {
  Multivector out = a;
  auto c = out.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int g = std::popcount(static_cast<std::uint32_t>(k));
    if (((g * (g - 1) / 2) & 1) != 0) c[k] = -c[k];
  }
  return out;
}

Multivector inv(const Multivector& b, double tol) {
  const double mag = magnitude(b);
  const double residue_limit = tol * std::max(1.0, mag * mag);

  const Multivector rev = reverse(b);
  const Multivector norm = gp(b, rev);
  if (std::abs(norm.scalar_part()) > tol && norm.non_scalar_residue() < residue_limit) {
    return rev / norm.scalar_part();
  }
  const Multivector square = gp(b, b);
  if (std::abs(square.scalar_part()) > tol && square.non_scalar_residue() < residue_limit) {
    return b / square.scalar_part();
  }
  throw NotInvertible("multivector has neither a scalar reversion norm nor a scalar square");
}

double magnitude(const Multivector& a) {
  // Scaled by the largest coefficient so tiny and huge values neither underflow nor overflow.
  double peak = 0.0;
  for (double c : a.coefficients()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0 || !std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double c : a.coefficients()) sum += (c / peak) * (c / peak);
  return peak * std::sqrt(sum);
}

bool is_root_of_minus_one(const Multivector& a, double tol) {
  const Multivector sq = gp(a, a);
  const double mag = magnitude(a);
  return sq.scalar_part() < -tol && sq.non_scalar_residue() < tol * std::max(1.0, mag * mag);
}

Multivector pseudoscalar(Signature sig) {
  return Multivector::blade(sig, BladeIndex{static_cast<std::uint32_t>(sig.blade_count() - 1)});
}

bool commutes(const Multivector& a, const Multivector& b, double tol) {
  const Multivector diff = gp(a, b) - gp(b, a);
  double worst = 0.0;
  for (double c : diff.coefficients()) worst = std::max(worst, std::abs(c));
  return worst <= tol * std::max(1.0, magnitude(a) * magnitude(b));
}

}  // namespace gft
