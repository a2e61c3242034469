#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gft/errors.hpp"

namespace gft {

/// Absolute tolerance used for structural checks (is this a scalar, does
/// this square to a negative real, ...).
inline constexpr double kStructuralTol = 1e-12;
/// Relative tolerance used for numerical comparisons.
inline constexpr double kRelativeTol = 1e-9;
/// Largest supported p+q; coefficients are stored densely.
inline constexpr int kMaxDimension = 12;

/// Metric signature of Cl(p,q): p basis vectors square to +1, the
/// following q square to -1.
class Signature {
 public:
  constexpr Signature() = default;
  Signature(int p, int q);

  constexpr int p() const noexcept { return p_; }
  constexpr int q() const noexcept { return q_; }
  constexpr int n() const noexcept { return p_ + q_; }
  constexpr std::size_t blade_count() const noexcept { return std::size_t{1} << n(); }

  /// Square of basis vector e_{j+1} (j is zero-based).
  constexpr double epsilon(int j) const noexcept { return j < p_ ? 1.0 : -1.0; }

  /// Bit mask of the basis vectors that square to -1.
  constexpr std::uint32_t negative_mask() const noexcept {
    return ((std::uint32_t{1} << n()) - 1) & ~((std::uint32_t{1} << p_) - 1);
  }

  friend constexpr bool operator==(Signature, Signature) = default;

 private:
  int p_ = 0;
  int q_ = 0;
};

/// A basis blade as a bit mask; bit j set means e_{j+1} is a factor.
struct BladeIndex {
  std::uint32_t bits = 0;

  constexpr int grade() const noexcept { return std::popcount(bits); }
  friend constexpr auto operator<=>(BladeIndex, BladeIndex) = default;
};

struct BladeProduct {
  double sign = 1.0;
  BladeIndex blade;
};

/// Product of two basis blades: the XOR of the masks with the sign picked up
/// by reordering factors and contracting repeated ones (e_j e_j = epsilon_j).
BladeProduct blade_mul(BladeIndex a, BladeIndex b, Signature sig);

/// Element of Cl(p,q), stored as 2^n coefficients in blade-mask order.
class Multivector {
 public:
  /// Zero of the scalar-only algebra Cl(0,0).
  Multivector() : coeffs_(1, 0.0) {}
  explicit Multivector(Signature sig) : sig_(sig), coeffs_(sig.blade_count(), 0.0) {}
  Multivector(Signature sig, std::vector<double> coeffs);

  static Multivector scalar(Signature sig, double value);
  static Multivector blade(Signature sig, BladeIndex blade, double coeff = 1.0);
  /// e_j with j in 1..n.
  static Multivector basis_vector(Signature sig, int j);

  Signature signature() const noexcept { return sig_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<double> coefficients() noexcept { return coeffs_; }

  double operator[](std::size_t k) const { return coeffs_[k]; }
  double& operator[](std::size_t k) { return coeffs_[k]; }
  double operator[](BladeIndex b) const { return coeffs_[b.bits]; }
  double& operator[](BladeIndex b) { return coeffs_[b.bits]; }

  double scalar_part() const noexcept { return coeffs_[0]; }
  bool is_zero() const noexcept;
  /// Largest absolute coefficient outside the scalar blade.
  double non_scalar_residue() const noexcept;

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s) noexcept;
  Multivector& operator/=(double s) noexcept;

  friend Multivector operator+(Multivector lhs, const Multivector& rhs) { return lhs += rhs; }
  friend Multivector operator-(Multivector lhs, const Multivector& rhs) { return lhs -= rhs; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a /= s; }

  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  Signature sig_;
  std::vector<double> coeffs_;
};

/// Geometric product. Throws SignatureMismatch for operands of different
/// algebras.
Multivector gp(const Multivector& a, const Multivector& b);

inline Multivector operator*(const Multivector& a, const Multivector& b) { return gp(a, b); }

/// out += gp(a, b), without allocating.
void gp_accumulate(const Multivector& a, const Multivector& b, Multivector& out);

/// Reversion: grade-k coefficients pick up (-1)^{k(k-1)/2}.
Multivector reverse(const Multivector& a);

/// Inverse via reversion, B^{-1} = rev(B) / <B rev(B)>_0. When B rev(B) is not
/// a scalar but B^2 is (the case for every square root of -1), falls back to
/// B / <B^2>_0. Throws NotInvertible otherwise.
Multivector inv(const Multivector& b, double tol = kStructuralTol);

/// Euclidean norm of the coefficient array.
double magnitude(const Multivector& a);

/// True when a*a is a negative real (up to tol relative to |a|^2).
bool is_root_of_minus_one(const Multivector& a, double tol = kStructuralTol);

/// The unit pseudoscalar e_1 e_2 ... e_n.
Multivector pseudoscalar(Signature sig);

/// Largest coefficient of a*b - b*a relative to max(1, |a||b|) is below tol.
bool commutes(const Multivector& a, const Multivector& b, double tol = kStructuralTol);

}  // namespace gft
