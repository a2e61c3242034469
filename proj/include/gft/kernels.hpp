#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gft/algebra.hpp"
#include "gft/commsplit.hpp"

namespace gft {

/// Bilinear kernel f(x, u) = x^T M u with multivector entries,
/// M(row, col) = f(e_row, e_col). Indices are zero-based.
class KernelMatrix {
 public:
  KernelMatrix(Signature sig, int m);

  Signature signature() const noexcept { return sig_; }
  int dim() const noexcept { return m_; }

  const Multivector& entry(int row, int col) const;
  void set_entry(int row, int col, Multivector value);
  bool is_zero() const;

  /// Common direction of all nonzero entries (unit coefficient norm, oriented
  /// like the first nonzero entry), or nullopt when entries point different
  /// ways. An all-zero matrix has direction 0.
  std::optional<Multivector> common_direction() const;

  KernelMatrix negated() const;

  friend bool operator==(const KernelMatrix&, const KernelMatrix&) = default;

 private:
  std::size_t offset(int row, int col) const;

  Signature sig_;
  int m_;
  std::vector<Multivector> entries_;
};

/// sum_{j,l} x_j M(j,l) u_l.
Multivector eval_kernel(const KernelMatrix& kernel, std::span<const double> x,
                        std::span<const double> u);

enum class Side { left, right };

/// Ordered left set F1 (mu kernels) and right set F2 (nu - mu kernels).
struct GftSpec {
  Signature sig;
  int m = 0;
  std::vector<KernelMatrix> left;
  std::vector<KernelMatrix> right;
  std::string name;

  int mu() const noexcept { return static_cast<int>(left.size()); }
  int nu() const noexcept { return static_cast<int>(left.size() + right.size()); }
  const std::vector<KernelMatrix>& kernels(Side side) const {
    return side == Side::left ? left : right;
  }

  friend bool operator==(const GftSpec& a, const GftSpec& b) {
    return a.sig == b.sig && a.m == b.m && a.left == b.left && a.right == b.right;
  }
};

/// Checks that every kernel matches sig and m; throws on mismatch.
void check_shape(const GftSpec& spec);

// Presets reproducing the classical transforms.

/// Cl(n,0), m = n, F2 = {2 pi i_n x.u}. n mod 4 must be 2 or 3.
GftSpec clifford_preset(int n);
/// Cl(0,n), m = n, F2 = {2 pi e_k x_k u_k : k = 1..n}.
GftSpec buelow_preset(int n);
/// Cl(0,2) with i -> e1, j -> e2: F1 = {2 pi i x1 u1}, F2 = {2 pi j x2 u2}.
GftSpec quaternionic_preset();
/// Cl(3,1), m = 4: F1 = {e4 x4 u4}, F2 = {eps4 e4 i4 (x1u1 + x2u2 + x3u3)}.
GftSpec spacetime_preset();
/// Cl(4,0), m = 2, B a unit bivector (B^2 = -1), i the pseudoscalar:
/// F1 = {B/2, iB/2}, F2 = {-B/2, -iB/2}, each times x1u1 + x2u2.
GftSpec color_image_preset(const Multivector& bivector);
/// Cl(0,n), m = n, F1 = {-x ^ u}.
GftSpec cylindrical_preset(int n);

/// Parses "clifford:3", "buelow:2", "quaternionic", "spacetime",
/// "color_image", "cylindrical:2". The bivector is used by color_image only
/// (default e12). Throws InvalidArgument for unknown names and
/// UnsupportedSignature for disallowed dimensions.
GftSpec make_preset(std::string_view name, std::optional<Multivector> bivector = std::nullopt);

/// Canonical preset names, in the order of the classical examples.
std::vector<std::string> preset_names();

/// F1(j) and F2(k): kernels with j_l = 1 (k_l = 1) change sign.
GftSpec negate(const GftSpec& spec, SplitIndex j, SplitIndex k);

struct KernelSample {
  std::vector<double> x;
  std::vector<double> u;
};

struct Violation {
  Side side;
  int kernel;  // zero-based position within the side
  std::size_t sample;
  Multivector value;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Every kernel value must be 0 or square to a negative real.
ValidationReport validate_spec(const GftSpec& spec, std::span<const KernelSample> samples);

enum class Separability {
  separable,      // every kernel has one constant direction
  not_separable,  // some kernel's direction varies with x
  unknown,        // directions vary with u only; not handled structurally
};

Separability separability(const GftSpec& spec, Side side);

/// Structural test: true iff each kernel on that side has a common direction.
bool is_separable(const GftSpec& spec, Side side);

/// Constant kernel directions for one side; throws NotSeparable otherwise.
std::vector<Multivector> kernel_directions(const GftSpec& spec, Side side);

/// True when the kernel directions of a side commute pairwise.
bool mutually_commutative(const GftSpec& spec, Side side);

}  // namespace gft
