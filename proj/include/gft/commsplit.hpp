#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gft/algebra.hpp"

namespace gft {

/// Upper bound on the number of generators a split may involve; component
/// maps are stored densely (2^d entries).
inline constexpr int kMaxSplitGenerators = 6;

/// Multi-index j in {0,1}^d. Bit k of `bits` holds j_{k+1}.
struct SplitIndex {
  std::uint32_t bits = 0;
  int d = 0;

  static SplitIndex zeros(int d) { return {0, d}; }
  static SplitIndex from_bits(std::span<const int> js);

  bool operator[](int k) const { return (bits >> k & 1u) != 0; }
  int weight() const;  // |j|
  SplitIndex reversed() const;

  friend bool operator==(SplitIndex, SplitIndex) = default;
};

enum class SplitDirection {
  forward,   // split by B_1 first, then B_2, ..., B_d
  backward,  // split by B_d first, then B_{d-1}, ..., B_1
};

struct SplitPair {
  Multivector commuting;      // A_{c^0(B)}
  Multivector anticommuting;  // A_{c^1(B)}
};

/// A_{c^0(B)} = (A + B^{-1} A B)/2 and A_{c^1(B)} = (A - B^{-1} A B)/2.
/// A zero B counts as central: (A, 0).
SplitPair split_pair(const Multivector& a, const Multivector& b);

/// All 2^d components of the recursive split of A, indexed by SplitIndex.
class SplitComponents {
 public:
  SplitComponents(int d, std::vector<Multivector> parts) : d_(d), parts_(std::move(parts)) {}

  int generator_count() const noexcept { return d_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const Multivector& operator[](SplitIndex j) const { return parts_.at(j.bits); }
  const Multivector& at_bits(std::uint32_t bits) const { return parts_.at(bits); }
  Multivector sum() const;

 private:
  int d_;
  std::vector<Multivector> parts_;
};

SplitComponents split_multi(const Multivector& a, std::span<const Multivector> gens,
                            SplitDirection direction);

/// A single component A_{c^j(gens)}; cheaper than split_multi when only one
/// path through the split tree is needed.
Multivector split_component(const Multivector& a, std::span<const Multivector> gens, SplitIndex j,
                            SplitDirection direction);

struct SwapTerm {
  Multivector component;
  SplitIndex signs;
};

/// Moves A to the left through prod_k exp(-f_k):
///   prod_k exp(-f_k) A = sum_j A_{c^j(<-F)} prod_k exp(-(-1)^{j_k} f_k).
/// Terms whose component vanishes (relative to drop_tol) are omitted.
std::vector<SwapTerm> swap_through_exponentials(std::span<const Multivector> fvals,
                                                const Multivector& a,
                                                double drop_tol = kStructuralTol);

enum class TriangleOrientation { lower, upper };

/// Strictly triangular {0,1} matrix used to bookkeep which pieces of which
/// shift factor anticommute with which kernel direction.
class TriangularSignMatrix {
 public:
  TriangularSignMatrix(int d, TriangleOrientation orientation);

  int size() const noexcept { return d_; }
  TriangleOrientation orientation() const noexcept { return orientation_; }
  int at(int row, int col) const { return entries_.at(static_cast<std::size_t>(row * d_ + col)); }
  void set(int row, int col, int value);

  SplitIndex row(int r) const;
  /// Column sums mod 2.
  SplitIndex column_parity() const;

  friend bool operator==(const TriangularSignMatrix&, const TriangularSignMatrix&) = default;

 private:
  int d_;
  TriangleOrientation orientation_;
  std::vector<int> entries_;
};

/// Every strictly triangular matrix whose column parities equal j, in
/// lexicographic order of the row-major entries.
std::vector<TriangularSignMatrix> enumerate_triangular(int d, SplitIndex j,
                                                       TriangleOrientation orientation);

/// Every strictly triangular matrix of size d, in lexicographic order.
/// There are 2^{d(d-1)/2} of them.
std::vector<TriangularSignMatrix> all_triangular(int d, TriangleOrientation orientation);

struct ShiftTerm {
  Multivector factor;
  SplitIndex signs;
  TriangularSignMatrix matrix;
};

/// Splits prod_l exp(-f_l(x0 + y, u)) for separable kernels linear in x.
///
/// lower: sum_J factor_J * prod_l exp(-(-1)^{j_l} f_l(y, u))
///        factor_J = prod_l exp(-f_l(x0,u))_{c^{(J)_l}(<- g_1..g_l, 0..0)}
/// upper: sum_K prod_l exp(-(-1)^{k_l} f_l(y, u)) * factor_K
///        factor_K = prod_l exp(-f_l(x0,u))_{c^{(K)_l}(-> 0..0, g_l..g_d)}
///
/// `shift_values` are f_l(x0, u); `directions` are the x-independent kernel
/// directions g_l (any nonzero multiple of i_l(u), or 0 when f_l vanishes for
/// every x at this u). Terms with vanishing factor are dropped.
std::vector<ShiftTerm> shift_exponential_terms(std::span<const Multivector> shift_values,
                                               std::span<const Multivector> directions,
                                               TriangleOrientation orientation,
                                               double drop_tol = kStructuralTol);

/// Same, using the shift values themselves as split generators. Only valid
/// when no f_l(x0,u) vanishes while f_l(y,u) does not.
std::vector<ShiftTerm> shift_exponential_terms(std::span<const Multivector> shift_values,
                                               TriangleOrientation orientation,
                                               double drop_tol = kStructuralTol);

}  // namespace gft
