#include "gft/commsplit.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "gft/exponential.hpp"

namespace gft {

namespace {

void check_generator_count(std::size_t d) {
  if (d > static_cast<std::size_t>(kMaxSplitGenerators)) {
    throw DimensionMismatch("split over " + std::to_string(d) + " generators exceeds the cap of " +
                            std::to_string(kMaxSplitGenerators));
  }
}

// Generator prepared for repeated conjugation; a zero generator is central.
struct Conjugator {
  bool central = true;
  Multivector gen;
  Multivector gen_inv;

  explicit Conjugator(const Multivector& b) {
    if (!b.is_zero()) {
      central = false;
      gen = b;
      gen_inv = inv(b);
    }
  }

  SplitPair split(const Multivector& a) const {
    if (central) return {a, Multivector(a.signature())};
    const Multivector conj = gp(gp(gen_inv, a), gen);
    return {(a + conj) * 0.5, (a - conj) * 0.5};
  }

  Multivector part(const Multivector& a, bool anticommuting) const {
    if (central) return anticommuting ? Multivector(a.signature()) : a;
    const Multivector conj = gp(gp(gen_inv, a), gen);
    return anticommuting ? (a - conj) * 0.5 : (a + conj) * 0.5;
  }
};

std::vector<Conjugator> prepare(std::span<const Multivector> gens) {
  std::vector<Conjugator> out;
  out.reserve(gens.size());
  for (const Multivector& g : gens) out.emplace_back(g);
  return out;
}

// Generator positions in the order the split is applied.
std::vector<int> split_order(int d, SplitDirection direction) {
  std::vector<int> order(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) order[static_cast<std::size_t>(k)] = direction == SplitDirection::forward ? k : d - 1 - k;
  return order;
}

bool in_strict_triangle(int row, int col, TriangleOrientation orientation) {
  return orientation == TriangleOrientation::lower ? col < row : col > row;
}

}  // namespace

SplitIndex SplitIndex::from_bits(std::span<const int> js) {
  SplitIndex out{0, static_cast<int>(js.size())};
  for (std::size_t k = 0; k < js.size(); ++k) {
    if (js[k] != 0) out.bits |= std::uint32_t{1} << k;
  }
  return out;
}

int SplitIndex::weight() const { return std::popcount(bits); }

SplitIndex SplitIndex::reversed() const {
  SplitIndex out{0, d};
  for (int k = 0; k < d; ++k) {
    if ((*this)[k]) out.bits |= std::uint32_t{1} << (d - 1 - k);
  }
  return out;
}

SplitPair split_pair(const Multivector& a, const Multivector& b) {
  return Conjugator(b).split(a);
}

Multivector SplitComponents::sum() const {
  Multivector out(parts_.front().signature());
  for (const Multivector& p : parts_) out += p;
  return out;
}

SplitComponents split_multi(const Multivector& a, std::span<const Multivector> gens,
                            SplitDirection direction) {
  check_generator_count(gens.size());
  const int d = static_cast<int>(gens.size());
  const auto conj = prepare(gens);

  std::vector<Multivector> parts(std::size_t{1} << d, Multivector(a.signature()));
  // Breadth-first over the split tree; `prefix` holds index bits fixed so far.
  std::vector<std::pair<std::uint32_t, Multivector>> level{{0u, a}};
  for (int k : split_order(d, direction)) {
    std::vector<std::pair<std::uint32_t, Multivector>> next;
    next.reserve(level.size() * 2);
    for (auto& [prefix, part] : level) {
      SplitPair sp = conj[static_cast<std::size_t>(k)].split(part);
      next.emplace_back(prefix, std::move(sp.commuting));
      next.emplace_back(prefix | (std::uint32_t{1} << k), std::move(sp.anticommuting));
    }
    level = std::move(next);
  }
  for (auto& [bits, part] : level) parts[bits] = std::move(part);
  return SplitComponents(d, std::move(parts));
}

Multivector split_component(const Multivector& a, std::span<const Multivector> gens, SplitIndex j,
                            SplitDirection direction) {
  check_generator_count(gens.size());
  if (j.d != static_cast<int>(gens.size())) {
    throw DimensionMismatch("split index length does not match the generator count");
  }
  Multivector out = a;
  for (int k : split_order(j.d, direction)) {
    out = Conjugator(gens[static_cast<std::size_t>(k)]).part(out, j[k]);
    if (out.is_zero()) break;
  }
  return out;
}

std::vector<SwapTerm> swap_through_exponentials(std::span<const Multivector> fvals,
                                                const Multivector& a, double drop_tol) {
  for (const Multivector& f : fvals) {
    if (!is_imaginary(f)) {
      throw NotImaginary("swap_through_exponentials: exponent does not square to a negative real");
    }
  }
  const SplitComponents parts = split_multi(a, fvals, SplitDirection::backward);
  const double floor = drop_tol * std::max(1.0, magnitude(a));
  std::vector<SwapTerm> out;
  for (std::uint32_t bits = 0; bits < parts.size(); ++bits) {
    const Multivector& c = parts.at_bits(bits);
    if (magnitude(c) <= floor) continue;
    out.push_back({c, SplitIndex{bits, parts.generator_count()}});
  }
  return out;
}

TriangularSignMatrix::TriangularSignMatrix(int d, TriangleOrientation orientation)
    : d_(d), orientation_(orientation), entries_(static_cast<std::size_t>(d * d), 0) {}

void TriangularSignMatrix::set(int row, int col, int value) {
  if (!in_strict_triangle(row, col, orientation_)) {
    throw DimensionMismatch("entry outside the strict triangle");
  }
  entries_.at(static_cast<std::size_t>(row * d_ + col)) = value != 0 ? 1 : 0;
}

SplitIndex TriangularSignMatrix::row(int r) const {
  SplitIndex out{0, d_};
  for (int k = 0; k < d_; ++k) {
    if (at(r, k) != 0) out.bits |= std::uint32_t{1} << k;
  }
  return out;
}

SplitIndex TriangularSignMatrix::column_parity() const {
  SplitIndex out{0, d_};
  for (int r = 0; r < d_; ++r) out.bits ^= row(r).bits;
  return out;
}

std::vector<TriangularSignMatrix> all_triangular(int d, TriangleOrientation orientation) {
  check_generator_count(static_cast<std::size_t>(std::max(d, 0)));
  std::vector<std::pair<int, int>> free;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (in_strict_triangle(r, c, orientation)) free.emplace_back(r, c);
    }
  }
  const std::size_t count = std::size_t{1} << free.size();
  std::vector<TriangularSignMatrix> out;
  out.reserve(count);
  // The first free slot is the most significant bit, so counting upwards
  // walks the flattened entries in lexicographic order.
  for (std::size_t t = 0; t < count; ++t) {
    TriangularSignMatrix m(d, orientation);
    for (std::size_t idx = 0; idx < free.size(); ++idx) {
      if ((t >> (free.size() - 1 - idx) & 1u) != 0) m.set(free[idx].first, free[idx].second, 1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<TriangularSignMatrix> enumerate_triangular(int d, SplitIndex j,
                                                       TriangleOrientation orientation) {
  if (j.d != d) throw DimensionMismatch("enumerate_triangular: index length differs from d");
  std::vector<TriangularSignMatrix> out;
  for (auto& m : all_triangular(d, orientation)) {
    if (m.column_parity() == j) out.push_back(std::move(m));
  }
  return out;
}

std::vector<ShiftTerm> shift_exponential_terms(std::span<const Multivector> shift_values,
                                               std::span<const Multivector> directions,
                                               TriangleOrientation orientation, double drop_tol) {
  if (shift_values.size() != directions.size()) {
    throw DimensionMismatch("shift_exponential_terms: values and directions differ in length");
  }
  const int d = static_cast<int>(shift_values.size());
  if (d == 0) return {};
  const Signature sig = shift_values.front().signature();

  std::vector<Multivector> factors;
  factors.reserve(shift_values.size());
  for (const Multivector& f : shift_values) factors.push_back(exp_imag(f));

  // Per factor l, the generator list of the padded split: lower uses
  // (g_1..g_l, 0..0) split backwards, upper uses (0..0, g_l..g_d) forwards.
  const Multivector zero(sig);
  std::vector<std::vector<Multivector>> gens(static_cast<std::size_t>(d));
  for (int l = 0; l < d; ++l) {
    auto& g = gens[static_cast<std::size_t>(l)];
    g.assign(static_cast<std::size_t>(d), zero);
    for (int k = 0; k < d; ++k) {
      const bool used = orientation == TriangleOrientation::lower ? k <= l : k >= l;
      if (used) g[static_cast<std::size_t>(k)] = directions[static_cast<std::size_t>(k)];
    }
  }
  const SplitDirection dir =
      orientation == TriangleOrientation::lower ? SplitDirection::backward : SplitDirection::forward;

  double scale = 1.0;
  for (const Multivector& e : factors) scale *= std::max(1.0, magnitude(e));
  const double floor = drop_tol * scale;

  std::vector<ShiftTerm> out;
  for (auto& matrix : all_triangular(d, orientation)) {
    Multivector factor = Multivector::scalar(sig, 1.0);
    for (int l = 0; l < d && !factor.is_zero(); ++l) {
      const Multivector piece = split_component(factors[static_cast<std::size_t>(l)],
                                                gens[static_cast<std::size_t>(l)], matrix.row(l), dir);
      factor = gp(factor, piece);
    }
    if (magnitude(factor) <= floor) continue;
    const SplitIndex signs = matrix.column_parity();
    out.push_back({std::move(factor), signs, std::move(matrix)});
  }
  return out;
}

std::vector<ShiftTerm> shift_exponential_terms(std::span<const Multivector> shift_values,
                                               TriangleOrientation orientation, double drop_tol) {
  return shift_exponential_terms(shift_values, shift_values, orientation, drop_tol);
}

}  // namespace gft
