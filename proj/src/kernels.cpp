#include "gft/kernels.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

#include "gft/exponential.hpp"
#include "gft/notation.hpp"

namespace gft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kParallelTol = 1e-10;

// a and b are real multiples of each other (Cauchy-Schwarz equality on the
// coefficient vectors).
bool parallel(const Multivector& a, const Multivector& b) {
  double aa = 0.0, bb = 0.0, ab = 0.0;
  const auto ac = a.coefficients();
  const auto bc = b.coefficients();
  for (std::size_t k = 0; k < ac.size(); ++k) {
    aa += ac[k] * ac[k];
    bb += bc[k] * bc[k];
    ab += ac[k] * bc[k];
  }
  if (aa == 0.0 || bb == 0.0) return true;
  return aa * bb - ab * ab <= kParallelTol * aa * bb;
}

KernelMatrix diagonal_kernel(Signature sig, int m, std::span<const int> diag,
                             const Multivector& value) {
  KernelMatrix k(sig, m);
  for (int d : diag) k.set_entry(d, d, value);
  return k;
}

std::vector<int> all_indices(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

int parse_dimension(std::string_view name, std::string_view arg, int fallback) {
  if (arg.empty()) return fallback;
  int n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
    throw InvalidArgument("preset " + std::string(name) + ": invalid dimension '" + std::string(arg) + "'");
  }
  return n;
}

void require_dimension(std::string_view preset, int n, int lo) {
  if (n < lo || n > kMaxDimension) {
    throw UnsupportedSignature(std::string(preset) + " preset needs " + std::to_string(lo) +
                               " <= n <= " + std::to_string(kMaxDimension) + ", got n = " +
                               std::to_string(n));
  }
}

}  // namespace

KernelMatrix::KernelMatrix(Signature sig, int m)
    : sig_(sig), m_(m), entries_(static_cast<std::size_t>(m * m), Multivector(sig)) {
  if (m < 0) throw DimensionMismatch("kernel dimension must be non-negative");
}

std::size_t KernelMatrix::offset(int row, int col) const {
  if (row < 0 || col < 0 || row >= m_ || col >= m_) {
    throw DimensionMismatch("kernel entry (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside " + std::to_string(m_) + "x" + std::to_string(m_));
  }
  return static_cast<std::size_t>(row * m_ + col);
}

const Multivector& KernelMatrix::entry(int row, int col) const { return entries_[offset(row, col)]; }

void KernelMatrix::set_entry(int row, int col, Multivector value) {
  if (value.signature() != sig_) throw SignatureMismatch("kernel entry from a different algebra");
  entries_[offset(row, col)] = std::move(value);
}

bool KernelMatrix::is_zero() const {
  for (const Multivector& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

std::optional<Multivector> KernelMatrix::common_direction() const {
  const Multivector* first = nullptr;
  for (const Multivector& e : entries_) {
    if (e.is_zero()) continue;
    if (first == nullptr) {
      first = &e;
    } else if (!parallel(*first, e)) {
      return std::nullopt;
    }
  }
  if (first == nullptr) return Multivector(sig_);
  return *first / magnitude(*first);
}

KernelMatrix KernelMatrix::negated() const {
  KernelMatrix out = *this;
  for (Multivector& e : out.entries_) {
    if (!e.is_zero()) e = -e;
  }
  return out;
}

Multivector eval_kernel(const KernelMatrix& kernel, std::span<const double> x,
                        std::span<const double> u) {
  const int m = kernel.dim();
  if (static_cast<int>(x.size()) != m || static_cast<int>(u.size()) != m) {
    throw DimensionMismatch("eval_kernel: x and u must have " + std::to_string(m) + " components");
  }
  Multivector out(kernel.signature());
  auto oc = out.coefficients();
  for (int j = 0; j < m; ++j) {
    if (x[static_cast<std::size_t>(j)] == 0.0) continue;
    for (int l = 0; l < m; ++l) {
      const double w = x[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(l)];
      if (w == 0.0) continue;
      const auto ec = kernel.entry(j, l).coefficients();
      for (std::size_t k = 0; k < ec.size(); ++k) {
        if (ec[k] != 0.0) oc[k] += w * ec[k];
      }
    }
  }
  return out;
}

void check_shape(const GftSpec& spec) {
  for (Side side : {Side::left, Side::right}) {
    for (const KernelMatrix& k : spec.kernels(side)) {
      if (k.signature() != spec.sig) throw SignatureMismatch("kernel signature differs from spec");
      if (k.dim() != spec.m) throw DimensionMismatch("kernel dimension differs from spec");
    }
  }
}

GftSpec clifford_preset(int n) {
  require_dimension("clifford", n, 2);
  if (n % 4 != 2 && n % 4 != 3) {
    throw UnsupportedSignature("clifford preset needs n = 2 or 3 (mod 4) so that i_n^2 = -1; got n = " +
                               std::to_string(n));
  }
  const Signature sig(n, 0);
  GftSpec spec{sig, n, {}, {}, "clifford:" + std::to_string(n)};
  spec.right.push_back(diagonal_kernel(sig, n, all_indices(n), pseudoscalar(sig) * kTwoPi));
  return spec;
}

GftSpec buelow_preset(int n) {
  require_dimension("buelow", n, 1);
  const Signature sig(0, n);
  GftSpec spec{sig, n, {}, {}, "buelow:" + std::to_string(n)};
  for (int k = 0; k < n; ++k) {
    const int diag[] = {k};
    spec.right.push_back(diagonal_kernel(sig, n, diag, Multivector::basis_vector(sig, k + 1) * kTwoPi));
  }
  return spec;
}

GftSpec quaternionic_preset() {
  const Signature sig(0, 2);
  GftSpec spec{sig, 2, {}, {}, "quaternionic"};
  const int first[] = {0};
  const int second[] = {1};
  spec.left.push_back(diagonal_kernel(sig, 2, first, Multivector::basis_vector(sig, 1) * kTwoPi));
  spec.right.push_back(diagonal_kernel(sig, 2, second, Multivector::basis_vector(sig, 2) * kTwoPi));
  return spec;
}

GftSpec spacetime_preset() {
  const Signature sig(3, 1);
  const Multivector e4 = Multivector::basis_vector(sig, 4);
  const Multivector space_unit = gp(e4, pseudoscalar(sig)) * sig.epsilon(3);
  GftSpec spec{sig, 4, {}, {}, "spacetime"};
  const int time[] = {3};
  const int space[] = {0, 1, 2};
  spec.left.push_back(diagonal_kernel(sig, 4, time, e4));
  spec.right.push_back(diagonal_kernel(sig, 4, space, space_unit));
  return spec;
}

GftSpec color_image_preset(const Multivector& bivector) {
  const Signature sig(4, 0);
  if (bivector.signature() != sig) {
    throw InvalidArgument("color_image bivector must live in Cl(4,0)");
  }
  for (std::size_t k = 0; k < bivector.size(); ++k) {
    if (std::popcount(static_cast<unsigned>(k)) != 2 && std::abs(bivector[k]) > kStructuralTol) {
      throw InvalidArgument("color_image needs a bivector, got " + format_multivector(bivector));
    }
  }
  const Multivector sq = gp(bivector, bivector);
  if (std::abs(sq.scalar_part() + 1.0) > 1e-9 || sq.non_scalar_residue() > 1e-9) {
    throw InvalidArgument("color_image needs a unit bivector with B^2 = -1, got " +
                          format_multivector(bivector));
  }
  const Multivector dual = gp(pseudoscalar(sig), bivector);
  const std::vector<int> diag = {0, 1};
  GftSpec spec{sig, 2, {}, {}, "color_image"};
  spec.left.push_back(diagonal_kernel(sig, 2, diag, bivector * 0.5));
  spec.left.push_back(diagonal_kernel(sig, 2, diag, dual * 0.5));
  spec.right.push_back(diagonal_kernel(sig, 2, diag, bivector * -0.5));
  spec.right.push_back(diagonal_kernel(sig, 2, diag, dual * -0.5));
  return spec;
}

GftSpec cylindrical_preset(int n) {
  require_dimension("cylindrical", n, 2);
  const Signature sig(0, n);
  KernelMatrix k(sig, n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      if (l == j) continue;
      // -x^u = -sum_{l != j} x_l u_j e_l e_j
      k.set_entry(l, j, -gp(Multivector::basis_vector(sig, l + 1), Multivector::basis_vector(sig, j + 1)));
    }
  }
  GftSpec spec{sig, n, {}, {}, "cylindrical:" + std::to_string(n)};
  spec.left.push_back(std::move(k));
  return spec;
}

GftSpec make_preset(std::string_view name, std::optional<Multivector> bivector) {
  const auto colon = name.find(':');
  const std::string_view base = name.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  if (colon != std::string_view::npos && arg.empty()) {
    throw InvalidArgument("preset " + std::string(name) + ": missing dimension after ':'");
  }
  if (base == "clifford") return clifford_preset(parse_dimension(base, arg, 2));
  if (base == "buelow") return buelow_preset(parse_dimension(base, arg, 2));
  if (base == "cylindrical") return cylindrical_preset(parse_dimension(base, arg, 2));
  if (!arg.empty()) {
    throw InvalidArgument("preset " + std::string(base) + " takes no dimension");
  }
  if (base == "quaternionic") return quaternionic_preset();
  if (base == "spacetime") return spacetime_preset();
  if (base == "color_image") {
    const Signature sig(4, 0);
    return color_image_preset(bivector ? *bivector : Multivector::blade(sig, BladeIndex{0b0011}));
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"clifford", "buelow", "quaternionic", "spacetime", "color_image", "cylindrical"};
}

GftSpec negate(const GftSpec& spec, SplitIndex j, SplitIndex k) {
  if (j.d != spec.mu() || k.d != spec.nu() - spec.mu()) {
    throw DimensionMismatch("negate: sign index lengths must match the kernel set sizes");
  }
  GftSpec out = spec;
  for (int l = 0; l < j.d; ++l) {
    if (j[l]) out.left[static_cast<std::size_t>(l)] = spec.left[static_cast<std::size_t>(l)].negated();
  }
  for (int l = 0; l < k.d; ++l) {
    if (k[l]) out.right[static_cast<std::size_t>(l)] = spec.right[static_cast<std::size_t>(l)].negated();
  }
  return out;
}

std::string Violation::describe() const {
  return std::string(side == Side::left ? "left" : "right") + " kernel " + std::to_string(kernel + 1) +
         " at sample " + std::to_string(sample) + " evaluates to " + format_multivector(value) +
         ", which does not square to a negative real";
}

ValidationReport validate_spec(const GftSpec& spec, std::span<const KernelSample> samples) {
  check_shape(spec);
  ValidationReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (Side side : {Side::left, Side::right}) {
      const auto& ks = spec.kernels(side);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        Multivector v = eval_kernel(ks[i], samples[s].x, samples[s].u);
        if (!is_imaginary(v)) {
          report.violations.push_back({side, static_cast<int>(i), s, std::move(v)});
        }
      }
    }
  }
  return report;
}

Separability separability(const GftSpec& spec, Side side) {
  Separability result = Separability::separable;
  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (const KernelMatrix& k : spec.kernels(side)) {
    if (k.common_direction()) continue;
    // x-independence of the direction means all rows M(j,:) u are parallel.
    bool rows_parallel = true;
    for (int probe = 0; probe < 8 && rows_parallel; ++probe) {
      std::vector<double> u(static_cast<std::size_t>(k.dim()));
      for (double& c : u) c = dist(rng);
      std::vector<Multivector> rows;
      for (int j = 0; j < k.dim(); ++j) {
        std::vector<double> x(static_cast<std::size_t>(k.dim()), 0.0);
        x[static_cast<std::size_t>(j)] = 1.0;
        rows.push_back(eval_kernel(k, x, u));
      }
      for (std::size_t a = 0; a < rows.size() && rows_parallel; ++a) {
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
          if (!parallel(rows[a], rows[b])) {
            rows_parallel = false;
            break;
          }
        }
      }
    }
    if (!rows_parallel) return Separability::not_separable;
    result = Separability::unknown;
  }
  return result;
}

bool is_separable(const GftSpec& spec, Side side) {
  return separability(spec, side) == Separability::separable;
}

std::vector<Multivector> kernel_directions(const GftSpec& spec, Side side) {
  std::vector<Multivector> out;
  const auto& ks = spec.kernels(side);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    auto dir = ks[i].common_direction();
    if (!dir) {
      throw NotSeparable(std::string(side == Side::left ? "left" : "right") + " kernel " +
                         std::to_string(i + 1) + " of " + spec.name +
                         " has no constant direction");
    }
    out.push_back(std::move(*dir));
  }
  return out;
}

bool mutually_commutative(const GftSpec& spec, Side side) {
  const auto dirs = kernel_directions(spec, side);
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      if (!commutes(dirs[a], dirs[b], 1e-10)) return false;
    }
  }
  return true;
}

}  // namespace gft
