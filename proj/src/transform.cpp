#include "gft/transform.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "gft/exponential.hpp"
#include "gft/notation.hpp"

namespace gft {

std::size_t Grid::node_count() const noexcept {
  std::size_t n = 1;
  for (std::size_t e : extents) n *= e;
  return n;
}

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (double s : spacing) v *= s;
  return v;
}

std::vector<std::size_t> Grid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(extents.size());
  for (std::size_t a = extents.size(); a-- > 0;) {
    idx[a] = flat % extents[a];
    flat /= extents[a];
  }
  return idx;
}

std::size_t Grid::flatten(std::span<const std::size_t> idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < extents.size(); ++a) flat = flat * extents[a] + idx[a];
  return flat;
}

std::vector<double> Grid::point(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::vector<double> x(extents.size());
  for (std::size_t a = 0; a < extents.size(); ++a) {
    x[a] = origin[a] + static_cast<double>(idx[a]) * spacing[a];
  }
  return x;
}

void Grid::validate() const {
  if (origin.size() != extents.size() || spacing.size() != extents.size()) {
    throw DimensionMismatch("grid extents, origin and spacing must have equal length");
  }
  for (std::size_t a = 0; a < extents.size(); ++a) {
    if (extents[a] < 1) throw DimensionMismatch("grid extents must be at least 1");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a])) {
      throw DimensionMismatch("grid spacing must be positive and finite");
    }
    if (!std::isfinite(origin[a])) throw DimensionMismatch("grid origin must be finite");
  }
}

MultivectorGrid::MultivectorGrid(Signature s, Grid g)
    : sig(s), grid(std::move(g)), data(grid.node_count(), Multivector(s)) {}

void MultivectorGrid::validate() const {
  grid.validate();
  if (data.size() != grid.node_count()) {
    throw DimensionMismatch("grid holds " + std::to_string(grid.node_count()) + " nodes but " +
                            std::to_string(data.size()) + " values");
  }
  for (const Multivector& v : data) {
    if (v.signature() != sig) throw SignatureMismatch("field value from a different algebra");
  }
}

std::vector<std::vector<double>> grid_points(const Grid& grid) {
  std::vector<std::vector<double>> pts;
  pts.reserve(grid.node_count());
  for (std::size_t i = 0; i < grid.node_count(); ++i) pts.push_back(grid.point(i));
  return pts;
}

namespace {

// Kernel with u fixed: f(x) = sum_j x_j rows[j], rows[j] = sum_l M(j,l) u_l.
struct BoundKernel {
  std::vector<Multivector> rows;

  BoundKernel(const KernelMatrix& k, std::span<const double> u) {
    const int m = k.dim();
    rows.reserve(static_cast<std::size_t>(m));
    std::vector<double> e(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
      e.assign(static_cast<std::size_t>(m), 0.0);
      e[static_cast<std::size_t>(j)] = 1.0;
      rows.push_back(eval_kernel(k, e, u));
    }
  }

  Multivector at(std::span<const double> x, Signature sig) const {
    Multivector out(sig);
    auto oc = out.coefficients();
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (x[j] == 0.0) continue;
      const auto rc = rows[j].coefficients();
      for (std::size_t c = 0; c < rc.size(); ++c) {
        if (rc[c] != 0.0) oc[c] += x[j] * rc[c];
      }
    }
    return out;
  }
};

std::string format_point(std::span<const double> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != 0) s += ", ";
    s += format_number(p[i]);
  }
  return s + ")";
}

Multivector exponential_product(const std::vector<BoundKernel>& kernels, std::span<const double> x,
                                std::span<const double> u, Signature sig, Side side) {
  Multivector prod = Multivector::scalar(sig, 1.0);
  for (std::size_t l = 0; l < kernels.size(); ++l) {
    const Multivector f = kernels[l].at(x, sig);
    Multivector e(sig);
    try {
      e = exp_imag(f);
    } catch (const NotImaginary&) {
      throw NotImaginary(std::string(side == Side::left ? "left" : "right") + " kernel " +
                         std::to_string(l + 1) + " at x = " + format_point(x) + ", u = " +
                         format_point(u) + " evaluates to " + format_multivector(f) +
                         ", which does not square to a negative real");
    }
    prod = l == 0 ? std::move(e) : gp(prod, e);
  }
  return prod;
}

Multivector transform_one(const GftSpec& spec, const SampledField& field,
                          const std::vector<std::vector<double>>& nodes, std::span<const double> u) {
  const Signature sig = spec.sig;
  std::vector<BoundKernel> left;
  std::vector<BoundKernel> right;
  for (const auto& k : spec.left) left.emplace_back(k, u);
  for (const auto& k : spec.right) right.emplace_back(k, u);

  Multivector acc(sig);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Multivector& a = field.data[i];
    if (a.is_zero()) continue;
    Multivector term = a;
    if (!left.empty()) term = gp(exponential_product(left, nodes[i], u, sig, Side::left), term);
    if (!right.empty()) term = gp(term, exponential_product(right, nodes[i], u, sig, Side::right));
    acc += term;
  }
  return acc * field.grid.cell_volume();
}

}  // namespace

std::vector<Multivector> gft_at(const GftSpec& spec, const SampledField& field,
                                std::span<const std::vector<double>> freqs, const GftOptions& opts) {
  check_shape(spec);
  field.validate();
  if (field.sig != spec.sig) throw SignatureMismatch("field and kernel spec use different algebras");
  if (field.grid.dim() != spec.m) {
    throw DimensionMismatch("field is " + std::to_string(field.grid.dim()) + "-dimensional, spec expects m = " +
                            std::to_string(spec.m));
  }
  for (const auto& u : freqs) {
    if (static_cast<int>(u.size()) != spec.m) throw DimensionMismatch("frequency point of wrong dimension");
  }

  const auto nodes = grid_points(field.grid);
  std::vector<Multivector> out(freqs.size(), Multivector(spec.sig));

  unsigned workers = opts.workers != 0 ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, freqs.size())));

  if (workers <= 1) {
    for (std::size_t i = 0; i < freqs.size(); ++i) out[i] = transform_one(spec, field, nodes, freqs[i]);
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < freqs.size(); i += workers) {
            out[i] = transform_one(spec, field, nodes, freqs[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Spectrum gft(const GftSpec& spec, const SampledField& field, const FreqGrid& freqs,
             const GftOptions& opts) {
  freqs.validate();
  if (freqs.dim() != spec.m) throw DimensionMismatch("frequency grid dimension differs from m");
  const auto points = grid_points(freqs);
  Spectrum out;
  out.sig = spec.sig;
  out.grid = freqs;
  out.data = gft_at(spec, field, points, opts);
  return out;
}

FreqGrid default_freqs(const SampledField& field, double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("frequency scale must be positive");
  field.grid.validate();
  FreqGrid g;
  g.extents = field.grid.extents;
  for (std::size_t a = 0; a < g.extents.size(); ++a) {
    const double du = scale / (static_cast<double>(g.extents[a]) * field.grid.spacing[a]);
    g.spacing.push_back(du);
    g.origin.push_back(-static_cast<double>(g.extents[a] / 2) * du);
  }
  return g;
}

std::vector<std::complex<double>> dft_complex_oracle(const Grid& field_grid,
                                                     std::span<const std::complex<double>> values,
                                                     const FreqGrid& freqs) {
  field_grid.validate();
  freqs.validate();
  if (values.size() != field_grid.node_count()) throw DimensionMismatch("oracle: value count differs from grid");
  if (field_grid.dim() != freqs.dim()) throw DimensionMismatch("oracle: grid dimensions differ");
  const double weight = field_grid.cell_volume();
  std::vector<std::complex<double>> out(freqs.node_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto u = freqs.point(k);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto x = field_grid.point(i);
      double dot = 0.0;
      for (std::size_t a = 0; a < x.size(); ++a) dot += x[a] * u[a];
      acc += std::polar(1.0, -2.0 * std::numbers::pi * dot) * values[i];
    }
    out[k] = acc * weight;
  }
  return out;
}

}  // namespace gft
