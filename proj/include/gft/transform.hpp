#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "gft/algebra.hpp"
#include "gft/kernels.hpp"

namespace gft {

/// Regular grid: node idx sits at origin + idx * spacing (per axis).
/// Nodes are flattened row-major, last axis fastest.
struct Grid {
  std::vector<std::size_t> extents;
  std::vector<double> origin;
  std::vector<double> spacing;

  int dim() const noexcept { return static_cast<int>(extents.size()); }
  std::size_t node_count() const noexcept;
  /// Product of the spacings (the quadrature weight of one node).
  double cell_volume() const noexcept;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const std::size_t> idx) const;
  std::vector<double> point(std::size_t flat) const;
  /// Throws DimensionMismatch unless the three vectors agree and every
  /// extent is >= 1 and spacing > 0.
  void validate() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

using FreqGrid = Grid;

/// One multivector per grid node; used for sampled fields and for spectra.
struct MultivectorGrid {
  Signature sig;
  Grid grid;
  std::vector<Multivector> data;

  MultivectorGrid() = default;
  /// All-zero values on the given grid.
  MultivectorGrid(Signature s, Grid g);

  void validate() const;

  friend bool operator==(const MultivectorGrid&, const MultivectorGrid&) = default;
};

using SampledField = MultivectorGrid;
using Spectrum = MultivectorGrid;

struct GftOptions {
  /// Worker threads across frequency nodes; 0 picks the hardware count.
  unsigned workers = 0;
};

/// Riemann-sum GFT at arbitrary frequency points:
///   F(u) = sum_x [prod_{F1} exp(-f(x,u))] A(x) [prod_{F2} exp(-f(x,u))] * cell volume.
/// The spatial sum for each u runs in row-major order, so results do not
/// depend on the worker count.
std::vector<Multivector> gft_at(const GftSpec& spec, const SampledField& field,
                                std::span<const std::vector<double>> freqs,
                                const GftOptions& opts = {});

/// GFT on a frequency grid.
Spectrum gft(const GftSpec& spec, const SampledField& field, const FreqGrid& freqs,
             const GftOptions& opts = {});

/// All node coordinates of a grid, flattened row-major.
std::vector<std::vector<double>> grid_points(const Grid& grid);

/// extents = field extents, du_k = scale / (n_k dx_k), u = 0 on node n_k / 2.
FreqGrid default_freqs(const SampledField& field, double scale = 1.0);

/// Independent reference: naive sum_x exp(-2 pi i x.u) c(x) * cell volume
/// with std::complex arithmetic.
std::vector<std::complex<double>> dft_complex_oracle(const Grid& field_grid,
                                                     std::span<const std::complex<double>> values,
                                                     const FreqGrid& freqs);

}  // namespace gft
