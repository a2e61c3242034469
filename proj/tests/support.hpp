#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gft/algebra.hpp"

// Helpers shared by the test executables. The products here are written
// independently of the library's bitmask sign formula.
namespace gft::testing {

/// Largest absolute coefficient difference.
inline double max_diff(const Multivector& a, const Multivector& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

inline Multivector random_multivector(Signature sig, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Multivector a(sig);
  for (double& c : a.coefficients()) c = dist(rng);
  return a;
}

/// Blade product by writing out the factor list e_{i1} ... e_{ik} e_{j1} ...,
/// bubble-sorting it (one sign flip per transposition) and cancelling equal
/// neighbours with their square.
struct OracleBlade {
  double sign;
  std::uint32_t bits;
};

inline OracleBlade oracle_blade_mul(std::uint32_t a, std::uint32_t b, Signature sig) {
  std::vector<int> word;
  for (int j = 0; j < sig.n(); ++j) {
    if (a >> j & 1u) word.push_back(j);
  }
  for (int j = 0; j < sig.n(); ++j) {
    if (b >> j & 1u) word.push_back(j);
  }
  double sign = 1.0;
  for (std::size_t pass = 0; pass < word.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] > word[i + 1]) {
        std::swap(word[i], word[i + 1]);
        sign = -sign;
      }
    }
  }
  std::vector<int> reduced;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i + 1 < word.size() && word[i] == word[i + 1]) {
      sign *= word[i] < sig.p() ? 1.0 : -1.0;
      ++i;
    } else {
      reduced.push_back(word[i]);
    }
  }
  std::uint32_t bits = 0;
  for (int j : reduced) bits |= std::uint32_t{1} << j;
  return {sign, bits};
}

inline Multivector oracle_gp(const Multivector& a, const Multivector& b) {
  const Signature sig = a.signature();
  Multivector out(sig);
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    for (std::uint32_t j = 0; j < b.size(); ++j) {
      const OracleBlade p = oracle_blade_mul(i, j, sig);
      out[p.bits] += p.sign * a[i] * b[j];
    }
  }
  return out;
}

/// Random element of I^{p,q}: a combination of pairwise anticommuting
/// blades that each square to -1, so that f^2 = -(sum of squared
/// coefficients). The magnitude is drawn from (0, max_mag].
inline Multivector random_root(Signature sig, std::mt19937_64& rng, double max_mag) {
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t b = 1; b < sig.blade_count(); ++b) {
    const OracleBlade sq = oracle_blade_mul(b, b, sig);
    if (sq.bits == 0 && sq.sign < 0) candidates.push_back(b);
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<std::uint32_t> chosen;
  std::uniform_int_distribution<std::size_t> count_dist(1, 3);
  const std::size_t want = count_dist(rng);
  for (std::uint32_t b : candidates) {
    if (chosen.size() == want) break;
    bool anticommutes = true;
    for (std::uint32_t c : chosen) {
      const OracleBlade bc = oracle_blade_mul(b, c, sig);
      const OracleBlade cb = oracle_blade_mul(c, b, sig);
      anticommutes = anticommutes && bc.sign == -cb.sign;
    }
    if (anticommutes) chosen.push_back(b);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Multivector f(sig);
  double norm2 = 0.0;
  for (std::uint32_t b : chosen) {
    f[b] = normal(rng);
    norm2 += f[b] * f[b];
  }
  std::uniform_real_distribution<double> mag(0.0, max_mag);
  double target = mag(rng);
  if (target == 0.0) target = max_mag / 2;
  return f * (target / std::sqrt(norm2));
}

/// A random blade of grade >= 1 that squares to -1 or +1 (every blade
/// does); returned with coefficient 1.
inline Multivector random_blade(Signature sig, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(1, static_cast<std::uint32_t>(sig.blade_count() - 1));
  return Multivector::blade(sig, BladeIndex{dist(rng)});
}

}  // namespace gft::testing
