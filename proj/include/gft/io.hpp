#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gft/kernels.hpp"
#include "gft/transform.hpp"

namespace gft {

enum class Encoding { text, binary };

/// Field or spectrum file (.mvf). Layout, one keyword per header line:
///
///   MVF 1
///   p 2
///   q 0
///   m 2
///   dims 8 8
///   origin -4 -4
///   spacing 1 1
///   encoding text
///   data
///
/// followed by one line of 2^n coefficients per node (text) or the raw
/// little-endian doubles (binary), node order row-major, blades in mask order.
struct FieldFile {
  MultivectorGrid field;
  Encoding encoding = Encoding::text;

  friend bool operator==(const FieldFile&, const FieldFile&) = default;
};

void write_field(std::ostream& out, const FieldFile& file);
/// Throws ParseError on malformed input.
FieldFile read_field(std::istream& in);

/// File wrappers; throw IoError when the file cannot be opened or written.
void save_field(const std::filesystem::path& path, const FieldFile& file);
FieldFile load_field(const std::filesystem::path& path);

/// Reads only the dims / origin / spacing lines of a header (a frequency grid
/// file or any .mvf file); other keywords are ignored, "data" ends the scan.
Grid read_grid(std::istream& in);
Grid load_grid(const std::filesystem::path& path);

/// Kernel configuration text:
///
///   # comment
///   signature 0 2
///   m 2
///   kernel left
///   entry 1 1 6.283185307179586*e1
///   kernel right
///   entry 2 2 6.283185307179586*e2
///
/// Kernels are listed in order per side; entries use 1-based row and column
/// and a multivector expression. Omitted entries are zero.
GftSpec parse_kernel_config(std::string_view text);
std::string emit_kernel_config(const GftSpec& spec);
GftSpec load_kernel_config(const std::filesystem::path& path);

/// 8-bit binary PPM (P6). pixels holds width * height RGB triples, row-major.
struct PpmImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 255;
  std::vector<std::uint8_t> pixels;
};

/// Throws ParseError for anything but P6 with maxval in 1..255.
PpmImage read_ppm(std::istream& in);
PpmImage load_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const PpmImage& image);

/// Pixel (r, g, b) becomes (r e1 + g e2 + b e3) / maxval in Cl(4,0). Axis 0
/// runs over rows and axis 1 over columns; origin 0, unit spacing.
SampledField image_field(const PpmImage& image);

}  // namespace gft
