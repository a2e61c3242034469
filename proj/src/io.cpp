#include "gft/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gft/notation.hpp"

namespace gft {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long parse_integer(std::string_view text, std::string_view what) {
  const double v = parse_number(text);
  if (v != std::floor(v) || std::abs(v) > 1e15) {
    throw ParseError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return static_cast<long long>(v);
}

std::string read_line(std::istream& in, std::string_view expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("unexpected end of file, expected '" + std::string(expected) + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Header line "key v1 v2 ..."; returns the values.
std::vector<std::string_view> keyed(const std::string& line, std::string_view key) {
  auto words = split_words(line);
  if (words.empty() || words.front() != key) {
    throw ParseError("expected '" + std::string(key) + "' line, got '" + line + "'");
  }
  words.erase(words.begin());
  return words;
}

std::vector<double> numbers(std::span<const std::string_view> words) {
  std::vector<double> out;
  out.reserve(words.size());
  for (auto w : words) out.push_back(parse_number(w));
  return out;
}

std::string join_numbers(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) s += ' ';
    s += format_number(values[i]);
  }
  return s;
}

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace

void write_field(std::ostream& out, const FieldFile& file) {
  const MultivectorGrid& f = file.field;
  f.validate();
  std::vector<double> dims(f.grid.extents.begin(), f.grid.extents.end());
  out << "MVF 1\n"
      << "p " << f.sig.p() << "\nq " << f.sig.q() << "\nm " << f.grid.dim() << '\n'
      << "dims " << join_numbers(dims) << '\n'
      << "origin " << join_numbers(f.grid.origin) << '\n'
      << "spacing " << join_numbers(f.grid.spacing) << '\n'
      << "encoding " << (file.encoding == Encoding::text ? "text" : "binary") << "\ndata\n";
  for (const Multivector& v : f.data) {
    if (file.encoding == Encoding::text) {
      out << join_numbers(v.coefficients()) << '\n';
    } else {
      for (double c : v.coefficients()) {
        const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(c));
        std::array<char, 8> bytes;
        std::memcpy(bytes.data(), &bits, 8);
        out.write(bytes.data(), 8);
      }
    }
  }
}

FieldFile read_field(std::istream& in) {
  if (split_words(read_line(in, "MVF 1")) != std::vector<std::string_view>{"MVF", "1"}) {
    throw ParseError("not an MVF version 1 file");
  }
  auto single = [&](std::string_view key) {
    const std::string line = read_line(in, key);
    const auto vals = keyed(line, key);
    if (vals.size() != 1) throw ParseError("'" + std::string(key) + "' takes one value");
    return parse_integer(vals[0], key);
  };
  const long long p = single("p");
  const long long q = single("q");
  const long long m = single("m");
  if (p < 0 || q < 0 || p + q > kMaxDimension) throw ParseError("unsupported signature in header");
  if (m < 1) throw ParseError("m must be at least 1");

  FieldFile file;
  file.field.sig = Signature(static_cast<int>(p), static_cast<int>(q));
  {
    const std::string line = read_line(in, "dims");
    const auto vals = keyed(line, "dims");
    if (static_cast<long long>(vals.size()) != m) throw ParseError("'dims' needs " + std::to_string(m) + " values");
    for (auto v : vals) {
      const long long e = parse_integer(v, "dims");
      if (e < 1) throw ParseError("dims must be positive");
      file.field.grid.extents.push_back(static_cast<std::size_t>(e));
    }
  }
  {
    const std::string line = read_line(in, "origin");
    const auto vals = keyed(line, "origin");
    if (static_cast<long long>(vals.size()) != m) throw ParseError("'origin' needs " + std::to_string(m) + " values");
    file.field.grid.origin = numbers(vals);
  }
  {
    const std::string line = read_line(in, "spacing");
    const auto vals = keyed(line, "spacing");
    if (static_cast<long long>(vals.size()) != m) throw ParseError("'spacing' needs " + std::to_string(m) + " values");
    file.field.grid.spacing = numbers(vals);
  }
  {
    const std::string line = read_line(in, "encoding");
    const auto vals = keyed(line, "encoding");
    if (vals.size() != 1 || (vals[0] != "text" && vals[0] != "binary")) {
      throw ParseError("encoding must be 'text' or 'binary'");
    }
    file.encoding = vals[0] == "text" ? Encoding::text : Encoding::binary;
  }
  if (split_words(read_line(in, "data")) != std::vector<std::string_view>{"data"}) {
    throw ParseError("expected 'data' line");
  }
  try {
    file.field.grid.validate();
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("bad grid header: ") + e.what());
  }

  const Signature sig = file.field.sig;
  const std::size_t nodes = file.field.grid.node_count();
  const std::size_t width = sig.blade_count();
  file.field.data.reserve(nodes);
  if (file.encoding == Encoding::text) {
    std::string line;
    for (std::size_t i = 0; i < nodes; ++i) {
      line = read_line(in, "node values");
      const auto words = split_words(line);
      if (words.size() != width) {
        throw ParseError("node " + std::to_string(i) + ": expected " + std::to_string(width) + " coefficients, got " +
                         std::to_string(words.size()));
      }
      file.field.data.emplace_back(sig, numbers(words));
    }
    while (std::getline(in, line)) {
      if (!split_words(line).empty()) throw ParseError("trailing data after the last node");
    }
  } else {
    std::vector<double> coeffs(width);
    std::array<char, 8> bytes;
    for (std::size_t i = 0; i < nodes; ++i) {
      for (double& c : coeffs) {
        if (!in.read(bytes.data(), 8)) throw ParseError("binary payload ends early at node " + std::to_string(i));
        std::uint64_t bits = 0;
        std::memcpy(&bits, bytes.data(), 8);
        c = std::bit_cast<double>(to_little(bits));
      }
      file.field.data.emplace_back(sig, coeffs);
    }
    if (in.peek() != std::char_traits<char>::eof()) throw ParseError("trailing bytes after the binary payload");
  }
  return file;
}

void save_field(const std::filesystem::path& path, const FieldFile& file) {
  std::ostringstream buf(std::ios::binary);
  write_field(buf, file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::string bytes = buf.str();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

FieldFile load_field(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_field(in);
}

Grid read_grid(std::istream& in) {
  Grid g;
  bool have_dims = false, have_origin = false, have_spacing = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto words = split_words(line);
    if (words.empty() || words.front().starts_with('#')) continue;
    const std::string_view key = words.front();
    const std::span<const std::string_view> vals(words.begin() + 1, words.end());
    if (key == "data") break;
    if (key == "dims") {
      g.extents.clear();
      for (auto v : vals) {
        const long long e = parse_integer(v, "dims");
        if (e < 1) throw ParseError("dims must be positive");
        g.extents.push_back(static_cast<std::size_t>(e));
      }
      have_dims = true;
    } else if (key == "origin") {
      g.origin = numbers(vals);
      have_origin = true;
    } else if (key == "spacing") {
      g.spacing = numbers(vals);
      have_spacing = true;
    }
  }
  if (!have_dims || !have_origin || !have_spacing) {
    throw ParseError("grid description needs dims, origin and spacing lines");
  }
  try {
    g.validate();
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("bad grid: ") + e.what());
  }
  return g;
}

Grid load_grid(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_grid(in);
}

GftSpec parse_kernel_config(std::string_view text) {
  GftSpec spec;
  bool have_sig = false;
  bool have_m = false;
  KernelMatrix* current = nullptr;
  std::vector<std::pair<int, int>> seen;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("kernel config line " + std::to_string(line_no) + ": " + msg);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string_view key = words.front();

    try {
      if (key == "signature") {
        if (have_sig) throw fail("duplicate signature");
        if (words.size() != 3) throw fail("signature takes p and q");
        const long long p = parse_integer(words[1], "signature");
        const long long q = parse_integer(words[2], "signature");
        if (p < 0 || q < 0 || p + q > kMaxDimension) throw fail("unsupported signature");
        spec.sig = Signature(static_cast<int>(p), static_cast<int>(q));
        have_sig = true;
      } else if (key == "m") {
        if (have_m) throw fail("duplicate m");
        if (words.size() != 2) throw fail("m takes one value");
        const long long m = parse_integer(words[1], "m");
        if (m < 1 || m > 64) throw fail("m must be in 1..64");
        spec.m = static_cast<int>(m);
        have_m = true;
      } else if (key == "kernel") {
        if (!have_sig || !have_m) throw fail("signature and m must precede the first kernel");
        if (words.size() != 2 || (words[1] != "left" && words[1] != "right")) {
          throw fail("kernel takes 'left' or 'right'");
        }
        auto& list = words[1] == "left" ? spec.left : spec.right;
        list.emplace_back(spec.sig, spec.m);
        current = &list.back();
        seen.clear();
      } else if (key == "entry") {
        if (current == nullptr) throw fail("entry outside a kernel block");
        if (words.size() < 4) throw fail("entry takes ROW COL and a multivector");
        const long long row = parse_integer(words[1], "entry row");
        const long long col = parse_integer(words[2], "entry column");
        if (row < 1 || row > spec.m || col < 1 || col > spec.m) throw fail("entry index outside 1..m");
        const std::pair<int, int> rc{static_cast<int>(row - 1), static_cast<int>(col - 1)};
        if (std::find(seen.begin(), seen.end(), rc) != seen.end()) throw fail("duplicate entry");
        seen.push_back(rc);
        const std::size_t expr_start = static_cast<std::size_t>(words[3].data() - line.data());
        current->set_entry(rc.first, rc.second, parse_multivector(line.substr(expr_start), spec.sig));
      } else {
        throw fail("unknown keyword '" + std::string(key) + "'");
      }
    } catch (const Error& e) {
      // Errors raised by fail() already carry the line prefix.
      if (std::string_view(e.what()).starts_with("kernel config line")) throw;
      throw fail(e.what());
    }
  }
  if (!have_sig || !have_m) throw ParseError("kernel config needs signature and m");
  return spec;
}

std::string emit_kernel_config(const GftSpec& spec) {
  check_shape(spec);
  std::ostringstream out;
  out << "signature " << spec.sig.p() << ' ' << spec.sig.q() << "\nm " << spec.m << '\n';
  for (Side side : {Side::left, Side::right}) {
    for (const KernelMatrix& k : spec.kernels(side)) {
      out << "kernel " << (side == Side::left ? "left" : "right") << '\n';
      for (int r = 0; r < spec.m; ++r) {
        for (int c = 0; c < spec.m; ++c) {
          const Multivector& v = k.entry(r, c);
          if (!v.is_zero()) out << "entry " << r + 1 << ' ' << c + 1 << ' ' << format_multivector(v) << '\n';
        }
      }
    }
  }
  return out.str();
}

GftSpec load_kernel_config(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  GftSpec spec = parse_kernel_config(buf.str());
  spec.name = path.filename().string();
  return spec;
}

PpmImage read_ppm(std::istream& in) {
  // Header tokens are separated by whitespace; '#' starts a comment that
  // runs to the end of the line.
  auto token = [&]() {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
      if (ch == '#') {
        while ((ch = in.get()) != EOF && ch != '\n') {}
        continue;
      }
      if (std::isspace(ch)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok += static_cast<char>(ch);
    }
    if (tok.empty()) throw ParseError("PPM header ends early");
    return tok;
  };
  if (token() != "P6") throw ParseError("not a binary PPM (P6) image");
  PpmImage img;
  const long long w = parse_integer(token(), "PPM width");
  const long long h = parse_integer(token(), "PPM height");
  const long long maxval = parse_integer(token(), "PPM maxval");
  if (w < 1 || h < 1 || w > 1 << 15 || h > 1 << 15) throw ParseError("PPM dimensions out of range");
  if (maxval < 1 || maxval > 255) throw ParseError("only 8-bit PPM images (maxval 1..255) are supported");
  img.width = static_cast<std::size_t>(w);
  img.height = static_cast<std::size_t>(h);
  img.maxval = static_cast<int>(maxval);
  img.pixels.resize(img.width * img.height * 3);
  if (!in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()))) {
    throw ParseError("PPM pixel data ends early");
  }
  return img;
}

PpmImage load_ppm(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_ppm(in);
}

void write_ppm(std::ostream& out, const PpmImage& image) {
  out << "P6\n" << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

SampledField image_field(const PpmImage& image) {
  const Signature sig(4, 0);
  Grid g{{image.height, image.width}, {0.0, 0.0}, {1.0, 1.0}};
  SampledField field(sig, g);
  const double scale = 1.0 / image.maxval;
  for (std::size_t i = 0; i < field.data.size(); ++i) {
    Multivector& v = field.data[i];
    v[BladeIndex{0b001}] = image.pixels[3 * i] * scale;
    v[BladeIndex{0b010}] = image.pixels[3 * i + 1] * scale;
    v[BladeIndex{0b100}] = image.pixels[3 * i + 2] * scale;
  }
  return field;
}

}  // namespace gft
