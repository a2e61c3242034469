#include <gtest/gtest.h>

#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gft/cli.hpp"
#include "gft/io.hpp"
#include "gft/notation.hpp"
#include "support.hpp"

using namespace gft;
namespace fs = std::filesystem;

namespace {

// Fresh directory per test, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = fs::temp_directory_path() / ("gft-test-" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

SampledField random_field(Signature sig, Grid grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SampledField f(sig, std::move(grid));
  for (Multivector& v : f.data) v = gft::testing::random_multivector(sig, rng);
  return f;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

PpmImage noise_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PpmImage img{w, h, 255, std::vector<std::uint8_t>(w * h * 3)};
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() & 0xff);
  return img;
}

void save_ppm(const std::string& path, const PpmImage& img) {
  std::ofstream out(path, std::ios::binary);
  write_ppm(out, img);
}

}  // namespace

TEST(FieldFile, TextRoundTripIsExact) {
  const FieldFile f{random_field(Signature(3, 1), Grid{{2, 3}, {-1.5, 0.25}, {0.5, 0.1}}, 1), Encoding::text};
  std::stringstream s;
  write_field(s, f);
  EXPECT_EQ(read_field(s), f);
}

TEST(FieldFile, BinaryRoundTripIsExact) {
  const FieldFile f{random_field(Signature(0, 2), Grid{{4}, {0.0}, {1.0}}, 2), Encoding::binary};
  std::stringstream s;
  write_field(s, f);
  EXPECT_EQ(read_field(s), f);
}

TEST(FieldFile, HeaderLayout) {
  SampledField f(Signature(2, 0), Grid{{1, 2}, {0.0, -1.0}, {1.0, 0.5}});
  f.data[1][0b11] = -2.5;
  std::stringstream s;
  write_field(s, FieldFile{f, Encoding::text});
  EXPECT_EQ(s.str(),
            "MVF 1\np 2\nq 0\nm 2\ndims 1 2\norigin 0 -1\nspacing 1 0.5\nencoding text\ndata\n"
            "0 0 0 0\n0 0 0 -2.5\n");
}

TEST(FieldFile, RejectsMalformedInput) {
  const std::string header = "MVF 1\np 1\nq 0\nm 1\ndims 2\norigin 0\nspacing 1\nencoding text\ndata\n";
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_field(in);
  };
  EXPECT_NO_THROW(parse(header + "1 2\n3 4\n"));
  EXPECT_THROW(parse(header + "1 2\n"), ParseError);
  EXPECT_THROW(parse(header + "1 2\n3\n"), ParseError);
  EXPECT_THROW(parse(header + "1 2\n3 4\n5 6\n"), ParseError);
  EXPECT_THROW(parse("MVF 2\n"), ParseError);
  EXPECT_THROW(parse("MVF 1\nq 0\n"), ParseError);
  EXPECT_THROW(parse("MVF 1\np 1\nq 0\nm 1\ndims 0\norigin 0\nspacing 1\nencoding text\ndata\n"), ParseError);
  EXPECT_THROW(parse("MVF 1\np 1\nq 0\nm 1\ndims 1\norigin 0\nspacing 1\nencoding hex\ndata\n"), ParseError);
  const std::string bin = "MVF 1\np 1\nq 0\nm 1\ndims 1\norigin 0\nspacing 1\nencoding binary\ndata\n";
  EXPECT_THROW(parse(bin + std::string(15, '\0')), ParseError);
  EXPECT_THROW(parse(bin + std::string(17, '\0')), ParseError);
  EXPECT_NO_THROW(parse(bin + std::string(16, '\0')));
}

TEST(FieldFile, MissingFileIsIoError) {
  EXPECT_THROW(load_field("/nonexistent/dir/x.mvf"), IoError);
  const SampledField f(Signature(1, 0), Grid{{1}, {0.0}, {1.0}});
  EXPECT_THROW(save_field("/nonexistent/dir/x.mvf", FieldFile{f}), IoError);
}

TEST(GridFile, ReadsOnlyGeometry) {
  std::istringstream in("# frequency grid\ndims 3 2\norigin -1 0\nspacing 0.5 0.25\n");
  EXPECT_EQ(read_grid(in), (Grid{{3, 2}, {-1.0, 0.0}, {0.5, 0.25}}));
  std::istringstream partial("dims 3\norigin 0\n");
  EXPECT_THROW(read_grid(partial), ParseError);
}

TEST(KernelConfig, ParseEmitFixpoint) {
  for (const char* name :
       {"clifford:2", "clifford:3", "buelow:3", "quaternionic", "spacetime", "color_image", "cylindrical:3"}) {
    const GftSpec spec = make_preset(name);
    const std::string text = emit_kernel_config(spec);
    const GftSpec back = parse_kernel_config(text);
    EXPECT_EQ(back, spec) << name;
    EXPECT_EQ(emit_kernel_config(back), text) << name;
  }
}

TEST(KernelConfig, HandWrittenExample) {
  const GftSpec spec = parse_kernel_config(
      "# quaternion-like\nsignature 0 2\nm 2\n\nkernel left\nentry 1 1 6.283185307179586*e1\n"
      "kernel right\nentry 2 2 6.283185307179586*e2\n");
  EXPECT_EQ(spec, make_preset("quaternionic"));
}

TEST(KernelConfig, Errors) {
  auto message = [](const std::string& text) {
    try {
      parse_kernel_config(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("signature 2 0\nsignature 2 0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("signature 2 0\nm 1\nentry 1 1 e12\n").find("outside a kernel"), std::string::npos);
  EXPECT_NE(message("kernel left\n").find("must precede"), std::string::npos);
  EXPECT_NE(message("signature 2 0\nm 1\nkernel left\nentry 1 1 e12\nentry 1 1 e12\n").find("duplicate entry"),
            std::string::npos);
  EXPECT_NE(message("signature 2 0\nm 1\nkernel left\nentry 2 1 e12\n").find("outside 1..m"), std::string::npos);
  EXPECT_NE(message("signature 2 0\nm 1\nkernal left\n").find("unknown keyword"), std::string::npos);
  EXPECT_NE(message("signature 2 0\nm 1\nkernel left\nentry 1 1 e3\n").find("line 4"), std::string::npos);
  EXPECT_NE(message("m 1\n").find("needs signature"), std::string::npos);
}

TEST(Ppm, ReadsHeaderWithComments) {
  std::string data = "P6\n# made by hand\n2 1\n# depth\n255\n";
  data += std::string{'\xff', '\x00', '\x80', '\x00', '\x00', '\x00'};
  std::istringstream in(data);
  const PpmImage img = read_ppm(in);
  EXPECT_EQ(img.width, 2u);
  EXPECT_EQ(img.height, 1u);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{255, 0, 128, 0, 0, 0}));
  const SampledField f = image_field(img);
  EXPECT_EQ(f.sig, Signature(4, 0));
  EXPECT_EQ(f.grid, (Grid{{1, 2}, {0.0, 0.0}, {1.0, 1.0}}));
  EXPECT_EQ(f.data[0][0b001], 1.0);
  EXPECT_EQ(f.data[0][0b100], 128.0 / 255.0);
  EXPECT_TRUE(f.data[1].is_zero());
}

TEST(Ppm, Rejections) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_ppm(in);
  };
  EXPECT_THROW(parse("P3\n1 1\n255\n0 0 0\n"), ParseError);
  EXPECT_THROW(parse("P6\n1 1\n65535\n"), ParseError);
  EXPECT_THROW(parse("P6\n2 2\n255\n\x01\x02"), ParseError);
  EXPECT_THROW(parse("P6\n0 2\n255\n"), ParseError);
  EXPECT_THROW(load_ppm("/nonexistent/img.ppm"), IoError);
}

TEST(Ppm, WriteReadRoundTrip) {
  const PpmImage img = noise_image(5, 3, 4);
  std::stringstream s;
  write_ppm(s, img);
  const PpmImage back = read_ppm(s);
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_EQ(back.width, 5u);
  EXPECT_EQ(back.height, 3u);
}

TEST(CliTransform, MatchesComplexOracle) {
  TempDir dir;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Grid grid{{6, 6}, {-3.0, -3.0}, {1.0, 1.0}};
  SampledField f(Signature(2, 0), grid);
  std::vector<std::complex<double>> c(grid.node_count());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = {dist(rng), dist(rng)};
    f.data[i][0] = c[i].real();
    f.data[i][0b11] = c[i].imag();
  }
  save_field(dir.file("in.mvf"), FieldFile{f, Encoding::text});
  const CliResult r = run({"transform", "--field", dir.file("in.mvf"), "--preset", "clifford:2", "--out",
                     dir.file("out.mvf"), "--workers", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "wrote 36 frequency nodes to " + dir.file("out.mvf") + "\n");
  const FieldFile spectrum = load_field(dir.file("out.mvf"));
  const auto ref = dft_complex_oracle(grid, c, spectrum.field.grid);
  for (std::size_t k = 0; k < ref.size(); ++k) {
    ASSERT_NEAR(spectrum.field.data[k][0], ref[k].real(), 1e-10);
    ASSERT_NEAR(spectrum.field.data[k][0b11], ref[k].imag(), 1e-10);
  }
}

TEST(CliTransform, KernelFileAndBinaryOutput) {
  TempDir dir;
  const SampledField f = random_field(Signature(0, 2), Grid{{4, 4}, {-2.0, -2.0}, {1.0, 1.0}}, 6);
  save_field(dir.file("in.mvf"), FieldFile{f, Encoding::binary});
  write_text(dir.file("k.txt"), emit_kernel_config(make_preset("quaternionic")));
  write_text(dir.file("grid.txt"), "dims 2 3\norigin 0 -0.25\nspacing 0.25 0.25\n");
  const CliResult r = run({"transform", "--field", dir.file("in.mvf"), "--kernels", dir.file("k.txt"), "--freqs",
                     dir.file("grid.txt"), "--out", dir.file("out.mvf"), "--binary"});
  ASSERT_EQ(r.code, 0) << r.err;
  const FieldFile out = load_field(dir.file("out.mvf"));
  EXPECT_EQ(out.encoding, Encoding::binary);
  EXPECT_EQ(out.field.data, gft_at(make_preset("quaternionic"), f, grid_points(out.field.grid)));
}

TEST(CliTransform, ExitCodes) {
  TempDir dir;
  save_field(dir.file("in.mvf"), FieldFile{random_field(Signature(2, 0), Grid{{2, 2}, {0, 0}, {1, 1}}, 7)});
  const std::string in = dir.file("in.mvf"), out = dir.file("out.mvf");
  EXPECT_EQ(run({"transform", "--field", in, "--preset", "nosuch", "--out", out}).code, 2);
  const CliResult big = run({"transform", "--field", in, "--preset", "clifford:4", "--out", out});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("clifford"), std::string::npos) << big.err;
  EXPECT_EQ(run({"transform", "--field", in, "--preset", "quaternionic", "--out", out}).code, 2);
  EXPECT_EQ(run({"transform", "--field", dir.file("missing.mvf"), "--preset", "clifford:2", "--out", out}).code, 3);
  EXPECT_EQ(run({"transform", "--field", in, "--out", out}).code, 2);
  EXPECT_EQ(run({"transform", "--field", in, "--preset", "clifford:2", "--kernels", "k", "--out", out}).code, 2);
  EXPECT_EQ(run({"transform", "--field", in, "--preset", "clifford:2", "--out", "/nonexistent/dir/o.mvf"}).code, 3);
  EXPECT_EQ(run({"transform", "--bogus"}).code, 2);
  const CliResult help = run({"transform", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("--field"), std::string::npos);
}

TEST(CliVerify, QuaternionicPasses) {
  const CliResult r = run({"verify", "--preset", "quaternionic", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_TRUE(line.starts_with("THEOREM ")) << line;
    EXPECT_TRUE(line.ends_with(" PASS")) << line;
  }
  EXPECT_EQ(count, 8);  // scaling runs for three factors
}

TEST(CliVerify, NotSeparableIsSkipped) {
  const CliResult r = run({"verify", "--preset", "cylindrical:3", "--theorem", "shift"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("THEOREM shift residual=- bound=- SKIP(")) << r.out;
}

TEST(CliVerify, TinyToleranceFails) {
  const CliResult r = run({"verify", "--preset", "buelow:2", "--theorem", "shift", "--tol", "1e-30"});
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find(" FAIL"), std::string::npos);
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "--preset", "quaternionic", "--theorem", "nosuch"}).code, 2);
  EXPECT_EQ(run({"verify", "--preset", "quaternionic", "--size", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "--preset", "quaternionic", "--tol", "-1"}).code, 2);
}

TEST(CliImage, BlackImageHasZeroSpectrum) {
  TempDir dir;
  save_ppm(dir.file("black.ppm"), PpmImage{3, 2, 255, std::vector<std::uint8_t>(18, 0)});
  const CliResult r = run({"image", "--input", dir.file("black.ppm"), "--out", dir.file("s.mvf")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const Multivector& v : load_field(dir.file("s.mvf")).field.data) EXPECT_TRUE(v.is_zero());
}

TEST(CliImage, SingleWhitePixel) {
  TempDir dir;
  save_ppm(dir.file("w.ppm"), PpmImage{1, 1, 255, {255, 255, 255}});
  ASSERT_EQ(run({"image", "--input", dir.file("w.ppm"), "--out", dir.file("s.mvf")}).code, 0);
  const FieldFile s = load_field(dir.file("s.mvf"));
  ASSERT_EQ(s.field.data.size(), 1u);
  // x = 0 and u = 0: every kernel vanishes.
  Multivector expected(Signature(4, 0));
  expected[0b001] = expected[0b010] = expected[0b100] = 1.0;
  EXPECT_LT(gft::testing::max_diff(s.field.data[0], expected), 1e-15);
}

TEST(CliImage, NoiseImageParsesBack) {
  TempDir dir;
  const PpmImage img = noise_image(8, 8, 8);
  save_ppm(dir.file("n.ppm"), img);
  const CliResult r = run({"image", "--input", dir.file("n.ppm"), "--bivector", "0.6*e12 + 0.8*e13", "--out",
                     dir.file("s.mvf"), "--binary"});
  ASSERT_EQ(r.code, 0) << r.err;
  const FieldFile s = load_field(dir.file("s.mvf"));
  EXPECT_EQ(s.field.grid.extents, (std::vector<std::size_t>{8, 8}));
  const GftSpec spec = make_preset("color_image", parse_multivector("0.6*e12 + 0.8*e13", Signature(4, 0)));
  EXPECT_EQ(s.field.data, gft_at(spec, image_field(img), grid_points(s.field.grid)));
}

TEST(CliImage, Errors) {
  TempDir dir;
  write_text(dir.file("bad.ppm"), "P3\n1 1\n255\n0 0 0\n");
  EXPECT_EQ(run({"image", "--input", dir.file("bad.ppm"), "--out", dir.file("s.mvf")}).code, 2);
  EXPECT_EQ(run({"image", "--input", dir.file("none.ppm"), "--out", dir.file("s.mvf")}).code, 3);
  save_ppm(dir.file("w.ppm"), PpmImage{1, 1, 255, {1, 2, 3}});
  EXPECT_EQ(run({"image", "--input", dir.file("w.ppm"), "--bivector", "e1", "--out", dir.file("s.mvf")}).code, 2);
}

TEST(CliPresets, TextTable) {
  const CliResult r = run({"presets"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_TRUE(rows[0].starts_with("name"));
  EXPECT_TRUE(rows[1].starts_with("clifford:2"));
}

TEST(CliPresets, JsonKeyOrderAndSeparability) {
  for (int dim : {2, 3}) {
    const CliResult r = run({"presets", "--json", "--dim", std::to_string(dim)});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      ++count;
      const auto row = nlohmann::ordered_json::parse(line);
      std::vector<std::string> keys;
      for (const auto& item : row.items()) keys.push_back(item.key());
      EXPECT_EQ(keys, (std::vector<std::string>{"name", "p", "q", "m", "mu", "nu", "left", "right", "separable"}));
      const std::string name = row["name"];
      if (name.starts_with("cylindrical")) {
        EXPECT_EQ(row["separable"].get<bool>(), dim == 2);
      } else {
        EXPECT_TRUE(row["separable"].get<bool>()) << name;
      }
    }
    EXPECT_EQ(count, 6);
  }
}

TEST(CliRun, Dispatch) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const CliResult help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("transform"), std::string::npos);
}
