#include "gft/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>

#include "gft/io.hpp"
#include "gft/notation.hpp"
#include "gft/theorems.hpp"

namespace gft::cli {

namespace {

// CLI11 consumes the argument vector back to front.
bool parse_args(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                int& code) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    return true;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    code = kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    code = kExitUsage;
  }
  return false;
}

// Maps library errors onto exit codes; anything unexpected propagates.
int guarded(std::ostream& err, const std::string& command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << command << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << command << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

std::optional<Multivector> color_bivector(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_multivector(text, Signature(4, 0));
}

FreqGrid resolve_freqs(const std::string& text, const SampledField& field) {
  if (text == "auto") return default_freqs(field, 1.0);
  if (text.starts_with("auto:")) return default_freqs(field, parse_number(std::string_view(text).substr(5)));
  return load_grid(text);
}

int write_spectrum(const Spectrum& spectrum, const std::string& path, bool binary, std::ostream& out) {
  save_field(path, FieldFile{spectrum, binary ? Encoding::binary : Encoding::text});
  out << "wrote " << spectrum.data.size() << " frequency nodes to " << path << '\n';
  return kExitOk;
}

// Random test data for cmd_verify: values only on the interior, leaving a
// zero border of `pad` nodes so shifted copies stay on the grid.
struct VerifyData {
  std::size_t per_axis = 0;
  std::size_t pad = 0;
  SampledField b;
  SampledField c;
  Multivector constant;
  double coef_b = 0.0;
  double coef_c = 0.0;
  std::vector<double> shift;
  FreqGrid freqs;
};

SampledField random_field(Signature sig, const Grid& grid, std::size_t pad, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SampledField f(sig, grid);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    const auto idx = grid.unflatten(i);
    bool inside = true;
    for (std::size_t a = 0; a < idx.size(); ++a) inside = inside && idx[a] >= pad && idx[a] + pad < grid.extents[a];
    if (!inside) continue;
    for (double& c : f.data[i].coefficients()) c = dist(rng);
  }
  return f;
}

VerifyData make_verify_data(const GftSpec& spec, std::size_t size, std::uint64_t seed) {
  VerifyData d;
  d.per_axis = spec.m <= 2 ? size : std::max<std::size_t>(4, size / 2);
  d.pad = std::max<std::size_t>(1, d.per_axis / 4);
  const auto m = static_cast<std::size_t>(spec.m);
  Grid grid{std::vector<std::size_t>(m, d.per_axis), std::vector<double>(m, -static_cast<double>(d.per_axis / 2)),
            std::vector<double>(m, 1.0)};
  std::mt19937_64 rng(seed);
  d.b = random_field(spec.sig, grid, d.pad, rng);
  d.c = random_field(spec.sig, grid, d.pad, rng);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  d.constant = Multivector(spec.sig);
  for (double& v : d.constant.coefficients()) v = dist(rng);
  d.coef_b = 3.0 * dist(rng);
  d.coef_c = 3.0 * dist(rng);
  std::uniform_int_distribution<long long> step(-static_cast<long long>(d.pad), static_cast<long long>(d.pad));
  for (std::size_t a = 0; a < m; ++a) d.shift.push_back(static_cast<double>(step(rng)) * grid.spacing[a]);
  if (std::all_of(d.shift.begin(), d.shift.end(), [](double s) { return s == 0.0; })) {
    d.shift[0] = static_cast<double>(d.pad) * grid.spacing[0];
  }
  d.freqs = default_freqs(d.b, 1.0);
  return d;
}

const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> names = {"linearity",     "scaling", "left-product",
                                                 "right-product", "shift",   "existence"};
  return names;
}

std::string separability_name(Separability s) {
  switch (s) {
    case Separability::separable:
      return "separable";
    case Separability::not_separable:
      return "not_separable";
    case Separability::unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace

int cmd_transform(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Evaluate a geometric Fourier transform of a sampled field", "transform");
  std::string field_path, preset, kernels_path, bivector, freqs = "auto", out_path;
  bool binary = false;
  unsigned workers = 0;
  app.add_option("--field", field_path, "input field (.mvf)")->required();
  auto* p = app.add_option("--preset", preset, "preset name, e.g. quaternionic or clifford:3");
  auto* k = app.add_option("--kernels", kernels_path, "kernel configuration file");
  p->excludes(k);
  app.add_option("--bivector", bivector, "unit bivector for color_image (default e12)");
  app.add_option("--freqs", freqs, "auto, auto:SCALE or a grid file")->capture_default_str();
  app.add_option("--out", out_path, "output spectrum (.mvf)")->required();
  app.add_flag("--binary", binary, "write the payload as little-endian doubles");
  app.add_option("--workers", workers, "worker threads (0 = hardware count)");
  int code = kExitOk;
  if (!parse_args(app, args, out, err, code)) return code;
  if (preset.empty() == kernels_path.empty()) {
    err << "transform: exactly one of --preset and --kernels is required\n";
    return kExitUsage;
  }
  return guarded(err, "transform", [&] {
    const FieldFile input = load_field(field_path);
    const GftSpec spec = preset.empty() ? load_kernel_config(kernels_path) : make_preset(preset, color_bivector(bivector));
    const FreqGrid grid = resolve_freqs(freqs, input.field);
    return write_spectrum(gft(spec, input.field, grid, GftOptions{workers}), out_path, binary, out);
  });
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Check the transform identities on random data", "verify");
  std::string theorem = "all", preset, bivector;
  std::uint64_t seed = 42;
  std::size_t size = 8;
  std::optional<double> tol;
  std::vector<std::string> choices = theorem_names();
  choices.push_back("all");
  app.add_option("--theorem", theorem, "which identity to check")
      ->check(CLI::IsMember(choices))
      ->capture_default_str();
  app.add_option("--preset", preset, "preset name")->required();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--size", size, "grid nodes per axis (halved for m >= 3)")
      ->check(CLI::Range(std::size_t{4}, std::size_t{64}))
      ->capture_default_str();
  app.add_option("--tol", tol, "relative tolerance (default 1e-12 linearity, 1e-10 otherwise)")
      ->check(CLI::PositiveNumber);
  app.add_option("--bivector", bivector, "unit bivector for color_image (default e12)");
  int code = kExitOk;
  if (!parse_args(app, args, out, err, code)) return code;

  return guarded(err, "verify", [&] {
    const GftSpec spec = make_preset(preset, color_bivector(bivector));
    const VerifyData d = make_verify_data(spec, size, seed);
    const double tol_lin = tol.value_or(1e-12);
    const double tol_other = tol.value_or(1e-10);

    std::vector<TheoremReport> reports;
    auto run_check = [&](const std::string& name, const std::function<TheoremReport()>& check) {
      try {
        reports.push_back(check());
      } catch (const NotSeparable& e) {
        reports.push_back(skipped_report(name, std::string("not separable: ") + e.what()));
      }
      out << format_report_line(reports.back()) << '\n';
    };
    for (const std::string& name : theorem_names()) {
      if (theorem != "all" && theorem != name) continue;
      if (name == "linearity") {
        run_check(name, [&] { return check_linearity(spec, d.b, d.c, d.coef_b, d.coef_c, d.freqs, tol_lin); });
      } else if (name == "scaling") {
        for (double a : {-1.0, 2.0, 0.5}) {
          run_check(name, [&] { return check_scaling(spec, d.b, a, d.freqs, tol_other); });
        }
      } else if (name == "left-product") {
        run_check(name, [&] { return check_left_product(spec, d.constant, d.b, d.freqs, tol_other); });
      } else if (name == "right-product") {
        run_check(name, [&] { return check_right_product(spec, d.constant, d.b, d.freqs, tol_other); });
      } else if (name == "shift") {
        run_check(name, [&] { return check_shift(spec, d.b, d.shift, d.freqs, tol_other); });
      } else {
        run_check(name, [&] { return check_existence_bound(spec, d.b, d.freqs); });
      }
    }
    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const TheoremReport& r) { return r.pass; });
    return all_pass ? kExitOk : kExitCheckFailed;
  });
}

int cmd_image(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Transform a PPM color image with the color_image preset", "image");
  std::string input, bivector = "e12", freqs = "auto", out_path;
  bool binary = false;
  app.add_option("--input", input, "binary PPM (P6) image")->required();
  app.add_option("--bivector", bivector, "unit bivector B in Cl(4,0)")->capture_default_str();
  app.add_option("--freqs", freqs, "auto, auto:SCALE or a grid file")->capture_default_str();
  app.add_option("--out", out_path, "output spectrum (.mvf)")->required();
  app.add_flag("--binary", binary, "write the payload as little-endian doubles");
  int code = kExitOk;
  if (!parse_args(app, args, out, err, code)) return code;
  return guarded(err, "image", [&] {
    const SampledField field = image_field(load_ppm(input));
    const GftSpec spec = make_preset("color_image", parse_multivector(bivector, Signature(4, 0)));
    return write_spectrum(gft(spec, field, resolve_freqs(freqs, field)), out_path, binary, out);
  });
}

int cmd_presets(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("List the built-in kernel presets", "presets");
  int dim = 2;
  bool json = false;
  app.add_option("--dim", dim, "dimension for clifford, buelow and cylindrical")->capture_default_str();
  app.add_flag("--json", json, "one JSON object per line, fixed key order");
  int code = kExitOk;
  if (!parse_args(app, args, out, err, code)) return code;
  return guarded(err, "presets", [&] {
    if (!json) out << "name            p q m  mu nu  left           right          separable\n";
    for (const std::string& base : preset_names()) {
      const bool sized = base == "clifford" || base == "buelow" || base == "cylindrical";
      const std::string name = sized ? base + ":" + std::to_string(dim) : base;
      const GftSpec spec = make_preset(name);
      const Separability left = separability(spec, Side::left);
      const Separability right = separability(spec, Side::right);
      const bool separable = left == Separability::separable && right == Separability::separable;
      if (json) {
        nlohmann::ordered_json row;
        row["name"] = name;
        row["p"] = spec.sig.p();
        row["q"] = spec.sig.q();
        row["m"] = spec.m;
        row["mu"] = spec.mu();
        row["nu"] = spec.nu();
        row["left"] = separability_name(left);
        row["right"] = separability_name(right);
        row["separable"] = separable;
        out << row.dump() << '\n';
      } else {
        char line[160];
        std::snprintf(line, sizeof line, "%-15s %d %d %-2d %-2d %-2d  %-14s %-14s %s\n", name.c_str(), spec.sig.p(),
                      spec.sig.q(), spec.m, spec.mu(), spec.nu(), separability_name(left).c_str(),
                      separability_name(right).c_str(), separable ? "yes" : "no");
        out << line;
      }
    }
    return kExitOk;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const char* usage =
      "usage: gft <command> [options]\n"
      "commands:\n"
      "  transform  evaluate a transform of a field file\n"
      "  verify     check the transform identities on random data\n"
      "  image      transform a PPM color image\n"
      "  presets    list the built-in kernel presets\n"
      "run 'gft <command> --help' for the options of a command\n";
  if (args.empty()) {
    err << usage;
    return kExitUsage;
  }
  const std::string& command = args.front();
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  if (command == "transform") return cmd_transform(rest, out, err);
  if (command == "verify") return cmd_verify(rest, out, err);
  if (command == "image") return cmd_image(rest, out, err);
  if (command == "presets") return cmd_presets(rest, out, err);
  if (command == "help" || command == "--help" || command == "-h") {
    out << usage;
    return kExitOk;
  }
  err << "gft: unknown command '" << command << "'\n" << usage;
  return kExitUsage;
}

}  // namespace gft::cli
