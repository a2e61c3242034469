#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gft::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;  // bad flags, parse or validation errors
inline constexpr int kExitIo = 3;

// Each command takes its arguments without the program or command name.

/// --field PATH (--preset NAME | --kernels PATH) [--bivector EXPR]
/// [--freqs auto[:SCALE] | PATH] --out PATH [--binary] [--workers N]
int cmd_transform(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --preset NAME [--theorem NAME|all] [--seed N] [--size N] [--tol X]
/// [--bivector EXPR]. Prints one THEOREM line per check.
int cmd_verify(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --input PATH.ppm [--bivector EXPR] [--freqs ...] --out PATH [--binary]
int cmd_image(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// [--dim N] [--json]
int cmd_presets(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dispatches on the first argument (the command name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gft::cli
