#pragma once

#include <string>
#include <vector>

namespace fpslfa {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;       // bad flags or configuration
inline constexpr int parse = 3;       // unreadable data or snapshot file
inline constexpr int divergence = 4;  // training blew up
}  // namespace exit_code

struct RunSpec {
    std::string subcommand;  // train | evaluate | benchmark
    std::string config_path;
    std::vector<std::string> overrides;  // "key=value", highest precedence
};

// Dispatches the subcommand and maps errors onto the exit codes above.
int run_cli(const RunSpec& spec);

}  // namespace fpslfa
