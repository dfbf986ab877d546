#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anisoscope {

inline constexpr const char* kVersion = "1.0.0";

// Full command dispatch. `args` are the process arguments without argv[0].
// Normal output goes to `out`, diagnostics to `err`. Returns the process
// exit code: 0 success, 1 validation/usage error, 2 numerical error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace anisoscope
