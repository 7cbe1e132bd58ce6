#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sv::cli {

// Exit codes: 0 success, 1 runtime failure, 2 usage or input error,
// 3 MissingVolume / NotAdmissible.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Name of the environment variable holding the default volume-table path.
inline constexpr const char* kVolumesEnv = "SV_VOLUMES_FILE";

}  // namespace sv::cli
