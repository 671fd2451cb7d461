#pragma once

#include "stitcher/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace stitcher {

/// Parses `ps`-style text. A first line containing the token PID is treated
/// as a header and drives column inference; without one, the first field is
/// the pid and the last field the command. Every input line lands in exactly
/// one of p_list, rejects, or the header slot. Throws IngestError on empty
/// input.
ProcessArtifacts parse_ps(std::string_view text);
ProcessArtifacts parse_ps_file(const std::filesystem::path& p);

/// Header (when present) plus the raw lines of p_list; parsing the result
/// reproduces the same p_list.
std::string serialize_ps(const ProcessArtifacts& artifacts);

} // namespace stitcher
