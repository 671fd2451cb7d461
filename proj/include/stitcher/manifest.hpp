#pragma once

#include "stitcher/model.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace stitcher {

/// Reads a `key: value` text file (blank lines and #-comments skipped).
/// Throws IngestError on unreadable input or lines without a colon.
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& p);

/// Parses a case manifest into a bundle. Recognized keys: manifest_version
/// (must be 1), case_id, created_at, firmware, capture, processes and the
/// three baseline_* twins. Unknown keys are fatal; relative evidence paths
/// resolve against the manifest's directory.
CaseBundle parse_case_manifest(const std::filesystem::path& p);

/// Writes the bundle back out in the same format (omitting absent sources).
void write_case_manifest(const CaseBundle& bundle, const std::filesystem::path& p);

} // namespace stitcher
