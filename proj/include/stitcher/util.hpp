#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stitcher {

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Final path component of a `/`-separated path ("/sbin/init" -> "init").
std::string_view basename_of(std::string_view path);

/// Splits on '\n', strips a trailing '\r' from each line, and drops the
/// empty fragment after a final newline (so "a\n" is one line, not two).
std::vector<std::string> split_lines(std::string_view text);

/// Replaces invalid UTF-8 sequences with U+FFFD so downstream JSON
/// serialization is total and lossless for what remains.
std::string lossy_utf8(std::string_view bytes);

/// True when `hay` contains the decimal string `run` as a maximal digit
/// run: "port 8888" matches "8888", "18888" and "88880" do not.
bool contains_digit_run(std::string_view hay, std::string_view run);

/// Current time as "YYYY-MM-DDTHH:MM:SSZ".
std::string iso_utc_now();
bool is_iso_utc(std::string_view ts);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& p);

/// Writes to a sibling temp file and renames it into place.
void atomic_write_file(const std::filesystem::path& p, std::string_view bytes);

} // namespace stitcher
