#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace stitcher {

enum class HashAlgorithm { Sha256, Sha1, Md5 };

std::string_view to_string(HashAlgorithm algo);
std::optional<HashAlgorithm> hash_algorithm_from_string(std::string_view name);
std::size_t digest_hex_length(HashAlgorithm algo);

/// Digest of a byte buffer, lowercase hex.
std::string digest_hex(HashAlgorithm algo, std::span<const std::uint8_t> bytes);

/// Streaming digest of a file; nullopt when the file cannot be read.
std::optional<std::string> digest_file_hex(HashAlgorithm algo,
                                           const std::filesystem::path& p);

/// Digest value recorded for files whose content could not be read.
/// Entries carrying it are skipped by baseline hash comparison.
inline constexpr std::string_view kDigestErrorSentinel = "<error>";

} // namespace stitcher
