#pragma once

#include "stitcher/hashing.hpp"
#include "stitcher/model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stitcher {

enum class FirmwareSource { DirectoryTree, TarArchive };

/// Directory on disk -> DirectoryTree, regular file -> TarArchive.
/// Anything else throws IngestError.
FirmwareSource detect_firmware_source(const std::filesystem::path& p);

/// One filesystem node found during enumeration. Regular file content lives
/// either on disk (`disk_path`) or inside the owning listing's archive bytes
/// (`data_offset`).
struct RawFile {
    std::string path; // device-rooted logical path, e.g. "/sbin/init"
    FileEntry::Kind kind = FileEntry::Kind::Regular;
    std::uint64_t size_bytes = 0;
    std::filesystem::path disk_path; // directory sources
    std::uint64_t data_offset = 0;   // archive sources
    bool from_archive = false;
    std::string link_target; // symlinks only
};

/// Everything enumeration saw, before any content is read. `entries` holds
/// regular files sorted by path; `fd_list` additionally has directories,
/// symlinks and specials, always including the root "/".
struct TreeListing {
    std::vector<std::string> fd_list;
    std::vector<RawFile> entries;
    std::vector<std::string> skipped; // reason per entry left out of entries
    std::vector<std::uint8_t> archive_bytes;
};

TreeListing enumerate_tree(const std::filesystem::path& p, FirmwareSource source);

/// Loads one regular file's content; nullopt when the disk read fails.
std::optional<std::vector<std::uint8_t>> load_entry(const TreeListing& listing,
                                                    const RawFile& entry);

struct StringsConfig {
    std::size_t min_length = 4;
    std::size_t max_strings_per_file = 100000;
};

/// Printable-ASCII runs (0x20..0x7E plus tab) of at least min_length bytes,
/// in order of appearance, duplicates kept. Stops at the per-file cap and
/// reports it via hit_cap.
std::vector<std::string> scan_strings(std::span<const std::uint8_t> data,
                                      const StringsConfig& config,
                                      bool* hit_cap = nullptr);

/// Enumerates, hashes and string-scans a firmware image (directory tree or
/// tar archive). Files whose content cannot be read keep the digest error
/// sentinel and an empty string list. Workers only shard the per-file work;
/// results are identical for any worker count.
FirmwareArtifacts process_firmware(const std::filesystem::path& p,
                                   HashAlgorithm algorithm = HashAlgorithm::Sha256,
                                   const StringsConfig& strings_config = {},
                                   unsigned workers = 1);

} // namespace stitcher
