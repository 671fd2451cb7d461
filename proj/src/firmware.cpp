#include "stitcher/firmware.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/util.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>
#include <system_error>
#include <thread>

namespace fs = std::filesystem;

namespace stitcher {

namespace {

// ---------------------------------------------------------------------------
// Path normalization
// ---------------------------------------------------------------------------

/// Turns an archive or walk path into a device-rooted logical path: leading
/// "./" and duplicate separators collapse, "." components drop, ".." pops.
/// nullopt when the path climbs out of the root.
std::optional<std::string> normalize_logical_path(std::string_view raw) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i <= raw.size()) {
        std::size_t j = raw.find('/', i);
        if (j == std::string_view::npos) {
            j = raw.size();
        }
        const std::string_view part = raw.substr(i, j - i);
        if (part == "..") {
            if (parts.empty()) {
                return std::nullopt;
            }
            parts.pop_back();
        } else if (!part.empty() && part != ".") {
            parts.push_back(part);
        }
        i = j + 1;
    }
    if (parts.empty()) {
        return std::string("/");
    }
    std::string out;
    for (const std::string_view part : parts) {
        out += '/';
        out += part;
    }
    return out;
}

/// Adds a path and all its ancestors (but not "/", inserted up front) to the
/// fd set.
void insert_with_ancestors(std::set<std::string>& fd, const std::string& path) {
    fd.insert(path);
    std::size_t pos = path.rfind('/');
    while (pos != std::string::npos && pos > 0) {
        fd.insert(path.substr(0, pos));
        pos = path.rfind('/', pos - 1);
    }
}

// ---------------------------------------------------------------------------
// Directory walk
// ---------------------------------------------------------------------------

struct TreeBuilder {
    std::set<std::string> fd;
    std::map<std::string, RawFile> files; // keyed by logical path; last wins
    std::vector<std::string> skipped;
};

void walk_directory(const fs::path& disk_dir, const std::string& logical, TreeBuilder& out) {
    std::error_code ec;
    std::vector<fs::path> children;
    fs::directory_iterator it(disk_dir, ec);
    if (ec) {
        out.skipped.push_back("unreadable directory: " + logical + " (" + ec.message() + ")");
        return;
    }
    for (const fs::directory_iterator end; it != end; it.increment(ec)) {
        if (ec) {
            out.skipped.push_back("listing stopped in " + logical + " (" + ec.message() + ")");
            return;
        }
        children.push_back(it->path());
    }
    std::sort(children.begin(), children.end());

    for (const fs::path& child : children) {
        // Logical names must be valid UTF-8 for the report; the real path
        // still drives the disk read.
        const std::string name = lossy_utf8(child.filename().string());
        const std::string child_logical = logical == "/" ? "/" + name : logical + "/" + name;
        const fs::file_status st = fs::symlink_status(child, ec);
        if (ec) {
            out.skipped.push_back("unreadable entry: " + child_logical + " (" + ec.message() +
                                  ")");
            continue;
        }
        out.fd.insert(child_logical);
        if (fs::is_symlink(st)) {
            const fs::path target = fs::read_symlink(child, ec);
            out.skipped.push_back("symlink: " + child_logical + " -> " +
                                  (ec ? std::string("?") : target.string()));
        } else if (fs::is_directory(st)) {
            walk_directory(child, child_logical, out);
        } else if (fs::is_regular_file(st)) {
            RawFile rf;
            rf.path = child_logical;
            rf.kind = FileEntry::Kind::Regular;
            rf.size_bytes = fs::file_size(child, ec);
            if (ec) {
                rf.size_bytes = 0;
            }
            rf.disk_path = child;
            out.files[child_logical] = std::move(rf);
        } else {
            out.skipped.push_back("special file: " + child_logical);
        }
    }
}

// ---------------------------------------------------------------------------
// Tar reading (ustar, pax, GNU long names)
// ---------------------------------------------------------------------------

constexpr std::size_t kBlock = 512;

std::string tar_string_field(std::span<const std::uint8_t> block, std::size_t off,
                             std::size_t len) {
    const char* begin = reinterpret_cast<const char*>(block.data()) + off;
    const std::size_t n = ::strnlen(begin, len);
    return std::string(begin, n);
}

/// Octal number field, or GNU base-256 when the first byte has the high bit
/// set. nullopt on garbage.
std::optional<std::uint64_t> tar_number_field(std::span<const std::uint8_t> block,
                                              std::size_t off, std::size_t len) {
    if (block[off] & 0x80) {
        std::uint64_t v = block[off] & 0x7F;
        for (std::size_t i = 1; i < len; ++i) {
            v = (v << 8) | block[off + i];
        }
        return v;
    }
    std::uint64_t v = 0;
    bool seen = false;
    for (std::size_t i = 0; i < len; ++i) {
        const std::uint8_t c = block[off + i];
        if (c == ' ' && !seen) {
            continue;
        }
        if (c == '\0' || c == ' ') {
            break;
        }
        if (c < '0' || c > '7') {
            return std::nullopt;
        }
        v = v * 8 + (c - '0');
        seen = true;
    }
    return v;
}

bool tar_checksum_ok(std::span<const std::uint8_t> block) {
    const std::optional<std::uint64_t> stored = tar_number_field(block, 148, 8);
    if (!stored) {
        return false;
    }
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < kBlock; ++i) {
        sum += (i >= 148 && i < 156) ? ' ' : block[i];
    }
    return sum == *stored;
}

bool block_is_zero(std::span<const std::uint8_t> block) {
    return std::all_of(block.begin(), block.end(), [](std::uint8_t b) { return b == 0; });
}

/// State carried from pax / GNU-longname headers to the entry they describe.
struct EntryOverride {
    std::optional<std::string> path;
    std::optional<std::string> linkpath;
    std::optional<std::uint64_t> size;
};

void parse_pax_records(std::span<const std::uint8_t> data, std::uint64_t archive_offset,
                       EntryOverride& ov) {
    std::size_t i = 0;
    while (i < data.size()) {
        std::size_t sp = i;
        std::uint64_t len = 0;
        while (sp < data.size() && data[sp] >= '0' && data[sp] <= '9') {
            len = len * 10 + (data[sp] - '0');
            ++sp;
        }
        if (sp == i || sp >= data.size() || data[sp] != ' ' || len < sp - i + 2 ||
            i + len > data.size() || data[i + len - 1] != '\n') {
            throw IngestError("malformed pax record at archive offset " +
                              std::to_string(archive_offset + i));
        }
        const std::string_view body(reinterpret_cast<const char*>(data.data()) + sp + 1,
                                    i + len - 1 - (sp + 1));
        const std::size_t eq = body.find('=');
        if (eq != std::string_view::npos) {
            const std::string_view key = body.substr(0, eq);
            const std::string_view value = body.substr(eq + 1);
            if (key == "path") {
                ov.path = std::string(value);
            } else if (key == "linkpath") {
                ov.linkpath = std::string(value);
            } else if (key == "size") {
                std::uint64_t v = 0;
                for (const char c : value) {
                    if (c < '0' || c > '9') {
                        throw IngestError("bad pax size value at archive offset " +
                                          std::to_string(archive_offset + i));
                    }
                    v = v * 10 + (c - '0');
                }
                ov.size = v;
            }
        }
        i += len;
    }
}

std::string strip_trailing_nul(std::vector<std::uint8_t> bytes) {
    while (!bytes.empty() && bytes.back() == 0) {
        bytes.pop_back();
    }
    return std::string(bytes.begin(), bytes.end());
}

void read_tar(const fs::path& p, TreeBuilder& out, std::vector<std::uint8_t>& archive_bytes) {
    archive_bytes = read_file_bytes(p);
    const std::span<const std::uint8_t> bytes(archive_bytes);

    std::size_t off = 0;
    bool first = true;
    EntryOverride ov;
    while (off + kBlock <= bytes.size()) {
        const std::span<const std::uint8_t> hdr = bytes.subspan(off, kBlock);
        if (block_is_zero(hdr)) {
            break; // end-of-archive marker
        }
        if (!tar_checksum_ok(hdr)) {
            if (first) {
                throw IngestError("not a tar archive: " + p.string());
            }
            throw IngestError("corrupt tar header at offset " + std::to_string(off));
        }
        first = false;

        std::string name = tar_string_field(hdr, 0, 100);
        const std::string magic = tar_string_field(hdr, 257, 5);
        if (magic == "ustar") {
            const std::string prefix = tar_string_field(hdr, 345, 155);
            if (!prefix.empty()) {
                name = prefix + "/" + name;
            }
        }
        const std::optional<std::uint64_t> hdr_size = tar_number_field(hdr, 124, 12);
        if (!hdr_size) {
            throw IngestError("bad size field in tar header at offset " + std::to_string(off));
        }
        const char typeflag = static_cast<char>(hdr[156]);
        off += kBlock;

        // Size governing how many data blocks follow this header.
        std::uint64_t data_size = *hdr_size;
        const bool carries_data = typeflag == '0' || typeflag == '\0' || typeflag == '7' ||
                                  typeflag == 'x' || typeflag == 'g' || typeflag == 'L' ||
                                  typeflag == 'K' ||
                                  (typeflag != '1' && typeflag != '2' && typeflag != '3' &&
                                   typeflag != '4' && typeflag != '5' && typeflag != '6');
        if (!carries_data) {
            data_size = 0;
        } else if ((typeflag == '0' || typeflag == '\0' || typeflag == '7') && ov.size) {
            data_size = *ov.size;
        }
        if (data_size > bytes.size() - off) {
            throw IngestError("truncated tar archive: entry at offset " +
                              std::to_string(off - kBlock) + " needs " +
                              std::to_string(data_size) + " data bytes");
        }
        const std::uint64_t data_offset = off;
        off += static_cast<std::size_t>((data_size + kBlock - 1) / kBlock * kBlock);

        auto data_copy = [&] {
            return std::vector<std::uint8_t>(
                bytes.begin() + static_cast<std::ptrdiff_t>(data_offset),
                bytes.begin() + static_cast<std::ptrdiff_t>(data_offset + data_size));
        };

        // Metadata headers stash overrides for the entry that follows.
        if (typeflag == 'x') {
            parse_pax_records(data_copy(), data_offset, ov);
            continue;
        }
        if (typeflag == 'g') {
            continue; // global pax attributes carry nothing we consume
        }
        if (typeflag == 'L') {
            ov.path = strip_trailing_nul(data_copy());
            continue;
        }
        if (typeflag == 'K') {
            ov.linkpath = strip_trailing_nul(data_copy());
            continue;
        }

        const std::string raw_name = lossy_utf8(ov.path.value_or(name));
        const std::string link_target =
            lossy_utf8(ov.linkpath.value_or(tar_string_field(hdr, 157, 100)));
        ov = {};

        const std::optional<std::string> logical = normalize_logical_path(raw_name);
        if (!logical) {
            out.skipped.push_back("path escapes root: " + raw_name);
            continue;
        }
        if (*logical == "/") {
            continue; // the root itself needs no entry
        }

        const bool dir_by_name = !raw_name.empty() && raw_name.back() == '/';
        insert_with_ancestors(out.fd, *logical);
        switch (typeflag) {
        case '0':
        case '\0':
        case '7': {
            if (dir_by_name) {
                break; // pre-ustar directory convention
            }
            RawFile rf;
            rf.path = *logical;
            rf.kind = FileEntry::Kind::Regular;
            rf.size_bytes = data_size;
            rf.data_offset = data_offset;
            rf.from_archive = true;
            out.files[*logical] = std::move(rf);
            break;
        }
        case '5':
            break;
        case '2':
            out.skipped.push_back("symlink: " + *logical + " -> " + link_target);
            break;
        case '1':
            out.skipped.push_back("hardlink: " + *logical + " -> " + link_target);
            break;
        case '3':
        case '4':
        case '6':
            out.skipped.push_back("special file: " + *logical);
            break;
        default:
            out.skipped.push_back("unknown tar entry type '" + std::string(1, typeflag) +
                                  "': " + *logical);
            break;
        }
    }
}

} // namespace

FirmwareSource detect_firmware_source(const fs::path& p) {
    std::error_code ec;
    const fs::file_status st = fs::status(p, ec);
    if (ec || !fs::exists(st)) {
        throw IngestError("firmware path does not exist: " + p.string());
    }
    if (fs::is_directory(st)) {
        return FirmwareSource::DirectoryTree;
    }
    if (fs::is_regular_file(st)) {
        return FirmwareSource::TarArchive;
    }
    throw IngestError("firmware path is neither a directory nor a tar archive: " + p.string());
}

TreeListing enumerate_tree(const fs::path& p, FirmwareSource source) {
    TreeBuilder builder;
    TreeListing listing;
    if (source == FirmwareSource::DirectoryTree) {
        std::error_code ec;
        if (!fs::is_directory(p, ec)) {
            throw IngestError("not a directory: " + p.string());
        }
        walk_directory(p, "/", builder);
    } else {
        read_tar(p, builder, listing.archive_bytes);
    }

    builder.fd.insert("/");
    listing.fd_list.assign(builder.fd.begin(), builder.fd.end());
    listing.entries.reserve(builder.files.size());
    for (auto& [path, rf] : builder.files) {
        listing.entries.push_back(std::move(rf));
    }
    listing.skipped = std::move(builder.skipped);
    return listing;
}

std::optional<std::vector<std::uint8_t>> load_entry(const TreeListing& listing,
                                                    const RawFile& entry) {
    if (entry.from_archive) {
        if (entry.data_offset + entry.size_bytes > listing.archive_bytes.size()) {
            return std::nullopt;
        }
        return std::vector<std::uint8_t>(
            listing.archive_bytes.begin() + static_cast<std::ptrdiff_t>(entry.data_offset),
            listing.archive_bytes.begin() +
                static_cast<std::ptrdiff_t>(entry.data_offset + entry.size_bytes));
    }
    try {
        return read_file_bytes(entry.disk_path);
    } catch (const IngestError&) {
        return std::nullopt;
    }
}

std::vector<std::string> scan_strings(std::span<const std::uint8_t> data,
                                      const StringsConfig& config, bool* hit_cap) {
    if (hit_cap) {
        *hit_cap = false;
    }
    const std::size_t min_len = std::max<std::size_t>(config.min_length, 1);
    std::vector<std::string> out;
    std::string run;
    const auto flush = [&] {
        if (run.size() >= min_len) {
            out.push_back(run);
        }
        run.clear();
    };
    for (const std::uint8_t c : data) {
        if ((c >= 0x20 && c <= 0x7E) || c == '\t') {
            run += static_cast<char>(c);
        } else {
            flush();
            if (out.size() >= config.max_strings_per_file) {
                if (hit_cap) {
                    *hit_cap = true;
                }
                return out;
            }
        }
    }
    flush();
    if (out.size() > config.max_strings_per_file) {
        out.resize(config.max_strings_per_file);
        if (hit_cap) {
            *hit_cap = true;
        }
    }
    return out;
}

FirmwareArtifacts process_firmware(const fs::path& p, HashAlgorithm algorithm,
                                   const StringsConfig& strings_config, unsigned workers) {
    const FirmwareSource source = detect_firmware_source(p);
    const TreeListing listing = enumerate_tree(p, source);

    FirmwareArtifacts art;
    art.hash_algorithm = algorithm;
    art.fd_list = listing.fd_list;
    art.skipped_entries = listing.skipped.size();

    struct PerFile {
        std::string digest;
        std::vector<std::string> strings;
        bool read_ok = false;
        bool capped = false;
    };
    std::vector<PerFile> results(listing.entries.size());
    const auto job = [&](std::size_t idx) {
        PerFile& r = results[idx];
        const std::optional<std::vector<std::uint8_t>> bytes =
            load_entry(listing, listing.entries[idx]);
        if (!bytes) {
            r.digest = kDigestErrorSentinel;
            return;
        }
        r.read_ok = true;
        r.digest = digest_hex(algorithm, std::span<const std::uint8_t>(*bytes));
        r.strings = scan_strings(std::span<const std::uint8_t>(*bytes), strings_config,
                                 &r.capped);
        std::sort(r.strings.begin(), r.strings.end());
        r.strings.erase(std::unique(r.strings.begin(), r.strings.end()), r.strings.end());
    };

    const std::size_t n_files = listing.entries.size();
    const unsigned n_workers = static_cast<unsigned>(
        std::max<std::size_t>(1, std::min<std::size_t>(workers, n_files)));
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < n_files; ++i) {
            job(i);
        }
    } else {
        // Stripe by index: assignment is fixed, so the worker count can never
        // change which result lands where.
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n_files; i += n_workers) {
                    job(i);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    for (std::size_t i = 0; i < n_files; ++i) {
        const RawFile& rf = listing.entries[i];
        PerFile& r = results[i];
        FileEntry fe;
        fe.path = rf.path;
        fe.name = basename_of(rf.path);
        fe.size_bytes = rf.size_bytes;
        fe.digest = r.digest;
        fe.kind = FileEntry::Kind::Regular;
        art.f_list.push_back(std::move(fe));
        art.fh_list.emplace(rf.path, std::move(r.digest));
        art.f_strings.emplace(rf.path, std::move(r.strings));
        if (!r.read_ok) {
            ++art.read_failures;
        }
        if (r.capped) {
            art.string_cap_paths.push_back(rf.path);
        }
    }
    return art;
}

} // namespace stitcher
