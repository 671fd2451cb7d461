#pragma once

#include "stitcher/hashing.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stitcher {

// ---------------------------------------------------------------------------
// Evidence kinds and classification
// ---------------------------------------------------------------------------

/// The three IoT evidence sources the tool ingests.
enum class EvidenceKind { FirmwareImage, NetworkCapture, SystemProcesses };

std::string_view to_string(EvidenceKind kind);
std::optional<EvidenceKind> evidence_kind_from_string(std::string_view name);

struct IsoCode {
    std::string code;
    std::string title;
    bool operator==(const IsoCode&) const = default;
};

/// ISO 27050-1:2019 + ISO 30141:2018 codes assigned to one evidence kind.
struct ClassificationLabel {
    std::vector<IsoCode> iso27050_codes;
    IsoCode iso30141_code;
    bool operator==(const ClassificationLabel&) const = default;
};

/// Fixed mapping from evidence kind to its ISO classification. Pure and
/// total over the three kinds.
ClassificationLabel classify_evidence(EvidenceKind kind);

// ---------------------------------------------------------------------------
// Artifact sets
// ---------------------------------------------------------------------------

struct FileEntry {
    enum class Kind { Regular, Symlink, Special };

    std::string path;   // device-rooted, '/'-separated
    std::string name;   // final path component
    std::uint64_t size_bytes = 0;
    std::string digest; // lowercase hex, or the error sentinel
    Kind kind = Kind::Regular;

    bool operator==(const FileEntry&) const = default;
};

std::string_view to_string(FileEntry::Kind kind);
std::optional<FileEntry::Kind> file_kind_from_string(std::string_view name);

/// Derived firmware artifacts: directory list, file list, per-file hashes,
/// per-file extracted strings. Lists are sorted at construction; fh_list and
/// f_strings carry exactly the f_list path set.
struct FirmwareArtifacts {
    HashAlgorithm hash_algorithm = HashAlgorithm::Sha256;
    std::vector<std::string> fd_list;
    std::vector<FileEntry> f_list;
    std::map<std::string, std::string> fh_list;
    std::map<std::string, std::vector<std::string>> f_strings;
    std::uint64_t skipped_entries = 0; // unreadable entries dropped at enumeration
    std::uint64_t read_failures = 0;   // files whose content could not be read
    std::vector<std::string> string_cap_paths; // files that hit the strings cap

    bool operator==(const FirmwareArtifacts&) const = default;
};

/// Destination-port statistics from one packet capture.
struct NetworkArtifacts {
    std::map<std::uint16_t, std::uint64_t> dp_list; // dst port -> packet count
    std::optional<std::uint16_t> td_port;           // absent iff dp_list empty
    bool td_port_tied = false;
    std::uint64_t packet_total = 0;
    std::uint64_t portless_packets = 0;
    std::uint64_t decode_errors = 0;
    std::vector<std::string> notes; // truncation and similar caveats

    bool operator==(const NetworkArtifacts&) const = default;
};

struct ProcessEntry {
    std::int64_t pid = 0;
    std::string command_name;
    std::string raw_line;
    bool kernel_thread = false;

    bool operator==(const ProcessEntry&) const = default;
};

struct RejectedLine {
    std::string line;
    std::string reason;
    bool operator==(const RejectedLine&) const = default;
};

struct ProcessArtifacts {
    std::vector<ProcessEntry> p_list;
    std::vector<RejectedLine> rejects;
    std::optional<std::string> header_line;

    bool operator==(const ProcessArtifacts&) const = default;
};

// ---------------------------------------------------------------------------
// Case bundle
// ---------------------------------------------------------------------------

/// Paths to the evidence of one case, as given in the manifest or on the
/// command line. Relative paths resolve against base_dir.
struct CaseBundle {
    std::string case_id = "case";
    std::string created_at; // ISO-8601 UTC, e.g. 2024-01-01T00:00:00Z
    std::optional<std::string> firmware;
    std::optional<std::string> capture;
    std::optional<std::string> processes;
    std::optional<std::string> baseline_firmware;
    std::optional<std::string> baseline_capture;
    std::optional<std::string> baseline_processes;
    std::filesystem::path base_dir = ".";

    std::filesystem::path resolve(const std::string& p) const;
};

struct ValidationFinding {
    std::string field;
    std::string message;
    bool operator==(const ValidationFinding&) const = default;
};

/// Checks CaseBundle invariants; one finding per violation, empty when the
/// bundle is well-formed.
std::vector<ValidationFinding> validate_bundle(const CaseBundle& bundle);

/// Artifacts derived from one side of a case (evidence or baseline).
struct CaseArtifacts {
    std::optional<FirmwareArtifacts> firmware;
    std::optional<NetworkArtifacts> network;
    std::optional<ProcessArtifacts> processes;

    bool operator==(const CaseArtifacts&) const = default;
};

} // namespace stitcher
