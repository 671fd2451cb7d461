#pragma once

#include "stitcher/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stitcher {

/// A capture port whose decimal form appears in firmware file strings.
struct PortStringFinding {
    std::uint16_t port = 0;
    std::vector<std::pair<std::string, std::string>> matching_files; // (path, string)

    bool operator==(const PortStringFinding&) const = default;
};

/// A running process whose name is both a firmware file name and a firmware
/// string — the conjunction both legs must satisfy.
struct ProcessFileFinding {
    std::string process_name;
    std::vector<std::string> file_matches;                          // paths
    std::vector<std::pair<std::string, std::string>> string_matches; // (path, string)

    bool operator==(const ProcessFileFinding&) const = default;
};

struct SetDiff {
    std::vector<std::string> added;   // present in evidence, absent in baseline
    std::vector<std::string> removed; // present in baseline, absent in evidence

    bool empty() const { return added.empty() && removed.empty(); }
    bool operator==(const SetDiff&) const = default;
};

struct PortSetDiff {
    std::vector<std::uint16_t> added;
    std::vector<std::uint16_t> removed;

    bool empty() const { return added.empty() && removed.empty(); }
    bool operator==(const PortSetDiff&) const = default;
};

struct HashMismatch {
    std::string path;
    std::string evidence_digest;
    std::string baseline_digest;

    bool operator==(const HashMismatch&) const = default;
};

/// Four-way deviation from baseline. A component is absent when that
/// evidence pair is missing on either side; the notes say which.
struct BaselineDiff {
    std::optional<SetDiff> p_diff;
    std::optional<SetDiff> f_diff;
    std::optional<std::vector<HashMismatch>> fh_diff;
    std::optional<PortSetDiff> dp_diff;
    std::vector<std::string> notes;

    /// True when nothing deviates in any computed component.
    bool empty() const {
        return (!p_diff || p_diff->empty()) && (!f_diff || f_diff->empty()) &&
               (!fh_diff || fh_diff->empty()) && (!dp_diff || dp_diff->empty());
    }
    bool operator==(const BaselineDiff&) const = default;
};

/// Port-to-strings pass: a port matches a string when its decimal form
/// appears as a maximal digit run ("port 8888" matches 8888, "18888" does
/// not). One finding per matched port, everything sorted.
std::vector<PortStringFinding> correlate_ports_strings(
    const std::map<std::uint16_t, std::uint64_t>& dp_list,
    const std::map<std::string, std::vector<std::string>>& f_strings);

/// Process-to-files pass: deduplicated process names, exact case-sensitive
/// basename equality on one leg, substring containment in strings on the
/// other; a finding needs both legs.
std::vector<ProcessFileFinding> correlate_processes_files(
    const std::vector<ProcessEntry>& p_list, const std::vector<FileEntry>& f_list,
    const std::map<std::string, std::vector<std::string>>& f_strings);

/// Two-way set differences per evidence pair, hash mismatches over common
/// paths (error-sentinel digests excluded). Throws Error when the two
/// firmware sides hashed with different algorithms.
BaselineDiff diff_baseline(const CaseArtifacts& evidence, const CaseArtifacts& baseline);

struct CorrelationResult {
    std::vector<PortStringFinding> port_string_findings;
    std::vector<ProcessFileFinding> process_file_findings;
    std::optional<BaselineDiff> baseline_diff;
    std::vector<std::string> notes; // skipped-pair explanations

    bool operator==(const CorrelationResult&) const = default;
};

/// Runs both correlation passes over whatever evidence pairs exist (noting
/// the skipped ones), then baseline differencing iff any baseline artifact
/// is present.
CorrelationResult run_correlation(const CaseArtifacts& evidence, const CaseArtifacts& baseline);

} // namespace stitcher
