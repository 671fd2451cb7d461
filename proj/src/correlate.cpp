#include "stitcher/correlate.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/hashing.hpp"
#include "stitcher/util.hpp"

#include <algorithm>
#include <set>

namespace stitcher {

namespace {

std::set<std::string> process_name_set(const std::vector<ProcessEntry>& p_list) {
    std::set<std::string> names;
    for (const ProcessEntry& entry : p_list) {
        names.insert(entry.command_name);
    }
    return names;
}

SetDiff diff_string_sets(const std::set<std::string>& evidence,
                         const std::set<std::string>& baseline) {
    SetDiff d;
    std::set_difference(evidence.begin(), evidence.end(), baseline.begin(), baseline.end(),
                        std::back_inserter(d.added));
    std::set_difference(baseline.begin(), baseline.end(), evidence.begin(), evidence.end(),
                        std::back_inserter(d.removed));
    return d;
}

} // namespace

std::vector<PortStringFinding> correlate_ports_strings(
    const std::map<std::uint16_t, std::uint64_t>& dp_list,
    const std::map<std::string, std::vector<std::string>>& f_strings) {
    std::vector<PortStringFinding> findings;
    for (const auto& [port, count] : dp_list) {
        (void)count;
        const std::string needle = std::to_string(port);
        PortStringFinding finding;
        finding.port = port;
        for (const auto& [path, strings] : f_strings) {
            for (const std::string& s : strings) {
                if (contains_digit_run(s, needle)) {
                    finding.matching_files.emplace_back(path, s);
                }
            }
        }
        if (!finding.matching_files.empty()) {
            std::sort(finding.matching_files.begin(), finding.matching_files.end());
            findings.push_back(std::move(finding));
        }
    }
    return findings; // dp_list iteration is already port-sorted
}

std::vector<ProcessFileFinding> correlate_processes_files(
    const std::vector<ProcessEntry>& p_list, const std::vector<FileEntry>& f_list,
    const std::map<std::string, std::vector<std::string>>& f_strings) {
    std::vector<ProcessFileFinding> findings;
    for (const std::string& name : process_name_set(p_list)) {
        ProcessFileFinding finding;
        finding.process_name = name;
        for (const FileEntry& fe : f_list) {
            if (fe.name == name) {
                finding.file_matches.push_back(fe.path);
            }
        }
        if (finding.file_matches.empty()) {
            continue; // conjunction can no longer hold
        }
        for (const auto& [path, strings] : f_strings) {
            for (const std::string& s : strings) {
                if (s.find(name) != std::string::npos) {
                    finding.string_matches.emplace_back(path, s);
                }
            }
        }
        if (finding.string_matches.empty()) {
            continue;
        }
        std::sort(finding.file_matches.begin(), finding.file_matches.end());
        std::sort(finding.string_matches.begin(), finding.string_matches.end());
        findings.push_back(std::move(finding));
    }
    return findings; // name set iteration is already sorted
}

BaselineDiff diff_baseline(const CaseArtifacts& evidence, const CaseArtifacts& baseline) {
    BaselineDiff diff;

    if (evidence.processes && baseline.processes) {
        diff.p_diff = diff_string_sets(process_name_set(evidence.processes->p_list),
                                       process_name_set(baseline.processes->p_list));
    } else {
        diff.notes.push_back("process diff skipped: no process listing on " +
                             std::string(!evidence.processes && !baseline.processes
                                             ? "either side"
                                             : (!evidence.processes ? "evidence side"
                                                                    : "baseline side")));
    }

    if (evidence.firmware && baseline.firmware) {
        if (evidence.firmware->hash_algorithm != baseline.firmware->hash_algorithm) {
            throw Error("hash algorithm mismatch: evidence uses " +
                        std::string(to_string(evidence.firmware->hash_algorithm)) +
                        ", baseline uses " +
                        std::string(to_string(baseline.firmware->hash_algorithm)));
        }
        std::set<std::string> paths, bpaths;
        for (const FileEntry& fe : evidence.firmware->f_list) {
            paths.insert(fe.path);
        }
        for (const FileEntry& fe : baseline.firmware->f_list) {
            bpaths.insert(fe.path);
        }
        diff.f_diff = diff_string_sets(paths, bpaths);

        std::vector<HashMismatch> mismatches;
        for (const auto& [path, digest] : evidence.firmware->fh_list) {
            const auto it = baseline.firmware->fh_list.find(path);
            if (it == baseline.firmware->fh_list.end()) {
                continue; // one-sided path: already in f_diff
            }
            if (digest == kDigestErrorSentinel || it->second == kDigestErrorSentinel) {
                continue; // unreadable content proves nothing about change
            }
            if (digest != it->second) {
                mismatches.push_back({path, digest, it->second});
            }
        }
        diff.fh_diff = std::move(mismatches); // fh_list iteration is path-sorted
    } else {
        diff.notes.push_back("firmware diff skipped: no firmware on " +
                             std::string(!evidence.firmware && !baseline.firmware
                                             ? "either side"
                                             : (!evidence.firmware ? "evidence side"
                                                                   : "baseline side")));
    }

    if (evidence.network && baseline.network) {
        PortSetDiff d;
        const auto& dp = evidence.network->dp_list;
        const auto& bdp = baseline.network->dp_list;
        for (const auto& [port, count] : dp) {
            (void)count;
            if (!bdp.contains(port)) {
                d.added.push_back(port);
            }
        }
        for (const auto& [port, count] : bdp) {
            (void)count;
            if (!dp.contains(port)) {
                d.removed.push_back(port);
            }
        }
        diff.dp_diff = std::move(d); // map iteration keeps ports sorted
    } else {
        diff.notes.push_back("port diff skipped: no capture on " +
                             std::string(!evidence.network && !baseline.network
                                             ? "either side"
                                             : (!evidence.network ? "evidence side"
                                                                  : "baseline side")));
    }

    return diff;
}

CorrelationResult run_correlation(const CaseArtifacts& evidence, const CaseArtifacts& baseline) {
    CorrelationResult result;

    if (evidence.network && evidence.firmware) {
        result.port_string_findings =
            correlate_ports_strings(evidence.network->dp_list, evidence.firmware->f_strings);
    } else if (!evidence.network) {
        result.notes.push_back("port correlation skipped: no capture");
    } else {
        result.notes.push_back("port correlation skipped: no firmware");
    }

    if (evidence.processes && evidence.firmware) {
        result.process_file_findings = correlate_processes_files(
            evidence.processes->p_list, evidence.firmware->f_list, evidence.firmware->f_strings);
    } else if (!evidence.processes) {
        result.notes.push_back("process correlation skipped: no processes");
    } else {
        result.notes.push_back("process correlation skipped: no firmware");
    }

    if (baseline.firmware || baseline.network || baseline.processes) {
        result.baseline_diff = diff_baseline(evidence, baseline);
    }
    return result;
}

} // namespace stitcher
