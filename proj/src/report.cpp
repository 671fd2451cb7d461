#include "stitcher/report.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/hashing.hpp"
#include "stitcher/serialize.hpp"
#include "stitcher/util.hpp"
#include "stitcher/version.hpp"

#include <algorithm>

namespace fs = std::filesystem;

namespace stitcher {

namespace {

std::string count_word(std::size_t n, const char* singular, const char* plural) {
    return std::to_string(n) + " " + (n == 1 ? singular : plural);
}

SourceSection make_firmware_section(const std::string& role, const std::string& path,
                                    const FirmwareArtifacts& art, bool classify) {
    SourceSection s;
    s.role = role;
    s.kind = EvidenceKind::FirmwareImage;
    s.path = path;
    if (classify) {
        s.classification = classify_evidence(s.kind);
    }
    s.details = {
        {"hash_algorithm", std::string(to_string(art.hash_algorithm))},
        {"directory_and_file_count", std::to_string(art.fd_list.size())},
        {"regular_file_count", std::to_string(art.f_list.size())},
        {"skipped_entries", std::to_string(art.skipped_entries)},
        {"read_failures", std::to_string(art.read_failures)},
        {"strings_capped_files", std::to_string(art.string_cap_paths.size())},
    };
    if (art.skipped_entries > 0) {
        s.notes.push_back(role + " firmware " + path + ": " +
                          count_word(art.skipped_entries, "entry", "entries") +
                          " skipped during enumeration");
    }
    if (art.read_failures > 0) {
        s.notes.push_back(role + " firmware " + path + ": " +
                          count_word(art.read_failures, "file", "files") +
                          " could not be read; digests carry the error marker");
    }
    for (const std::string& capped : art.string_cap_paths) {
        s.notes.push_back(role + " firmware " + path + ": string extraction capped for " +
                          capped);
    }
    return s;
}

SourceSection make_network_section(const std::string& role, const std::string& path,
                                   const NetworkArtifacts& art, bool classify) {
    SourceSection s;
    s.role = role;
    s.kind = EvidenceKind::NetworkCapture;
    s.path = path;
    if (classify) {
        s.classification = classify_evidence(s.kind);
    }
    s.details = {
        {"packet_total", std::to_string(art.packet_total)},
        {"distinct_destination_ports", std::to_string(art.dp_list.size())},
        {"top_destination_port",
         art.td_port ? std::to_string(*art.td_port) : std::string("none")},
        {"top_destination_port_tied", art.td_port_tied ? "true" : "false"},
        {"portless_packets", std::to_string(art.portless_packets)},
        {"decode_errors", std::to_string(art.decode_errors)},
    };
    for (const std::string& note : art.notes) {
        s.notes.push_back(role + " capture " + path + ": " + note);
    }
    if (art.decode_errors > 0) {
        s.notes.push_back(role + " capture " + path + ": " +
                          count_word(art.decode_errors, "packet", "packets") +
                          " could not be decoded");
    }
    return s;
}

SourceSection make_process_section(const std::string& role, const std::string& path,
                                   const ProcessArtifacts& art, bool classify) {
    SourceSection s;
    s.role = role;
    s.kind = EvidenceKind::SystemProcesses;
    s.path = path;
    if (classify) {
        s.classification = classify_evidence(s.kind);
    }
    const std::size_t kernel_threads = static_cast<std::size_t>(
        std::count_if(art.p_list.begin(), art.p_list.end(),
                      [](const ProcessEntry& e) { return e.kernel_thread; }));
    s.details = {
        {"process_count", std::to_string(art.p_list.size())},
        {"rejected_lines", std::to_string(art.rejects.size())},
        {"kernel_thread_count", std::to_string(kernel_threads)},
    };
    for (const RejectedLine& reject : art.rejects) {
        s.notes.push_back(role + " processes " + path + ": rejected (" + reject.reason +
                          "): " + reject.line);
    }
    return s;
}

std::string build_narrative(const Report& r) {
    std::size_t evidence_count = 0, baseline_count = 0;
    for (const SourceSection& s : r.sources) {
        (s.role == "evidence" ? evidence_count : baseline_count) += 1;
    }

    std::string text = "Examined " + count_word(evidence_count, "evidence source", "evidence sources");
    if (baseline_count > 0) {
        text += " against " + count_word(baseline_count, "baseline source", "baseline sources");
    }
    text += ". ";

    const std::size_t ports = r.port_string_findings ? r.port_string_findings->size() : 0;
    const std::size_t procs = r.process_file_findings ? r.process_file_findings->size() : 0;
    text += "Port-to-strings correlation produced " + count_word(ports, "finding", "findings") +
            "; process-to-file correlation produced " + count_word(procs, "finding", "findings") +
            ". ";

    if (!r.baseline_diff) {
        text += "No baseline was available for comparison.";
        return text;
    }
    const BaselineDiff& d = *r.baseline_diff;
    if (d.empty()) {
        text += "Baseline comparison shows no deviation.";
        return text;
    }
    std::vector<std::string> parts;
    if (d.p_diff && !d.p_diff->empty()) {
        parts.push_back(std::to_string(d.p_diff->added.size()) + " added / " +
                        std::to_string(d.p_diff->removed.size()) + " removed process names");
    }
    if (d.f_diff && !d.f_diff->empty()) {
        parts.push_back(std::to_string(d.f_diff->added.size()) + " added / " +
                        std::to_string(d.f_diff->removed.size()) + " removed files");
    }
    if (d.fh_diff && !d.fh_diff->empty()) {
        parts.push_back(count_word(d.fh_diff->size(), "modified file", "modified files"));
    }
    if (d.dp_diff && !d.dp_diff->empty()) {
        parts.push_back(std::to_string(d.dp_diff->added.size()) + " added / " +
                        std::to_string(d.dp_diff->removed.size()) +
                        " removed destination ports");
    }
    text += "Baseline comparison shows ";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            text += i + 1 == parts.size() ? " and " : ", ";
        }
        text += parts[i];
    }
    text += ".";
    return text;
}

} // namespace

Report build_report(const CaseBundle& bundle, const CaseArtifacts& evidence,
                    const CaseArtifacts& baseline, const CorrelationResult& correlation,
                    int configuration) {
    if (configuration < 1 || configuration > 3) {
        throw UsageError("configuration must be 1, 2, or 3 (got " +
                         std::to_string(configuration) + ")");
    }
    const bool classify = configuration == 3;

    Report r;
    r.case_id = bundle.case_id;
    r.created_at = bundle.created_at;
    r.tool_version = std::string(kToolVersion);
    r.configuration = configuration;

    if (bundle.firmware && evidence.firmware) {
        r.sources.push_back(
            make_firmware_section("evidence", *bundle.firmware, *evidence.firmware, classify));
    }
    if (bundle.capture && evidence.network) {
        r.sources.push_back(
            make_network_section("evidence", *bundle.capture, *evidence.network, classify));
    }
    if (bundle.processes && evidence.processes) {
        r.sources.push_back(
            make_process_section("evidence", *bundle.processes, *evidence.processes, classify));
    }
    if (bundle.baseline_firmware && baseline.firmware) {
        r.sources.push_back(make_firmware_section("baseline", *bundle.baseline_firmware,
                                                  *baseline.firmware, classify));
    }
    if (bundle.baseline_capture && baseline.network) {
        r.sources.push_back(make_network_section("baseline", *bundle.baseline_capture,
                                                 *baseline.network, classify));
    }
    if (bundle.baseline_processes && baseline.processes) {
        r.sources.push_back(make_process_section("baseline", *bundle.baseline_processes,
                                                 *baseline.processes, classify));
    }

    for (const SourceSection& s : r.sources) {
        r.notes.insert(r.notes.end(), s.notes.begin(), s.notes.end());
    }

    if (configuration >= 2) {
        r.port_string_findings = correlation.port_string_findings;
        r.process_file_findings = correlation.process_file_findings;
        r.baseline_diff = correlation.baseline_diff;
        r.notes.insert(r.notes.end(), correlation.notes.begin(), correlation.notes.end());
        if (r.baseline_diff) {
            r.notes.insert(r.notes.end(), r.baseline_diff->notes.begin(),
                           r.baseline_diff->notes.end());
            r.notes.push_back("baseline deviations are computed as two-way set differences "
                              "(evidence vs baseline) per artifact pair; hash deviations cover "
                              "paths present on both sides only");
        }
    }
    if (classify) {
        r.narrative = build_narrative(r);
    }
    return r;
}

std::string render_json(const Report& report) {
    const ordered_json j = report;
    return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
    try {
        return ordered_json::parse(text).get<Report>();
    } catch (const nlohmann::json::exception& e) {
        throw Error("bad report JSON: " + std::string(e.what()));
    }
}

std::string render_text(const Report& report) {
    std::string out;
    const auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };

    line("CASE " + report.case_id);
    line("generated: " + report.created_at + " | tool version: " + report.tool_version +
         " | configuration: " + std::to_string(report.configuration));
    line("");

    // Paths for finding provenance, by kind.
    std::string firmware_path = "?", capture_path = "?", processes_path = "?";
    for (const SourceSection& s : report.sources) {
        if (s.role != "evidence") {
            continue;
        }
        switch (s.kind) {
        case EvidenceKind::FirmwareImage: firmware_path = s.path; break;
        case EvidenceKind::NetworkCapture: capture_path = s.path; break;
        case EvidenceKind::SystemProcesses: processes_path = s.path; break;
        }
    }

    line("CLASSIFICATION");
    bool any_classification = false;
    for (const SourceSection& s : report.sources) {
        if (!s.classification) {
            continue;
        }
        any_classification = true;
        line("  " + s.role + " " + std::string(to_string(s.kind)) + " (" + s.path + ")");
        std::string codes = "    ISO/IEC 27050-1: ";
        for (std::size_t i = 0; i < s.classification->iso27050_codes.size(); ++i) {
            if (i > 0) {
                codes += "; ";
            }
            codes += s.classification->iso27050_codes[i].code + " " +
                     s.classification->iso27050_codes[i].title;
        }
        line(codes);
        line("    ISO/IEC 30141: " + s.classification->iso30141_code.code + " " +
             s.classification->iso30141_code.title);
    }
    if (!any_classification) {
        line("  none");
    }
    line("");

    line("ARTIFACTS");
    if (report.sources.empty()) {
        line("  none");
    }
    for (const SourceSection& s : report.sources) {
        line("  " + s.role + " " + std::string(to_string(s.kind)) + " (" + s.path + ")");
        for (const auto& [key, value] : s.details) {
            line("    " + key + ": " + value);
        }
    }
    line("");

    line("CORRELATION FINDINGS");
    bool any_finding = false;
    if (report.port_string_findings) {
        for (const PortStringFinding& f : *report.port_string_findings) {
            any_finding = true;
            line("  destination port " + std::to_string(f.port) + " [capture " + capture_path +
                 "] matches firmware strings [" + firmware_path + "]:");
            for (const auto& [path, s] : f.matching_files) {
                line("    " + path + ": \"" + s + "\"");
            }
        }
    }
    if (report.process_file_findings) {
        for (const ProcessFileFinding& f : *report.process_file_findings) {
            any_finding = true;
            line("  process " + f.process_name + " [processes " + processes_path +
                 "] matches firmware [" + firmware_path + "]:");
            for (const std::string& path : f.file_matches) {
                line("    file name match: " + path);
            }
            for (const auto& [path, s] : f.string_matches) {
                line("    string match in " + path + ": \"" + s + "\"");
            }
        }
    }
    if (!any_finding) {
        line("  none");
    }
    line("");

    line("BASELINE DEVIATIONS");
    if (!report.baseline_diff) {
        line("  none");
    } else if (report.baseline_diff->empty()) {
        line("  no deviation from baseline");
    } else {
        const BaselineDiff& d = *report.baseline_diff;
        const auto set_lines = [&](const char* label, const std::optional<SetDiff>& diff) {
            if (!diff) {
                return;
            }
            for (const std::string& name : diff->added) {
                line("  " + std::string(label) + " added: " + name);
            }
            for (const std::string& name : diff->removed) {
                line("  " + std::string(label) + " removed: " + name);
            }
        };
        set_lines("process", d.p_diff);
        set_lines("file", d.f_diff);
        if (d.fh_diff) {
            for (const HashMismatch& m : *d.fh_diff) {
                line("  file modified: " + m.path + " (evidence " + m.evidence_digest +
                     ", baseline " + m.baseline_digest + ")");
            }
        }
        if (d.dp_diff) {
            for (const std::uint16_t port : d.dp_diff->added) {
                line("  destination port added: " + std::to_string(port));
            }
            for (const std::uint16_t port : d.dp_diff->removed) {
                line("  destination port removed: " + std::to_string(port));
            }
        }
    }
    line("");

    if (report.narrative) {
        line("SUMMARY");
        line("  " + *report.narrative);
        line("");
    }

    line("NOTES");
    if (report.notes.empty()) {
        line("  none");
    }
    for (const std::string& note : report.notes) {
        line("  - " + note);
    }
    return out;
}

ReportPaths write_report_files(const Report& report, const fs::path& out_dir) {
    if (report.case_id.find('/') != std::string::npos ||
        report.case_id.find('\\') != std::string::npos) {
        throw UsageError("case_id must not contain path separators: " + report.case_id);
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }
    ReportPaths paths;
    paths.json_path = out_dir / (report.case_id + ".report.json");
    paths.text_path = out_dir / (report.case_id + ".report.txt");
    atomic_write_file(paths.json_path, render_json(report));
    atomic_write_file(paths.text_path, render_text(report));
    return paths;
}

} // namespace stitcher
