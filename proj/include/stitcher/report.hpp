#pragma once

#include "stitcher/correlate.hpp"
#include "stitcher/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stitcher {

/// One evidence or baseline source as it appears in the report.
struct SourceSection {
    std::string role; // "evidence" or "baseline"
    EvidenceKind kind = EvidenceKind::FirmwareImage;
    std::string path; // as given in the bundle, not resolved
    std::optional<ClassificationLabel> classification; // configuration 3 only
    std::vector<std::pair<std::string, std::string>> details; // ordered statistics
    std::vector<std::string> notes;

    bool operator==(const SourceSection&) const = default;
};

/// The assembled investigation report. Configuration 1 carries statistics
/// only, 2 adds correlation findings and baseline deviations, 3 adds the
/// standards classification and a narrative.
struct Report {
    int report_version = 1;
    std::string case_id;
    std::string created_at;
    std::string tool_version;
    int configuration = 3;
    std::vector<SourceSection> sources;
    std::optional<std::vector<PortStringFinding>> port_string_findings;
    std::optional<std::vector<ProcessFileFinding>> process_file_findings;
    std::optional<BaselineDiff> baseline_diff;
    std::optional<std::string> narrative;
    std::vector<std::string> notes;

    bool operator==(const Report&) const = default;
};

/// Assembles the report for one correlation run. The correlation result is
/// ignored below configuration 2; classification and narrative appear only
/// at configuration 3. Throws UsageError for configurations outside 1..3.
Report build_report(const CaseBundle& bundle, const CaseArtifacts& evidence,
                    const CaseArtifacts& baseline, const CorrelationResult& correlation,
                    int configuration);

/// Canonical JSON: stable key order, absent optionals omitted, 2-space
/// indent, trailing newline. Two renders of one report are byte-identical.
std::string render_json(const Report& report);
Report parse_report_json(const std::string& text);

/// Plain-text rendering with fixed sections (CLASSIFICATION, ARTIFACTS,
/// CORRELATION FINDINGS, BASELINE DEVIATIONS, NOTES); empty sections show
/// "none".
std::string render_text(const Report& report);

struct ReportPaths {
    std::filesystem::path json_path;
    std::filesystem::path text_path;
};

/// Writes <case_id>.report.json and <case_id>.report.txt under out_dir,
/// each atomically (temp file + rename).
ReportPaths write_report_files(const Report& report, const std::filesystem::path& out_dir);

} // namespace stitcher
