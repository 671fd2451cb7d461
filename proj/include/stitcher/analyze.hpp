#pragma once

#include "stitcher/correlate.hpp"
#include "stitcher/firmware.hpp"
#include "stitcher/hashing.hpp"
#include "stitcher/model.hpp"
#include "stitcher/report.hpp"

namespace stitcher {

struct AnalyzeOptions {
    int configuration = 3;
    HashAlgorithm hash_algorithm = HashAlgorithm::Sha256;
    StringsConfig strings;
    unsigned workers = 1; // per-firmware ingestion shards; never affects output
};

struct AnalyzeResult {
    CaseBundle bundle; // as analyzed (created_at filled if it was empty)
    CaseArtifacts evidence;
    CaseArtifacts baseline;
    CorrelationResult correlation;
    Report report;
};

/// Full pipeline for one case: validate, ingest the present sources in
/// parallel, correlate per the configuration, assemble the report. Throws
/// UsageError on an invalid bundle or configuration, IngestError when a
/// source cannot be read or parsed.
AnalyzeResult analyze_case(const CaseBundle& bundle, const AnalyzeOptions& options);

} // namespace stitcher
