#include "stitcher/analyze.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/pcap.hpp"
#include "stitcher/process_listing.hpp"
#include "stitcher/util.hpp"

#include <future>

namespace stitcher {

AnalyzeResult analyze_case(const CaseBundle& bundle, const AnalyzeOptions& options) {
    if (options.configuration < 1 || options.configuration > 3) {
        throw UsageError("configuration must be 1, 2, or 3 (got " +
                         std::to_string(options.configuration) + ")");
    }

    AnalyzeResult result;
    result.bundle = bundle;
    if (result.bundle.created_at.empty()) {
        result.bundle.created_at = iso_utc_now();
    }
    const std::vector<ValidationFinding> problems = validate_bundle(result.bundle);
    if (!problems.empty()) {
        std::string message = "invalid case bundle:";
        for (const ValidationFinding& f : problems) {
            message += "\n  " + f.field + ": " + f.message;
        }
        throw UsageError(message);
    }

    // The six sources are independent; ingest them concurrently. Results are
    // keyed by slot, so scheduling cannot reorder anything.
    const CaseBundle& b = result.bundle;
    const auto firmware_task = [&](const std::string& p) {
        return process_firmware(b.resolve(p), options.hash_algorithm, options.strings,
                                options.workers);
    };
    std::future<FirmwareArtifacts> fw, bfw;
    std::future<NetworkArtifacts> net, bnet;
    std::future<ProcessArtifacts> ps, bps;
    if (b.firmware) {
        fw = std::async(std::launch::async, firmware_task, *b.firmware);
    }
    if (b.baseline_firmware) {
        bfw = std::async(std::launch::async, firmware_task, *b.baseline_firmware);
    }
    if (b.capture) {
        net = std::async(std::launch::async,
                         [&] { return extract_ports_file(b.resolve(*b.capture)); });
    }
    if (b.baseline_capture) {
        bnet = std::async(std::launch::async,
                          [&] { return extract_ports_file(b.resolve(*b.baseline_capture)); });
    }
    if (b.processes) {
        ps = std::async(std::launch::async,
                        [&] { return parse_ps_file(b.resolve(*b.processes)); });
    }
    if (b.baseline_processes) {
        bps = std::async(std::launch::async,
                         [&] { return parse_ps_file(b.resolve(*b.baseline_processes)); });
    }
    if (fw.valid()) {
        result.evidence.firmware = fw.get();
    }
    if (net.valid()) {
        result.evidence.network = net.get();
    }
    if (ps.valid()) {
        result.evidence.processes = ps.get();
    }
    if (bfw.valid()) {
        result.baseline.firmware = bfw.get();
    }
    if (bnet.valid()) {
        result.baseline.network = bnet.get();
    }
    if (bps.valid()) {
        result.baseline.processes = bps.get();
    }

    if (options.configuration >= 2) {
        result.correlation = run_correlation(result.evidence, result.baseline);
    }
    result.report = build_report(result.bundle, result.evidence, result.baseline,
                                 result.correlation, options.configuration);
    return result;
}

} // namespace stitcher
