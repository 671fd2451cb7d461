#include "stitcher/analyze.hpp"
#include "stitcher/errors.hpp"
#include "stitcher/firmware.hpp"
#include "stitcher/manifest.hpp"
#include "stitcher/pcap.hpp"
#include "stitcher/process_listing.hpp"
#include "stitcher/report.hpp"
#include "stitcher/scenario.hpp"
#include "stitcher/serialize.hpp"
#include "stitcher/version.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;

namespace {

using namespace stitcher;

// Results cross into Python as JSON strings; the package wrapper turns them
// into plain dicts, so no binding-level struct mirroring is needed.
template <typename T> std::string dump(const T& value) {
    const ordered_json j = value;
    return j.dump();
}

HashAlgorithm algo_or_throw(const std::string& name) {
    const std::optional<HashAlgorithm> algo = hash_algorithm_from_string(name);
    if (!algo) {
        throw UsageError("unknown hash algorithm '" + name + "'");
    }
    return *algo;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "evidence ingestion, correlation, and reporting core";

    py::register_exception<UsageError>(m, "UsageError");
    py::register_exception<IngestError>(m, "IngestError");

    m.def("version", [] { return std::string(kToolVersion); });

    m.def(
        "classify_evidence",
        [](const std::string& kind) {
            const std::optional<EvidenceKind> k = evidence_kind_from_string(kind);
            if (!k) {
                throw UsageError("unknown evidence kind '" + kind + "'");
            }
            return dump(classify_evidence(*k));
        },
        py::arg("kind"));

    m.def(
        "process_firmware",
        [](const std::string& path, const std::string& hash, std::size_t min_length,
           unsigned workers) {
            StringsConfig config;
            config.min_length = min_length;
            return dump(process_firmware(path, algo_or_throw(hash), config, workers));
        },
        py::arg("path"), py::arg("hash") = "sha256", py::arg("min_length") = 4,
        py::arg("workers") = 1);

    m.def(
        "extract_ports", [](const std::string& path) { return dump(extract_ports_file(path)); },
        py::arg("path"));

    m.def(
        "parse_ps", [](const std::string& text) { return dump(parse_ps(text)); },
        py::arg("text"));

    m.def(
        "correlate",
        [](const std::string& manifest, int configuration, const std::string& hash,
           std::size_t min_length, unsigned workers) {
            AnalyzeOptions options;
            options.configuration = configuration;
            options.hash_algorithm = algo_or_throw(hash);
            options.strings.min_length = min_length;
            options.workers = workers;
            const AnalyzeResult result = analyze_case(parse_case_manifest(manifest), options);
            return render_json(result.report);
        },
        py::arg("manifest"), py::arg("configuration") = 3, py::arg("hash") = "sha256",
        py::arg("min_length") = 4, py::arg("workers") = 1);

    m.def(
        "analyze_manifest",
        [](const std::string& manifest, int configuration, const std::string& out_dir,
           const std::string& hash, std::size_t min_length, unsigned workers) {
            AnalyzeOptions options;
            options.configuration = configuration;
            options.hash_algorithm = algo_or_throw(hash);
            options.strings.min_length = min_length;
            options.workers = workers;
            const AnalyzeResult result = analyze_case(parse_case_manifest(manifest), options);
            if (!out_dir.empty()) {
                write_report_files(result.report, out_dir);
            }
            return render_json(result.report);
        },
        py::arg("manifest"), py::arg("configuration") = 3, py::arg("out_dir") = "",
        py::arg("hash") = "sha256", py::arg("min_length") = 4, py::arg("workers") = 1);

    m.def(
        "generate_scenario",
        [](const std::string& out_dir, std::uint64_t seed, const std::string& backdoor_name,
           const std::string& backdoor_dir, const std::string& persistence_file,
           std::uint16_t c2_port, std::size_t benign_file_count,
           std::size_t session_packet_count) {
            ScenarioSpec spec;
            spec.seed = seed;
            spec.backdoor_name = backdoor_name;
            spec.backdoor_dir = backdoor_dir;
            spec.persistence_file = persistence_file;
            spec.c2_port = c2_port;
            spec.benign_file_count = benign_file_count;
            spec.session_packet_count = session_packet_count;
            const GroundTruthManifest truth = generate_scenario(spec, out_dir);
            ordered_json j{{"seed", truth.seed},
                           {"backdoor_name", truth.backdoor_name},
                           {"backdoor_path", truth.backdoor_path},
                           {"persistence_file", truth.persistence_file},
                           {"c2_port", truth.c2_port},
                           {"root", truth.root.string()},
                           {"case_manifest", truth.case_manifest.string()},
                           {"ground_truth", truth.ground_truth.string()}};
            return j.dump();
        },
        py::arg("out_dir"), py::arg("seed") = 1, py::arg("backdoor_name") = "iSmartAlarmShell",
        py::arg("backdoor_dir") = "/sbin", py::arg("persistence_file") = "/etc_ro/rcS",
        py::arg("c2_port") = 8888, py::arg("benign_file_count") = 40,
        py::arg("session_packet_count") = 200);
}
