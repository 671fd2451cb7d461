#include "stitcher/analyze.hpp"
#include "stitcher/errors.hpp"
#include "stitcher/manifest.hpp"
#include "stitcher/scenario.hpp"
#include "stitcher/util.hpp"
#include "stitcher/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace stitcher;

namespace {

bool color_enabled() {
    return ::isatty(STDERR_FILENO) != 0 && std::getenv("STITCHER_NO_COLOR") == nullptr;
}

std::string bold(const std::string& s) {
    return color_enabled() ? "\x1b[1m" + s + "\x1b[0m" : s;
}

struct AnalyzeArgs {
    std::string manifest;
    std::string firmware, pcap, processes;
    std::string baseline_firmware, baseline_pcap, baseline_processes;
    std::string case_id;
    std::string out = ".";
    std::string hash = "sha256";
    int configuration = 3;
    std::size_t strings_min_len = 4;
    unsigned workers = 0; // 0 = pick from hardware
};

int run_analyze(const AnalyzeArgs& args, const CLI::App& analyze_cmd) {
    CaseBundle bundle;
    if (!args.manifest.empty()) {
        bundle = parse_case_manifest(args.manifest);
    }
    // Command-line paths are cwd-relative; pin them down so they do not
    // re-resolve against the manifest directory.
    const auto override_path = [](std::optional<std::string>& slot, const std::string& value) {
        if (!value.empty()) {
            slot = fs::absolute(value).string();
        }
    };
    override_path(bundle.firmware, args.firmware);
    override_path(bundle.capture, args.pcap);
    override_path(bundle.processes, args.processes);
    override_path(bundle.baseline_firmware, args.baseline_firmware);
    override_path(bundle.baseline_capture, args.baseline_pcap);
    override_path(bundle.baseline_processes, args.baseline_processes);
    if (!args.case_id.empty()) {
        bundle.case_id = args.case_id;
    }
    if (!bundle.firmware && !bundle.capture && !bundle.processes) {
        throw UsageError("no evidence given; pass --manifest or at least one of "
                         "--firmware/--pcap/--processes\n\n" +
                         analyze_cmd.help());
    }

    AnalyzeOptions options;
    options.configuration = args.configuration;
    const std::optional<HashAlgorithm> algo = hash_algorithm_from_string(args.hash);
    if (!algo) {
        throw UsageError("--hash must be sha256, sha1, or md5 (got '" + args.hash + "')");
    }
    options.hash_algorithm = *algo;
    options.strings.min_length = args.strings_min_len;
    options.workers = args.workers != 0
                          ? args.workers
                          : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

    const AnalyzeResult result = analyze_case(bundle, options);
    const ReportPaths paths = write_report_files(result.report, args.out);

    std::string summary = "case " + result.report.case_id + ": ";
    if (result.report.port_string_findings || result.report.process_file_findings) {
        const std::size_t ports = result.report.port_string_findings
                                      ? result.report.port_string_findings->size()
                                      : 0;
        const std::size_t procs = result.report.process_file_findings
                                      ? result.report.process_file_findings->size()
                                      : 0;
        summary += std::to_string(ports) + " port finding(s), " + std::to_string(procs) +
                   " process finding(s)";
        if (result.report.baseline_diff) {
            summary += result.report.baseline_diff->empty()
                           ? ", no deviation from baseline"
                           : ", baseline deviations present";
        }
    } else {
        summary += "statistics only (configuration 1)";
    }
    std::cerr << bold(summary) << "\n";

    std::cout << paths.json_path.string() << "\n" << paths.text_path.string() << "\n";
    return 0;
}

struct GenArgs {
    ScenarioSpec spec;
    std::string out;
};

int run_gen(const GenArgs& args) {
    const GroundTruthManifest truth = generate_scenario(args.spec, args.out);
    std::cerr << bold("scenario written to " + truth.root.string()) << "\n";
    std::cout << truth.case_manifest.string() << "\n" << truth.ground_truth.string() << "\n";
    return 0;
}

int run_classify(const std::string& kind_name) {
    const std::optional<EvidenceKind> kind = evidence_kind_from_string(kind_name);
    if (!kind) {
        throw UsageError("unknown evidence kind '" + kind_name +
                         "'; expected firmware_image, network_capture, or system_processes");
    }
    const ClassificationLabel label = classify_evidence(*kind);
    std::cout << kind_name << "\n";
    std::string codes = "  ISO/IEC 27050-1: ";
    for (std::size_t i = 0; i < label.iso27050_codes.size(); ++i) {
        if (i > 0) {
            codes += "; ";
        }
        codes += label.iso27050_codes[i].code + " " + label.iso27050_codes[i].title;
    }
    std::cout << codes << "\n";
    std::cout << "  ISO/IEC 30141: " << label.iso30141_code.code << " "
              << label.iso30141_code.title << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stitcher: correlates firmware, capture, and process evidence from one device"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "ingest a case, correlate, and write the report");
    analyze_cmd->add_option("--manifest", analyze_args.manifest,
                            "case manifest file (key: value lines)");
    analyze_cmd->add_option("--firmware", analyze_args.firmware,
                            "firmware image: directory tree or tar archive");
    analyze_cmd->add_option("--pcap", analyze_args.pcap, "network capture (classic pcap)");
    analyze_cmd->add_option("--processes", analyze_args.processes, "ps-style process listing");
    analyze_cmd->add_option("--baseline-firmware", analyze_args.baseline_firmware,
                            "known-good firmware image");
    analyze_cmd->add_option("--baseline-pcap", analyze_args.baseline_pcap,
                            "known-good network capture");
    analyze_cmd->add_option("--baseline-processes", analyze_args.baseline_processes,
                            "known-good process listing");
    analyze_cmd->add_option("--case-id", analyze_args.case_id, "override the manifest case id");
    analyze_cmd->add_option("--config", analyze_args.configuration,
                            "1 = statistics, 2 = + correlation, 3 = + classification/report")
        ->check(CLI::Range(1, 3));
    analyze_cmd->add_option("--out", analyze_args.out, "output directory for report files");
    analyze_cmd->add_option("--hash", analyze_args.hash, "digest algorithm: sha256|sha1|md5");
    analyze_cmd->add_option("--strings-min-len", analyze_args.strings_min_len,
                            "minimum printable-run length for string extraction");
    analyze_cmd->add_option("--workers", analyze_args.workers,
                            "firmware ingestion threads (0 = auto)");

    GenArgs gen_args;
    CLI::App* gen_cmd =
        app.add_subcommand("gen-scenario", "write a synthetic compromised-device case");
    gen_cmd->add_option("--out", gen_args.out, "output directory")->required();
    gen_cmd->add_option("--seed", gen_args.spec.seed, "generator seed");
    gen_cmd->add_option("--c2-port", gen_args.spec.c2_port, "backdoor listener port");
    gen_cmd->add_option("--backdoor-name", gen_args.spec.backdoor_name, "planted process/file name");
    gen_cmd->add_option("--backdoor-dir", gen_args.spec.backdoor_dir,
                        "device directory receiving the backdoor");
    gen_cmd->add_option("--persistence-file", gen_args.spec.persistence_file,
                        "init script modified for persistence");
    gen_cmd->add_option("--benign-files", gen_args.spec.benign_file_count,
                        "generated benign file count");
    gen_cmd->add_option("--session-packets", gen_args.spec.session_packet_count,
                        "backdoor session packet count");

    std::string classify_kind;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "print the standards mapping for an evidence kind");
    classify_cmd->add_option("kind", classify_kind,
                             "firmware_image | network_capture | system_processes")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are exit 1, help/version exit 0
    }

    try {
        if (analyze_cmd->parsed()) {
            return run_analyze(analyze_args, *analyze_cmd);
        }
        if (gen_cmd->parsed()) {
            return run_gen(gen_args);
        }
        if (classify_cmd->parsed()) {
            return run_classify(classify_kind);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
