#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace stitcher {

/// Parameters of the synthetic compromised-device scenario. Defaults model
/// a consumer alarm hub with a bind shell planted in /sbin and persistence
/// via the read-only init script.
struct ScenarioSpec {
    std::uint64_t seed = 1;
    std::string backdoor_name = "iSmartAlarmShell";
    std::string backdoor_dir = "/sbin";
    std::string persistence_file = "/etc_ro/rcS";
    std::uint16_t c2_port = 8888;
    std::size_t benign_file_count = 40;
    std::size_t session_packet_count = 200;
};

/// What generate_scenario planted, for closure tests against pipeline
/// output.
struct GroundTruthManifest {
    int scenario_version = 1;
    std::uint64_t seed = 0;
    std::string backdoor_name;
    std::string backdoor_path;
    std::string persistence_file;
    std::uint16_t c2_port = 0;
    std::filesystem::path root;          // the out_dir
    std::filesystem::path case_manifest; // out_dir/case.manifest
    std::filesystem::path ground_truth;  // out_dir/ground_truth.txt
};

/// Writes baseline/ and evidence/ trees (firmware, ps listing, capture), a
/// case manifest wiring all six sources, and the ground-truth file. Byte
/// deterministic in the spec. Generated benign content is screened so no
/// benign string contains a capture port as a maximal digit run or any
/// listed process name as a substring — the planted artifacts are the only
/// correlation hits on default parameters. Throws UsageError on out-of-range
/// spec values, IngestError when out_dir cannot be written.
GroundTruthManifest generate_scenario(const ScenarioSpec& spec,
                                      const std::filesystem::path& out_dir);

/// Reads a ground_truth.txt written by generate_scenario.
GroundTruthManifest parse_ground_truth(const std::filesystem::path& file);

} // namespace stitcher
