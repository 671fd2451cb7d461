#include "stitcher/manifest.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/util.hpp"

namespace fs = std::filesystem;

namespace stitcher {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) {
        ++b;
    }
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

} // namespace

std::map<std::string, std::string> read_key_value_file(const fs::path& p) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(p);
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());

    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    for (const std::string& raw : split_lines(text)) {
        ++line_no;
        const std::string line = trim(lossy_utf8(raw));
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw IngestError(p.string() + ":" + std::to_string(line_no) +
                              ": expected 'key: value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, colon));
        if (key.empty()) {
            throw IngestError(p.string() + ":" + std::to_string(line_no) + ": empty key");
        }
        out[key] = trim(std::string_view(line).substr(colon + 1));
    }
    return out;
}

CaseBundle parse_case_manifest(const fs::path& p) {
    const std::map<std::string, std::string> kv = read_key_value_file(p);

    CaseBundle bundle;
    bundle.base_dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    for (const auto& [key, value] : kv) {
        if (key == "manifest_version") {
            if (value != "1") {
                throw UsageError(p.string() + ": unsupported manifest_version '" + value + "'");
            }
        } else if (key == "case_id") {
            bundle.case_id = value;
        } else if (key == "created_at") {
            bundle.created_at = value;
        } else if (key == "firmware") {
            bundle.firmware = value;
        } else if (key == "capture") {
            bundle.capture = value;
        } else if (key == "processes") {
            bundle.processes = value;
        } else if (key == "baseline_firmware") {
            bundle.baseline_firmware = value;
        } else if (key == "baseline_capture") {
            bundle.baseline_capture = value;
        } else if (key == "baseline_processes") {
            bundle.baseline_processes = value;
        } else {
            throw UsageError(p.string() + ": unknown manifest key '" + key + "'");
        }
    }
    return bundle;
}

void write_case_manifest(const CaseBundle& bundle, const fs::path& p) {
    std::string text = "manifest_version: 1\n";
    text += "case_id: " + bundle.case_id + "\n";
    if (!bundle.created_at.empty()) {
        text += "created_at: " + bundle.created_at + "\n";
    }
    const auto field = [&text](const char* key, const std::optional<std::string>& value) {
        if (value) {
            text += std::string(key) + ": " + *value + "\n";
        }
    };
    field("firmware", bundle.firmware);
    field("capture", bundle.capture);
    field("processes", bundle.processes);
    field("baseline_firmware", bundle.baseline_firmware);
    field("baseline_capture", bundle.baseline_capture);
    field("baseline_processes", bundle.baseline_processes);
    atomic_write_file(p, text);
}

} // namespace stitcher
