#include "stitcher/serialize.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/hashing.hpp"

#include <charconv>

namespace stitcher {

namespace {

template <typename T> std::string enum_name(T v) { return std::string(to_string(v)); }

HashAlgorithm parse_hash_algorithm(const std::string& name) {
    const std::optional<HashAlgorithm> algo = hash_algorithm_from_string(name);
    if (!algo) {
        throw Error("unknown hash algorithm in report: " + name);
    }
    return *algo;
}

EvidenceKind parse_evidence_kind(const std::string& name) {
    const std::optional<EvidenceKind> kind = evidence_kind_from_string(name);
    if (!kind) {
        throw Error("unknown evidence kind in report: " + name);
    }
    return *kind;
}

FileEntry::Kind parse_file_kind(const std::string& name) {
    const std::optional<FileEntry::Kind> kind = file_kind_from_string(name);
    if (!kind) {
        throw Error("unknown file kind in report: " + name);
    }
    return *kind;
}

ordered_json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& pairs,
                           const char* first_key, const char* second_key) {
    ordered_json arr = ordered_json::array();
    for (const auto& [a, b] : pairs) {
        ordered_json item;
        item[first_key] = a;
        item[second_key] = b;
        arr.push_back(std::move(item));
    }
    return arr;
}

std::vector<std::pair<std::string, std::string>>
pairs_from_json(const ordered_json& arr, const char* first_key, const char* second_key) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const ordered_json& item : arr) {
        out.emplace_back(item.at(first_key).get<std::string>(),
                         item.at(second_key).get<std::string>());
    }
    return out;
}

std::uint16_t parse_port_key(const std::string& key) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc() || ptr != key.data() + key.size() || value > 65535) {
        throw Error("bad port key in report: " + key);
    }
    return static_cast<std::uint16_t>(value);
}

} // namespace

void to_json(ordered_json& j, const IsoCode& v) {
    j = ordered_json{{"code", v.code}, {"title", v.title}};
}

void from_json(const ordered_json& j, IsoCode& v) {
    j.at("code").get_to(v.code);
    j.at("title").get_to(v.title);
}

void to_json(ordered_json& j, const ClassificationLabel& v) {
    j = ordered_json{{"iso27050", v.iso27050_codes}, {"iso30141", v.iso30141_code}};
}

void from_json(const ordered_json& j, ClassificationLabel& v) {
    j.at("iso27050").get_to(v.iso27050_codes);
    j.at("iso30141").get_to(v.iso30141_code);
}

void to_json(ordered_json& j, const FileEntry& v) {
    j = ordered_json{{"path", v.path},
                     {"name", v.name},
                     {"size_bytes", v.size_bytes},
                     {"digest", v.digest},
                     {"kind", enum_name(v.kind)}};
}

void from_json(const ordered_json& j, FileEntry& v) {
    j.at("path").get_to(v.path);
    j.at("name").get_to(v.name);
    j.at("size_bytes").get_to(v.size_bytes);
    j.at("digest").get_to(v.digest);
    v.kind = parse_file_kind(j.at("kind").get<std::string>());
}

void to_json(ordered_json& j, const FirmwareArtifacts& v) {
    ordered_json strings = ordered_json::object();
    for (const auto& [path, list] : v.f_strings) {
        strings[path] = list;
    }
    ordered_json hashes = ordered_json::object();
    for (const auto& [path, digest] : v.fh_list) {
        hashes[path] = digest;
    }
    j = ordered_json{{"hash_algorithm", enum_name(v.hash_algorithm)},
                     {"fd_list", v.fd_list},
                     {"f_list", v.f_list},
                     {"fh_list", std::move(hashes)},
                     {"f_strings", std::move(strings)},
                     {"skipped_entries", v.skipped_entries},
                     {"read_failures", v.read_failures},
                     {"string_cap_paths", v.string_cap_paths}};
}

void from_json(const ordered_json& j, FirmwareArtifacts& v) {
    v.hash_algorithm = parse_hash_algorithm(j.at("hash_algorithm").get<std::string>());
    j.at("fd_list").get_to(v.fd_list);
    j.at("f_list").get_to(v.f_list);
    v.fh_list.clear();
    for (const auto& [path, digest] : j.at("fh_list").items()) {
        v.fh_list[path] = digest.get<std::string>();
    }
    v.f_strings.clear();
    for (const auto& [path, list] : j.at("f_strings").items()) {
        v.f_strings[path] = list.get<std::vector<std::string>>();
    }
    j.at("skipped_entries").get_to(v.skipped_entries);
    j.at("read_failures").get_to(v.read_failures);
    j.at("string_cap_paths").get_to(v.string_cap_paths);
}

void to_json(ordered_json& j, const NetworkArtifacts& v) {
    ordered_json ports = ordered_json::object();
    for (const auto& [port, count] : v.dp_list) {
        ports[std::to_string(port)] = count;
    }
    j = ordered_json{{"dp_list", std::move(ports)},
                     {"td_port_tied", v.td_port_tied},
                     {"packet_total", v.packet_total},
                     {"portless_packets", v.portless_packets},
                     {"decode_errors", v.decode_errors},
                     {"notes", v.notes}};
    if (v.td_port) {
        j["td_port"] = *v.td_port;
    }
}

void from_json(const ordered_json& j, NetworkArtifacts& v) {
    v.dp_list.clear();
    for (const auto& [key, count] : j.at("dp_list").items()) {
        v.dp_list[parse_port_key(key)] = count.get<std::uint64_t>();
    }
    v.td_port = j.contains("td_port")
                    ? std::optional<std::uint16_t>(j.at("td_port").get<std::uint16_t>())
                    : std::nullopt;
    j.at("td_port_tied").get_to(v.td_port_tied);
    j.at("packet_total").get_to(v.packet_total);
    j.at("portless_packets").get_to(v.portless_packets);
    j.at("decode_errors").get_to(v.decode_errors);
    j.at("notes").get_to(v.notes);
}

void to_json(ordered_json& j, const ProcessEntry& v) {
    j = ordered_json{{"pid", v.pid},
                     {"command_name", v.command_name},
                     {"raw_line", v.raw_line},
                     {"kernel_thread", v.kernel_thread}};
}

void from_json(const ordered_json& j, ProcessEntry& v) {
    j.at("pid").get_to(v.pid);
    j.at("command_name").get_to(v.command_name);
    j.at("raw_line").get_to(v.raw_line);
    j.at("kernel_thread").get_to(v.kernel_thread);
}

void to_json(ordered_json& j, const RejectedLine& v) {
    j = ordered_json{{"line", v.line}, {"reason", v.reason}};
}

void from_json(const ordered_json& j, RejectedLine& v) {
    j.at("line").get_to(v.line);
    j.at("reason").get_to(v.reason);
}

void to_json(ordered_json& j, const ProcessArtifacts& v) {
    j = ordered_json{{"p_list", v.p_list}, {"rejects", v.rejects}};
    if (v.header_line) {
        j["header_line"] = *v.header_line;
    }
}

void from_json(const ordered_json& j, ProcessArtifacts& v) {
    j.at("p_list").get_to(v.p_list);
    j.at("rejects").get_to(v.rejects);
    v.header_line = j.contains("header_line")
                        ? std::optional<std::string>(j.at("header_line").get<std::string>())
                        : std::nullopt;
}

void to_json(ordered_json& j, const PortStringFinding& v) {
    j = ordered_json{{"port", v.port},
                     {"matching_files", pairs_to_json(v.matching_files, "path", "string")}};
}

void from_json(const ordered_json& j, PortStringFinding& v) {
    j.at("port").get_to(v.port);
    v.matching_files = pairs_from_json(j.at("matching_files"), "path", "string");
}

void to_json(ordered_json& j, const ProcessFileFinding& v) {
    j = ordered_json{{"process_name", v.process_name},
                     {"file_matches", v.file_matches},
                     {"string_matches", pairs_to_json(v.string_matches, "path", "string")}};
}

void from_json(const ordered_json& j, ProcessFileFinding& v) {
    j.at("process_name").get_to(v.process_name);
    j.at("file_matches").get_to(v.file_matches);
    v.string_matches = pairs_from_json(j.at("string_matches"), "path", "string");
}

void to_json(ordered_json& j, const SetDiff& v) {
    j = ordered_json{{"added", v.added}, {"removed", v.removed}};
}

void from_json(const ordered_json& j, SetDiff& v) {
    j.at("added").get_to(v.added);
    j.at("removed").get_to(v.removed);
}

void to_json(ordered_json& j, const PortSetDiff& v) {
    j = ordered_json{{"added", v.added}, {"removed", v.removed}};
}

void from_json(const ordered_json& j, PortSetDiff& v) {
    j.at("added").get_to(v.added);
    j.at("removed").get_to(v.removed);
}

void to_json(ordered_json& j, const HashMismatch& v) {
    j = ordered_json{{"path", v.path},
                     {"evidence_digest", v.evidence_digest},
                     {"baseline_digest", v.baseline_digest}};
}

void from_json(const ordered_json& j, HashMismatch& v) {
    j.at("path").get_to(v.path);
    j.at("evidence_digest").get_to(v.evidence_digest);
    j.at("baseline_digest").get_to(v.baseline_digest);
}

void to_json(ordered_json& j, const BaselineDiff& v) {
    j = ordered_json::object();
    if (v.p_diff) {
        j["p_diff"] = *v.p_diff;
    }
    if (v.f_diff) {
        j["f_diff"] = *v.f_diff;
    }
    if (v.fh_diff) {
        j["fh_diff"] = *v.fh_diff;
    }
    if (v.dp_diff) {
        j["dp_diff"] = *v.dp_diff;
    }
    j["notes"] = v.notes;
}

void from_json(const ordered_json& j, BaselineDiff& v) {
    v.p_diff = j.contains("p_diff") ? std::optional<SetDiff>(j.at("p_diff").get<SetDiff>())
                                    : std::nullopt;
    v.f_diff = j.contains("f_diff") ? std::optional<SetDiff>(j.at("f_diff").get<SetDiff>())
                                    : std::nullopt;
    v.fh_diff = j.contains("fh_diff") ? std::optional<std::vector<HashMismatch>>(
                                            j.at("fh_diff").get<std::vector<HashMismatch>>())
                                      : std::nullopt;
    v.dp_diff = j.contains("dp_diff")
                    ? std::optional<PortSetDiff>(j.at("dp_diff").get<PortSetDiff>())
                    : std::nullopt;
    j.at("notes").get_to(v.notes);
}

void to_json(ordered_json& j, const SourceSection& v) {
    j = ordered_json{{"role", v.role}, {"kind", enum_name(v.kind)}, {"path", v.path}};
    if (v.classification) {
        j["classification"] = *v.classification;
    }
    ordered_json details = ordered_json::object();
    for (const auto& [key, value] : v.details) {
        details[key] = value;
    }
    j["details"] = std::move(details);
    j["notes"] = v.notes;
}

void from_json(const ordered_json& j, SourceSection& v) {
    j.at("role").get_to(v.role);
    v.kind = parse_evidence_kind(j.at("kind").get<std::string>());
    j.at("path").get_to(v.path);
    v.classification = j.contains("classification")
                           ? std::optional<ClassificationLabel>(
                                 j.at("classification").get<ClassificationLabel>())
                           : std::nullopt;
    v.details.clear();
    for (const auto& [key, value] : j.at("details").items()) {
        v.details.emplace_back(key, value.get<std::string>());
    }
    j.at("notes").get_to(v.notes);
}

void to_json(ordered_json& j, const Report& v) {
    j = ordered_json{{"report_version", v.report_version},
                     {"case_id", v.case_id},
                     {"created_at", v.created_at},
                     {"tool_version", v.tool_version},
                     {"configuration", v.configuration},
                     {"sources", v.sources}};
    if (v.port_string_findings) {
        j["port_string_findings"] = *v.port_string_findings;
    }
    if (v.process_file_findings) {
        j["process_file_findings"] = *v.process_file_findings;
    }
    if (v.baseline_diff) {
        j["baseline_diff"] = *v.baseline_diff;
    }
    if (v.narrative) {
        j["narrative"] = *v.narrative;
    }
    j["notes"] = v.notes;
}

void from_json(const ordered_json& j, Report& v) {
    j.at("report_version").get_to(v.report_version);
    j.at("case_id").get_to(v.case_id);
    j.at("created_at").get_to(v.created_at);
    j.at("tool_version").get_to(v.tool_version);
    j.at("configuration").get_to(v.configuration);
    j.at("sources").get_to(v.sources);
    v.port_string_findings =
        j.contains("port_string_findings")
            ? std::optional<std::vector<PortStringFinding>>(
                  j.at("port_string_findings").get<std::vector<PortStringFinding>>())
            : std::nullopt;
    v.process_file_findings =
        j.contains("process_file_findings")
            ? std::optional<std::vector<ProcessFileFinding>>(
                  j.at("process_file_findings").get<std::vector<ProcessFileFinding>>())
            : std::nullopt;
    v.baseline_diff = j.contains("baseline_diff")
                          ? std::optional<BaselineDiff>(j.at("baseline_diff").get<BaselineDiff>())
                          : std::nullopt;
    v.narrative = j.contains("narrative")
                      ? std::optional<std::string>(j.at("narrative").get<std::string>())
                      : std::nullopt;
    j.at("notes").get_to(v.notes);
}

} // namespace stitcher
