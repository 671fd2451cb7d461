#pragma once

#include "stitcher/correlate.hpp"
#include "stitcher/model.hpp"
#include "stitcher/report.hpp"

#include <json.hpp>

namespace stitcher {

using ordered_json = nlohmann::ordered_json;

// JSON mappings for every report-schema type. Keys are inserted in a fixed
// order and absent optionals are omitted, so serialization is byte-stable.

void to_json(ordered_json& j, const IsoCode& v);
void from_json(const ordered_json& j, IsoCode& v);

void to_json(ordered_json& j, const ClassificationLabel& v);
void from_json(const ordered_json& j, ClassificationLabel& v);

void to_json(ordered_json& j, const FileEntry& v);
void from_json(const ordered_json& j, FileEntry& v);

void to_json(ordered_json& j, const FirmwareArtifacts& v);
void from_json(const ordered_json& j, FirmwareArtifacts& v);

void to_json(ordered_json& j, const NetworkArtifacts& v);
void from_json(const ordered_json& j, NetworkArtifacts& v);

void to_json(ordered_json& j, const ProcessEntry& v);
void from_json(const ordered_json& j, ProcessEntry& v);

void to_json(ordered_json& j, const RejectedLine& v);
void from_json(const ordered_json& j, RejectedLine& v);

void to_json(ordered_json& j, const ProcessArtifacts& v);
void from_json(const ordered_json& j, ProcessArtifacts& v);

void to_json(ordered_json& j, const PortStringFinding& v);
void from_json(const ordered_json& j, PortStringFinding& v);

void to_json(ordered_json& j, const ProcessFileFinding& v);
void from_json(const ordered_json& j, ProcessFileFinding& v);

void to_json(ordered_json& j, const SetDiff& v);
void from_json(const ordered_json& j, SetDiff& v);

void to_json(ordered_json& j, const PortSetDiff& v);
void from_json(const ordered_json& j, PortSetDiff& v);

void to_json(ordered_json& j, const HashMismatch& v);
void from_json(const ordered_json& j, HashMismatch& v);

void to_json(ordered_json& j, const BaselineDiff& v);
void from_json(const ordered_json& j, BaselineDiff& v);

void to_json(ordered_json& j, const SourceSection& v);
void from_json(const ordered_json& j, SourceSection& v);

void to_json(ordered_json& j, const Report& v);
void from_json(const ordered_json& j, Report& v);

} // namespace stitcher
