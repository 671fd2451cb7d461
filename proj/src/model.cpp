#include "stitcher/model.hpp"

#include "stitcher/util.hpp"

namespace stitcher {

std::string_view to_string(EvidenceKind kind) {
    switch (kind) {
    case EvidenceKind::FirmwareImage: return "firmware_image";
    case EvidenceKind::NetworkCapture: return "network_capture";
    case EvidenceKind::SystemProcesses: return "system_processes";
    }
    return "firmware_image";
}

std::optional<EvidenceKind> evidence_kind_from_string(std::string_view name) {
    if (name == "firmware_image") return EvidenceKind::FirmwareImage;
    if (name == "network_capture") return EvidenceKind::NetworkCapture;
    if (name == "system_processes") return EvidenceKind::SystemProcesses;
    return std::nullopt;
}

std::string_view to_string(FileEntry::Kind kind) {
    switch (kind) {
    case FileEntry::Kind::Regular: return "regular";
    case FileEntry::Kind::Symlink: return "symlink";
    case FileEntry::Kind::Special: return "special";
    }
    return "regular";
}

std::optional<FileEntry::Kind> file_kind_from_string(std::string_view name) {
    if (name == "regular") return FileEntry::Kind::Regular;
    if (name == "symlink") return FileEntry::Kind::Symlink;
    if (name == "special") return FileEntry::Kind::Special;
    return std::nullopt;
}

ClassificationLabel classify_evidence(EvidenceKind kind) {
    const IsoCode active{"7.2.2", "Active data"};
    const IsoCode inactive{"7.2.3", "Inactive data"};
    const IsoCode custodian{"7.3.2", "Custodian data source"};
    const IsoCode non_custodian{"7.3.3", "Non-custodian data source"};
    const IsoCode native{"7.4.2", "Native format"};

    switch (kind) {
    case EvidenceKind::FirmwareImage:
        return {{active, custodian, native}, {"8.2.3.9", "Data store"}};
    case EvidenceKind::NetworkCapture:
        return {{inactive, non_custodian, native}, {"8.2.3.8", "Network"}};
    case EvidenceKind::SystemProcesses:
        return {{active, custodian, native}, {"8.2.3.5", "Service"}};
    }
    return {{active, custodian, native}, {"8.2.3.9", "Data store"}};
}

std::filesystem::path CaseBundle::resolve(const std::string& p) const {
    std::filesystem::path fp(p);
    if (fp.is_absolute())
        return fp;
    return base_dir / fp;
}

std::vector<ValidationFinding> validate_bundle(const CaseBundle& bundle) {
    std::vector<ValidationFinding> findings;

    if (!bundle.firmware && !bundle.capture && !bundle.processes)
        findings.push_back({"sources", "no evidence sources"});

    if (bundle.baseline_firmware && !bundle.firmware)
        findings.push_back({"baseline_firmware", "orphan baseline: firmware"});
    if (bundle.baseline_capture && !bundle.capture)
        findings.push_back({"baseline_capture", "orphan baseline: capture"});
    if (bundle.baseline_processes && !bundle.processes)
        findings.push_back({"baseline_processes", "orphan baseline: processes"});

    if (bundle.case_id.empty())
        findings.push_back({"case_id", "case_id must be non-empty"});
    if (!is_iso_utc(bundle.created_at))
        findings.push_back(
            {"created_at", "created_at must be UTC ISO-8601 (YYYY-MM-DDTHH:MM:SSZ)"});

    return findings;
}

} // namespace stitcher
