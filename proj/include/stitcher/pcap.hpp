#pragma once

#include "stitcher/model.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace stitcher {

enum class ByteOrder { Big, Little };
enum class TsResolution { Micro, Nano };

/// Classic libpcap global header. `magic` holds the first four file bytes
/// read big-endian, so a little-endian microsecond capture reports
/// 0xD4C3B2A1 and its byte-swapped twin reports 0xA1B2C3D4.
struct PcapFileHeader {
    std::uint32_t magic = 0;
    std::uint16_t version_major = 0;
    std::uint16_t version_minor = 0;
    std::uint32_t snaplen = 0;
    std::uint32_t linktype = 0;
    ByteOrder byte_order = ByteOrder::Little;
    TsResolution ts_resolution = TsResolution::Micro;

    bool operator==(const PcapFileHeader&) const = default;
};

struct PacketRecord {
    std::uint32_t ts_seconds = 0;
    std::uint32_t ts_fraction = 0; // micro or nano per header
    std::uint32_t captured_len = 0;
    std::uint32_t original_len = 0;
    std::vector<std::uint8_t> payload;

    bool operator==(const PacketRecord&) const = default;
};

struct Capture {
    PcapFileHeader header;
    std::vector<PacketRecord> records;
    std::vector<std::string> notes; // truncation and similar caveats
};

/// Decodes the global header and streams records in file order. Throws
/// IngestError for non-pcap input (pcapng gets its own message); a
/// truncated tail yields the records before it plus a note.
Capture read_capture(std::span<const std::uint8_t> bytes);

struct EthernetInfo {
    std::array<std::uint8_t, 6> dst_mac{};
    std::array<std::uint8_t, 6> src_mac{};
    std::uint16_t ethertype = 0; // after any 802.1Q tags

    bool operator==(const EthernetInfo&) const = default;
};

struct Ipv4Info {
    std::array<std::uint8_t, 4> src{};
    std::array<std::uint8_t, 4> dst{};
    std::uint8_t protocol = 0;

    bool operator==(const Ipv4Info&) const = default;
};

struct Ipv6Info {
    std::array<std::uint8_t, 16> src{};
    std::array<std::uint8_t, 16> dst{};
    std::uint8_t next_header = 0;

    bool operator==(const Ipv6Info&) const = default;
};

struct TransportInfo {
    enum class Kind { Tcp, Udp };
    Kind kind = Kind::Tcp;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;

    bool operator==(const TransportInfo&) const = default;
};

struct DecodedPacket {
    EthernetInfo link;
    std::optional<std::variant<Ipv4Info, Ipv6Info>> net;
    std::optional<TransportInfo> transport;

    bool operator==(const DecodedPacket&) const = default;
};

/// Outcome of decoding one record: either a packet or an error reason.
struct DecodeResult {
    std::optional<DecodedPacket> packet;
    std::string error; // empty on success

    bool ok() const { return packet.has_value(); }
};

/// Ethernet -> optional 802.1Q skip -> IPv4/IPv6 -> TCP/UDP ports.
/// Non-IP frames and later IPv4 fragments decode with net/transport
/// absent; short or malformed headers come back as errors, never throws.
DecodeResult decode_packet(const PacketRecord& record, std::uint32_t linktype);

/// Full capture pipeline: destination-port counts, top destination port
/// (smallest among maxima; ties flagged), packet and error tallies.
NetworkArtifacts extract_ports(std::span<const std::uint8_t> bytes);
NetworkArtifacts extract_ports_file(const std::filesystem::path& p);

} // namespace stitcher
