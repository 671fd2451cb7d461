#include "stitcher/pcap.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/util.hpp"

#include <algorithm>
#include <cstring>

namespace stitcher {

namespace {

constexpr std::uint32_t kMagicBeMicro = 0xA1B2C3D4;
constexpr std::uint32_t kMagicLeMicro = 0xD4C3B2A1;
constexpr std::uint32_t kMagicBeNano = 0xA1B23C4D;
constexpr std::uint32_t kMagicLeNano = 0x4D3CB2A1;
constexpr std::uint32_t kMagicPcapng = 0x0A0D0D0A;

constexpr std::size_t kFileHeaderLen = 24;
constexpr std::size_t kRecordHeaderLen = 16;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off, ByteOrder order) {
    if (order == ByteOrder::Big) {
        return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
    }
    return static_cast<std::uint16_t>((b[off + 1] << 8) | b[off]);
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off, ByteOrder order) {
    if (order == ByteOrder::Big) {
        return (static_cast<std::uint32_t>(b[off]) << 24) |
               (static_cast<std::uint32_t>(b[off + 1]) << 16) |
               (static_cast<std::uint32_t>(b[off + 2]) << 8) |
               static_cast<std::uint32_t>(b[off + 3]);
    }
    return (static_cast<std::uint32_t>(b[off + 3]) << 24) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           static_cast<std::uint32_t>(b[off]);
}

std::uint16_t net_u16(std::span<const std::uint8_t> b, std::size_t off) {
    return read_u16(b, off, ByteOrder::Big);
}

constexpr std::uint16_t kEthertypeIpv4 = 0x0800;
constexpr std::uint16_t kEthertypeIpv6 = 0x86DD;
constexpr std::uint16_t kEthertypeVlan = 0x8100;
constexpr std::uint16_t kEthertypeQinQ = 0x88A8;

constexpr std::uint8_t kProtoTcp = 6;
constexpr std::uint8_t kProtoUdp = 17;

DecodeResult fail(std::string reason) {
    DecodeResult r;
    r.error = std::move(reason);
    return r;
}

/// Reads src/dst ports from the start of a TCP or UDP header.
bool read_ports(std::span<const std::uint8_t> b, std::size_t off, std::uint8_t proto,
                TransportInfo& out) {
    if (off + 4 > b.size()) {
        return false;
    }
    out.kind = proto == kProtoTcp ? TransportInfo::Kind::Tcp : TransportInfo::Kind::Udp;
    out.src_port = net_u16(b, off);
    out.dst_port = net_u16(b, off + 2);
    return true;
}

} // namespace

Capture read_capture(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 4 && read_u32(bytes, 0, ByteOrder::Big) == kMagicPcapng) {
        throw IngestError("pcapng input is not supported; convert to classic pcap");
    }
    if (bytes.size() < kFileHeaderLen) {
        throw IngestError("capture too short for pcap header (" +
                          std::to_string(bytes.size()) + " bytes)");
    }

    Capture cap;
    cap.header.magic = read_u32(bytes, 0, ByteOrder::Big);
    switch (cap.header.magic) {
    case kMagicBeMicro:
        cap.header.byte_order = ByteOrder::Big;
        cap.header.ts_resolution = TsResolution::Micro;
        break;
    case kMagicLeMicro:
        cap.header.byte_order = ByteOrder::Little;
        cap.header.ts_resolution = TsResolution::Micro;
        break;
    case kMagicBeNano:
        cap.header.byte_order = ByteOrder::Big;
        cap.header.ts_resolution = TsResolution::Nano;
        break;
    case kMagicLeNano:
        cap.header.byte_order = ByteOrder::Little;
        cap.header.ts_resolution = TsResolution::Nano;
        break;
    default:
        throw IngestError("unrecognized pcap magic 0x" +
                          to_hex(std::span<const std::uint8_t>(bytes.data(), 4)));
    }

    const ByteOrder order = cap.header.byte_order;
    cap.header.version_major = read_u16(bytes, 4, order);
    cap.header.version_minor = read_u16(bytes, 6, order);
    // bytes 8..15: thiszone and sigfigs, both unused in practice
    cap.header.snaplen = read_u32(bytes, 16, order);
    cap.header.linktype = read_u32(bytes, 20, order);

    std::size_t off = kFileHeaderLen;
    while (off < bytes.size()) {
        if (off + kRecordHeaderLen > bytes.size()) {
            cap.notes.push_back("truncated record header at offset " + std::to_string(off) +
                                "; dropped trailing " + std::to_string(bytes.size() - off) +
                                " bytes");
            break;
        }
        PacketRecord rec;
        rec.ts_seconds = read_u32(bytes, off, order);
        rec.ts_fraction = read_u32(bytes, off + 4, order);
        rec.captured_len = read_u32(bytes, off + 8, order);
        rec.original_len = read_u32(bytes, off + 12, order);
        off += kRecordHeaderLen;
        if (rec.captured_len > bytes.size() - off) {
            cap.notes.push_back("truncated packet data at offset " + std::to_string(off) +
                                "; record claims " + std::to_string(rec.captured_len) +
                                " bytes but only " + std::to_string(bytes.size() - off) +
                                " remain");
            break;
        }
        rec.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(off),
                           bytes.begin() + static_cast<std::ptrdiff_t>(off + rec.captured_len));
        off += rec.captured_len;
        cap.records.push_back(std::move(rec));
    }
    return cap;
}

DecodeResult decode_packet(const PacketRecord& record, std::uint32_t linktype) {
    if (linktype != 1) {
        return fail("unsupported linktype " + std::to_string(linktype));
    }
    std::span<const std::uint8_t> b(record.payload);
    if (b.size() < 14) {
        return fail("short ethernet frame (" + std::to_string(b.size()) + " bytes)");
    }

    DecodedPacket pkt;
    std::copy_n(b.begin(), 6, pkt.link.dst_mac.begin());
    std::copy_n(b.begin() + 6, 6, pkt.link.src_mac.begin());

    std::size_t off = 12;
    std::uint16_t ethertype = net_u16(b, off);
    off += 2;
    // Skip 802.1Q / 802.1ad tags: 2-byte TCI, then the inner ethertype.
    while (ethertype == kEthertypeVlan || ethertype == kEthertypeQinQ) {
        if (off + 4 > b.size()) {
            return fail("short vlan tag");
        }
        ethertype = net_u16(b, off + 2);
        off += 4;
    }
    pkt.link.ethertype = ethertype;

    if (ethertype == kEthertypeIpv4) {
        if (off + 20 > b.size()) {
            return fail("short ipv4 header");
        }
        const std::uint8_t version = b[off] >> 4;
        if (version != 4) {
            return fail("bad ipv4 version " + std::to_string(version));
        }
        const std::size_t ihl = static_cast<std::size_t>(b[off] & 0x0F) * 4;
        if (ihl < 20) {
            return fail("bad ipv4 ihl " + std::to_string(ihl));
        }
        if (off + ihl > b.size()) {
            return fail("ipv4 options exceed captured data");
        }
        Ipv4Info ip;
        ip.protocol = b[off + 9];
        std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(off + 12), 4, ip.src.begin());
        std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(off + 16), 4, ip.dst.begin());
        pkt.net = ip;

        const std::uint16_t frag_offset = net_u16(b, off + 6) & 0x1FFF;
        if (frag_offset != 0) {
            // Later fragment: no transport header present.
            return DecodeResult{pkt, {}};
        }
        if (ip.protocol == kProtoTcp || ip.protocol == kProtoUdp) {
            TransportInfo t;
            if (!read_ports(b, off + ihl, ip.protocol, t)) {
                return fail("short transport header");
            }
            pkt.transport = t;
        }
        return DecodeResult{pkt, {}};
    }

    if (ethertype == kEthertypeIpv6) {
        if (off + 40 > b.size()) {
            return fail("short ipv6 header");
        }
        if ((b[off] >> 4) != 6) {
            return fail("bad ipv6 version " + std::to_string(b[off] >> 4));
        }
        Ipv6Info ip;
        std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(off + 8), 16, ip.src.begin());
        std::copy_n(b.begin() + static_cast<std::ptrdiff_t>(off + 24), 16, ip.dst.begin());
        std::uint8_t next = b[off + 6];
        std::size_t pos = off + 40;

        // Walk the common extension-header chain, bounded to stay sane on
        // crafted input.
        for (int hops = 0; hops < 8; ++hops) {
            if (next == kProtoTcp || next == kProtoUdp) {
                break;
            }
            if (next == 0 || next == 43 || next == 60) { // hop-by-hop, routing, dest opts
                if (pos + 2 > b.size()) {
                    return fail("short ipv6 extension header");
                }
                const std::size_t ext_len = (static_cast<std::size_t>(b[pos + 1]) + 1) * 8;
                next = b[pos];
                if (pos + ext_len > b.size()) {
                    return fail("ipv6 extension header exceeds captured data");
                }
                pos += ext_len;
                continue;
            }
            if (next == 44) { // fragment header, fixed 8 bytes
                if (pos + 8 > b.size()) {
                    return fail("short ipv6 fragment header");
                }
                const std::uint16_t frag_offset =
                    static_cast<std::uint16_t>(net_u16(b, pos + 2) >> 3);
                const std::uint8_t inner = b[pos];
                pos += 8;
                if (frag_offset != 0) {
                    ip.next_header = inner;
                    pkt.net = ip;
                    return DecodeResult{pkt, {}};
                }
                next = inner;
                continue;
            }
            // Unknown or non-transport protocol: no ports to extract.
            ip.next_header = next;
            pkt.net = ip;
            return DecodeResult{pkt, {}};
        }

        ip.next_header = next;
        pkt.net = ip;
        if (next == kProtoTcp || next == kProtoUdp) {
            TransportInfo t;
            if (!read_ports(b, pos, next, t)) {
                return fail("short transport header");
            }
            pkt.transport = t;
        }
        return DecodeResult{pkt, {}};
    }

    // ARP and anything else non-IP: decodes fine, just carries no ports.
    return DecodeResult{pkt, {}};
}

NetworkArtifacts extract_ports(std::span<const std::uint8_t> bytes) {
    const Capture cap = read_capture(bytes);

    NetworkArtifacts art;
    art.notes = cap.notes;
    for (const PacketRecord& rec : cap.records) {
        ++art.packet_total;
        const DecodeResult res = decode_packet(rec, cap.header.linktype);
        if (!res.ok()) {
            ++art.decode_errors;
            continue;
        }
        if (!res.packet->transport.has_value()) {
            ++art.portless_packets;
            continue;
        }
        ++art.dp_list[res.packet->transport->dst_port];
    }

    // Top destination port: highest count wins, smallest port breaks ties.
    std::uint64_t best = 0;
    for (const auto& [port, count] : art.dp_list) {
        if (count > best) {
            best = count;
            art.td_port = port;
            art.td_port_tied = false;
        } else if (count == best && art.td_port.has_value()) {
            art.td_port_tied = true;
        }
    }
    return art;
}

NetworkArtifacts extract_ports_file(const std::filesystem::path& p) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(p);
    return extract_ports(std::span<const std::uint8_t>(bytes));
}

} // namespace stitcher
