// Shared test scaffolding: temp directories, an independent pcap encoder,
// an independent ustar encoder, frame builders, and a subprocess runner.
//
// The encoders here are written from the wire formats directly so the tests
// never depend on the code they exercise to produce their own inputs.
#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

namespace fs = std::filesystem;

// ------------------------------------------------------------ filesystem ---

/// Self-cleaning temporary directory.
class TempDir {
  public:
    TempDir() {
        const fs::path base = fs::temp_directory_path();
        for (int attempt = 0; attempt < 100; ++attempt) {
            fs::path candidate = base / ("stitcher-test-" + random_suffix());
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path_ = std::move(candidate);
                return;
            }
        }
        throw std::runtime_error("could not create temp directory");
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }

    const fs::path& path() const { return path_; }

    fs::path operator/(const std::string& rel) const { return path_ / rel; }

  private:
    static std::string random_suffix() {
        static std::mt19937_64 rng{std::random_device{}()};
        std::string s;
        for (int i = 0; i < 12; ++i) {
            s += "abcdefghijklmnopqrstuvwxyz0123456789"[rng() % 36];
        }
        return s;
    }

    fs::path path_;
};

inline void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

inline void write_file(const fs::path& path, const std::string& text) {
    write_file(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

// ------------------------------------------------------------------ pcap ---

/// Byte-level classic pcap writer. `swapped` selects the byte order used for
/// every multi-byte field; `nano` selects the nanosecond-resolution magic.
class PcapWriter {
  public:
    explicit PcapWriter(bool swapped = false, bool nano = false, std::uint32_t linktype = 1)
        : swapped_(swapped) {
        // Magic written byte-by-byte: the file starts with A1 B2 C3 D4 when
        // the producer's fields are big-endian, D4 C3 B2 A1 when little.
        const std::uint32_t magic = nano ? 0xA1B23C4Du : 0xA1B2C3D4u;
        if (swapped_) {
            put_raw_be(magic);
        } else {
            put_raw_le(magic);
        }
        put_u16(2);
        put_u16(4);
        put_u32(0); // thiszone
        put_u32(0); // sigfigs
        put_u32(65535);
        put_u32(linktype);
    }

    void add_record(const std::vector<std::uint8_t>& frame, std::uint32_t ts_sec = 1700000000,
                    std::uint32_t ts_frac = 0, std::int64_t orig_len = -1) {
        put_u32(ts_sec);
        put_u32(ts_frac);
        put_u32(static_cast<std::uint32_t>(frame.size()));
        put_u32(orig_len < 0 ? static_cast<std::uint32_t>(frame.size())
                             : static_cast<std::uint32_t>(orig_len));
        buf_.insert(buf_.end(), frame.begin(), frame.end());
    }

    /// Append raw bytes verbatim (for truncation and fuzz tests).
    void add_raw(const std::vector<std::uint8_t>& bytes) {
        buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    }

    const std::vector<std::uint8_t>& bytes() const { return buf_; }

  private:
    void put_raw_le(std::uint32_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v));
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v >> 16));
        buf_.push_back(static_cast<std::uint8_t>(v >> 24));
    }

    void put_raw_be(std::uint32_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 24));
        buf_.push_back(static_cast<std::uint8_t>(v >> 16));
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v));
    }

    void put_u16(std::uint16_t v) {
        if (swapped_) {
            buf_.push_back(static_cast<std::uint8_t>(v >> 8));
            buf_.push_back(static_cast<std::uint8_t>(v));
        } else {
            buf_.push_back(static_cast<std::uint8_t>(v));
            buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        }
    }

    void put_u32(std::uint32_t v) {
        if (swapped_) {
            put_raw_be(v);
        } else {
            put_raw_le(v);
        }
    }

    bool swapped_;
    std::vector<std::uint8_t> buf_;
};

// ---------------------------------------------------------------- frames ---

using Bytes = std::vector<std::uint8_t>;

inline void push_u16be(Bytes& b, std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v >> 8));
    b.push_back(static_cast<std::uint8_t>(v));
}

inline void push_u32be(Bytes& b, std::uint32_t v) {
    b.push_back(static_cast<std::uint8_t>(v >> 24));
    b.push_back(static_cast<std::uint8_t>(v >> 16));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
    b.push_back(static_cast<std::uint8_t>(v));
}

/// Ethernet II frame around an arbitrary payload.
inline Bytes eth_frame(std::uint16_t ethertype, const Bytes& payload) {
    Bytes b;
    for (int i = 0; i < 6; ++i) b.push_back(0x02);
    for (int i = 0; i < 6; ++i) b.push_back(0x04);
    push_u16be(b, ethertype);
    b.insert(b.end(), payload.begin(), payload.end());
    return b;
}

/// Wrap an already-built Ethernet frame in one 802.1Q tag (or 802.1ad when
/// `qinq` is set, for the outer tag).
inline Bytes vlan_wrap(const Bytes& frame, std::uint16_t vlan_id = 42, bool qinq = false) {
    Bytes b(frame.begin(), frame.begin() + 12);
    push_u16be(b, qinq ? 0x88A8 : 0x8100);
    push_u16be(b, vlan_id);
    b.insert(b.end(), frame.begin() + 12, frame.end());
    return b;
}

inline Bytes tcp_segment(std::uint16_t sport, std::uint16_t dport, std::size_t payload_len = 4) {
    Bytes b;
    push_u16be(b, sport);
    push_u16be(b, dport);
    push_u32be(b, 1); // seq
    push_u32be(b, 1); // ack
    b.push_back(0x50); // data offset 5
    b.push_back(0x18); // PSH|ACK
    push_u16be(b, 4096);
    push_u16be(b, 0); // checksum (unchecked by the decoder)
    push_u16be(b, 0); // urgent
    b.insert(b.end(), payload_len, 0xAB);
    return b;
}

inline Bytes udp_datagram(std::uint16_t sport, std::uint16_t dport, std::size_t payload_len = 4) {
    Bytes b;
    push_u16be(b, sport);
    push_u16be(b, dport);
    push_u16be(b, static_cast<std::uint16_t>(8 + payload_len));
    push_u16be(b, 0);
    b.insert(b.end(), payload_len, 0xCD);
    return b;
}

/// IPv4 packet; `ihl_words` > 5 appends zeroed options, `frag_offset` is in
/// 8-byte units.
inline Bytes ipv4_packet(std::uint8_t protocol, const Bytes& transport, int ihl_words = 5,
                         std::uint16_t frag_offset = 0, bool more_fragments = false) {
    Bytes b;
    b.push_back(static_cast<std::uint8_t>(0x40 | ihl_words));
    b.push_back(0);
    const std::size_t header_len = static_cast<std::size_t>(ihl_words) * 4;
    push_u16be(b, static_cast<std::uint16_t>(header_len + transport.size()));
    push_u16be(b, 0x1234); // identification
    std::uint16_t flags_frag = frag_offset & 0x1FFF;
    if (more_fragments) flags_frag |= 0x2000;
    push_u16be(b, flags_frag);
    b.push_back(64); // ttl
    b.push_back(protocol);
    push_u16be(b, 0); // header checksum (unchecked by the decoder)
    push_u32be(b, 0xC0A80102); // 192.168.1.2
    push_u32be(b, 0x0A000001); // 10.0.0.1
    b.insert(b.end(), header_len - 20, 0x00);
    b.insert(b.end(), transport.begin(), transport.end());
    return b;
}

/// IPv6 packet with an optional chain of extension headers; each entry is
/// {next_header_of_this_ext, total_ext_len_bytes} and must be a multiple of 8.
struct Ipv6Ext {
    std::uint8_t type;
    std::vector<std::uint8_t> body; // full extension header bytes
};

inline Bytes ipv6_packet(std::uint8_t final_protocol, const Bytes& transport,
                         const std::vector<Ipv6Ext>& exts = {}) {
    Bytes b;
    push_u32be(b, 0x60000000);
    std::size_t payload_len = transport.size();
    for (const Ipv6Ext& e : exts) payload_len += e.body.size();
    push_u16be(b, static_cast<std::uint16_t>(payload_len));
    b.push_back(exts.empty() ? final_protocol : exts.front().type);
    b.push_back(64); // hop limit
    for (int i = 0; i < 15; ++i) b.push_back(0);
    b.push_back(1); // src ::1
    for (int i = 0; i < 15; ++i) b.push_back(0);
    b.push_back(2); // dst ::2
    for (const Ipv6Ext& e : exts) b.insert(b.end(), e.body.begin(), e.body.end());
    b.insert(b.end(), transport.begin(), transport.end());
    return b;
}

/// Hop-by-hop options header: 8 bytes, next-header + length 0 + padding.
inline Ipv6Ext hop_by_hop(std::uint8_t next) {
    Ipv6Ext e{0, {next, 0, 1, 4, 0, 0, 0, 0}};
    return e;
}

/// Fragment header (type 44); offset is in 8-byte units.
inline Ipv6Ext ipv6_fragment(std::uint8_t next, std::uint16_t offset_units,
                             bool more = false) {
    Ipv6Ext e{44, {}};
    e.body.push_back(next);
    e.body.push_back(0);
    std::uint16_t off_field = static_cast<std::uint16_t>(offset_units << 3);
    if (more) off_field |= 1;
    push_u16be(e.body, off_field);
    push_u32be(e.body, 0xDEADBEEF);
    return e;
}

/// Minimal ARP request frame.
inline Bytes arp_frame() {
    Bytes arp;
    push_u16be(arp, 1);      // hardware: ethernet
    push_u16be(arp, 0x0800); // protocol: ipv4
    arp.push_back(6);
    arp.push_back(4);
    push_u16be(arp, 1); // request
    arp.insert(arp.end(), 20, 0x00);
    return eth_frame(0x0806, arp);
}

// ------------------------------------------------------------------- tar ---

/// Byte-level ustar writer with pax and GNU long-name support.
class TarWriter {
  public:
    void add_file(const std::string& name, const std::string& data,
                  const std::string& mode = "0000644") {
        add_header(name, data.size(), '0', "", mode);
        add_data(data);
    }

    void add_dir(const std::string& name) { add_header(name, 0, '5', "", "0000755"); }

    void add_symlink(const std::string& name, const std::string& target) {
        add_header(name, 0, '2', target, "0000777");
    }

    void add_char_device(const std::string& name) { add_header(name, 0, '3', "", "0000644"); }

    /// pax extended header carrying explicit records, followed by a stub
    /// regular entry the records apply to.
    void add_pax_file(const std::string& long_name, const std::string& data) {
        std::string record = pax_record("path", long_name);
        add_header("./PaxHeaders/stub", record.size(), 'x', "", "0000644");
        add_data(record);
        add_file("stub", data);
    }

    /// GNU 'L' long-name entry followed by the real file entry.
    void add_gnu_long_file(const std::string& long_name, const std::string& data) {
        add_header("././@LongLink", long_name.size() + 1, 'L', "", "0000644");
        add_data(long_name + std::string(1, '\0'));
        add_file(long_name.substr(0, 100), data);
    }

    /// Header whose size field uses base-256 (high bit set) encoding.
    void add_file_base256_size(const std::string& name, const std::string& data) {
        std::vector<std::uint8_t> header = make_header(name, 0, '0', "", "0000644");
        header[124] = 0x80;
        std::uint64_t size = data.size();
        for (int i = 0; i < 8; ++i) {
            header[135 - i] = static_cast<std::uint8_t>(size >> (8 * i));
        }
        patch_checksum(header);
        append(header);
        add_data(data);
    }

    /// Header with a deliberately wrong checksum.
    void add_corrupt_header(const std::string& name) {
        std::vector<std::uint8_t> header = make_header(name, 0, '0', "", "0000644");
        patch_checksum(header);
        header[0] ^= 0xFF;
        append(header);
    }

    /// Terminate the archive with two zero blocks.
    std::vector<std::uint8_t> finish() const {
        std::vector<std::uint8_t> out = buf_;
        out.insert(out.end(), 1024, 0x00);
        return out;
    }

    /// Raw contents so far, without the terminating blocks.
    const std::vector<std::uint8_t>& raw() const { return buf_; }

    static std::string pax_record(const std::string& key, const std::string& value) {
        // "%d %s=%s\n" where the length covers the whole record including
        // the length digits themselves.
        const std::string tail = " " + key + "=" + value + "\n";
        std::size_t len = tail.size() + 1;
        while (std::to_string(len).size() + tail.size() != len) {
            len = std::to_string(len).size() + tail.size();
        }
        return std::to_string(len) + tail;
    }

  private:
    std::vector<std::uint8_t> make_header(const std::string& name, std::uint64_t size,
                                          char typeflag, const std::string& linkname,
                                          const std::string& mode) {
        std::vector<std::uint8_t> h(512, 0);
        std::memcpy(h.data(), name.data(), std::min<std::size_t>(name.size(), 100));
        std::memcpy(h.data() + 100, mode.data(), std::min<std::size_t>(mode.size(), 7));
        std::memcpy(h.data() + 108, "0000000", 7);
        std::memcpy(h.data() + 116, "0000000", 7);
        char size_field[13];
        std::snprintf(size_field, sizeof size_field, "%011llo",
                      static_cast<unsigned long long>(size));
        std::memcpy(h.data() + 124, size_field, 11);
        std::memcpy(h.data() + 136, "00000000000", 11);
        h[156] = static_cast<std::uint8_t>(typeflag);
        std::memcpy(h.data() + 157, linkname.data(),
                    std::min<std::size_t>(linkname.size(), 100));
        std::memcpy(h.data() + 257, "ustar", 5);
        h[263] = '0';
        h[264] = '0';
        return h;
    }

    static void patch_checksum(std::vector<std::uint8_t>& h) {
        std::memset(h.data() + 148, ' ', 8);
        unsigned sum = 0;
        for (std::uint8_t byte : h) sum += byte;
        char field[9];
        std::snprintf(field, sizeof field, "%06o", sum);
        std::memcpy(h.data() + 148, field, 6);
        h[154] = '\0';
        h[155] = ' ';
    }

    void add_header(const std::string& name, std::uint64_t size, char typeflag,
                    const std::string& linkname, const std::string& mode) {
        std::vector<std::uint8_t> h = make_header(name, size, typeflag, linkname, mode);
        patch_checksum(h);
        append(h);
    }

    void add_data(const std::string& data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
        const std::size_t rem = data.size() % 512;
        if (rem != 0) {
            buf_.insert(buf_.end(), 512 - rem, 0x00);
        }
    }

    void append(const std::vector<std::uint8_t>& block) {
        buf_.insert(buf_.end(), block.begin(), block.end());
    }

    std::vector<std::uint8_t> buf_;
};

// ------------------------------------------------------------ subprocess ---

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

/// Run a shell command, capturing stdout (append "2>&1" to merge stderr).
inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (pipe == nullptr) {
        result.output = "popen failed";
        return result;
    }
    char chunk[4096];
    std::size_t n = 0;
    while ((n = std::fread(chunk, 1, sizeof chunk, pipe)) > 0) {
        result.output.append(chunk, n);
    }
    const int status = ::pclose(pipe);
    if (status >= 0 && WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

/// Path to the command-line binary, provided by the test harness.
inline std::string cli_path() {
    const char* env = std::getenv("STITCHER_CLI");
    return env != nullptr ? env : "";
}

} // namespace testutil
