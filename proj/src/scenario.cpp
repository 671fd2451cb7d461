#include "stitcher/scenario.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/manifest.hpp"
#include "stitcher/util.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace stitcher {

namespace {

// Benign daemons present in both process listings; the scenario leans on
// them (and matching firmware files) to prove the correlation conjunction
// rejects half-matches.
const std::vector<std::string> kDaemonNames = {"init",     "mtdblockd", "cubeoned", "telnetd",
                                               "watchdog", "dropbear",  "syslogd",  "klogd"};

std::uint64_t draw(std::mt19937& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n; // modulo keeps output stable across platforms
}

/// A benign string is safe when it cannot correlate: no capture port as a
/// maximal digit run, no listed process name as a substring.
bool benign_string_safe(const std::string& s, const std::vector<std::string>& port_runs,
                        const std::vector<std::string>& process_names) {
    for (const std::string& run : port_runs) {
        if (contains_digit_run(s, run)) {
            return false;
        }
    }
    for (const std::string& name : process_names) {
        if (s.find(name) != std::string::npos) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> build_safe_pool(const std::vector<std::string>& port_runs,
                                         const std::vector<std::string>& process_names) {
    std::vector<std::string> pool = {
        "configuration loaded from flash",
        "device bootstrap complete",
        "flash partition table verified",
        "usage: %s [options] target",
        "cannot open control socket",
        "lease renewal scheduled",
        "segment alignment check passed",
        "css and js assets bundled",
        "memory pool reserved",
        "event queue flushed",
        "uplink negotiation finished",
        "crc table generated",
        "locale data packed",
        "session token rotated",
    };
    // Near-miss port mentions: digit runs that merely contain a live port
    // must not correlate under the maximal-run rule.
    for (const std::string& run : port_runs) {
        pool.push_back("inert reference value 1" + run + "0");
    }
    std::erase_if(pool, [&](const std::string& s) {
        return !benign_string_safe(s, port_runs, process_names);
    });
    return pool;
}

// Noise bytes are drawn from non-printable values only, so noise can never
// form an extractable string.
std::vector<std::uint8_t> noise_table() {
    std::vector<std::uint8_t> table;
    for (int b = 0; b < 256; ++b) {
        const bool printable = (b >= 0x20 && b <= 0x7E) || b == 0x09;
        if (!printable) {
            table.push_back(static_cast<std::uint8_t>(b));
        }
    }
    return table;
}

void append_noise(std::vector<std::uint8_t>& out, std::mt19937& rng, std::size_t len) {
    static const std::vector<std::uint8_t> table = noise_table();
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(table[draw(rng, table.size())]);
    }
}

/// Binary-like blob: noise segments with the given strings embedded, each
/// NUL-terminated as a compiler would lay them out.
std::vector<std::uint8_t> build_blob(std::mt19937& rng, const std::vector<std::string>& strings,
                                     std::size_t base_len) {
    std::vector<std::uint8_t> out;
    append_noise(out, rng, 16 + draw(rng, base_len / 2 + 1));
    for (const std::string& s : strings) {
        out.insert(out.end(), s.begin(), s.end());
        out.push_back(0);
        append_noise(out, rng, 8 + draw(rng, base_len / 4 + 1));
    }
    append_noise(out, rng, base_len / 2);
    return out;
}

// ---------------------------------------------------------------------------
// Capture synthesis
// ---------------------------------------------------------------------------

void put_u16be(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

std::uint16_t ipv4_checksum(std::span<const std::uint8_t> header) {
    std::uint32_t sum = 0;
    for (std::size_t i = 0; i + 1 < header.size(); i += 2) {
        sum += static_cast<std::uint32_t>(header[i] << 8) | header[i + 1];
    }
    while (sum >> 16) {
        sum = (sum & 0xFFFF) + (sum >> 16);
    }
    return static_cast<std::uint16_t>(~sum);
}

struct FlowPacket {
    std::array<std::uint8_t, 4> src_ip{};
    std::array<std::uint8_t, 4> dst_ip{};
    std::uint8_t src_mac_tail = 0;
    std::uint8_t dst_mac_tail = 0;
    bool udp = false;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::size_t payload_len = 0;
};

std::vector<std::uint8_t> build_frame(const FlowPacket& p, std::uint16_t ip_id) {
    std::vector<std::uint8_t> frame;
    const std::array<std::uint8_t, 5> mac_prefix = {0x02, 0x00, 0x00, 0x00, 0x00};
    frame.insert(frame.end(), mac_prefix.begin(), mac_prefix.end());
    frame.push_back(p.dst_mac_tail);
    frame.insert(frame.end(), mac_prefix.begin(), mac_prefix.end());
    frame.push_back(p.src_mac_tail);
    put_u16be(frame, 0x0800);

    const std::size_t l4_len = p.udp ? 8 : 20;
    const std::size_t ip_start = frame.size();
    frame.push_back(0x45); // version 4, ihl 5
    frame.push_back(0x00);
    put_u16be(frame, static_cast<std::uint16_t>(20 + l4_len + p.payload_len));
    put_u16be(frame, ip_id);
    put_u16be(frame, 0x0000); // no fragmentation
    frame.push_back(64);      // ttl
    frame.push_back(p.udp ? 17 : 6);
    put_u16be(frame, 0); // checksum placeholder
    frame.insert(frame.end(), p.src_ip.begin(), p.src_ip.end());
    frame.insert(frame.end(), p.dst_ip.begin(), p.dst_ip.end());
    const std::uint16_t csum =
        ipv4_checksum(std::span<const std::uint8_t>(frame.data() + ip_start, 20));
    frame[ip_start + 10] = static_cast<std::uint8_t>(csum >> 8);
    frame[ip_start + 11] = static_cast<std::uint8_t>(csum & 0xFF);

    if (p.udp) {
        put_u16be(frame, p.src_port);
        put_u16be(frame, p.dst_port);
        put_u16be(frame, static_cast<std::uint16_t>(8 + p.payload_len));
        put_u16be(frame, 0); // checksum optional in IPv4
    } else {
        put_u16be(frame, p.src_port);
        put_u16be(frame, p.dst_port);
        put_u32le(frame, 0); // seq (value irrelevant downstream)
        put_u32le(frame, 0); // ack
        frame.push_back(0x50); // data offset 5
        frame.push_back(0x18); // PSH|ACK
        put_u16be(frame, 0x2000);
        put_u16be(frame, 0); // checksum left zero
        put_u16be(frame, 0); // urgent
    }
    frame.insert(frame.end(), p.payload_len, 0xCC);
    return frame;
}

std::vector<std::uint8_t> render_pcap(const std::vector<std::vector<std::uint8_t>>& frames) {
    std::vector<std::uint8_t> out;
    put_u32le(out, 0xA1B2C3D4); // little-endian microsecond capture
    put_u16le(out, 2);
    put_u16le(out, 4);
    put_u32le(out, 0);     // thiszone
    put_u32le(out, 0);     // sigfigs
    put_u32le(out, 65535); // snaplen
    put_u32le(out, 1);     // ethernet
    std::uint32_t ts_sec = 1700000000;
    std::uint32_t ts_usec = 0;
    for (const std::vector<std::uint8_t>& frame : frames) {
        put_u32le(out, ts_sec);
        put_u32le(out, ts_usec);
        put_u32le(out, static_cast<std::uint32_t>(frame.size()));
        put_u32le(out, static_cast<std::uint32_t>(frame.size()));
        out.insert(out.end(), frame.begin(), frame.end());
        ts_usec += 137000;
        if (ts_usec >= 1000000) {
            ts_usec -= 1000000;
            ++ts_sec;
        }
    }
    return out;
}

constexpr std::array<std::uint8_t, 4> kDeviceIp = {192, 168, 1, 50};
constexpr std::array<std::uint8_t, 4> kAttackerIp = {192, 168, 1, 99};

/// Device-out background flows toward well-known service ports; one-way so
/// no ephemeral reply ports pollute the destination-port set.
void append_background(std::vector<std::vector<std::uint8_t>>& frames, std::mt19937& rng,
                       const std::vector<std::uint16_t>& ports, std::size_t base_count,
                       std::uint16_t& ip_id) {
    for (std::size_t pi = 0; pi < ports.size(); ++pi) {
        const std::size_t count = base_count + (ports.size() - 1 - pi); // distinct, no td ties
        for (std::size_t i = 0; i < count; ++i) {
            FlowPacket p;
            p.src_ip = kDeviceIp;
            p.dst_ip = {10, 0, 0, static_cast<std::uint8_t>(pi + 1)};
            p.src_mac_tail = 0x01;
            p.dst_mac_tail = 0x03;
            p.udp = ports[pi] == 53;
            p.src_port = static_cast<std::uint16_t>(40000 + draw(rng, 20000));
            p.dst_port = ports[pi];
            p.payload_len = draw(rng, 64);
            frames.push_back(build_frame(p, ip_id++));
        }
    }
}

void append_session(std::vector<std::vector<std::uint8_t>>& frames, std::mt19937& rng,
                    std::uint16_t c2_port, std::size_t count, std::uint16_t& ip_id) {
    const std::uint16_t attacker_port = static_cast<std::uint16_t>(40000 + draw(rng, 20000));
    for (std::size_t i = 0; i < count; ++i) {
        FlowPacket p;
        p.src_ip = kAttackerIp;
        p.dst_ip = kDeviceIp;
        p.src_mac_tail = 0x02;
        p.dst_mac_tail = 0x01;
        p.udp = false;
        p.src_port = attacker_port;
        p.dst_port = c2_port;
        p.payload_len = draw(rng, 33);
        frames.push_back(build_frame(p, ip_id++));
    }
}

// ---------------------------------------------------------------------------
// Tree writing
// ---------------------------------------------------------------------------

struct PlannedFile {
    std::string path; // device-rooted
    std::vector<std::uint8_t> bytes;
};

void write_planned(const fs::path& root, const std::string& logical,
                   std::span<const std::uint8_t> bytes) {
    const fs::path target = root / fs::path(logical.substr(1));
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) {
        throw IngestError("cannot create " + target.parent_path().string() + ": " +
                          ec.message());
    }
    atomic_write_file(target,
                      std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                       bytes.size()));
}

void write_symlink(const fs::path& root, const std::string& logical,
                   const std::string& target) {
    const fs::path link = root / fs::path(logical.substr(1));
    std::error_code ec;
    fs::create_directories(link.parent_path(), ec);
    if (ec) {
        throw IngestError("cannot create " + link.parent_path().string() + ": " + ec.message());
    }
    fs::remove(link, ec);
    fs::create_symlink(target, link, ec);
    if (ec) {
        throw IngestError("cannot create symlink " + link.string() + ": " + ec.message());
    }
}

std::string text_bytes(const std::vector<std::string>& lines) {
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

std::uint64_t parse_u64(const std::map<std::string, std::string>& kv, const std::string& key,
                        const fs::path& file) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        throw IngestError(file.string() + ": missing key '" + key + "'");
    }
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(it->second.data(),
                                           it->second.data() + it->second.size(), v);
    if (ec != std::errc() || ptr != it->second.data() + it->second.size()) {
        throw IngestError(file.string() + ": bad numeric value for '" + key + "'");
    }
    return v;
}

std::string require_key(const std::map<std::string, std::string>& kv, const std::string& key,
                        const fs::path& file) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        throw IngestError(file.string() + ": missing key '" + key + "'");
    }
    return it->second;
}

} // namespace

GroundTruthManifest generate_scenario(const ScenarioSpec& spec, const fs::path& out_dir) {
    if (spec.c2_port == 0) {
        throw UsageError("c2_port must be in 1..65535");
    }
    if (spec.benign_file_count == 0 || spec.session_packet_count == 0) {
        throw UsageError("benign_file_count and session_packet_count must be positive");
    }
    if (spec.backdoor_name.empty() || spec.backdoor_name.find('/') != std::string::npos) {
        throw UsageError("backdoor_name must be a non-empty file name");
    }
    if (spec.backdoor_dir.empty() || spec.backdoor_dir.front() != '/') {
        throw UsageError("backdoor_dir must be an absolute device path");
    }
    if (spec.persistence_file.empty() || spec.persistence_file.front() != '/') {
        throw UsageError("persistence_file must be an absolute device path");
    }
    if (std::find(kDaemonNames.begin(), kDaemonNames.end(), spec.backdoor_name) !=
        kDaemonNames.end()) {
        throw UsageError("backdoor_name collides with a built-in benign process name");
    }
    const std::string backdoor_path =
        (spec.backdoor_dir == "/" ? "" : spec.backdoor_dir) + "/" + spec.backdoor_name;
    if (backdoor_path == spec.persistence_file) {
        throw UsageError("persistence_file must differ from the backdoor path");
    }

    std::mt19937 rng(static_cast<std::mt19937::result_type>(spec.seed));

    // Live capture ports decide which digit runs benign strings must avoid.
    std::vector<std::uint16_t> background_ports;
    for (const std::uint16_t port : {80, 443, 53}) {
        if (port != spec.c2_port) {
            background_ports.push_back(port);
        }
    }
    std::vector<std::string> port_runs;
    for (const std::uint16_t port : background_ports) {
        port_runs.push_back(std::to_string(port));
    }
    port_runs.push_back(std::to_string(spec.c2_port));

    std::vector<std::string> process_names = kDaemonNames;
    process_names.push_back(spec.backdoor_name);

    const std::vector<std::string> pool = build_safe_pool(port_runs, process_names);
    const auto pick_strings = [&](std::size_t max_count) {
        std::vector<std::string> picked;
        if (pool.empty()) {
            return picked;
        }
        const std::size_t count = draw(rng, max_count + 1);
        for (std::size_t i = 0; i < count; ++i) {
            picked.push_back(pool[draw(rng, pool.size())]);
        }
        return picked;
    };

    // --- plan the common (clean) tree -------------------------------------
    std::vector<PlannedFile> common;
    const auto plan_blob = [&](const std::string& path, std::vector<std::string> strings,
                               std::size_t base_len) {
        common.push_back({path, build_blob(rng, strings, base_len)});
    };

    plan_blob("/bin/busybox", pick_strings(4), 900);
    plan_blob("/sbin/init", {}, 400);      // deliberately stringless: half-match bait
    plan_blob("/sbin/cubeoned", {}, 500);  // running daemon, file present, no strings
    plan_blob("/usr/sbin/telnetd", pick_strings(3), 500);
    plan_blob("/usr/sbin/dropbear", pick_strings(3), 700);
    plan_blob("/sbin/watchdog", pick_strings(2), 300);
    plan_blob("/sbin/syslogd", pick_strings(2), 300);
    plan_blob("/sbin/klogd", pick_strings(2), 300);
    plan_blob("/lib/libuClibc.so", pick_strings(4), 1100);
    plan_blob("/lib/libgcc_s.so", pick_strings(3), 800);

    const auto plan_text = [&](const std::string& path, std::vector<std::string> lines) {
        std::erase_if(lines, [&](const std::string& s) {
            return !benign_string_safe(s, port_runs, process_names);
        });
        const std::string body = text_bytes(lines);
        common.push_back({path, std::vector<std::uint8_t>(body.begin(), body.end())});
    };
    plan_text("/etc_ro/passwd", {"root::0:0:root:/root:/bin/ash"});
    plan_text("/www/index.html", {"<html><body>status panel</body></html>"});

    const std::vector<std::string> noise_dirs = {"/bin", "/lib", "/usr/bin",
                                                 "/usr/lib", "/var", "/www", "/etc_ro"};
    const std::vector<std::string> noise_stems = {"data", "mod", "cfg", "res", "blk"};
    const std::vector<std::string> noise_exts = {".bin", ".so", ".dat", ""};
    std::set<std::string> used_paths;
    for (const PlannedFile& f : common) {
        used_paths.insert(f.path);
    }
    for (std::size_t i = 0; i < spec.benign_file_count; ++i) {
        std::string name = noise_stems[i % noise_stems.size()] + "_" + std::to_string(i) +
                           noise_exts[i % noise_exts.size()];
        if (name == spec.backdoor_name) {
            name = "n_" + name;
        }
        const std::string path = noise_dirs[i % noise_dirs.size()] + "/" + name;
        if (!used_paths.insert(path).second) {
            continue; // stem/dir cycle repeats only past several hundred files
        }
        common.push_back({path, build_blob(rng, pick_strings(4), 100 + draw(rng, 1200))});
    }

    // Clean persistence script; the compromised twin appends the backdoor
    // launch line, which is the planted fh_diff/string evidence.
    std::vector<std::string> persistence_lines = {"#!/bin/sh", "mount -a",
                                                  "hostname alarm-hub", "ifconfig lan0 up"};
    std::erase_if(persistence_lines, [&](const std::string& s) {
        return !benign_string_safe(s, port_runs, process_names);
    });
    const std::string persistence_clean = text_bytes(persistence_lines);
    persistence_lines.push_back(backdoor_path + " &");
    const std::string persistence_compromised = text_bytes(persistence_lines);

    const std::vector<std::string> backdoor_strings = {
        spec.backdoor_name,
        "bind shell on " + std::to_string(spec.c2_port),
        "/dev/console",
        "connection accepted",
        "GCC: (Buildroot) 4.9.4",
    };
    const std::vector<std::uint8_t> backdoor_bytes = build_blob(rng, backdoor_strings, 600);

    // --- process listings ---------------------------------------------------
    const std::vector<std::string> clean_ps = {
        "  PID USER       VSZ STAT COMMAND",
        "    1 root      1200 S    init",
        "   87 root         0 SW   [mtdblockd]",
        "  213 root      2104 S    /sbin/cubeoned",
        "  247 root      1468 S    /usr/sbin/telnetd",
        "  260 root      1120 S    watchdog",
        "  273 root      1984 S    dropbear",
        "  281 root       944 S    syslogd",
        "  282 root       952 S    klogd",
    };
    std::vector<std::string> compromised_ps = clean_ps;
    compromised_ps.push_back("  666 root       760 S    " + backdoor_path);

    // --- captures ------------------------------------------------------------
    const std::size_t bg_base =
        spec.session_packet_count >= 8
            ? spec.session_packet_count / 4
            : (spec.session_packet_count >= 4 ? 1 : 0);
    std::uint16_t ip_id = 1;
    std::vector<std::vector<std::uint8_t>> baseline_frames;
    if (bg_base > 0) {
        append_background(baseline_frames, rng, background_ports, bg_base, ip_id);
    }
    std::vector<std::vector<std::uint8_t>> evidence_frames;
    ip_id = 1;
    if (bg_base > 0) {
        append_background(evidence_frames, rng, background_ports, bg_base, ip_id);
    }
    append_session(evidence_frames, rng, spec.c2_port, spec.session_packet_count, ip_id);
    const std::vector<std::uint8_t> baseline_pcap = render_pcap(baseline_frames);
    const std::vector<std::uint8_t> evidence_pcap = render_pcap(evidence_frames);

    // --- write everything ----------------------------------------------------
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IngestError("cannot create output directory " + out_dir.string() + ": " +
                          ec.message());
    }
    const fs::path baseline_fw = out_dir / "baseline" / "firmware";
    const fs::path evidence_fw = out_dir / "evidence" / "firmware";
    for (const PlannedFile& f : common) {
        write_planned(baseline_fw, f.path, f.bytes);
        write_planned(evidence_fw, f.path, f.bytes);
    }
    const auto as_bytes = [](const std::string& s) {
        return std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()),
                                             s.size());
    };
    write_planned(baseline_fw, spec.persistence_file, as_bytes(persistence_clean));
    write_planned(evidence_fw, spec.persistence_file, as_bytes(persistence_compromised));
    write_planned(evidence_fw, backdoor_path, backdoor_bytes);
    write_symlink(baseline_fw, "/bin/sh", "busybox");
    write_symlink(evidence_fw, "/bin/sh", "busybox");

    atomic_write_file(out_dir / "baseline" / "processes.txt", text_bytes(clean_ps));
    atomic_write_file(out_dir / "evidence" / "processes.txt", text_bytes(compromised_ps));
    atomic_write_file(out_dir / "baseline" / "capture.pcap",
                      std::string_view(reinterpret_cast<const char*>(baseline_pcap.data()),
                                       baseline_pcap.size()));
    atomic_write_file(out_dir / "evidence" / "capture.pcap",
                      std::string_view(reinterpret_cast<const char*>(evidence_pcap.data()),
                                       evidence_pcap.size()));

    CaseBundle bundle;
    bundle.case_id = "scenario-" + std::to_string(spec.seed);
    bundle.created_at = "2024-01-01T00:00:00Z";
    bundle.firmware = "evidence/firmware";
    bundle.capture = "evidence/capture.pcap";
    bundle.processes = "evidence/processes.txt";
    bundle.baseline_firmware = "baseline/firmware";
    bundle.baseline_capture = "baseline/capture.pcap";
    bundle.baseline_processes = "baseline/processes.txt";
    bundle.base_dir = out_dir;
    write_case_manifest(bundle, out_dir / "case.manifest");

    GroundTruthManifest truth;
    truth.seed = spec.seed;
    truth.backdoor_name = spec.backdoor_name;
    truth.backdoor_path = backdoor_path;
    truth.persistence_file = spec.persistence_file;
    truth.c2_port = spec.c2_port;
    truth.root = out_dir;
    truth.case_manifest = out_dir / "case.manifest";
    truth.ground_truth = out_dir / "ground_truth.txt";

    std::string gt = "scenario_version: 1\n";
    gt += "seed: " + std::to_string(spec.seed) + "\n";
    gt += "backdoor_name: " + spec.backdoor_name + "\n";
    gt += "backdoor_path: " + backdoor_path + "\n";
    gt += "persistence_file: " + spec.persistence_file + "\n";
    gt += "c2_port: " + std::to_string(spec.c2_port) + "\n";
    gt += "injected_file: " + backdoor_path + "\n";
    gt += "injected_process: " + spec.backdoor_name + "\n";
    gt += "modified_file: " + spec.persistence_file + "\n";
    gt += "injected_port: " + std::to_string(spec.c2_port) + "\n";
    atomic_write_file(truth.ground_truth, gt);

    return truth;
}

GroundTruthManifest parse_ground_truth(const fs::path& file) {
    const std::map<std::string, std::string> kv = read_key_value_file(file);
    if (parse_u64(kv, "scenario_version", file) != 1) {
        throw IngestError(file.string() + ": unsupported scenario_version");
    }
    GroundTruthManifest truth;
    truth.seed = parse_u64(kv, "seed", file);
    truth.backdoor_name = require_key(kv, "backdoor_name", file);
    truth.backdoor_path = require_key(kv, "backdoor_path", file);
    truth.persistence_file = require_key(kv, "persistence_file", file);
    const std::uint64_t port = parse_u64(kv, "c2_port", file);
    if (port == 0 || port > 65535) {
        throw IngestError(file.string() + ": c2_port out of range");
    }
    truth.c2_port = static_cast<std::uint16_t>(port);
    truth.root = file.has_parent_path() ? file.parent_path() : fs::path(".");
    truth.case_manifest = truth.root / "case.manifest";
    truth.ground_truth = file;
    return truth;
}

} // namespace stitcher
