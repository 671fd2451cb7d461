#include "doctest.h"

#include "stitcher/errors.hpp"
#include "stitcher/firmware.hpp"
#include "stitcher/hashing.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace stitcher;
using testutil::TarWriter;
using testutil::TempDir;

// ----------------------------------------------------------- scan_strings ---

// Reference scanner: split the buffer on non-printable bytes, keep pieces of
// at least min_length. Written independently of the production scanner.
static std::vector<std::string> strings_oracle(const std::vector<std::uint8_t>& data,
                                               std::size_t min_length) {
    std::vector<std::string> out;
    std::string run;
    auto flush = [&] {
        if (run.size() >= min_length) out.push_back(run);
        run.clear();
    };
    for (std::uint8_t byte : data) {
        const bool printable = (byte >= 0x20 && byte <= 0x7E) || byte == '\t';
        if (printable) {
            run.push_back(static_cast<char>(byte));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

TEST_CASE("scan_strings basics") {
    std::string blob;
    blob += '\x01';
    blob += "two";
    blob += '\0';
    blob += "four";
    blob += '\0';
    blob += '\x7f';
    blob += "tab\tok";
    blob += '\0';
    blob += "sh";
    blob += '\0';
    const std::vector<std::uint8_t> data(blob.begin(), blob.end());
    StringsConfig config;
    const auto found = scan_strings(data, config);
    REQUIRE(found.size() == 2);
    CHECK(found[0] == "four");
    CHECK(found[1] == "tab\tok");
}

TEST_CASE("scan_strings honors min_length") {
    const std::string blob("ab\x00""abc\x00""abcd", 11);
    const std::vector<std::uint8_t> data(blob.begin(), blob.end());
    StringsConfig config;
    config.min_length = 3;
    const auto found = scan_strings(data, config);
    REQUIRE(found.size() == 2);
    CHECK(found[0] == "abc");
    CHECK(found[1] == "abcd");
}

TEST_CASE("scan_strings keeps duplicates in order of appearance") {
    std::string blob;
    for (const char* word : {"beta", "alfa", "beta"}) {
        blob += word;
        blob += '\0';
    }
    const std::vector<std::uint8_t> data(blob.begin(), blob.end());
    const auto found = scan_strings(data, StringsConfig{});
    REQUIRE(found.size() == 3);
    CHECK(found[0] == "beta");
    CHECK(found[1] == "alfa");
    CHECK(found[2] == "beta");
}

TEST_CASE("scan_strings stops at the per-file cap") {
    std::vector<std::uint8_t> data;
    for (int i = 0; i < 10; ++i) {
        for (char c : std::string("item")) data.push_back(static_cast<std::uint8_t>(c));
        data.push_back(0);
    }
    StringsConfig config;
    config.max_strings_per_file = 3;
    bool hit_cap = false;
    const auto found = scan_strings(data, config, &hit_cap);
    CHECK(found.size() == 3);
    CHECK(hit_cap);

    config.max_strings_per_file = 100;
    hit_cap = true;
    const auto all = scan_strings(data, config, &hit_cap);
    CHECK(all.size() == 10);
    CHECK_FALSE(hit_cap);
}

TEST_CASE("scan_strings matches the reference scanner on random buffers") {
    std::mt19937 rng(7777);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<std::uint8_t> data(rng() % 512);
        for (auto& byte : data) {
            // Bias toward printable bytes so runs actually form.
            byte = (rng() % 4 == 0) ? static_cast<std::uint8_t>(rng() % 256)
                                    : static_cast<std::uint8_t>(0x20 + rng() % 0x5F);
        }
        StringsConfig config;
        config.min_length = 1 + rng() % 6;
        CAPTURE(iter);
        CHECK(scan_strings(data, config) == strings_oracle(data, config.min_length));
    }
}

// ---------------------------------------------------------------- digests ---

TEST_CASE("empty-input digests match the published constants") {
    const std::span<const std::uint8_t> empty{};
    CHECK(digest_hex(HashAlgorithm::Sha256, empty) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(digest_hex(HashAlgorithm::Sha1, empty) ==
          "da39a3ee5e6b4b0d3255bfef95601890afd80709");
    CHECK(digest_hex(HashAlgorithm::Md5, empty) == "d41d8cd98f00b204e9800998ecf8427e");
}

TEST_CASE("known sha256 vector") {
    const std::string abc = "abc";
    const std::vector<std::uint8_t> data(abc.begin(), abc.end());
    CHECK(digest_hex(HashAlgorithm::Sha256, data) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

// --------------------------------------------------------- directory walk ---

TEST_CASE("directory tree enumeration") {
    TempDir tmp;
    const auto root = tmp / "fw";
    testutil::write_file(root / "etc/config", std::string("hostname=alarm\n"));
    testutil::write_file(root / "sbin/init", std::string("\x7F""ELF init binary", 16));
    testutil::write_file(root / "sbin/zz", std::string(""));
    std::filesystem::create_directories(root / "var/empty");
    std::filesystem::create_symlink("busybox", root / "sbin/sh");

    CHECK(detect_firmware_source(root) == FirmwareSource::DirectoryTree);
    const TreeListing listing = enumerate_tree(root, FirmwareSource::DirectoryTree);

    // Root plus every directory and file; symlinks appear in fd_list only.
    const std::vector<std::string> expected_fd = {
        "/", "/etc", "/etc/config", "/sbin", "/sbin/init", "/sbin/sh",
        "/sbin/zz", "/var", "/var/empty"};
    CHECK(listing.fd_list == expected_fd);

    REQUIRE(listing.entries.size() == 3);
    CHECK(listing.entries[0].path == "/etc/config");
    CHECK(listing.entries[1].path == "/sbin/init");
    CHECK(listing.entries[2].path == "/sbin/zz");
    CHECK(listing.entries[0].size_bytes == 15);

    REQUIRE(listing.skipped.size() == 1);
    CHECK(listing.skipped[0].find("symlink") != std::string::npos);
    CHECK(listing.skipped[0].find("/sbin/sh") != std::string::npos);

    // fd_list is sorted and duplicate-free.
    CHECK(std::is_sorted(listing.fd_list.begin(), listing.fd_list.end()));
    const std::set<std::string> unique(listing.fd_list.begin(), listing.fd_list.end());
    CHECK(unique.size() == listing.fd_list.size());
}

TEST_CASE("missing source path is an ingest error") {
    TempDir tmp;
    CHECK_THROWS_AS((void)detect_firmware_source(tmp / "nope"), IngestError);
}

// ------------------------------------------------------------ tar archive ---

static std::filesystem::path write_tar(const TempDir& tmp, const TarWriter& tar,
                                       const std::string& name = "fw.tar") {
    const auto path = tmp / name;
    testutil::write_file(path, tar.finish());
    return path;
}

TEST_CASE("plain ustar archive") {
    TempDir tmp;
    TarWriter tar;
    tar.add_dir("etc/");
    tar.add_file("etc/passwd", "root::0:0:root:/root:/bin/sh\n");
    tar.add_file("bin/busybox", std::string("\x7F""ELF\x00\x01", 6));
    tar.add_symlink("bin/sh", "busybox");
    const auto path = write_tar(tmp, tar);

    CHECK(detect_firmware_source(path) == FirmwareSource::TarArchive);
    const TreeListing listing = enumerate_tree(path, FirmwareSource::TarArchive);

    const std::vector<std::string> expected_fd = {"/", "/bin", "/bin/busybox", "/bin/sh",
                                                  "/etc", "/etc/passwd"};
    CHECK(listing.fd_list == expected_fd);
    REQUIRE(listing.entries.size() == 2);
    CHECK(listing.entries[0].path == "/bin/busybox");
    CHECK(listing.entries[1].path == "/etc/passwd");

    // Content round trip through the archive offsets.
    const auto content = load_entry(listing, listing.entries[1]);
    REQUIRE(content.has_value());
    CHECK(std::string(content->begin(), content->end()) ==
          "root::0:0:root:/root:/bin/sh\n");

    REQUIRE(listing.skipped.size() == 1);
    CHECK(listing.skipped[0].find("symlink") != std::string::npos);
}

TEST_CASE("parent directories are synthesized for deep entries") {
    TempDir tmp;
    TarWriter tar;
    tar.add_file("a/b/c/deep.txt", "x");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    const std::vector<std::string> expected = {"/", "/a", "/a/b", "/a/b/c", "/a/b/c/deep.txt"};
    CHECK(listing.fd_list == expected);
}

TEST_CASE("pax extended header overrides the entry path") {
    TempDir tmp;
    TarWriter tar;
    const std::string long_name(140, 'p');
    tar.add_pax_file("deep/" + long_name, "pax payload");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    REQUIRE(listing.entries.size() == 1);
    CHECK(listing.entries[0].path == "/deep/" + long_name);
    const auto content = load_entry(listing, listing.entries[0]);
    REQUIRE(content.has_value());
    CHECK(std::string(content->begin(), content->end()) == "pax payload");
}

TEST_CASE("gnu long-name entry overrides the entry path") {
    TempDir tmp;
    TarWriter tar;
    const std::string long_name = "usr/share/" + std::string(120, 'g') + "/file.conf";
    tar.add_gnu_long_file(long_name, "gnu payload");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    REQUIRE(listing.entries.size() == 1);
    CHECK(listing.entries[0].path == "/" + long_name);
}

TEST_CASE("base-256 size field is honored") {
    TempDir tmp;
    TarWriter tar;
    tar.add_file_base256_size("big.bin", "sixteen bytes!!!");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    REQUIRE(listing.entries.size() == 1);
    CHECK(listing.entries[0].size_bytes == 16);
    const auto content = load_entry(listing, listing.entries[0]);
    REQUIRE(content.has_value());
    CHECK(content->size() == 16);
}

TEST_CASE("device nodes are skipped with a note") {
    TempDir tmp;
    TarWriter tar;
    tar.add_char_device("dev/ttyS0");
    tar.add_file("bin/ok", "fine");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    REQUIRE(listing.entries.size() == 1);
    CHECK(listing.entries[0].path == "/bin/ok");
    REQUIRE_FALSE(listing.skipped.empty());
    CHECK(listing.skipped[0].find("/dev/ttyS0") != std::string::npos);
}

TEST_CASE("non-tar file is rejected up front") {
    TempDir tmp;
    const auto path = tmp / "junk.tar";
    testutil::write_file(path, std::string(2048, 'j'));
    CHECK_THROWS_WITH_AS((void)enumerate_tree(path, FirmwareSource::TarArchive),
                         doctest::Contains("not a tar archive"), IngestError);
}

TEST_CASE("corrupt header after valid entries is located by offset") {
    TempDir tmp;
    TarWriter tar;
    tar.add_file("fine.txt", "ok");
    tar.add_corrupt_header("broken.txt");
    const auto path = tmp / "fw.tar";
    testutil::write_file(path, tar.raw()); // no clean terminator
    CHECK_THROWS_WITH_AS((void)enumerate_tree(path, FirmwareSource::TarArchive),
                         doctest::Contains("corrupt tar header"), IngestError);
}

TEST_CASE("truncated member data is an ingest error") {
    TempDir tmp;
    TarWriter tar;
    tar.add_file("cut.bin", std::string(600, 'x'));
    std::vector<std::uint8_t> bytes = tar.finish();
    bytes.resize(512 + 100); // header plus a fragment of the first data block
    const auto path = tmp / "fw.tar";
    testutil::write_file(path, bytes);
    CHECK_THROWS_AS((void)enumerate_tree(path, FirmwareSource::TarArchive), IngestError);
}

TEST_CASE("path traversal entries are skipped, not admitted") {
    TempDir tmp;
    TarWriter tar;
    tar.add_file("../../etc/shadow", "evil");
    tar.add_file("etc/passwd", "root:x:0:0\n");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    REQUIRE(listing.entries.size() == 1);
    CHECK(listing.entries[0].path == "/etc/passwd");
    REQUIRE(listing.skipped.size() == 1);
    CHECK(listing.skipped[0].find("escapes root") != std::string::npos);
    CHECK(listing.skipped[0].find("../../etc/shadow") != std::string::npos);
}

TEST_CASE("interior dot-dot segments that stay inside the tree are allowed") {
    TempDir tmp;
    TarWriter tar;
    tar.add_file("a/../b.txt", "fine");
    const auto listing = enumerate_tree(write_tar(tmp, tar), FirmwareSource::TarArchive);
    REQUIRE(listing.entries.size() == 1);
    CHECK(listing.entries[0].path == "/b.txt");
}

// -------------------------------------------------------- process_firmware ---

TEST_CASE("firmware artifacts key sets are coherent") {
    TempDir tmp;
    const auto root = tmp / "fw";
    testutil::write_file(root / "etc/rcS", std::string("#!/bin/sh\ntelnetd &\n"));
    testutil::write_file(root / "bin/tool", std::string("\x01\x02helper strings\x00", 18));
    std::filesystem::create_symlink("tool", root / "bin/alias");

    const FirmwareArtifacts fw = process_firmware(root);

    CHECK(fw.hash_algorithm == HashAlgorithm::Sha256);
    REQUIRE(fw.f_list.size() == 2);
    std::set<std::string> paths;
    for (const FileEntry& e : fw.f_list) {
        paths.insert(e.path);
        CHECK(e.digest.size() == 64);
        CHECK(fw.fh_list.at(e.path) == e.digest);
        CHECK(fw.f_strings.count(e.path) == 1);
    }
    CHECK(fw.fh_list.size() == fw.f_list.size());
    CHECK(fw.f_strings.size() == fw.f_list.size());
    CHECK(paths == std::set<std::string>{"/bin/tool", "/etc/rcS"});
    CHECK(fw.skipped_entries == 1); // the symlink

    // fd_list covers strictly more than f_list.
    for (const auto& p : paths) {
        CHECK(std::find(fw.fd_list.begin(), fw.fd_list.end(), p) != fw.fd_list.end());
    }
    CHECK(std::find(fw.fd_list.begin(), fw.fd_list.end(), "/") != fw.fd_list.end());
}

TEST_CASE("per-file strings are sorted and unique") {
    TempDir tmp;
    const auto root = tmp / "fw";
    std::string blob;
    for (const char* word : {"zeta", "alpha", "zeta", "middle"}) {
        blob += word;
        blob += '\0';
    }
    testutil::write_file(root / "blob", blob);
    const FirmwareArtifacts fw = process_firmware(root);
    const auto& strings = fw.f_strings.at("/blob");
    const std::vector<std::string> expected = {"alpha", "middle", "zeta"};
    CHECK(strings == expected);
}

TEST_CASE("digest matches a direct hash of the content") {
    TempDir tmp;
    const auto root = tmp / "fw";
    const std::string content = "digest me precisely";
    testutil::write_file(root / "f.bin", content);
    const FirmwareArtifacts fw = process_firmware(root, HashAlgorithm::Md5);
    const std::vector<std::uint8_t> raw(content.begin(), content.end());
    CHECK(fw.hash_algorithm == HashAlgorithm::Md5);
    CHECK(fw.fh_list.at("/f.bin") == digest_hex(HashAlgorithm::Md5, raw));
}

TEST_CASE("worker count does not change the result") {
    TempDir tmp;
    const auto root = tmp / "fw";
    std::mt19937 rng(31337);
    for (int i = 0; i < 23; ++i) {
        std::string content;
        const std::size_t len = rng() % 2000;
        for (std::size_t j = 0; j < len; ++j) {
            content.push_back(static_cast<char>(rng() % 256));
        }
        testutil::write_file(root / ("dir" + std::to_string(i % 3)) /
                                 ("file" + std::to_string(i)),
                             content);
    }
    const FirmwareArtifacts one = process_firmware(root, HashAlgorithm::Sha256, {}, 1);
    for (unsigned workers : {2u, 3u, 8u}) {
        const FirmwareArtifacts many = process_firmware(root, HashAlgorithm::Sha256, {},
                                                        workers);
        CAPTURE(workers);
        CHECK(one == many);
    }
}

TEST_CASE("tar and directory forms of the same tree agree") {
    TempDir tmp;
    const auto root = tmp / "fw";
    testutil::write_file(root / "etc/version", std::string("v1.2.3\n"));
    testutil::write_file(root / "sbin/netd", std::string("listens on 9999\x00", 16));

    TarWriter tar;
    tar.add_file("etc/version", "v1.2.3\n");
    tar.add_file("sbin/netd", std::string("listens on 9999\x00", 16));
    const auto tar_path = tmp / "fw.tar";
    testutil::write_file(tar_path, tar.finish());

    const FirmwareArtifacts from_dir = process_firmware(root);
    const FirmwareArtifacts from_tar = process_firmware(tar_path);
    CHECK(from_dir.fd_list == from_tar.fd_list);
    CHECK(from_dir.fh_list == from_tar.fh_list);
    CHECK(from_dir.f_strings == from_tar.f_strings);
}

TEST_CASE("string cap is reported per file") {
    TempDir tmp;
    const auto root = tmp / "fw";
    std::string blob;
    for (int i = 0; i < 50; ++i) {
        blob += "str" + std::to_string(i);
        blob.push_back('\0');
    }
    testutil::write_file(root / "noisy.bin", blob);
    StringsConfig config;
    config.max_strings_per_file = 10;
    const FirmwareArtifacts fw = process_firmware(root, HashAlgorithm::Sha256, config);
    REQUIRE(fw.string_cap_paths.size() == 1);
    CHECK(fw.string_cap_paths[0] == "/noisy.bin");
    CHECK(fw.f_strings.at("/noisy.bin").size() <= 10);
}
