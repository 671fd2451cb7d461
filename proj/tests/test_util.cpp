#include "doctest.h"

#include "stitcher/errors.hpp"
#include "stitcher/util.hpp"

#include "helpers.hpp"

#include <random>
#include <regex>

using namespace stitcher;

TEST_CASE("to_hex renders lowercase pairs") {
    const std::uint8_t raw[] = {0x00, 0x0F, 0xA1, 0xFF};
    CHECK(to_hex(raw) == "000fa1ff");
    CHECK(to_hex(std::span<const std::uint8_t>{}) == "");
}

TEST_CASE("basename_of extracts final component") {
    CHECK(basename_of("/sbin/init") == "init");
    CHECK(basename_of("init") == "init");
    CHECK(basename_of("/a/b/c.bin") == "c.bin");
    CHECK(basename_of("/") == "");
    CHECK(basename_of("dir/") == "");
    CHECK(basename_of("") == "");
}

TEST_CASE("split_lines handles CRLF and trailing newline") {
    SUBCASE("plain") {
        const auto lines = split_lines("a\nb\nc");
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == "a");
        CHECK(lines[2] == "c");
    }
    SUBCASE("trailing newline does not create a phantom line") {
        CHECK(split_lines("a\n").size() == 1);
        CHECK(split_lines("a\nb\n").size() == 2);
    }
    SUBCASE("CRLF stripped") {
        const auto lines = split_lines("a\r\nb\r\n");
        REQUIRE(lines.size() == 2);
        CHECK(lines[0] == "a");
        CHECK(lines[1] == "b");
    }
    SUBCASE("interior empty lines preserved") {
        const auto lines = split_lines("a\n\nb");
        REQUIRE(lines.size() == 3);
        CHECK(lines[1] == "");
    }
    SUBCASE("empty input") { CHECK(split_lines("").empty()); }
}

TEST_CASE("lossy_utf8 passes valid text and replaces bad bytes") {
    CHECK(lossy_utf8("hello") == "hello");
    CHECK(lossy_utf8("caf\xC3\xA9") == "caf\xC3\xA9");
    // Lone continuation byte and truncated sequence become U+FFFD.
    const std::string fixed = lossy_utf8("a\x80z");
    CHECK(fixed.find("\xEF\xBF\xBD") != std::string::npos);
    CHECK(fixed.front() == 'a');
    CHECK(fixed.back() == 'z');
    // Overlong encoding is rejected, not passed through.
    CHECK(lossy_utf8("\xC0\xAF").find('/') == std::string::npos);
}

// Independent check: the port digits must appear as a digit run with no
// adjacent digits on either side.
static bool digit_run_oracle(const std::string& hay, const std::string& run) {
    const std::regex re("(^|[^0-9])" + run + "([^0-9]|$)");
    return std::regex_search(hay, re);
}

TEST_CASE("contains_digit_run requires maximal runs") {
    CHECK(contains_digit_run("port 8888", "8888"));
    CHECK(contains_digit_run("8888", "8888"));
    CHECK(contains_digit_run("listen:8888/tcp", "8888"));
    CHECK_FALSE(contains_digit_run("18888", "8888"));
    CHECK_FALSE(contains_digit_run("88880", "8888"));
    CHECK_FALSE(contains_digit_run("188880", "8888"));
    CHECK_FALSE(contains_digit_run("no digits here", "8888"));
    CHECK(contains_digit_run("x8888y8888", "8888"));
    CHECK(contains_digit_run("18888 and 8888", "8888"));
}

TEST_CASE("contains_digit_run agrees with a regex oracle on random strings") {
    std::mt19937 rng(20240101);
    const char alphabet[] = "0123456789ab :/.";
    for (int iter = 0; iter < 500; ++iter) {
        std::string hay;
        const std::size_t len = rng() % 24;
        for (std::size_t i = 0; i < len; ++i) {
            hay += alphabet[rng() % (sizeof alphabet - 1)];
        }
        const std::string run = std::to_string(1 + rng() % 99999);
        CAPTURE(hay);
        CAPTURE(run);
        CHECK(contains_digit_run(hay, run) == digit_run_oracle(hay, run));
    }
}

TEST_CASE("iso timestamp helpers") {
    CHECK(is_iso_utc("2024-01-01T00:00:00Z"));
    CHECK(is_iso_utc(iso_utc_now()));
    CHECK_FALSE(is_iso_utc(""));
    CHECK_FALSE(is_iso_utc("2024-01-01 00:00:00"));
    CHECK_FALSE(is_iso_utc("2024-13-01T00:00:00Z"));
    CHECK_FALSE(is_iso_utc("not a time"));
}

TEST_CASE("read_file_bytes and atomic_write_file round trip") {
    testutil::TempDir tmp;
    const auto path = tmp / "data.bin";
    const std::string payload("\x00\x01zz\xFF", 5);
    atomic_write_file(path, payload);
    const auto bytes = read_file_bytes(path);
    REQUIRE(bytes.size() == 5);
    CHECK(std::string(bytes.begin(), bytes.end()) == payload);
    // No temp droppings left behind.
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(tmp.path())) {
        ++entries;
    }
    CHECK(entries == 1);
}

TEST_CASE("read_file_bytes reports missing files as ingest errors") {
    testutil::TempDir tmp;
    CHECK_THROWS_AS((void)read_file_bytes(tmp / "absent"), IngestError);
}
