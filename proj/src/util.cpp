#include "stitcher/util.hpp"

#include "stitcher/errors.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>

namespace stitcher {

namespace fs = std::filesystem;

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

std::string_view basename_of(std::string_view path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size())
                lines.emplace_back(text.substr(start));
            break;
        }
        auto line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.emplace_back(line);
        start = nl + 1;
    }
    return lines;
}

std::string lossy_utf8(std::string_view bytes) {
    static constexpr std::string_view replacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const auto n = bytes.size();
    auto cont = [&](std::size_t k) {
        return i + k < n && (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
    };
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        std::size_t len = 0;
        if (b0 < 0x80) {
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0 && b0 >= 0xC2 && cont(1)) {
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
            const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
            const bool overlong = b0 == 0xE0 && b1 < 0xA0;
            const bool surrogate = b0 == 0xED && b1 >= 0xA0;
            if (!overlong && !surrogate)
                len = 3;
        } else if ((b0 & 0xF8) == 0xF0 && b0 <= 0xF4 && cont(1) && cont(2) && cont(3)) {
            const auto b1 = static_cast<unsigned char>(bytes[i + 1]);
            const bool overlong = b0 == 0xF0 && b1 < 0x90;
            const bool too_big = b0 == 0xF4 && b1 >= 0x90;
            if (!overlong && !too_big)
                len = 4;
        }
        if (len == 0) {
            out += replacement;
            ++i;
        } else {
            out.append(bytes.substr(i, len));
            i += len;
        }
    }
    return out;
}

bool contains_digit_run(std::string_view hay, std::string_view run) {
    if (run.empty())
        return false;
    const auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    std::size_t i = 0;
    while (i < hay.size()) {
        if (!is_digit(hay[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < hay.size() && is_digit(hay[j]))
            ++j;
        if (hay.substr(i, j - i) == run)
            return true;
        i = j;
    }
    return false;
}

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool is_iso_utc(std::string_view ts) {
    // YYYY-MM-DDTHH:MM:SSZ
    if (ts.size() != 20)
        return false;
    static constexpr std::string_view shape = "dddd-dd-ddTdd:dd:ddZ";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (shape[i] == 'd') {
            if (!std::isdigit(static_cast<unsigned char>(ts[i])))
                return false;
        } else if (ts[i] != shape[i]) {
            return false;
        }
    }
    const auto field = [&](std::size_t off, std::size_t len) {
        int v = 0;
        for (std::size_t i = 0; i < len; ++i)
            v = v * 10 + (ts[off + i] - '0');
        return v;
    };
    const int year = field(0, 4);
    const int month = field(5, 2);
    const int day = field(8, 2);
    if (month < 1 || month > 12 || day < 1)
        return false;
    static constexpr int days_in[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int limit = days_in[month - 1];
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap)
        limit = 29;
    if (day > limit)
        return false;
    return field(11, 2) <= 23 && field(14, 2) <= 59 && field(17, 2) <= 59;
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw IngestError("cannot open file: " + p.string());
    std::vector<std::uint8_t> data;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        data.insert(data.end(), buf, buf + in.gcount());
    if (in.bad())
        throw IngestError("read failure: " + p.string());
    return data;
}

void atomic_write_file(const fs::path& p, std::string_view bytes) {
    std::random_device rd;
    fs::path tmp = p;
    tmp += ".tmp" + std::to_string(rd() % 1000000);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write file: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out)
            throw Error("write failure: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot rename " + tmp.string() + " to " + p.string());
    }
}

} // namespace stitcher
