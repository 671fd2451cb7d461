#include "stitcher/process_listing.hpp"

#include "stitcher/errors.hpp"
#include "stitcher/util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <vector>

namespace stitcher {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') {
            ++j;
        }
        if (j > i) {
            tokens.emplace_back(line.substr(i, j - i));
        }
        i = j;
    }
    return tokens;
}

bool is_header(const std::vector<std::string>& tokens) {
    return std::find(tokens.begin(), tokens.end(), "PID") != tokens.end();
}

constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

/// Index of the command column in the header, if one is named.
std::size_t command_column(const std::vector<std::string>& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        if (t == "COMMAND" || t == "CMD" || t == "COMM" || t == "ARGS") {
            return i;
        }
    }
    return kNoColumn;
}

/// The matching name for one process: basename of the command's first
/// token, brackets stripped for kernel threads.
std::string derive_command_name(const std::string& command_field, bool& kernel_thread) {
    const std::vector<std::string> words = tokenize(command_field);
    if (words.empty()) {
        return {};
    }
    const std::string& first = words.front();
    if (first.size() >= 2 && first.front() == '[' && first.back() == ']') {
        kernel_thread = true;
        return first.substr(1, first.size() - 2);
    }
    kernel_thread = false;
    return std::string(basename_of(first));
}

} // namespace

ProcessArtifacts parse_ps(std::string_view text) {
    if (text.empty()) {
        throw IngestError("empty process listing");
    }

    ProcessArtifacts art;
    std::set<std::int64_t> seen_pids;
    const std::vector<std::string> lines = split_lines(text);

    std::size_t pid_col = 0;
    std::size_t cmd_col = kNoColumn;
    bool saw_header = false;

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string line = lossy_utf8(lines[li]);
        const std::vector<std::string> tokens = tokenize(line);

        if (tokens.empty()) {
            art.rejects.push_back({line, "blank line"});
            continue;
        }
        if (!saw_header && art.p_list.empty() && art.rejects.empty() && is_header(tokens)) {
            saw_header = true;
            art.header_line = line;
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                if (tokens[i] == "PID") {
                    pid_col = i;
                    break;
                }
            }
            cmd_col = command_column(tokens);
            continue;
        }

        if (tokens.size() <= pid_col) {
            art.rejects.push_back({line, "unparsable pid"});
            continue;
        }
        const std::string& pid_token = tokens[pid_col];
        std::int64_t pid = 0;
        const auto [ptr, ec] =
            std::from_chars(pid_token.data(), pid_token.data() + pid_token.size(), pid);
        if (ec == std::errc::result_out_of_range) {
            art.rejects.push_back({line, "invalid pid"});
            continue;
        }
        if (ec != std::errc() || ptr != pid_token.data() + pid_token.size()) {
            art.rejects.push_back({line, "unparsable pid"});
            continue;
        }
        if (pid < 1) {
            art.rejects.push_back({line, "invalid pid"});
            continue;
        }
        if (!seen_pids.insert(pid).second) {
            art.rejects.push_back({line, "duplicate pid"});
            continue;
        }

        // Command field: the named column through end of line, or the last
        // field when no header named one.
        std::string command_field;
        if (cmd_col != kNoColumn && cmd_col < tokens.size()) {
            for (std::size_t i = cmd_col; i < tokens.size(); ++i) {
                if (!command_field.empty()) {
                    command_field += ' ';
                }
                command_field += tokens[i];
            }
        } else if (cmd_col == kNoColumn && tokens.size() > 1) {
            command_field = tokens.back();
        } else if (cmd_col == kNoColumn && pid_col == 0 && tokens.size() == 1) {
            command_field.clear(); // pid-only line
        }
        if (command_field.empty()) {
            seen_pids.erase(pid);
            art.rejects.push_back({line, "missing command"});
            continue;
        }

        ProcessEntry entry;
        entry.pid = pid;
        entry.raw_line = line;
        entry.command_name = derive_command_name(command_field, entry.kernel_thread);
        if (entry.command_name.empty()) {
            seen_pids.erase(pid);
            art.rejects.push_back({line, "missing command"});
            continue;
        }
        art.p_list.push_back(std::move(entry));
    }
    return art;
}

ProcessArtifacts parse_ps_file(const std::filesystem::path& p) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(p);
    return parse_ps(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string serialize_ps(const ProcessArtifacts& artifacts) {
    std::string out;
    if (artifacts.header_line) {
        out += *artifacts.header_line;
        out += '\n';
    }
    for (const ProcessEntry& entry : artifacts.p_list) {
        out += entry.raw_line;
        out += '\n';
    }
    return out;
}

} // namespace stitcher
