#ifndef CHEMOPULSE_TEXT_FORMAT_HPP
#define CHEMOPULSE_TEXT_FORMAT_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "chemopulse/errors.hpp"

namespace chemopulse {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_int(long v) {
    char buf[24];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw error(errc::config_parse, "not a number: '" + std::string(s) + "'");
    return v;
}

/// Minimal CSV document: header row plus string cells, comma separator,
/// LF line endings, no quoting (the writers only emit numbers, plain
/// words and empty cells).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string serialize() const {
        std::string out;
        auto emit_row = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out.push_back(',');
                out += cells[i];
            }
            out.push_back('\n');
        };
        emit_row(header);
        for (const auto& r : rows) emit_row(r);
        return out;
    }
};

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cells;
}

inline CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty()) {
            if (first) {
                t.header = split_csv_line(line);
                first = false;
            } else {
                t.rows.push_back(split_csv_line(line));
            }
        }
        pos = nl + 1;
    }
    if (first) throw error(errc::config_parse, "empty CSV document");
    return t;
}

inline void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::config_invalid, "cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw error(errc::config_invalid, "failed writing '" + path + "'");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::config_parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace chemopulse

#endif
