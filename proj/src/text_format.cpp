#include "homred/text_format.hpp"
#include "homred/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace homred {

auto tokenize_records(std::string_view text) -> std::vector<Record>
{
    std::vector<Record> records;
    std::size_t line_no = 0;
    while (! text.empty()) {
        ++line_no;
        auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        Record record{line_no, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            auto start = i;
            while (i < line.size() && ! std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            if (i > start)
                record.fields.emplace_back(line.substr(start, i - start));
        }
        if (! record.fields.empty())
            records.push_back(std::move(record));
    }
    return records;
}

auto parse_index(const std::string & module, const Record & record, std::size_t field) -> std::size_t
{
    if (field >= record.fields.size())
        throw ParseError(module, record.line, "missing field " + std::to_string(field + 1));
    const auto & s = record.fields[field];
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(module, record.line, "expected a non-negative integer, got '" + s + "'");
    return value;
}

auto read_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error("io", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}
