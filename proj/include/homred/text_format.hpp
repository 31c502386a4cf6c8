#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace homred {

// One non-blank, non-comment record of an instance file.
struct Record
{
    std::size_t line;
    std::vector<std::string> fields;
};

// Splits text into whitespace-separated records, dropping blank lines and
// everything after '#'.
auto tokenize_records(std::string_view text) -> std::vector<Record>;

// Strict non-negative integer field; reports the record's line on failure.
auto parse_index(const std::string & module, const Record & record, std::size_t field) -> std::size_t;

auto read_file(const std::string & path) -> std::string;

}
