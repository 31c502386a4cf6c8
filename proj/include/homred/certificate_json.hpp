#pragma once

#include "homred/gadgets.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace homred {

// Keys are sorted and numbers that can exceed 64 bits are strings, so equal
// certificates serialise to identical bytes.
auto certificate_to_json(const ReductionCertificate & cert, bool include_counters = true) -> std::string;

struct LoadedCertificate
{
    ReductionCertificate certificate;  // rebuilt from the recorded source
    std::vector<std::string> mismatches;  // recorded fields that differ from the rebuild
};

// Parses the source section, rebuilds the reduction from it and compares the
// recorded instance, constants, scale and slack against the rebuild.
auto load_certificate(std::string_view json) -> LoadedCertificate;

}
