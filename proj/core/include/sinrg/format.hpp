#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sinrg {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);
double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t x);

}  // namespace sinrg
