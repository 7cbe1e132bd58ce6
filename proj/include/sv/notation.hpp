#pragma once

#include "sv/config_closed.hpp"
#include "sv/config_distinct.hpp"

#include <string>
#include <string_view>

namespace sv {

// "(0+0)>(1+1)>(0+1,2,1)>" ; pieces kept in textual order.
DistinctConfig parse_distinct(std::string_view text);

// "-(F0+0)=(H0,2;1)" ; the leading glue closes the cycle. A trailing glue is
// tolerated only when it repeats the leading one.
ClosedConfig parse_closed(std::string_view text);

// Text of the canonical representative.
std::string print_distinct(const DistinctConfig& cfg);
std::string print_closed(const ClosedConfig& cfg);

// Text of the configuration exactly as given, without canonicalizing.
std::string format_distinct(const DistinctConfig& cfg);
std::string format_closed(const ClosedConfig& cfg);

}  // namespace sv
