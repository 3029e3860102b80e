#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "basp/graph.hpp"

namespace basp {

// JSON instance files. Infinite values are written as the strings "inf" and
// "-inf"; a free target speed as "free". Parse failures raise kParseError
// with a line:column location, structural problems kSchemaError naming the
// offending field, e.g. "arcs[3].length".
RoadGraph ParseInstance(std::string_view text);
std::string SerializeInstance(const RoadGraph& g);

RoadGraph LoadInstance(const std::filesystem::path& path);
void SaveInstance(const RoadGraph& g, const std::filesystem::path& path);

}  // namespace basp
