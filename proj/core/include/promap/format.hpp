#pragma once

#include <string>

#include "promap/model.hpp"

namespace promap {

/// Renders an assembled map as canonical DSL text. Declarations are
/// sorted by identifier, relations and groups keep declaration order,
/// and reparsing plus reassembly yields a map equal to the input.
std::string format(const ProcessMap& map);

}  // namespace promap
