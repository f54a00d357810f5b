#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "betamodel/graph.hpp"

namespace betamodel::datasets {

// Chesapeake Bay summer food web (Baird & Ulanowicz 1989): degree sequence
// of the 33 organisms, in the published node order.
DegreeSequence chesapeake();

// One node per distinct degree 1..10 of the chesapeake web, 1-based, in
// ascending-degree order.
inline constexpr std::array<NodeId, 10> chesapeake_table_nodes{4, 6, 13, 11, 12, 14, 15, 2, 22, 8};

// Looks up an embedded dataset by name ("chesapeake").
std::optional<DegreeSequence> by_name(std::string_view name);

}  // namespace betamodel::datasets
