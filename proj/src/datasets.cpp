#include "betamodel/datasets.hpp"

namespace betamodel::datasets {

DegreeSequence chesapeake() {
  return DegreeSequence({7, 8, 5, 1, 1, 2, 8, 10, 4, 2, 4, 5, 3, 6, 7, 3, 2,
                         7, 6, 1, 2, 9, 6, 1, 3, 4, 6, 3, 3, 3, 2, 4, 4});
}

std::optional<DegreeSequence> by_name(std::string_view name) {
  if (name == "chesapeake") return chesapeake();
  return std::nullopt;
}

}  // namespace betamodel::datasets
