#pragma once

// Named worked examples with their parameters.

#include <string>
#include <vector>

#include "json.hpp"
#include "newton_osc/newton.hpp"

namespace newton_osc::examples {

struct Case {
  std::string label;
  newton::PowerData f, g;
  nlohmann::json params;
};

std::vector<std::string> ids();
// Throws InvalidInput for an unknown id.
std::vector<Case> cases(const std::string& id);

// f = x1^4, g = c x1^2p x2^2p + x1^2q x2^2q exp(-1/x2^2).
Case flat_weight_plane(int p, int q, const Rat& c);
// f = x1^4 + x2^4, g = x1^2 + x1^p x2^q exp(-1/x3^2).
Case flat_weight_space(int p, int q);
// f = x1^4 x2^4 x3^4, g = x1^4 x2^4 x3^2 + x1^2 x2^2 x3^4 exp(-1/x3^2).
Case flat_weight_order();

}  // namespace newton_osc::examples
