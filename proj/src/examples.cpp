#include "newton_osc/examples.hpp"

#include <utility>

namespace newton_osc::examples {

using newton::PowerData;

std::vector<std::string> ids() { return {"15.1", "15.2", "15.3", "remark4.6", "remark3.10", "fresnel"}; }

Case flat_weight_plane(int p, int q, const Rat& c) {
  Case k;
  k.label = "p=" + std::to_string(p) + ",q=" + std::to_string(q) + ",c=" + c.str();
  k.f = PowerData::monomial({4, 0});
  k.g = PowerData(2);
  k.g.add({2LL * p, 2LL * p}, c);
  k.g.add_flat({2LL * q, 2LL * q}, 1, Rat(1));
  k.params = {{"p", p}, {"q", q}, {"c", c.str()}};
  return k;
}

Case flat_weight_space(int p, int q) {
  Case k;
  k.label = "p=" + std::to_string(p) + ",q=" + std::to_string(q);
  k.f = PowerData::polynomial(3, {{{4, 0, 0}, Rat(1)}, {{0, 4, 0}, Rat(1)}});
  k.g = PowerData::monomial({2, 0, 0});
  k.g.add_flat({p, q, 0}, 2, Rat(1));
  k.params = {{"p", p}, {"q", q}};
  return k;
}

Case flat_weight_order() {
  Case k;
  k.label = "default";
  k.f = PowerData::monomial({4, 4, 4});
  k.g = PowerData::monomial({4, 4, 2});
  k.g.add_flat({2, 2, 4}, 2, Rat(1));
  k.params = nlohmann::json::object();
  return k;
}

std::vector<Case> cases(const std::string& id) {
  std::vector<Case> out;
  if (id == "15.1") {
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q) out.push_back(flat_weight_plane(p, q, Rat(1)));
  } else if (id == "15.2") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {1, 1}, {0, 1}}) out.push_back(flat_weight_space(p, q));
  } else if (id == "15.3") {
    out.push_back(flat_weight_order());
  } else if (id == "remark4.6") {
    out.push_back({"x1 x2 with weight x2^2", PowerData::monomial({1, 1}), PowerData::monomial({0, 2}),
                   nlohmann::json::object()});
  } else if (id == "remark3.10") {
    Case k{"x1^2 + exp(-1/x2^2)", PowerData::monomial({2, 0}), PowerData::unit(2), nlohmann::json::object()};
    k.f.add_flat({0, 0}, 1, Rat(1));
    out.push_back(k);
  } else if (id == "fresnel") {
    out.push_back({"x^2", PowerData::monomial({2}), PowerData::unit(1), nlohmann::json::object()});
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown example id " + id);
  }
  return out;
}

}  // namespace newton_osc::examples
