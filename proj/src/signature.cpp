#include "orbispec/signature.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <boost/rational.hpp>

namespace orbispec {

using Rat = boost::rational<long long>;

Signature::Signature(int g, int n, std::vector<int> m)
    : genus(g), cusps(n), cone_orders(std::move(m)) {
  std::sort(cone_orders.begin(), cone_orders.end());
  validate();
}

bool Signature::is_hyperbolic() const {
  if (genus < 0 || cusps < 0) return false;
  for (int m : cone_orders)
    if (m < 2) return false;
  // 2g - 2 + n + sum(1 - 1/m) > 0, exactly
  Rat total(2LL * genus - 2 + cusps, 1);
  for (int m : cone_orders) total += Rat(m - 1, m);
  return total > Rat(0);
}

void Signature::validate() const {
  if (genus < 0 || cusps < 0)
    throw std::invalid_argument("signature requires g >= 0 and n >= 0");
  for (int m : cone_orders)
    if (m < 2) throw std::invalid_argument("cone orders must satisfy m >= 2");
  if (!is_hyperbolic())
    throw std::invalid_argument("signature " + str() +
                                " fails the hyperbolicity condition 2g-2+n+sum(1-1/m) > 0");
}

std::string Signature::str() const {
  std::ostringstream os;
  os << "(" << genus << ";" << cusps;
  if (!cone_orders.empty()) {
    os << ";";
    for (std::size_t i = 0; i < cone_orders.size(); ++i) {
      if (i) os << ",";
      os << cone_orders[i];
    }
  }
  os << ")";
  return os.str();
}

Signature parse_signature(const std::string& text) {
  std::vector<long long> nums;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("malformed signature: " + text);
    std::size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("malformed signature: " + text);
    nums.push_back(v);
  }
  if (nums.size() < 2) throw std::invalid_argument("signature needs at least g,n: " + text);
  std::vector<int> cones(nums.begin() + 2, nums.end());
  return Signature((int)nums[0], (int)nums[1], cones);
}

}  // namespace orbispec
