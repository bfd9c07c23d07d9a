#pragma once

#include <string>
#include <vector>

namespace orbispec {

// Orbifold signature (g; n; m_1,...,m_l): genus, cusps, cone orders m_i >= 2.
// Valid signatures satisfy 2g - 2 + n + sum(1 - 1/m_i) > 0 (checked exactly
// in rational arithmetic by validate()).
struct Signature {
  int genus = 0;
  int cusps = 0;
  std::vector<int> cone_orders;  // kept sorted ascending

  Signature() = default;
  Signature(int g, int n, std::vector<int> m = {});

  // throws std::invalid_argument when the hyperbolicity condition fails
  void validate() const;
  bool is_hyperbolic() const;

  std::string str() const;  // "(g;n;m1,...,ml)" display form
};

// parse "g,n[,m1,m2,...]" (CLI form); throws on malformed input
Signature parse_signature(const std::string& text);

}  // namespace orbispec
