// tcw — theory-combination workbench

#include "tcw/extnat.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>

namespace tcw {

std::string to_string(const ExtNat& n) {
  return n.is_inf() ? "Inf" : std::to_string(n.finite());
}

std::ostream& operator<<(std::ostream& os, const ExtNat& n) {
  return os << to_string(n);
}

bool dominates(const CardTuple& a, const CardTuple& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

std::vector<CardTuple> dickson_minimal(std::vector<CardTuple> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<CardTuple> out;
  for (const auto& x : xs) {
    bool minimal = true;
    for (const auto& y : xs) {
      if (y != x && dominates(x, y)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(x);
  }
  return out;  // already lexicographically sorted
}

std::string to_string(const CardTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) os << ',';
    os << t[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const std::vector<CardTuple>& ts) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) os << ',';
    os << to_string(ts[i]);
  }
  os << '}';
  return os.str();
}

}  // namespace tcw
