// tcw — theory-combination workbench
#pragma once

#include <string>

namespace tcw {

// Three-valued outcome of a bounded or exact check.  Proved/Refuted are only
// reported when justified (exactly, or by an explicit counterexample);
// everything the bound cannot settle is Unknown.
enum class Verdict { Proved, Refuted, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved:
      return "proved";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

}  // namespace tcw
