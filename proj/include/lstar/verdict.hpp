#pragma once

#include <string>

namespace lstar {

/// Outcome of a proof check. `reason` is empty on acceptance and names the
/// offending line or node on rejection.
struct Verdict {
  bool ok = false;
  std::string reason;

  static Verdict accept() { return {true, ""}; }
  static Verdict reject(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

}  // namespace lstar
