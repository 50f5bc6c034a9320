#pragma once

namespace msign {

enum class Verdict { Holds, Fails, Unknown };

constexpr const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

constexpr Verdict from_bool(bool b) noexcept { return b ? Verdict::Holds : Verdict::Fails; }

}  // namespace msign
