#include "etanet/format.hpp"

#include <charconv>

namespace etanet {

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace etanet
