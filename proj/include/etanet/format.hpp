#ifndef ETANET_FORMAT_HPP_
#define ETANET_FORMAT_HPP_

#include <string>

namespace etanet {

// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

}  // namespace etanet

#endif  // ETANET_FORMAT_HPP_
