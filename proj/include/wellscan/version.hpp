#ifndef WELLSCAN_VERSION_HPP
#define WELLSCAN_VERSION_HPP

#include <string_view>

namespace wellscan {

inline constexpr std::string_view kVersion = "0.1.0";
// Bumped whenever a CSV header or JSON key set changes.
inline constexpr int kOutputSchema = 1;

}  // namespace wellscan

#endif  // WELLSCAN_VERSION_HPP
