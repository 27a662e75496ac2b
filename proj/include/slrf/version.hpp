#ifndef SLRF_VERSION_HPP
#define SLRF_VERSION_HPP

namespace slrf {

inline constexpr const char* kVersion = "0.1.0";

} // namespace slrf

#endif // SLRF_VERSION_HPP
