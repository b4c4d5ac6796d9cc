#ifndef IDD_VERSION_HPP
#define IDD_VERSION_HPP

namespace idd {

inline constexpr const char* k_version = "1.0.0";

} // namespace idd

#endif
