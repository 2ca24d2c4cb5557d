#ifndef BETHELAB_VERSION_HPP
#define BETHELAB_VERSION_HPP

namespace bethe {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
