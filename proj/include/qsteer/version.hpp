#ifndef QSTEER_VERSION_HPP
#define QSTEER_VERSION_HPP

namespace qsteer {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
