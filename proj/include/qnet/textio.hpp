#pragma once

#include <cstdio>
#include <string>

namespace qnet {

// All emitted reals use 12 significant digits so that repeated runs are
// byte-comparable.
inline std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace qnet
