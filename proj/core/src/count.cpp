#include "fgx/count.hpp"

#include <algorithm>
#include <ostream>

namespace fgx {

std::string Count::str() const {
    if (v_ == 0) return "0";
    std::string out;
    unsigned __int128 v = v_;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::ostream& operator<<(std::ostream& os, Count c) { return os << c.str(); }

}  // namespace fgx
