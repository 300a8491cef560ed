#include "nilcert/poly.hpp"

#include <algorithm>

namespace nilcert {

std::string MonomialLayout::decode(u128 key,
                                   const std::vector<std::string>& names) const {
    std::string out;
    for (int i = 0; i < nvars; ++i) {
        int e = exponent(key, i);
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += names[i];
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

} // namespace nilcert
