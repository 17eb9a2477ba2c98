#pragma once

#include "heightcensus/error.hpp"

namespace hc {

template <class EncloseFn>
std::size_t match_root(const IntPoly& p, EncloseFn&& enclose) {
    const long cap = precision_cap_bits();
    for (long bits = 20;; bits += 24) {
        if (bits + 64 > cap) throw PrecisionExhausted("root matching did not separate candidates under the precision cap");
        const Dyadic w = Dyadic::pow2(-bits);
        const auto boxes = isolate_roots_unchecked(p, w);
        const ComplexBox z = enclose(w);
        std::size_t hits = 0, found = 0;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            if (boxes[i].intersects(z)) {
                ++hits;
                found = i;
            }
        }
        if (hits == 1) return found;
        if (hits == 0) throw DomainError("enclosure meets no root of " + p.str());
    }
}

}  // namespace hc
