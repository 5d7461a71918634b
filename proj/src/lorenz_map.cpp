#include "lorenz/lorenz_map.hpp"

namespace lorenz {

std::string_view to_string(Side side) { return side == Side::Upper ? "upper" : "lower"; }

LorenzMap::LorenzMap(BranchPair branches, Rational p, Side side)
    : branches_(std::move(branches)), p_(canonical(std::move(p))), p_float_(to_double(p_)), side_(side) {
    if (p_ < branches_.a() || p_ > branches_.b()) {
        throw DomainError("discontinuity p = " + lorenz::to_string(p_) + " outside [a, b] = [" +
                          lorenz::to_string(branches_.a()) + ", " + lorenz::to_string(branches_.b()) + "]");
    }
}

}  // namespace lorenz
