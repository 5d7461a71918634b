#include "lorenz/estimate.hpp"

#include <string>

#include "lorenz/errors.hpp"

namespace lorenz {

std::string_view to_string(Method method) { return method == Method::Spectral ? "spectral" : "laps"; }

Method parse_method(std::string_view text) {
    if (text == "spectral") return Method::Spectral;
    if (text == "laps") return Method::Laps;
    throw InvalidArgument("unknown method '" + std::string(text) + "' (expected spectral or laps)");
}

}  // namespace lorenz
