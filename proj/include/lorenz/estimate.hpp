#pragma once

#include <cstddef>
#include <string_view>

namespace lorenz {

enum class Method { Spectral, Laps };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

/// A topological entropy value (natural-log units) with its provenance.
struct EntropyEstimate {
    double entropy = 0;
    double gamma = 1;  // exp(entropy)
    Method method = Method::Spectral;
    std::size_t order = 0;  // truncation order or iterate count
    double error_bound = 0;
    bool certified = false;
};

}  // namespace lorenz
