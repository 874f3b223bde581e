#pragma once

#include <stdexcept>
#include <string>

namespace gmrg {

// Enumeration/search size caps exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model with empty effective support (all scores -inf) or a zero
// normalizer for a reachable context.
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Learning aborted by the divergence guard.
struct divergence_error : std::runtime_error {
    divergence_error(const std::string& msg, int iter)
        : std::runtime_error(msg), iteration(iter) {}
    int iteration;
};

}  // namespace gmrg
