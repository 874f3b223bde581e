#include "gmrg/kernels.hpp"

#include <cmath>
#include <limits>

namespace gmrg::kernels::scalar {

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double l1_diff(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
    return acc;
}

double max(const double* x, std::size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

double sum_exp(const double* x, std::size_t n, double shift) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::exp(x[i] - shift);
    return acc;
}

}  // namespace gmrg::kernels::scalar
