#include "gmrg/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace gmrg::kernels {

namespace {

struct Backend {
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*l1_diff)(const double*, const double*, std::size_t);
    double (*max)(const double*, std::size_t);
    std::string name;
};

Backend select_backend() {
    Backend b{scalar::sum, scalar::dot, scalar::l1_diff, scalar::max, "scalar"};
    const char* forced = std::getenv("GMRG_SIMD");
    if (forced && std::string(forced) == "scalar") return b;
#if defined(GMRG_HAVE_AVX2_TU)
    bool want_avx2 = !forced || std::string(forced) == "avx2" || std::string(forced) == "auto";
    if (want_avx2 && __builtin_cpu_supports("avx2")) {
        b = {avx2::sum, avx2::dot, avx2::l1_diff, avx2::max, "avx2"};
    }
#endif
    return b;
}

const Backend& backend() {
    static const Backend b = select_backend();
    return b;
}

}  // namespace

double sum(std::span<const double> x) { return backend().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
    return backend().dot(x.data(), y.data(), x.size());
}

double l1_diff(std::span<const double> x, std::span<const double> y) {
    return backend().l1_diff(x.data(), y.data(), x.size());
}

double max(std::span<const double> x) { return backend().max(x.data(), x.size()); }

double sum_exp(std::span<const double> x, double shift) {
    return scalar::sum_exp(x.data(), x.size(), shift);
}

double logsumexp(std::span<const double> x) {
    if (x.empty()) return -std::numeric_limits<double>::infinity();
    double m = max(x);
    if (!std::isfinite(m)) return m;
    return m + std::log(sum_exp(x, m));
}

const std::string& active_backend() { return backend().name; }

}  // namespace gmrg::kernels
