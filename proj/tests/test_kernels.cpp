#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gmrg/kernels.hpp"
#include "gmrg/rng.hpp"

using namespace gmrg;

namespace {
std::vector<double> random_values(size_t n, std::uint64_t seed, double lo = -5.0, double hi = 5.0) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_range(lo, hi);
    return v;
}
}  // namespace

TEST_CASE("scalar reference kernels") {
    std::vector<double> x{1.0, -2.0, 3.5};
    std::vector<double> y{0.5, 0.5, -1.0};
    CHECK(kernels::scalar::sum(x.data(), x.size()) == doctest::Approx(2.5));
    CHECK(kernels::scalar::dot(x.data(), y.data(), x.size()) == doctest::Approx(1.0 * 0.5 - 2.0 * 0.5 - 3.5));
    CHECK(kernels::scalar::l1_diff(x.data(), y.data(), x.size()) == doctest::Approx(0.5 + 2.5 + 4.5));
    CHECK(kernels::scalar::max(x.data(), x.size()) == doctest::Approx(3.5));
    CHECK(std::isinf(kernels::scalar::max(x.data(), 0)));
}

#if defined(GMRG_HAVE_AVX2_TU)
TEST_CASE("avx2 variants agree with the scalar reference") {
    if (!__builtin_cpu_supports("avx2")) return;
    for (size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 8ul, 33ul, 1000ul, 65536ul}) {
        auto x = random_values(n, 11 + n);
        auto y = random_values(n, 77 + n);
        double tol = 1e-12 * std::max<double>(1, n);
        CHECK(kernels::avx2::sum(x.data(), n) ==
              doctest::Approx(kernels::scalar::sum(x.data(), n)).epsilon(tol));
        CHECK(kernels::avx2::dot(x.data(), y.data(), n) ==
              doctest::Approx(kernels::scalar::dot(x.data(), y.data(), n)).epsilon(tol));
        CHECK(kernels::avx2::l1_diff(x.data(), y.data(), n) ==
              doctest::Approx(kernels::scalar::l1_diff(x.data(), y.data(), n)).epsilon(tol));
        CHECK(kernels::avx2::max(x.data(), n) == kernels::scalar::max(x.data(), n));
    }
}
#endif

TEST_CASE("logsumexp") {
    std::vector<double> x{0.0, 0.0};
    CHECK(kernels::logsumexp(x) == doctest::Approx(std::log(2.0)));
    std::vector<double> big{1000.0, 1000.0};
    CHECK(kernels::logsumexp(big) == doctest::Approx(1000.0 + std::log(2.0)));
    std::vector<double> ninf{-std::numeric_limits<double>::infinity()};
    CHECK(std::isinf(kernels::logsumexp(ninf)));
    CHECK(kernels::logsumexp(ninf) < 0);
}

TEST_CASE("rng determinism and bounds") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(7);
    for (int i = 0; i < 1000; ++i) {
        double u = c.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(c.next_below(17) < 17);
    }
    CHECK(split_seed(1, 0) != split_seed(1, 1));
    CHECK(split_seed(1, 0) == split_seed(1, 0));
}
