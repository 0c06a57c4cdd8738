#include <doctest.h>

#include <random>
#include <vector>

#include "helios/kernels.hpp"
#include "support/oracles.hpp"

using namespace helios;
using helios::testing::close_rel;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& gen, bool plateaus) {
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    std::uniform_int_distribution<int> level(0, 3);
    std::vector<double> x(n);
    for (auto& v : x) v = plateaus ? 10.0 * level(gen) : u(gen);
    return x;
}

}  // namespace

TEST_CASE("the scalar table is always available and listed first") {
    const auto tables = kernels::available_tables();
    REQUIRE_FALSE(tables.empty());
    CHECK(tables.front()->name == "scalar");
    MESSAGE("active kernel variant: " << kernels::active_table().name);
}

TEST_CASE("every SIMD variant matches the scalar reference") {
    const auto& ref = kernels::scalar_table();
    std::mt19937_64 gen(2024);
    for (const auto* table : kernels::available_tables()) {
        CAPTURE(table->name);
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 13u, 17u, 64u, 1079u, 1080u, 1081u}) {
            for (bool plateaus : {false, true}) {
                CAPTURE(n);
                CAPTURE(plateaus);
                const auto x = random_vector(n, gen, plateaus);
                const auto y = random_vector(n, gen, plateaus);

                CHECK(close_rel(table->sum(x.data(), n), ref.sum(x.data(), n), 1e-12, 1e-9));

                const double c = n ? ref.sum(x.data(), n) / static_cast<double>(n) : 0.0;
                const auto a = table->central_sums(x.data(), n, c);
                const auto b = ref.central_sums(x.data(), n, c);
                CHECK(close_rel(a.m2, b.m2, 1e-12, 1e-6));
                CHECK(close_rel(a.m3, b.m3, 1e-12, 1e-3 * (1.0 + b.m2)));
                CHECK(close_rel(a.m4, b.m4, 1e-12, 1e-6));

                const auto fa = table->fluctuation(x.data(), n);
                const auto fb = ref.fluctuation(x.data(), n);
                CHECK(fa.reversals == fb.reversals);
                CHECK(close_rel(fa.abs_diff_sum, fb.abs_diff_sum, 1e-12, 1e-9));

                const auto xa = table->cross_sums(x.data(), y.data(), n, 500.0, 400.0);
                const auto xb = ref.cross_sums(x.data(), y.data(), n, 500.0, 400.0);
                CHECK(close_rel(xa.sxx, xb.sxx, 1e-12, 1e-6));
                CHECK(close_rel(xa.syy, xb.syy, 1e-12, 1e-6));
                CHECK(close_rel(xa.sxy, xb.sxy, 1e-12, 1e-3 * (1.0 + xb.sxx + xb.syy)));
            }
        }
    }
}

TEST_CASE("fluctuation kernel ignores zero differences") {
    const std::vector<double> x{1, 1, 2, 2, 1, 1, 2};
    for (const auto* table : kernels::available_tables()) {
        CAPTURE(table->name);
        const auto f = table->fluctuation(x.data(), x.size());
        CHECK(f.reversals == 0);
        CHECK(f.abs_diff_sum == 3.0);
    }
}
