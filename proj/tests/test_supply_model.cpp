#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>

#include "ioimpact/demand_model.hpp"
#include "ioimpact/errors.hpp"
#include "ioimpact/supply_model.hpp"
#include "support/test_tables.hpp"

using namespace ioimpact;
using testsupport::random_balanced_table;
using testsupport::toy_table_ptr;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("toy table produces the closed-form allocation coefficients and inverse") {
    const SupplyModel sm = build_supply_model(toy_table_ptr());
    CHECK(max_abs_diff(sm.allocation_coefficients(), Matrix{{0.15, 0.50}, {0.10, 0.05}}) < 1e-15);
    // det(I-B) = 0.7575, same as the demand side (similar matrices).
    const Matrix expected{{0.95 / 0.7575, 0.50 / 0.7575}, {0.10 / 0.7575, 0.85 / 0.7575}};
    CHECK(max_abs_diff(sm.ghosh_inverse(), expected) < 1e-12);
}

TEST_CASE("zero-flow economy yields b = 0 and g = I") {
    auto t = std::make_shared<const IoTable>(
        IoTable({{"a", "a"}, {"b", "b"}}, Matrix(2, 2), Vector{10.0, 20.0}, Vector{10.0, 20.0},
                Vector{10.0, 20.0}));
    const SupplyModel sm = build_supply_model(t);
    CHECK(max_abs_diff(sm.ghosh_inverse(), Matrix::identity(2)) == 0.0);
    CHECK(sm.output_multiplier("b") == 1.0);
}

TEST_CASE("non-productive row sum is rejected") {
    // Balanced table whose first row ships out 1.2x its own output; legal
    // because final demand may be negative, but Ghosh-side non-productive.
    auto t = std::make_shared<const IoTable>(
        IoTable({{"a", "a"}, {"b", "b"}}, Matrix{{600.0, 600.0}, {0.0, 0.0}},
                Vector{-200.0, 1000.0}, Vector{400.0, 400.0}, Vector{1000.0, 1000.0}));
    CHECK(validate(*t, 1e-9).is_balanced());
    CHECK_THROWS_AS(build_supply_model(t), NonProductiveError);
}

TEST_CASE("ghosh-leontief similarity: diag(x) G = L diag(x)") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 15; ++trial) {
        auto t = std::make_shared<const IoTable>(random_balanced_table(rng, 2 + trial % 12));
        const DemandModel dm = build_demand_model(t);
        const SupplyModel sm = build_supply_model(t);
        const Matrix& l = dm.leontief_inverse();
        const Matrix& g = sm.ghosh_inverse();
        for (std::size_t i = 0; i < t->size(); ++i) {
            for (std::size_t j = 0; j < t->size(); ++j) {
                CHECK(std::abs(t->x()[i] * g(i, j) - l(i, j) * t->x()[j]) < 1e-9 * t->x()[i]);
            }
        }
    }
}

TEST_CASE("ghosh inverse agrees with the Neumann oracle") {
    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = std::make_shared<const IoTable>(random_balanced_table(rng, 2 + trial % 10));
        const SupplyModel sm = build_supply_model(t);
        CHECK(max_abs_diff(sm.ghosh_inverse(),
                           neumann_inverse(sm.allocation_coefficients(), 200)) < 1e-8);
    }
}

TEST_CASE("supply shock examples") {
    const SupplyModel sm = build_supply_model(toy_table_ptr());

    const Vector delta = sm.propagate(Vector{100.0, 0.0});
    CHECK(delta[0] == doctest::Approx(100.0 * 0.95 / 0.7575).epsilon(1e-12));
    CHECK(delta[1] == doctest::Approx(100.0 * 0.50 / 0.7575).epsilon(1e-12));

    const Vector zero = sm.propagate(Vector{0.0, 0.0});
    CHECK(zero.sum() == 0.0);

    CHECK_THROWS_AS(sm.propagate(Vector{1.0}), DimensionError);
}

TEST_CASE("propagating the table's own value added reproduces total output") {
    // Toy table first, then random tables.
    const SupplyModel toy = build_supply_model(toy_table_ptr());
    const Vector x_toy = toy.propagate(toy.table().v());
    CHECK(x_toy[0] == doctest::Approx(1000.0).epsilon(1e-6));
    CHECK(x_toy[1] == doctest::Approx(2000.0).epsilon(1e-6));

    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = std::make_shared<const IoTable>(random_balanced_table(rng, 2 + trial % 10));
        const SupplyModel sm = build_supply_model(t);
        const Vector x_back = sm.propagate(t->v());
        for (std::size_t i = 0; i < t->size(); ++i) {
            CHECK(x_back[i] == doctest::Approx(t->x()[i]).epsilon(1e-6));
        }
    }
}

TEST_CASE("supply multiplier is the Ghosh row sum") {
    const SupplyModel sm = build_supply_model(toy_table_ptr());
    CHECK(sm.output_multiplier("agri") ==
          doctest::Approx((0.95 + 0.50) / 0.7575).epsilon(1e-12));
    CHECK_THROWS_AS(sm.output_multiplier("513"), UnknownSectorError);
}

TEST_CASE("ghosh inverse is nonnegative with unit-dominated diagonal") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = std::make_shared<const IoTable>(random_balanced_table(rng, 2 + trial % 10));
        const SupplyModel sm = build_supply_model(t);
        const Matrix& g = sm.ghosh_inverse();
        for (std::size_t i = 0; i < g.rows(); ++i) {
            CHECK(g(i, i) >= 1.0);
            for (std::size_t j = 0; j < g.cols(); ++j) CHECK(g(i, j) >= 0.0);
        }
    }
}
