#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "ioimpact/io_table.hpp"
#include "ioimpact/linalg.hpp"

namespace ioimpact {

// Leontief demand-side model: technical coefficients a_ij = z_ij / x_j and
// the inverse l = (I - a)^{-1}. Final-demand changes propagate as
// delta_x = l * delta_f.
class DemandModel {
public:
    const IoTable& table() const { return *table_; }
    const std::shared_ptr<const IoTable>& table_ptr() const { return table_; }
    const Matrix& technical_coefficients() const { return a_; }
    const Matrix& leontief_inverse() const { return l_; }

    Vector propagate(const Vector& delta_f) const;

    // Column sum of the Leontief inverse: economy-wide output per unit of
    // final demand in the sector.
    double output_multiplier(const std::string& sector_code) const;

    // How many shocks have been propagated through this model (test hook
    // for side-routing checks).
    std::size_t propagation_count() const { return *propagations_; }

private:
    friend DemandModel build_demand_model(std::shared_ptr<const IoTable> t);
    DemandModel(std::shared_ptr<const IoTable> t, Matrix a, Matrix l);

    std::shared_ptr<const IoTable> table_;
    Matrix a_;
    Matrix l_;
    std::shared_ptr<std::atomic<std::size_t>> propagations_;
};

// Throws NonProductiveError when any column sum of a reaches 1 or the
// spectral-radius estimate does; SingularMatrixError propagates from the
// inversion.
DemandModel build_demand_model(std::shared_ptr<const IoTable> t);

}  // namespace ioimpact
