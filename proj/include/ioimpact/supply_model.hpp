#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "ioimpact/io_table.hpp"
#include "ioimpact/linalg.hpp"

namespace ioimpact {

// Ghosh supply-side model: allocation coefficients b_ij = z_ij / x_i and
// the inverse g = (I - b)^{-1}. Value-added changes propagate as
// delta_x' = delta_v' * g.
class SupplyModel {
public:
    const IoTable& table() const { return *table_; }
    const std::shared_ptr<const IoTable>& table_ptr() const { return table_; }
    const Matrix& allocation_coefficients() const { return b_; }
    const Matrix& ghosh_inverse() const { return g_; }

    Vector propagate(const Vector& delta_v) const;

    // Row sum of the Ghosh inverse: economy-wide output per unit of primary
    // input injected in the sector.
    double output_multiplier(const std::string& sector_code) const;

    std::size_t propagation_count() const { return *propagations_; }

private:
    friend SupplyModel build_supply_model(std::shared_ptr<const IoTable> t);
    SupplyModel(std::shared_ptr<const IoTable> t, Matrix b, Matrix g);

    std::shared_ptr<const IoTable> table_;
    Matrix b_;
    Matrix g_;
    std::shared_ptr<std::atomic<std::size_t>> propagations_;
};

SupplyModel build_supply_model(std::shared_ptr<const IoTable> t);

}  // namespace ioimpact
