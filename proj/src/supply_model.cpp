#include "ioimpact/supply_model.hpp"

#include <utility>

#include "ioimpact/errors.hpp"

namespace ioimpact {

SupplyModel::SupplyModel(std::shared_ptr<const IoTable> t, Matrix b, Matrix g)
    : table_(std::move(t)),
      b_(std::move(b)),
      g_(std::move(g)),
      propagations_(std::make_shared<std::atomic<std::size_t>>(0)) {}

Vector SupplyModel::propagate(const Vector& delta_v) const {
    propagations_->fetch_add(1, std::memory_order_relaxed);
    return vec_mat(delta_v, g_);
}

double SupplyModel::output_multiplier(const std::string& sector_code) const {
    const std::size_t i = table_->require_index(sector_code);
    double sum = 0.0;
    for (std::size_t j = 0; j < g_.cols(); ++j) sum += g_(i, j);
    return sum;
}

SupplyModel build_supply_model(std::shared_ptr<const IoTable> t) {
    const IoTable& table = *t;
    const std::size_t n = table.size();

    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = table.z()(i, j) / table.x()[i];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) row_sum += b(i, j);
        if (row_sum >= 1.0) {
            throw NonProductiveError("allocation-coefficient row sum for sector '" +
                                     table.sectors()[i].code + "' is " + format_double(row_sum) +
                                     " (must be < 1)");
        }
    }
    const double rho = spectral_radius_bound(b, 200);
    if (rho >= 1.0) {
        throw NonProductiveError("allocation-coefficient spectral radius estimate " +
                                 format_double(rho) + " (must be < 1)");
    }

    Matrix i_minus_b = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) i_minus_b(i, j) -= b(i, j);
    }
    Matrix g = lu_invert(i_minus_b);
    return SupplyModel(std::move(t), std::move(b), std::move(g));
}

}  // namespace ioimpact
