#include "ioimpact/demand_model.hpp"

#include <utility>

#include "ioimpact/errors.hpp"

namespace ioimpact {

DemandModel::DemandModel(std::shared_ptr<const IoTable> t, Matrix a, Matrix l)
    : table_(std::move(t)),
      a_(std::move(a)),
      l_(std::move(l)),
      propagations_(std::make_shared<std::atomic<std::size_t>>(0)) {}

Vector DemandModel::propagate(const Vector& delta_f) const {
    propagations_->fetch_add(1, std::memory_order_relaxed);
    return mat_vec(l_, delta_f);
}

double DemandModel::output_multiplier(const std::string& sector_code) const {
    const std::size_t j = table_->require_index(sector_code);
    double sum = 0.0;
    for (std::size_t i = 0; i < l_.rows(); ++i) sum += l_(i, j);
    return sum;
}

DemandModel build_demand_model(std::shared_ptr<const IoTable> t) {
    const IoTable& table = *t;
    const std::size_t n = table.size();

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = table.z()(i, j) / table.x()[j];
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        double col_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) col_sum += a(i, j);
        if (col_sum >= 1.0) {
            throw NonProductiveError("technical-coefficient column sum for sector '" +
                                     table.sectors()[j].code + "' is " + format_double(col_sum) +
                                     " (must be < 1)");
        }
    }
    const double rho = spectral_radius_bound(a, 200);
    if (rho >= 1.0) {
        throw NonProductiveError("technical-coefficient spectral radius estimate " +
                                 format_double(rho) + " (must be < 1)");
    }

    Matrix i_minus_a = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) i_minus_a(i, j) -= a(i, j);
    }
    Matrix l = lu_invert(i_minus_a);
    return DemandModel(std::move(t), std::move(a), std::move(l));
}

}  // namespace ioimpact
