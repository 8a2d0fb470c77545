#include "plurilag/numeric_rank.hpp"

#include <cmath>

#include "plurilag/errors.hpp"

namespace plurilag::solve {

int numeric_rank(const Eigen::MatrixXd& m, double tau_rel) {
    if (!m.allFinite()) throw DomainError("numeric_rank: matrix has non-finite entries");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const double cut = tau_rel * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut && s(i) > 0.0) ++rank;
    return rank;
}

Eigen::MatrixXd
corner_jacobian(const std::function<double(const forms::CubeFields&, forms::CubeLabel)>& residual,
                const forms::CubeFields& at, double h) {
    const auto labels = forms::octa_labels();
    Eigen::MatrixXd J(6, 6);
    for (int col = 0; col < 6; ++col) {
        const forms::CubeLabel var = labels[static_cast<size_t>(col)];
        const double v = at.at(var);
        const double step = h * std::max(1.0, std::abs(v));
        forms::CubeFields up = at, dn = at;
        up.at(var) = v + step;
        dn.at(var) = v - step;
        for (int row = 0; row < 6; ++row) {
            const forms::CubeLabel eq = labels[static_cast<size_t>(row)];
            J(row, col) = (residual(up, eq) - residual(dn, eq)) / (2 * step);
        }
    }
    return J;
}

} // namespace plurilag::solve
