#include "entvol/rng.hpp"

#include <numbers>
#include <stdexcept>

namespace entvol {

TwoBranchState InstanceGenerator::random_two_branch(int n_min, int n_max) {
    if (n_min < 3 || n_max < n_min)
        throw std::domain_error("need n_min >= 3 and n_max >= n_min");
    int n = uniform_int(n_min, n_max);
    int e = uniform_int(1, n - 2);
    double theta = uniform(0.0, std::numbers::pi / 2);
    double phi = uniform(0.0, 2 * std::numbers::pi);
    Eigen::VectorXcd coeffs = coefficients(static_cast<int>(binomial(n, e)));
    return make_two_branch(n, e, coeffs, theta, phi);
}

}  // namespace entvol
