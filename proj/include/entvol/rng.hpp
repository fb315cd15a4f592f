#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "entvol/state.hpp"

namespace entvol {

// Seed-deterministic instance source. The mapping from raw engine output to
// doubles is spelled out (53-bit mantissa scaling) so that results never
// depend on the standard library's distribution implementations.
class InstanceGenerator {
public:
    explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

    // Identifier recorded in verification output.
    static constexpr const char* algorithm = "mt19937_64/u53";

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    int uniform_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::complex<double> box_complex() {
        double re = uniform(-1.0, 1.0);
        double im = uniform(-1.0, 1.0);
        return {re, im};
    }

    Eigen::VectorXcd coefficients(int length) {
        Eigen::VectorXcd c(length);
        for (int i = 0; i < length; ++i) c(i) = box_complex();
        return c;
    }

    // Random (n, e, theta, phi, coeffs) with 1 <= e <= n-2, the range where
    // the algebraic volume is exact.
    TwoBranchState random_two_branch(int n_min, int n_max);

private:
    std::mt19937_64 engine_;
};

}  // namespace entvol
