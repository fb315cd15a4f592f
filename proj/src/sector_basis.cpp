#include "entvol/sector_basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace entvol {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

SectorBasis::SectorBasis(int n, int e) : n_(n), e_(e) {
    if (n < 2 || n > kQubitCap)
        throw std::domain_error("qubit count must be in [2, " +
                                std::to_string(kQubitCap) + "], got " + std::to_string(n));
    if (e < 0 || e > n)
        throw std::domain_error("excitation count must be in [0, n], got " +
                                std::to_string(e));
    strings_.reserve(static_cast<std::size_t>(binomial(n, e)));
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if (std::popcount(s) == e) strings_.push_back(s);
}

int SectorBasis::index_of(std::uint32_t s) const {
    auto it = std::lower_bound(strings_.begin(), strings_.end(), s);
    if (it == strings_.end() || *it != s)
        throw std::domain_error("string is not in the sector");
    return static_cast<int>(it - strings_.begin());
}

SectorBasis enumerate_sector(int n, int e) { return SectorBasis(n, e); }

}  // namespace entvol
