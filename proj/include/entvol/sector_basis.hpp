#pragma once

#include <cstdint>
#include <vector>

namespace entvol {

// Largest qubit count the library accepts; the brute-force verification
// path needs a dense 2^n vector, so desk scale stops here.
inline constexpr int kQubitCap = 14;

long long binomial(int n, int k);

// Ordered basis of the excitation-number sector: all n-bit strings with
// exactly e ones, ascending. Qubit 1 is the leftmost (most significant) bit,
// so ascending integers coincide with lexicographic string order.
class SectorBasis {
public:
    SectorBasis(int n, int e);

    int n() const { return n_; }
    int e() const { return e_; }
    int size() const { return static_cast<int>(strings_.size()); }

    std::uint32_t string_at(int index) const { return strings_[index]; }
    const std::vector<std::uint32_t>& strings() const { return strings_; }

    // Position of `s` in the basis; throws std::domain_error if absent.
    int index_of(std::uint32_t s) const;

    // Bit of qubit k (1-based, 1 = leftmost) in the string at `index`.
    bool qubit_set(int index, int k) const {
        return (strings_[index] >> (n_ - k)) & 1u;
    }

    std::uint32_t all_ones() const { return (1u << n_) - 1u; }

private:
    int n_, e_;
    std::vector<std::uint32_t> strings_;
};

SectorBasis enumerate_sector(int n, int e);

}  // namespace entvol
