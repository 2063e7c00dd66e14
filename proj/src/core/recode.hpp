#pragma once
#include <gmpxx.h>

#include <string>

#include "gibbs.hpp"
#include "pattern.hpp"

namespace sz {

// Grouping of the lattice into m-blocks (m^d cells each); the block alphabet
// has one symbol per base pattern on the block, named by concatenating the
// base symbol names in row-major order.
struct BlockCode {
    AlphabetPtr base;
    int m = 1;
    int dim = 1;

    std::size_t block_cells() const;
    mpz_class block_alphabet_size() const;
    AlphabetPtr block_alphabet(std::uint64_t cap = 1 << 20) const;
};

// Regroups an aligned pattern into the block alphabet. Window extents must be
// multiples of m (alignment error otherwise).
Pattern recode_forward(const Pattern& x, const BlockCode& code);
Pattern recode_backward(const Pattern& y, const BlockCode& code);

// Entropy of the full shift over a block vocabulary: log |P|.
double block_entropy(const mpz_class& vocabulary_size);

struct PressureScalingReport {
    int m = 1;
    double base_pressure = 0;   // per site
    double block_pressure = 0;  // per block step
    double ratio = 0;
    double gap = 0;  // |ratio - m|
    bool holds = false;
    std::string print() const;
};

// Compares the chain pressure of a 1D potential with the pressure of its
// m-block Birkhoff sum under the block shift; the ratio must equal m.
PressureScalingReport pressure_scaling_check(const Potential& p, double beta, int m,
                                             double tol = 1e-8,
                                             std::uint64_t state_cap = 1ull << 22);

}  // namespace sz
