#pragma once
#include <memory>
#include <string>
#include <vector>

#include "freqshift.hpp"
#include "pattern.hpp"
#include "transfer.hpp"

namespace sz {

// Locally constant potential: a total table over the window's patterns.
// Codes index assignments with the first window point most significant.
// Entries may be -inf to encode hard constraints.
struct Potential {
    AlphabetPtr alphabet;
    Window window;
    std::vector<double> table;

    double at(std::size_t code) const { return table[code]; }
    std::size_t table_size() const { return table.size(); }
    static std::size_t code_count(std::size_t alphabet_size, std::size_t window_size);
};

// Single-term finite-range interaction: energy on one window shape.
struct Interaction {
    AlphabetPtr alphabet;
    Window shape;
    std::vector<double> table;  // per pattern code on `shape`
};

// Energy -|shape| on the forbidden patterns, 0 elsewhere. All patterns must
// share one window shape.
Interaction interaction_from_forbidden(const ForbiddenSet& F);

// Indicator potential: -1 on the forbidden patterns, 0 elsewhere.
Potential potential_direct(const ForbiddenSet& F);

// The per-site aggregate sum_{translates covering the origin} term/|shape|,
// tabulated over the union window. Differs from potential_direct when
// several forbidden translates overlap.
Potential potential_from_interaction(const Interaction& phi,
                                     std::uint64_t table_cap = 1 << 22);

// Potential file format: "alphabet ...", "window WxH", "default <v>",
// "val <row;row;...> <v>" with rows top-first (same grammar as patterns).
Potential parse_potential(const std::string& text);
std::string print_potential(const Potential& p);

struct EquilibriumReport {
    double beta = 0;
    int strip_height = 1;
    double pressure = 0;  // per site
    double entropy = 0;   // per site
    double energy = 0;    // per site
    double variational_gap = 0;
    std::size_t states = 0;
    bool reducible = false;
    std::string print() const;
};

// Equilibrium machinery for a potential on the chain (height 1) or on a
// vertically periodic strip of the given height. Per-symbol multiplicities
// model blown-up alphabets without enlarging the state space.
class GibbsSystem {
public:
    GibbsSystem(const Potential& p, double beta, int strip_height = 1,
                std::uint64_t state_cap = 1ull << 22,
                std::vector<double> symbol_logmult = {});

    const EquilibriumReport& report() const { return report_; }
    const TransferChain& chain() const { return *chain_; }

    // Mass of the union of same-length cylinders (rows of base symbols for
    // the chain; for strips each word entry is a full column pattern).
    double cylinder_mass(const std::vector<std::vector<uint8_t>>& words) const;
    bool zero_energy_nonempty() const { return chain_->zero_energy_nonempty(); }

    int strip_height() const { return h_; }

private:
    AlphabetPtr alphabet_;
    int h_;
    std::size_t base_;       // base alphabet size
    std::size_t col_syms_;   // base^h
    std::unique_ptr<TransferChain> chain_;
    EquilibriumReport report_;
};

struct EnergyBound {
    bool applicable = true;
    bool holds = false;
    double bound = 0;   // -log(alphabet)/beta
    double margin = 0;  // energy - bound
};

// energy >= -log(alphabet_size)/beta, valid when the zero-energy subshift is
// nonempty; raises an inapplicable error otherwise.
EnergyBound energy_bound_check(const GibbsSystem& sys, std::size_t alphabet_size);

// Exact finite-volume check: log partition function and cylinder ratios on a
// periodic chain of n sites computed by brute-force enumeration.
double cyclic_log_partition_bruteforce(const Potential& p, double beta, int n);
double cyclic_marginal_bruteforce(const Potential& p, double beta, int n,
                                  const std::vector<uint8_t>& word);
// The same quantities via transfer-matrix products.
double cyclic_log_partition_transfer(const Potential& p, double beta, int n);
double cyclic_marginal_transfer(const Potential& p, double beta, int n,
                                const std::vector<uint8_t>& word);

struct SweepPoint {
    double beta;
    EquilibriumReport report;
    double mass_plus = 0, mass_minus = 0;
};

struct OscillationResult {
    std::vector<SweepPoint> points;
    // Weighted window counts of the two natural families at the top level.
    double log_weighted_plus = 0, log_weighted_minus = 0;
    // First grid indexes where each side dominates with mass > threshold.
    int first_plus_dominant = -1, first_minus_dominant = -1;
    bool flip_found = false;
    char early_side = '?', late_side = '?';
    std::string csv() const;
    std::string summary() const;
};

// Builds the union potential of the K-level construction on the blown-up
// chain (zero symbol multiplicity `tags`), sweeps the inverse temperatures,
// and reports the two family masses per point. threshold marks dominance.
OscillationResult oscillation_demo(const Schedule& s, std::size_t K,
                                   const std::vector<double>& betas, double tags = 2.0,
                                   double threshold = 0.9, int threads = 1,
                                   std::uint64_t state_cap = 1ull << 22);

}  // namespace sz
