#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sz {

// Weighted de Bruijn chain: states are the last `memory` symbols of a
// sequence over an alphabet of size `nsym`; appending symbol a moves
// u -> (u * nsym + a) mod nsym^memory with log-weight
// beta * value(u, a) + logmult[a]. Hard constraints enter as -inf values.
//
// The leading communicating class carries the equilibrium Markov measure;
// reducible supports are restricted to it (ambiguous maxima raise an error).
class TransferChain {
public:
    using ValueFn = std::function<double(std::size_t state, std::size_t sym)>;

    TransferChain(std::size_t nsym, std::size_t memory, double beta, ValueFn value,
                  std::vector<double> logmult = {}, std::uint64_t state_cap = 1ull << 22,
                  double tol = 1e-12, std::size_t max_iter = 200000);

    std::size_t states() const { return nstates_; }
    std::size_t nsym() const { return nsym_; }
    std::size_t memory() const { return memory_; }
    double beta() const { return beta_; }

    double log_lambda() const { return log_lambda_; }
    // Per transfer step (one appended symbol).
    double entropy() const { return entropy_; }
    double energy() const { return energy_; }
    bool reducible() const { return nclasses_ > 1; }
    std::size_t class_count() const { return nclasses_; }
    std::size_t leading_class_size() const { return class_states_.size(); }

    // Probability of the cylinder fixed by `word` (length >= 1). Words
    // shorter than the memory are marginalized over the stationary blocks.
    double cylinder_mass(const std::vector<std::size_t>& word) const;

    // True when the zero-value subgraph contains a cycle, i.e. the
    // zero-energy subshift is nonempty.
    bool zero_energy_nonempty(double tol = 0.0) const;

private:
    std::size_t nsym_, memory_, nstates_;
    double beta_;
    ValueFn value_;
    std::vector<double> logmult_;
    std::vector<double> lw_;  // nstates * nsym edge log-weights
    std::vector<int> scc_id_;
    std::size_t nclasses_ = 0;
    std::vector<std::size_t> class_states_;  // leading class members
    std::vector<char> in_class_;
    double log_lambda_ = 0, entropy_ = 0, energy_ = 0;
    std::vector<double> log_r_, log_l_, log_pi_;  // over all states; -inf outside class

    double lw(std::size_t u, std::size_t a) const { return lw_[u * nsym_ + a]; }
    std::size_t step(std::size_t u, std::size_t a) const {
        return (u * nsym_ + a) % nstates_;
    }
    void find_sccs();
    double power_iterate(const std::vector<std::size_t>& members, bool left,
                         std::vector<double>& out, double tol, std::size_t max_iter) const;
    void build_measure(double tol, std::size_t max_iter);
};

double logsumexp(double a, double b);

}  // namespace sz
