#include "transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sz {

static const char* MOD = "gibbs";
static constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

double logsumexp(double a, double b) {
    if (a == NEG_INF) return b;
    if (b == NEG_INF) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

TransferChain::TransferChain(std::size_t nsym, std::size_t memory, double beta, ValueFn value,
                             std::vector<double> logmult, std::uint64_t state_cap, double tol,
                             std::size_t max_iter)
    : nsym_(nsym), memory_(memory), beta_(beta), value_(std::move(value)),
      logmult_(std::move(logmult)) {
    require(nsym_ >= 1, errkind::contract, MOD, "alphabet must be nonempty");
    if (logmult_.empty()) logmult_.assign(nsym_, 0.0);
    require(logmult_.size() == nsym_, errkind::contract, MOD, "one multiplicity per symbol");
    double st = std::pow(static_cast<double>(nsym_), static_cast<double>(memory_));
    require(st <= static_cast<double>(state_cap), errkind::cap, MOD,
            "transfer state space exceeds cap " + std::to_string(state_cap));
    nstates_ = 1;
    for (std::size_t i = 0; i < memory_; i++) nstates_ *= nsym_;

    lw_.assign(nstates_ * nsym_, NEG_INF);
    for (std::size_t u = 0; u < nstates_; u++)
        for (std::size_t a = 0; a < nsym_; a++) {
            double v = value_(u, a);
            if (v != NEG_INF) lw_[u * nsym_ + a] = beta_ * v + logmult_[a];
        }
    find_sccs();
    build_measure(tol, max_iter);
}

void TransferChain::find_sccs() {
    // Iterative Tarjan over the support graph.
    const int UNSEEN = -1;
    std::vector<int> index(nstates_, UNSEEN), low(nstates_, 0);
    std::vector<char> on_stack(nstates_, 0);
    std::vector<std::size_t> stack;
    scc_id_.assign(nstates_, -1);
    int next_index = 0, next_scc = 0;

    struct Frame {
        std::size_t u;
        std::size_t a;
    };
    std::vector<Frame> call;
    for (std::size_t root = 0; root < nstates_; root++) {
        if (index[root] != UNSEEN) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.a < nsym_) {
                std::size_t a = f.a++;
                if (lw(f.u, a) == NEG_INF) continue;
                std::size_t v = step(f.u, a);
                if (index[v] == UNSEEN) {
                    index[v] = low[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                    call.push_back({v, 0});
                } else if (on_stack[v]) {
                    low[f.u] = std::min(low[f.u], index[v]);
                }
            } else {
                std::size_t u = f.u;
                call.pop_back();
                if (low[u] == index[u]) {
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        scc_id_[w] = next_scc;
                        if (w == u) break;
                    }
                    next_scc++;
                }
                if (!call.empty()) low[call.back().u] = std::min(low[call.back().u], low[u]);
            }
        }
    }
}

double TransferChain::power_iterate(const std::vector<std::size_t>& members, bool left,
                                    std::vector<double>& out, double tol,
                                    std::size_t max_iter) const {
    const std::size_t n = members.size();
    std::vector<int> pos(nstates_, -1);
    for (std::size_t i = 0; i < n; i++) pos[members[i]] = static_cast<int>(i);

    // Compact in-class edge lists with weights rescaled by the max, so the
    // iteration runs in the linear domain: decades faster than per-edge
    // log-sum-exp and exact enough because components below the double range
    // relative to the leading one are genuinely negligible.
    double wmax = NEG_INF;
    for (std::size_t u : members)
        for (std::size_t a = 0; a < nsym_; a++) {
            if (lw(u, a) == NEG_INF || pos[step(u, a)] < 0) continue;
            wmax = std::max(wmax, lw(u, a));
        }
    require(wmax != NEG_INF, errkind::contract, MOD, "class without internal edges");
    std::vector<int> tgt(n * nsym_, -1);
    std::vector<double> wgt(n * nsym_, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        std::size_t u = members[i];
        for (std::size_t a = 0; a < nsym_; a++) {
            if (lw(u, a) == NEG_INF) continue;
            int j = pos[step(u, a)];
            if (j < 0) continue;
            tgt[i * nsym_ + a] = j;
            wgt[i * nsym_ + a] = std::exp(lw(u, a) - wmax);
        }
    }

    // A small diagonal shift breaks periodicity without flattening the gap.
    const double shift = 1e-3;

    std::vector<double> x(n, 1.0), y(n);
    double max_y = 1, prev_ratio = -1;
    int stable = 0;
    for (std::size_t it = 0; it < max_iter; it++) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t a = 0; a < nsym_; a++) {
                int j = tgt[i * nsym_ + a];
                if (j < 0) continue;
                if (left)
                    y[j] += wgt[i * nsym_ + a] * x[i];
                else
                    y[i] += wgt[i * nsym_ + a] * x[j];
            }
        }
        for (std::size_t i = 0; i < n; i++) y[i] += shift * x[i];
        max_y = 0;
        for (double v : y) max_y = std::max(max_y, v);
        double resid = 0;
        for (std::size_t i = 0; i < n; i++) {
            y[i] /= max_y;
            resid = std::max(resid, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        bool lam_ok = std::abs(max_y - prev_ratio) <= tol * max_y;
        prev_ratio = max_y;
        stable = (resid < tol && lam_ok) ? stable + 1 : 0;
        if (stable >= 3) {
            double scaled = max_y - shift;  // rho(M)/e^wmax after removing the shift
            require(scaled > 0, errkind::precision, MOD,
                    "leading eigenvalue vanished under the working scale");
            out.assign(nstates_, NEG_INF);
            for (std::size_t i = 0; i < n; i++)
                out[members[i]] = x[i] > 0 ? std::log(x[i]) : NEG_INF;
            return wmax + std::log(scaled);
        }
    }
    fail(errkind::precision, MOD,
         "power iteration did not converge within " + std::to_string(max_iter) + " steps");
}

void TransferChain::build_measure(double tol, std::size_t max_iter) {
    std::size_t nscc = 0;
    for (int id : scc_id_) nscc = std::max<std::size_t>(nscc, static_cast<std::size_t>(id) + 1);
    std::vector<std::vector<std::size_t>> classes(nscc);
    for (std::size_t u = 0; u < nstates_; u++) classes[scc_id_[u]].push_back(u);
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < nscc; c++) {
        bool internal = false;
        for (std::size_t u : classes[c]) {
            for (std::size_t a = 0; a < nsym_ && !internal; a++)
                if (lw(u, a) != NEG_INF && scc_id_[step(u, a)] == static_cast<int>(c))
                    internal = true;
            if (internal) break;
        }
        if (internal) candidates.push_back(c);
    }
    require(!candidates.empty(), errkind::contract, MOD,
            "transfer support has no recurrent class (all weights vanish)");
    nclasses_ = candidates.size();

    double best = NEG_INF;
    std::size_t best_c = candidates[0];
    std::vector<double> scratch;
    std::vector<std::pair<std::size_t, double>> lambdas;
    for (std::size_t c : candidates) {
        double ll = power_iterate(classes[c], false, scratch, tol, max_iter);
        lambdas.emplace_back(c, ll);
        if (ll > best) {
            best = ll;
            best_c = c;
        }
    }
    if (nclasses_ > 1) {
        int top = 0;
        std::string info;
        for (auto& [c, ll] : lambdas) {
            if (std::abs(ll - best) < 1e-9) top++;
            info += "class " + std::to_string(c) + " (" + std::to_string(classes[c].size()) +
                    " states) log-lambda " + std::to_string(ll) + "; ";
        }
        require(top == 1, errkind::contract, MOD,
                "reducible transfer with ambiguous leading class: " + info);
    }

    class_states_ = classes[best_c];
    in_class_.assign(nstates_, 0);
    for (std::size_t u : class_states_) in_class_[u] = 1;
    log_lambda_ = power_iterate(class_states_, false, log_r_, tol, max_iter);
    double check = power_iterate(class_states_, true, log_l_, tol, max_iter);
    require(std::abs(check - log_lambda_) < 1e-8, errkind::precision, MOD,
            "left/right eigenvalues disagree");

    log_pi_.assign(nstates_, NEG_INF);
    double norm = NEG_INF;
    for (std::size_t u : class_states_) {
        log_pi_[u] = log_l_[u] + log_r_[u];
        norm = logsumexp(norm, log_pi_[u]);
    }
    for (std::size_t u : class_states_) log_pi_[u] -= norm;

    // Entropy and energy of the stationary Markov measure; the per-symbol
    // multiplicities contribute their expected log to the entropy.
    entropy_ = 0;
    energy_ = 0;
    for (std::size_t u : class_states_) {
        double pu = std::exp(log_pi_[u]);
        if (pu == 0) continue;
        for (std::size_t a = 0; a < nsym_; a++) {
            double w = lw(u, a);
            if (w == NEG_INF) continue;
            std::size_t v = step(u, a);
            if (!in_class_[v]) continue;
            double logp = w + log_r_[v] - log_lambda_ - log_r_[u];
            double p = std::exp(logp);
            if (p == 0) continue;
            entropy_ += pu * p * (logmult_[a] - logp);
            energy_ += pu * p * value_(u, a);
        }
    }
}

double TransferChain::cylinder_mass(const std::vector<std::size_t>& word) const {
    require(!word.empty(), errkind::contract, MOD, "empty cylinder word");
    for (std::size_t a : word)
        require(a < nsym_, errkind::contract, MOD, "cylinder symbol out of range");
    const std::size_t n = word.size();
    if (n <= memory_) {
        std::size_t tail = 1;
        for (std::size_t i = 0; i < memory_ - n; i++) tail *= nsym_;
        std::size_t prefix = 0;
        for (std::size_t a : word) prefix = prefix * nsym_ + a;
        double total = 0;
        for (std::size_t t = 0; t < tail; t++) {
            std::size_t u = prefix * tail + t;
            if (log_pi_[u] != NEG_INF) total += std::exp(log_pi_[u]);
        }
        return total;
    }
    std::size_t u = 0;
    for (std::size_t i = 0; i < memory_; i++) u = u * nsym_ + word[i];
    if (memory_ > 0 && !in_class_[u]) return 0.0;
    double logp = memory_ > 0 ? log_pi_[u] : 0.0;
    if (logp == NEG_INF) return 0.0;
    for (std::size_t i = memory_; i < n; i++) {
        std::size_t a = word[i];
        double w = lw(u, a);
        std::size_t v = step(u, a);
        if (w == NEG_INF || (memory_ > 0 && !in_class_[v])) return 0.0;
        logp += w + log_r_[v] - log_lambda_ - log_r_[u];
        u = v;
    }
    return std::exp(logp);
}

bool TransferChain::zero_energy_nonempty(double tol) const {
    std::vector<char> color(nstates_, 0);
    struct Frame {
        std::size_t u, a;
    };
    for (std::size_t root = 0; root < nstates_; root++) {
        if (color[root]) continue;
        std::vector<Frame> st{{root, 0}};
        color[root] = 1;
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.a < nsym_) {
                std::size_t a = f.a++;
                if (lw(f.u, a) == NEG_INF) continue;
                double v = value_(f.u, a);
                if (!(std::abs(v) <= tol)) continue;
                std::size_t w = step(f.u, a);
                if (color[w] == 1) return true;
                if (color[w] == 0) {
                    color[w] = 1;
                    st.push_back({w, 0});
                }
            } else {
                color[f.u] = 2;
                st.pop_back();
            }
        }
    }
    return false;
}

}  // namespace sz
