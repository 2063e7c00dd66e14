#include "tmachine.hpp"

#include <sstream>

namespace sz {

static const char* MOD = "tm-tiles";

TMSpec TMSpec::parse(const std::string& text) {
    TMSpec tm;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    struct RawRule {
        std::string q, s, q2, s2, mv;
        int line;
    };
    std::vector<RawRule> raw;
    std::vector<std::string> halt_names;
    std::string blank_name;
    bool have_blank = false;
    while (std::getline(is, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "states") {
            std::string s;
            while (ls >> s) {
                require(tm.state_index_.emplace(s, static_cast<int>(tm.states_.size())).second,
                        errkind::parse, MOD,
                        "line " + std::to_string(lineno) + ": duplicate state " + s);
                tm.states_.push_back(s);
            }
        } else if (head == "halt") {
            std::string s;
            while (ls >> s) halt_names.push_back(s);
        } else if (head == "blank") {
            require(static_cast<bool>(ls >> blank_name), errkind::parse, MOD,
                    "line " + std::to_string(lineno) + ": blank needs a symbol");
            have_blank = true;
        } else if (head == "rule") {
            RawRule r;
            std::string arrow;
            if (!(ls >> r.q >> r.s >> arrow >> r.q2 >> r.s2 >> r.mv) || arrow != "->")
                fail(errkind::parse, MOD,
                     "line " + std::to_string(lineno) +
                         ": expected 'rule q s -> q2 s2 L|R|S'");
            r.line = lineno;
            raw.push_back(r);
        } else {
            fail(errkind::parse, MOD, "line " + std::to_string(lineno) + ": unknown directive");
        }
    }
    require(!tm.states_.empty(), errkind::parse, MOD,
            "no states declared; the initial state is unreachable");
    require(have_blank, errkind::parse, MOD, "missing blank declaration");

    auto intern_symbol = [&](const std::string& name) {
        auto it = tm.symbol_index_.find(name);
        if (it != tm.symbol_index_.end()) return it->second;
        int id = static_cast<int>(tm.symbols_.size());
        tm.symbols_.push_back(name);
        tm.symbol_index_.emplace(name, id);
        return id;
    };
    tm.blank_ = intern_symbol(blank_name);
    for (const std::string& h : halt_names) {
        auto it = tm.state_index_.find(h);
        require(it != tm.state_index_.end(), errkind::parse, MOD,
                "halting state " + h + " not declared");
        tm.halting_.insert(it->second);
    }
    for (const RawRule& r : raw) {
        auto qi = tm.state_index_.find(r.q);
        require(qi != tm.state_index_.end(), errkind::parse, MOD,
                "line " + std::to_string(r.line) + ": unknown state " + r.q);
        auto q2i = tm.state_index_.find(r.q2);
        require(q2i != tm.state_index_.end(), errkind::parse, MOD,
                "line " + std::to_string(r.line) + ": unknown state " + r.q2);
        require(!tm.halting_.count(qi->second), errkind::parse, MOD,
                "line " + std::to_string(r.line) + ": halting state has an outgoing rule");
        int s = intern_symbol(r.s);
        int s2 = intern_symbol(r.s2);
        Move mv;
        if (r.mv == "L")
            mv = Move::L;
        else if (r.mv == "R")
            mv = Move::R;
        else if (r.mv == "S")
            mv = Move::S;
        else
            fail(errkind::parse, MOD, "line " + std::to_string(r.line) + ": bad move " + r.mv);
        require(tm.rules_.emplace(std::make_pair(qi->second, s), TMRule{q2i->second, s2, mv})
                    .second,
                errkind::parse, MOD,
                "line " + std::to_string(r.line) + ": duplicate transition for (" + r.q + ", " +
                    r.s + ")");
    }
    // Totality: every non-halting state must act on every symbol.
    for (int q = 0; q < tm.state_count(); q++) {
        if (tm.is_halting(q)) continue;
        for (int s = 0; s < tm.symbol_count(); s++)
            require(tm.rules_.count({q, s}) > 0, errkind::parse, MOD,
                    "missing transition for (" + tm.states_[q] + ", " + tm.symbols_[s] + ")");
    }
    return tm;
}

std::string TMSpec::print() const {
    std::ostringstream os;
    os << "states";
    for (const auto& s : states_) os << " " << s;
    os << "\n";
    if (!halting_.empty()) {
        os << "halt";
        for (int q : halting_) os << " " << states_[q];
        os << "\n";
    }
    os << "blank " << symbols_[blank_] << "\n";
    for (const auto& [key, r] : rules_) {
        os << "rule " << states_[key.first] << " " << symbols_[key.second] << " -> "
           << states_[r.next_state] << " " << symbols_[r.write] << " "
           << (r.move == Move::L ? "L" : r.move == Move::R ? "R" : "S") << "\n";
    }
    return os.str();
}

const TMRule& TMSpec::rule(int q, int s) const {
    auto it = rules_.find({q, s});
    require(it != rules_.end(), errkind::contract, MOD, "no transition for the given pair");
    return it->second;
}

std::optional<int> TMSpec::find_symbol(const std::string& name) const {
    auto it = symbol_index_.find(name);
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
}

int TMSpec::state_index(const std::string& name) const {
    auto it = state_index_.find(name);
    require(it != state_index_.end(), errkind::contract, MOD, "unknown state " + name);
    return it->second;
}

std::set<int> TMSpec::right_targets() const {
    std::set<int> out;
    for (const auto& [key, r] : rules_)
        if (r.move == Move::R) out.insert(r.next_state);
    return out;
}

std::set<int> TMSpec::left_targets() const {
    std::set<int> out;
    for (const auto& [key, r] : rules_)
        if (r.move == Move::L) out.insert(r.next_state);
    return out;
}

std::vector<int> encode_input(const TMSpec& tm, const std::string& input) {
    std::vector<int> out;
    for (char c : input) {
        auto s = tm.find_symbol(std::string(1, c));
        require(s.has_value(), errkind::contract, MOD,
                std::string("input symbol not in tape alphabet: ") + c);
        out.push_back(*s);
    }
    return out;
}

SpaceTimeDiagram simulate(const TMSpec& tm, const std::string& input, int width, int steps) {
    require(steps >= 1, errkind::contract, MOD, "steps must be >= 1");
    std::vector<int> in = encode_input(tm, input);
    require(static_cast<int>(in.size()) <= width, errkind::contract, MOD,
            "input longer than the declared width");
    SpaceTimeDiagram d;
    d.width = width;
    std::vector<int> tape(width, tm.blank());
    for (std::size_t i = 0; i < in.size(); i++) tape[i] = in[i];
    int head = 0, state = tm.initial_state();
    auto snapshot = [&]() {
        std::vector<DiagramCell> row(width);
        for (int x = 0; x < width; x++) row[x] = DiagramCell{tape[x], x == head ? state : -1};
        d.rows.push_back(std::move(row));
    };
    snapshot();
    for (int t = 0; t < steps; t++) {
        if (tm.is_halting(state)) {
            d.halted = true;
            return d;
        }
        const TMRule& r = tm.rule(state, tape[head]);
        tape[head] = r.write;
        state = r.next_state;
        if (r.move == Move::L) head--;
        if (r.move == Move::R) head++;
        if (head < 0 || head >= width)
            fail(errkind::contract, MOD,
                 "head left the tape at step " + std::to_string(t + 1));
        snapshot();
    }
    d.halted = tm.is_halting(state);
    return d;
}

std::string SpaceTimeDiagram::render(const TMSpec& tm) const {
    std::ostringstream os;
    for (int t = height() - 1; t >= 0; t--) {
        os << "t=" << t << " |";
        for (const DiagramCell& c : rows[t]) {
            if (c.state >= 0)
                os << " " << tm.state_name(c.state) << ":" << tm.symbol_name(c.symbol);
            else
                os << " " << tm.symbol_name(c.symbol);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace sz
