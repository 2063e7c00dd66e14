#pragma once
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sz {

enum class Move { L, R, S };

struct TMRule {
    int next_state;
    int write;
    Move move;
};

// Deterministic single-tape machine. States and tape symbols are interned;
// the first declared state is initial, halting states have no rules and the
// rule table is total on the rest.
class TMSpec {
public:
    static TMSpec parse(const std::string& text);
    std::string print() const;

    int state_count() const { return static_cast<int>(states_.size()); }
    int symbol_count() const { return static_cast<int>(symbols_.size()); }
    const std::string& state_name(int q) const { return states_.at(q); }
    const std::string& symbol_name(int s) const { return symbols_.at(s); }
    int initial_state() const { return 0; }
    int blank() const { return blank_; }
    bool is_halting(int q) const { return halting_.count(q) > 0; }
    const TMRule& rule(int q, int s) const;
    int rule_count() const { return static_cast<int>(rules_.size()); }
    std::optional<int> find_symbol(const std::string& name) const;
    int state_index(const std::string& name) const;

    // Targets reachable by moving right/left (used by the tile compiler).
    std::set<int> right_targets() const;
    std::set<int> left_targets() const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> symbols_;
    std::map<std::string, int> state_index_, symbol_index_;
    int blank_ = -1;
    std::set<int> halting_;
    std::map<std::pair<int, int>, TMRule> rules_;
};

// One tape cell of a rendered run: symbol plus the head state when present.
struct DiagramCell {
    int symbol;
    int state = -1;  // -1: no head here
    bool operator==(const DiagramCell&) const = default;
};

struct SpaceTimeDiagram {
    int width = 0;
    std::vector<std::vector<DiagramCell>> rows;  // rows[0] = initial configuration
    int height() const { return static_cast<int>(rows.size()); }
    bool halted = false;  // a halting state appears in the last row
    std::string render(const TMSpec& tm) const;
};

// Runs the machine on `input` (head on cell 0, blanks to the right) for up to
// `steps` transitions inside a tape of `width` cells; stops early on halt.
// Leaving the tape raises a boundary-exit error naming the step.
SpaceTimeDiagram simulate(const TMSpec& tm, const std::string& input, int width, int steps);

// Symbol indices of an input string; errors on unknown symbols.
std::vector<int> encode_input(const TMSpec& tm, const std::string& input);

}  // namespace sz
