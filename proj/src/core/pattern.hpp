#pragma once
#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sz {

// Ordered list of distinct symbol names; index() is a bijection onto 0..n-1.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);
    std::size_t size() const { return symbols_.size(); }
    const std::string& name(std::size_t i) const { return symbols_.at(i); }
    std::size_t index(const std::string& sym) const;
    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, std::size_t> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

using Point = std::array<int, 2>;  // (x, y); y is 0 for d=1

// Finite point set stored in the canonical translate whose coordinate-wise
// minimum is the origin, points sorted row-major (by y, then x).
class Window {
public:
    Window(int dimension, std::vector<Point> points);
    static Window segment(int length);             // d=1, {0..length-1} x {0}
    // Box window; dim 0 infers the dimension (1 when h == 1, else 2), and an
    // explicit dim of 2 makes a height-1 box live in the plane.
    static Window rect(int w, int h, int dim = 0);
    static Window square_centered(int n, int d);    // canonical 2n-1 sided cube
    static Window cross();                          // origin plus 4 neighbours, canonicalized

    int dimension() const { return dim_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    // Bounding box extents (canonical form starts at 0).
    int width() const { return w_; }
    int height() const { return h_; }
    bool is_rect() const;
    // Index of a point in the sorted list, or -1.
    int find(const Point& p) const;
    bool operator==(const Window& o) const { return dim_ == o.dim_ && points_ == o.points_; }

private:
    int dim_;
    std::vector<Point> points_;
    int w_ = 0, h_ = 0;
};

// Symbols assigned to every point of a window, over a fixed alphabet.
// Stored canonically, so congruence (equality up to translation) is plain
// equality.
class Pattern {
public:
    Pattern(AlphabetPtr alphabet, Window window, std::vector<uint8_t> symbols);
    static Pattern from_string(AlphabetPtr alphabet, const std::string& row);

    const Alphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
    const Window& window() const { return window_; }
    const std::vector<uint8_t>& symbols() const { return symbols_; }
    uint8_t at(std::size_t point_index) const { return symbols_[point_index]; }

    bool operator==(const Pattern& o) const;
    bool operator<(const Pattern& o) const;  // for dedup / deterministic order
    std::string str() const;                 // row text, rows top-first, ';' separated

private:
    AlphabetPtr alphabet_;
    Window window_;
    std::vector<uint8_t> symbols_;
};

class ForbiddenSet {
public:
    ForbiddenSet(AlphabetPtr alphabet, std::vector<Pattern> patterns);
    const Alphabet& alphabet() const { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
    const std::vector<Pattern>& patterns() const { return patterns_; }
    bool empty() const { return patterns_.empty(); }

private:
    AlphabetPtr alphabet_;
    std::vector<Pattern> patterns_;  // deduplicated, sorted
};

// True iff some translate of p's window fits inside q's window with equal
// symbols. Both patterns must share an alphabet and dimension.
bool occurs_in(const Pattern& p, const Pattern& q);

// True iff no element of F occurs in w.
bool locally_admissible(const Pattern& w, const ForbiddenSet& F);

// All shape-patterns avoiding F, in lexicographic symbol-index order (first
// point most significant). The full-shift count |S|^|shape| must stay below
// `cap`, otherwise an enumeration-overflow error is raised.
std::vector<Pattern> enumerate_admissible(const ForbiddenSet& F, const Window& shape,
                                          const mpz_class& cap = mpz_class(1) << 22);

// Exact count of admissible length-n strings (d=1 only) via the sliding
// window automaton; automaton state count must stay below `state_cap`.
mpz_class count_admissible_dp(const ForbiddenSet& F, unsigned long length,
                              unsigned long state_cap = 1ul << 22);

// Line-oriented text format: "alphabet a b ...", then "pat WxH row;row;..."
// with rows listed top-first and symbols space-separated inside a row.
ForbiddenSet parse_forbidden(const std::string& text);
std::string print_forbidden(const ForbiddenSet& F);

}  // namespace sz
