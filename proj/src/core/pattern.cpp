#include "pattern.hpp"

#include <algorithm>
#include <sstream>

namespace sz {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    require(!symbols_.empty(), errkind::contract, "symbolic-core", "alphabet must be nonempty");
    for (std::size_t i = 0; i < symbols_.size(); i++) {
        auto [it, fresh] = index_.emplace(symbols_[i], i);
        require(fresh, errkind::contract, "symbolic-core",
                "duplicate alphabet symbol: " + symbols_[i]);
    }
}

std::size_t Alphabet::index(const std::string& sym) const {
    auto it = index_.find(sym);
    require(it != index_.end(), errkind::contract, "symbolic-core", "unknown symbol: " + sym);
    return it->second;
}

static bool point_less(const Point& a, const Point& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
}

Window::Window(int dimension, std::vector<Point> points) : dim_(dimension), points_(std::move(points)) {
    require(dim_ == 1 || dim_ == 2, errkind::contract, "symbolic-core", "dimension must be 1 or 2");
    require(!points_.empty(), errkind::contract, "symbolic-core", "window must be nonempty");
    int mnx = points_[0][0], mny = points_[0][1];
    for (const Point& p : points_) {
        mnx = std::min(mnx, p[0]);
        mny = std::min(mny, p[1]);
    }
    for (Point& p : points_) {
        p[0] -= mnx;
        p[1] -= mny;
        if (dim_ == 1)
            require(p[1] == 0, errkind::contract, "symbolic-core", "1D window with y != 0");
    }
    std::sort(points_.begin(), points_.end(), point_less);
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (const Point& p : points_) {
        w_ = std::max(w_, p[0] + 1);
        h_ = std::max(h_, p[1] + 1);
    }
}

Window Window::segment(int length) {
    require(length >= 1, errkind::contract, "symbolic-core", "segment length must be >= 1");
    std::vector<Point> pts;
    for (int x = 0; x < length; x++) pts.push_back({x, 0});
    return Window(1, std::move(pts));
}

Window Window::rect(int w, int h, int dim) {
    require(w >= 1 && h >= 1, errkind::contract, "symbolic-core", "rect sides must be >= 1");
    if (dim == 0) dim = h == 1 ? 1 : 2;
    require(dim == 2 || h == 1, errkind::contract, "symbolic-core", "1D rect must have height 1");
    std::vector<Point> pts;
    for (int y = 0; y < h; y++)
        for (int x = 0; x < w; x++) pts.push_back({x, y});
    return Window(dim, std::move(pts));
}

Window Window::square_centered(int n, int d) {
    require(n >= 1, errkind::contract, "symbolic-core", "n must be >= 1");
    int side = 2 * n - 1;
    return d == 1 ? segment(side) : rect(side, side);
}

Window Window::cross() {
    return Window(2, {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

bool Window::is_rect() const { return static_cast<std::size_t>(w_) * h_ == points_.size(); }

int Window::find(const Point& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p, point_less);
    if (it != points_.end() && *it == p) return static_cast<int>(it - points_.begin());
    return -1;
}

Pattern::Pattern(AlphabetPtr alphabet, Window window, std::vector<uint8_t> symbols)
    : alphabet_(std::move(alphabet)), window_(std::move(window)), symbols_(std::move(symbols)) {
    require(symbols_.size() == window_.size(), errkind::contract, "symbolic-core",
            "pattern symbol count does not match window size");
    for (uint8_t s : symbols_)
        require(s < alphabet_->size(), errkind::contract, "symbolic-core",
                "pattern symbol index out of range");
}

Pattern Pattern::from_string(AlphabetPtr alphabet, const std::string& row) {
    std::vector<uint8_t> syms;
    for (char c : row) syms.push_back(static_cast<uint8_t>(alphabet->index(std::string(1, c))));
    Window w = Window::segment(static_cast<int>(syms.size()));
    return Pattern(std::move(alphabet), std::move(w), std::move(syms));
}

bool Pattern::operator==(const Pattern& o) const {
    return *alphabet_ == *o.alphabet_ && window_ == o.window_ && symbols_ == o.symbols_;
}

bool Pattern::operator<(const Pattern& o) const {
    if (!(window_ == o.window_)) return window_.points() < o.window_.points();
    return symbols_ < o.symbols_;
}

std::string Pattern::str() const {
    std::ostringstream os;
    // Rows printed top-first to match the file format.
    for (int y = window_.height() - 1; y >= 0; y--) {
        if (y != window_.height() - 1) os << ";";
        bool first = true;
        for (int x = 0; x < window_.width(); x++) {
            int idx = window_.find({x, y});
            if (idx < 0) continue;
            if (!first) os << " ";
            os << alphabet_->name(symbols_[idx]);
            first = false;
        }
    }
    return os.str();
}

ForbiddenSet::ForbiddenSet(AlphabetPtr alphabet, std::vector<Pattern> patterns)
    : alphabet_(std::move(alphabet)), patterns_(std::move(patterns)) {
    for (const Pattern& p : patterns_)
        require(p.alphabet() == *alphabet_, errkind::contract, "symbolic-core",
                "forbidden pattern over a different alphabet");
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

bool occurs_in(const Pattern& p, const Pattern& q) {
    require(p.alphabet() == q.alphabet(), errkind::contract, "symbolic-core",
            "occurrence check across different alphabets");
    require(p.window().dimension() == q.window().dimension(), errkind::contract, "symbolic-core",
            "occurrence check across different dimensions");
    // A translate of p must fit fully inside q (patterns straddling the
    // boundary do not count).
    int dx_max = q.window().width() - p.window().width();
    int dy_max = q.window().height() - p.window().height();
    for (int dy = 0; dy <= dy_max; dy++)
        for (int dx = 0; dx <= dx_max; dx++) {
            bool match = true;
            for (std::size_t i = 0; i < p.window().size() && match; i++) {
                const Point& pp = p.window().points()[i];
                int qi = q.window().find({pp[0] + dx, pp[1] + dy});
                if (qi < 0 || q.at(qi) != p.at(i)) match = false;
            }
            if (match) return true;
        }
    return false;
}

bool locally_admissible(const Pattern& w, const ForbiddenSet& F) {
    for (const Pattern& f : F.patterns())
        if (occurs_in(f, w)) return false;
    return true;
}

std::vector<Pattern> enumerate_admissible(const ForbiddenSet& F, const Window& shape,
                                          const mpz_class& cap) {
    const std::size_t a = F.alphabet().size();
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), a, shape.size());
    if (total > cap)
        fail(errkind::cap, "symbolic-core",
             "enumeration of " + total.get_str() + " patterns exceeds cap " + cap.get_str());
    std::vector<Pattern> out;
    std::vector<uint8_t> syms(shape.size(), 0);
    // Odometer over symbol indices, first point most significant.
    while (true) {
        Pattern cand(F.alphabet_ptr(), shape, syms);
        if (locally_admissible(cand, F)) out.push_back(std::move(cand));
        int i = static_cast<int>(syms.size()) - 1;
        while (i >= 0 && syms[i] == a - 1) syms[i--] = 0;
        if (i < 0) break;
        syms[i]++;
    }
    return out;
}

mpz_class count_admissible_dp(const ForbiddenSet& F, unsigned long length,
                              unsigned long state_cap) {
    const std::size_t a = F.alphabet().size();
    require(length >= 1, errkind::contract, "symbolic-core", "length must be >= 1");
    unsigned long w = 1;  // max forbidden pattern length
    for (const Pattern& p : F.patterns()) {
        require(p.window().dimension() == 1, errkind::contract, "symbolic-core",
                "DP counting requires 1D forbidden patterns");
        w = std::max(w, static_cast<unsigned long>(p.window().size()));
    }
    // Suffix-of-window test: does any forbidden pattern sit at the end of s?
    auto blocked_suffix = [&](const std::vector<uint8_t>& s) {
        for (const Pattern& p : F.patterns()) {
            std::size_t n = p.window().size();
            if (n > s.size()) continue;
            if (std::equal(p.symbols().begin(), p.symbols().end(), s.end() - n)) return true;
        }
        return false;
    };

    if (length < w) {
        // Window never fills; count admissible short strings directly.
        mpz_class total;
        mpz_ui_pow_ui(total.get_mpz_t(), a, length);
        if (total > mpz_class(state_cap))
            fail(errkind::cap, "symbolic-core", "short-string enumeration exceeds state cap");
        Window shape = Window::segment(static_cast<int>(length));
        return mpz_class(enumerate_admissible(F, shape, mpz_class(state_cap)).size());
    }

    // States are admissible (w-1)-strings; appending a symbol is legal when no
    // forbidden pattern ends at the new position.
    mpz_class nstates_z;
    mpz_ui_pow_ui(nstates_z.get_mpz_t(), a, w - 1);
    if (nstates_z > mpz_class(state_cap))
        fail(errkind::cap, "symbolic-core",
             "window automaton needs " + nstates_z.get_str() + " states, cap " +
                 std::to_string(state_cap));
    const std::size_t nstates = nstates_z.get_ui();

    auto decode = [&](std::size_t code) {
        std::vector<uint8_t> s(w - 1);
        for (std::size_t i = w - 1; i-- > 0;) {
            s[i] = static_cast<uint8_t>(code % a);
            code /= a;
        }
        return s;
    };

    // Seed: admissible strings of length w-1 (every forbidden factor inside
    // them is caught by checking suffixes of every prefix).
    std::vector<mpz_class> dp(nstates, 0);
    for (std::size_t code = 0; code < nstates; code++) {
        std::vector<uint8_t> s = decode(code);
        bool ok = true;
        for (std::size_t pre = 1; pre <= s.size() && ok; pre++) {
            std::vector<uint8_t> prefix(s.begin(), s.begin() + pre);
            if (blocked_suffix(prefix)) ok = false;
        }
        if (ok) dp[code] = 1;
    }
    if (length == w - 1) {
        mpz_class tot = 0;
        for (const auto& v : dp) tot += v;
        return tot;
    }

    // Transition legality table.
    std::vector<std::vector<std::size_t>> next(nstates);
    for (std::size_t code = 0; code < nstates; code++) {
        std::vector<uint8_t> s = decode(code);
        for (std::size_t c = 0; c < a; c++) {
            std::vector<uint8_t> ext = s;
            ext.push_back(static_cast<uint8_t>(c));
            if (blocked_suffix(ext)) continue;
            std::size_t ncode = 0;
            for (std::size_t i = 1; i < ext.size(); i++) ncode = ncode * a + ext[i];
            next[code].push_back(ncode);
        }
    }

    for (unsigned long pos = w - 1; pos < length; pos++) {
        std::vector<mpz_class> ndp(nstates, 0);
        for (std::size_t code = 0; code < nstates; code++) {
            if (dp[code] == 0) continue;
            for (std::size_t ncode : next[code]) ndp[ncode] += dp[code];
        }
        dp.swap(ndp);
    }
    mpz_class tot = 0;
    for (const auto& v : dp) tot += v;
    return tot;
}

static std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

ForbiddenSet parse_forbidden(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    AlphabetPtr alphabet;
    std::vector<Pattern> pats;
    int lineno = 0;
    while (std::getline(is, line)) {
        lineno++;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "alphabet") {
            require(toks.size() >= 2, errkind::parse, "symbolic-core",
                    "line " + std::to_string(lineno) + ": alphabet needs symbols");
            alphabet = std::make_shared<Alphabet>(
                std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else if (toks[0] == "pat") {
            require(alphabet != nullptr, errkind::parse, "symbolic-core",
                    "line " + std::to_string(lineno) + ": pat before alphabet");
            require(toks.size() >= 2, errkind::parse, "symbolic-core",
                    "line " + std::to_string(lineno) + ": pat needs a WxH size");
            int w = 0, h = 0;
            if (std::sscanf(toks[1].c_str(), "%dx%d", &w, &h) != 2 || w < 1 || h < 1)
                fail(errkind::parse, "symbolic-core",
                     "line " + std::to_string(lineno) + ": bad size " + toks[1]);
            // Re-join the remainder and split rows on ';' (rows listed top-first).
            std::string rest;
            for (std::size_t i = 2; i < toks.size(); i++) {
                if (i > 2) rest += " ";
                rest += toks[i];
            }
            std::vector<std::string> rows;
            std::string cur;
            for (char c : rest) {
                if (c == ';') {
                    rows.push_back(cur);
                    cur.clear();
                } else
                    cur += c;
            }
            rows.push_back(cur);
            require(static_cast<int>(rows.size()) == h, errkind::parse, "symbolic-core",
                    "line " + std::to_string(lineno) + ": expected " + std::to_string(h) +
                        " rows");
            std::vector<uint8_t> syms(static_cast<std::size_t>(w) * h);
            for (int r = 0; r < h; r++) {
                auto row_toks = split_ws(rows[r]);
                require(static_cast<int>(row_toks.size()) == w, errkind::parse, "symbolic-core",
                        "line " + std::to_string(lineno) + ": expected " + std::to_string(w) +
                            " symbols per row");
                int y = h - 1 - r;  // first row in the file is the top row
                for (int x = 0; x < w; x++)
                    syms[static_cast<std::size_t>(y) * w + x] =
                        static_cast<uint8_t>(alphabet->index(row_toks[x]));
            }
            pats.emplace_back(alphabet, Window::rect(w, h), std::move(syms));
        } else {
            fail(errkind::parse, "symbolic-core",
                 "line " + std::to_string(lineno) + ": unknown directive " + toks[0]);
        }
    }
    require(alphabet != nullptr, errkind::parse, "symbolic-core", "missing alphabet line");
    // A file mixing strings with planar patterns describes a 2D subshift;
    // lift the height-1 patterns into the plane so the set is homogeneous.
    bool any2d = false;
    for (const Pattern& p : pats) any2d |= p.window().dimension() == 2;
    if (any2d) {
        for (Pattern& p : pats) {
            if (p.window().dimension() == 1) {
                Window w = Window::rect(p.window().width(), 1, 2);
                p = Pattern(alphabet, w, p.symbols());
            }
        }
    }
    return ForbiddenSet(alphabet, std::move(pats));
}

std::string print_forbidden(const ForbiddenSet& F) {
    std::ostringstream os;
    os << "alphabet";
    for (std::size_t i = 0; i < F.alphabet().size(); i++) os << " " << F.alphabet().name(i);
    os << "\n";
    for (const Pattern& p : F.patterns()) {
        os << "pat " << p.window().width() << "x" << p.window().height() << " " << p.str() << "\n";
    }
    return os.str();
}

}  // namespace sz
