#include "cfk/order.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "cfk/errors.hpp"
#include "cfk/invariants.hpp"

namespace cfk {

namespace {

// Maslov gradings and Alexander offsets relative to t0 along a standard
// sequence; valid for prefixes as well.
struct Profile {
    std::vector<int> maslov;
    std::vector<int> offset;
};

Profile profile(const std::vector<int>& s) {
    Profile p;
    p.maslov.push_back(0);
    p.offset.push_back(0);
    for (std::size_t k = 1; k <= s.size(); ++k) {
        const int v = s[k - 1];
        const int len = v > 0 ? v : -v;
        const bool horizontal = k % 2 == 1;
        const int m = p.maslov.back();
        if (horizontal)
            p.maslov.push_back(v > 0 ? m + 1 - 2 * len : m - 1 + 2 * len);
        else
            p.maslov.push_back(v > 0 ? m + 1 : m - 1);
        p.offset.push_back(horizontal ? p.offset.back() - v : p.offset.back() + v);
    }
    return p;
}

std::string sequence_text(const std::vector<int>& s) {
    std::ostringstream os;
    os << "std(";
    for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
    os << ")";
    return os.str();
}

int probe(const Complex& x, const std::vector<int>& s) {
    Complex t = tensor_unchecked(x, dual_unchecked(standard_complex(s)), true);
    if (!t.reduced()) t = reduce(t);
    return epsilon(t);
}

class RepresentativeSearch {
public:
    RepresentativeSearch(const Complex& x, const OrderOptions& opts) : x_(x), opts_(opts) {
        for (const auto& g : x.generators()) ++counts_[{g.alexander, g.maslov}];
        bound_ = std::max(1, x.a_max() - x.a_min());
    }

    StandardRepresentative run() {
        auto found = explore({}, 0);
        if (!found)
            throw SearchLimit("no standard representative found for '" + x_.name() + "' after " +
                              std::to_string(probes_) + " probes");
        return {*found, probes_};
    }

private:
    using Candidate = std::optional<std::pair<int, int>>;  // nullopt is the end of the sequence

    // A standard representative is a summand of the reduced complex, so its
    // generators fit into the graded multiset of x after one Alexander shift.
    bool fits(const std::vector<int>& s) const {
        if (s.size() + 1 > x_.size()) return false;
        const Profile p = profile(s);
        const auto [lo, hi] = std::minmax_element(p.offset.begin(), p.offset.end());
        for (int shift = x_.a_min() - *lo; shift <= x_.a_max() - *hi; ++shift) {
            std::map<std::pair<int, int>, int> need;
            bool ok = true;
            for (std::size_t k = 0; k < p.maslov.size() && ok; ++k) {
                const std::pair<int, int> key{shift + p.offset[k], p.maslov[k]};
                const auto it = counts_.find(key);
                ok = it != counts_.end() && ++need[key] <= it->second;
            }
            if (ok) return true;
        }
        return false;
    }

    static double key(int v) { return 1.0 / v; }

    // Candidates for the next pair, in decreasing order.  hint restricts the
    // sign of the next symbol; 0 also admits the end of the sequence.
    std::vector<Candidate> candidates(const std::vector<int>& prefix, int hint) const {
        std::vector<Candidate> out;
        std::vector<int> symbols;
        for (int v = 1; v <= bound_; ++v) symbols.push_back(v);
        for (int v = bound_; v >= 1; --v) symbols.push_back(-v);
        // symbols are now in decreasing key order
        bool end_placed = hint != 0;
        for (int v : symbols) {
            if (hint != 0 && (v > 0) != (hint > 0)) continue;
            if (v < 0 && !end_placed) {
                out.push_back(std::nullopt);
                end_placed = true;
            }
            for (int w : symbols) {
                auto s = prefix;
                s.push_back(v);
                s.push_back(w);
                if (fits(s)) out.push_back(std::make_pair(v, w));
            }
        }
        if (!end_placed) out.push_back(std::nullopt);
        return out;
    }

    static std::vector<int> extend(const std::vector<int>& prefix, const Candidate& c) {
        auto s = prefix;
        if (c) {
            s.push_back(c->first);
            s.push_back(c->second);
        }
        return s;
    }

    int compare_to(const std::vector<int>& s) {
        if (++probes_ > opts_.probe_budget)
            throw SearchLimit("probe budget " + std::to_string(opts_.probe_budget) + " exhausted for '" + x_.name() + "'");
        return probe(x_, s);
    }

    // Walks the sequence pair by pair.  hint is the sign of the next symbol
    // when already known (0 also admits the end of the sequence).
    std::optional<std::vector<int>> explore(std::vector<int> prefix, int hint) {
        for (;;) {
            const auto cands = candidates(prefix, hint);
            if (cands.empty()) return std::nullopt;
            std::map<std::size_t, int> memo;
            auto r = [&](std::size_t k) {
                auto it = memo.find(k);
                if (it != memo.end()) return it->second;
                return memo[k] = compare_to(extend(prefix, cands[k]));
            };
            const std::size_t last = cands.size() - 1;
            std::size_t chosen = 0;
            int follow = 0;
            const int first = r(0);
            if (first == 0) return extend(prefix, cands[0]);
            if (first > 0) {
                chosen = 0;
                follow = 1;
            } else {
                const int rl = r(last);
                if (rl == 0) return extend(prefix, cands[last]);
                if (rl < 0) {
                    chosen = last;
                    follow = -1;
                } else {
                    std::size_t lo = 0, hi = last;
                    while (hi - lo > 1) {
                        const std::size_t mid = lo + (hi - lo) / 2;
                        const int rm = r(mid);
                        if (rm == 0) return extend(prefix, cands[mid]);
                        (rm < 0 ? lo : hi) = mid;
                    }
                    if (!cands[hi]) {
                        chosen = lo;
                        follow = -1;
                    } else if (!cands[lo]) {
                        chosen = hi;
                        follow = 1;
                    } else {
                        const auto d = decide(prefix, *cands[lo], *cands[hi]);
                        if (d.found) return d.found;
                        chosen = d.upper ? lo : hi;
                        follow = d.upper ? -1 : 1;
                    }
                }
            }
            if (!cands[chosen]) return std::nullopt;
            prefix = extend(prefix, cands[chosen]);
            hint = follow;
        }
    }

    struct Decision {
        bool upper = false;  // the sequence continues the upper pair with a negative symbol
        std::optional<std::vector<int>> found;
    };

    // The sequence continues either the upper pair with a negative symbol or
    // the lower pair with a positive one.  Padding the lower pair with (1,1)
    // runs and the upper pair with (-1,-1) runs separates the two cases as
    // soon as the true continuation leaves such a run.
    Decision decide(const std::vector<int>& prefix, std::pair<int, int> upper, std::pair<int, int> lower) {
        auto lo_probe = extend(prefix, lower);
        auto up_probe = extend(prefix, upper);
        for (;;) {
            lo_probe.insert(lo_probe.end(), {1, 1});
            up_probe.insert(up_probe.end(), {-1, -1});
            if (lo_probe.size() + 1 > x_.size())
                throw SearchLimit("could not separate continuations of " + sequence_text(prefix) + " for '" + x_.name() + "'");
            const int rl = compare_to(lo_probe);
            if (rl == 0) return {false, lo_probe};
            if (rl < 0) return {false, std::nullopt};
            const int ru = compare_to(up_probe);
            if (ru == 0) return {true, up_probe};
            if (ru > 0) return {true, std::nullopt};
        }
    }

    const Complex& x_;
    const OrderOptions& opts_;
    std::map<std::pair<int, int>, int> counts_;
    int bound_ = 1;
    std::size_t probes_ = 0;
};

void require_nonzero(const Complex& c) {
    if (epsilon(c) == 0) throw ZeroElement("'" + c.name() + "' is epsilon-equivalent to the trivial complex");
}

}  // namespace

Complex standard_complex(const std::vector<int>& s) {
    if (s.size() % 2 != 0) throw PreconditionError("standard sequence " + sequence_text(s) + " has odd length");
    for (int v : s)
        if (v == 0) throw PreconditionError("standard sequence " + sequence_text(s) + " contains 0");
    const std::size_t n = s.size();
    const Profile p = profile(s);
    // gr_V = M - 2A, fixed to 0 at the last generator and propagated back.
    std::vector<int> grv(n + 1, 0);
    for (std::size_t k = n; k >= 1; --k) {
        const int v = s[k - 1];
        const int len = v > 0 ? v : -v;
        const bool horizontal = k % 2 == 1;
        if (horizontal)
            grv[k - 1] = v > 0 ? grv[k] - 1 : grv[k] + 1;
        else
            grv[k - 1] = v > 0 ? grv[k] - 1 + 2 * len : grv[k] + 1 - 2 * len;
    }
    std::vector<Generator> gens;
    for (std::size_t k = 0; k <= n; ++k)
        gens.push_back({"t" + std::to_string(k), (p.maslov[k] - grv[k]) / 2, p.maslov[k]});
    std::vector<Arrow> arrows;
    for (std::size_t k = 1; k <= n; ++k) {
        const int v = s[k - 1];
        const int len = v > 0 ? v : -v;
        const int upower = k % 2 == 1 ? len : 0;
        const int a = static_cast<int>(k) - 1, b = static_cast<int>(k);
        arrows.push_back(v > 0 ? Arrow{b, a, upower} : Arrow{a, b, upower});
    }
    std::sort(arrows.begin(), arrows.end(),
              [](const Arrow& x, const Arrow& y) { return std::tie(x.from, x.to, x.upower) < std::tie(y.from, y.to, y.upower); });
    return Complex(sequence_text(s), std::move(gens), std::move(arrows), true);
}

std::vector<int> staircase_standard_sequence(const std::vector<int>& steps) {
    std::vector<int> s;
    for (std::size_t k = 0; k < steps.size(); ++k) s.push_back(k % 2 == 0 ? steps[k] : -steps[k]);
    return s;
}

int standard_compare(const std::vector<int>& a, const std::vector<int>& b) {
    // 1/x > 1/y for nonzero x, y (and 0 standing for the end)
    auto greater = [](int x, int y) {
        if (x == y) return false;
        if (x == 0) return y < 0;
        if (y == 0) return x > 0;
        if ((x > 0) != (y > 0)) return x > 0;
        return x < y;
    };
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        const int x = k < a.size() ? a[k] : 0;
        const int y = k < b.size() ? b[k] : 0;
        if (x == y) {
            if (x == 0) return 0;
            continue;
        }
        return greater(x, y) ? 1 : -1;
    }
    return 0;
}

StandardRepresentative standard_representative(const Complex& c, const OrderOptions& opts) {
    if (!c.reduced()) throw NotReduced("standard representative needs a reduced complex: '" + c.name() + "'");
    return RepresentativeSearch(c, opts).run();
}

ComparisonResult compare(const Complex& c1, const Complex& c2, const OrderOptions& opts) {
    ComparisonResult out;
    Complex a = c1, b = c2;
    bool a_std = false, b_std = false;
    // Standard complexes are the smallest members of their classes, so once
    // both operands are standard the product is taken whatever its size.
    while (a.size() * b.size() > opts.direct_limit && !(a_std && b_std)) {
        const bool pick_a = !a_std && (b_std || a.size() >= b.size());
        Complex& target = pick_a ? a : b;
        target = standard_complex(standard_representative(target, opts).sequence);
        (pick_a ? a_std : b_std) = true;
        out.compressed = true;
    }
    Complex d = tensor_unchecked(a, dual_unchecked(b), true);
    if (!d.reduced()) d = reduce(d);
    out.value = epsilon(d);
    return out;
}

Complex abs(const Complex& c) { return epsilon(c) >= 0 ? c : dual_unchecked(c); }

MultipleLadder::MultipleLadder(Complex c, OrderOptions opts) : base_(std::move(c)), opts_(opts), current_(base_) {}

const Complex& MultipleLadder::next() {
    ++k_;
    if (!step_) {
        step_ = base_;
        if (base_.size() * base_.size() > opts_.compress_above) {
            Complex rep = standard_complex(standard_representative(base_, opts_).sequence);
            if (rep.size() < base_.size()) {
                step_ = rep;
                current_ = std::move(rep);
                current_standard_ = true;
                compressed_ = true;
            }
        }
    }
    if (!current_standard_ && current_.size() * step_->size() > opts_.compress_above) {
        current_ = standard_complex(standard_representative(current_, opts_).sequence);
        compressed_ = true;
    }
    Complex p = tensor_unchecked(current_, *step_, true);
    if (!p.reduced()) p = reduce(p);
    current_ = p.renamed(std::to_string(k_) + "x(" + base_.name() + ")");
    current_standard_ = false;
    return current_;
}

Complex class_multiple(const Complex& c, int k, const OrderOptions& opts) {
    if (k < 1) throw PreconditionError("class_multiple needs k >= 1");
    MultipleLadder ladder(c, opts);
    while (ladder.k() < k) ladder.next();
    return ladder.current();
}

ArchWitness arch_equivalent(const Complex& g, const Complex& h, int nmax, const OrderOptions& opts) {
    if (nmax < 1) throw PreconditionError("arch_equivalent needs Nmax >= 1");
    require_nonzero(g);
    require_nonzero(h);
    const Complex ag = abs(g), ah = abs(h);
    MultipleLadder lg(ag, opts), lh(ah, opts);
    ArchWitness w;
    for (int n = 1; n <= nmax; ++n) {
        if (!w.g_side) {
            while (lg.k() < n) lg.next();
            if (compare(lg.current(), ah, opts).value == 1) w.g_side = n;
        }
        if (!w.h_side) {
            while (lh.k() < n) lh.next();
            if (compare(lh.current(), ag, opts).value == 1) w.h_side = n;
        }
        if (w.g_side && w.h_side) {
            w.outcome = ArchWitness::Outcome::Witness;
            w.n = n;
            return w;
        }
    }
    w.searched_up_to = nmax;
    return w;
}

DominanceReport dominance_consistent(const Complex& small, const Complex& big, int nmax, const OrderOptions& opts) {
    if (nmax < 1) throw PreconditionError("dominance_consistent needs Nmax >= 1");
    require_nonzero(small);
    require_nonzero(big);
    const Complex as = abs(small), ab = abs(big);
    MultipleLadder ladder(as, opts);
    DominanceReport r;
    for (int n = 1; n <= nmax; ++n) {
        while (ladder.k() < n) ladder.next();
        if (compare(ab, ladder.current(), opts).value != 1) {
            r.refuted_at = n;
            return r;
        }
        r.consistent_up_to = n;
    }
    return r;
}

}  // namespace cfk
