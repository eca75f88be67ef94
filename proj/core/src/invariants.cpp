#include "cfk/invariants.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "cfk/errors.hpp"
#include "cfk/region.hpp"

namespace cfk {

namespace {

constexpr int kFar = INT_MIN / 4;

using f2::SparseVec;

SparseVec copies_at(const RegionComplex& r, const std::vector<int>& gens, int i) {
    std::vector<std::uint32_t> raw;
    for (int g : gens) {
        const long k = r.index_of(g, i);
        if (k < 0) throw PreconditionError("copy of " + r.source().gen(g).id + " missing from " + r.spec().describe());
        raw.push_back(static_cast<std::uint32_t>(k));
    }
    return f2::canonical(std::move(raw));
}

// Generators whose copy in column i lands on row j.
std::vector<int> generators_at(const Complex& c, int i, int j) {
    std::vector<int> out;
    for (int g = 0; g < static_cast<int>(c.size()); ++g)
        if (c.gen(g).alexander + i == j) out.push_back(g);
    return out;
}

bool is_horizontal(const Complex& c, const Arrow& a) {
    return a.upower > 0 && c.gen(a.to).alexander - a.upower == c.gen(a.from).alexander;
}

// Generators hit by horizontal arrows of length l out of g.
std::vector<int> horizontal_targets(const Complex& c, int g, int l) {
    std::vector<int> out;
    for (int ai : c.out_arrows(g)) {
        const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
        if (a.upower == l && is_horizontal(c, a)) out.push_back(a.to);
    }
    return out;
}

// Generators hit by vertical arrows out of g that drop A by exactly l.
std::vector<int> vertical_targets(const Complex& c, int g, int l) {
    std::vector<int> out;
    for (int ai : c.out_arrows(g)) {
        const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
        if (a.upower == 0 && c.gen(g).alexander - c.gen(a.to).alexander == l) out.push_back(a.to);
    }
    return out;
}

// Append `part` to `acc` shifted by `offset` coordinates.
void append_block(std::vector<std::uint32_t>& acc, const std::vector<int>& part, std::size_t offset) {
    for (int g : part) acc.push_back(static_cast<std::uint32_t>(offset + static_cast<std::size_t>(g)));
}

class Engine {
public:
    Engine(const Complex& c, int max_len, int max_val) : c_(c), max_len_(max_len), max_val_(max_val) {
        col_ = column_generator(c);
        for (int g : col_.cycle)
            if (c.gen(g).alexander >= col_.tau) top_.push_back(g);
    }

    int tau() const { return col_.tau; }

    bool h_trivial(const std::vector<int>& prefix, int s) const {
        const auto r = realize_region(c_, RegionSpec::s_region(col_.tau, prefix, s));
        const auto v = copies_at(r, top_, 0);
        if (!r.chain().apply(v).empty()) throw ChainMapViolation("column generator is not a cycle of " + r.spec().describe());
        return f2::image_space(r.chain()).contains(v);
    }

    ASequence run() {
        ASequence out;
        out.max_len = max_len_;
        out.max_val = max_val_;
        std::vector<int>& terms = out.terms;
        for (;;) {
            const bool want_trivial = terms.size() % 2 == 0;
            int found = 0;
            for (int s = 1; s <= max_val_ && !found; ++s)
                if (h_trivial(terms, s) == want_trivial) found = s;
            if (found) {
                if (static_cast<int>(terms.size()) == max_len_) {
                    out.tail = ASequence::Tail::DepthLimit;
                    out.note = "max_len " + std::to_string(max_len_) + " reached";
                    return out;
                }
                terms.push_back(found);
                continue;
            }
            if (terms.empty()) {
                out.tail = ASequence::Tail::DepthLimit;
                out.note = "a_1 not found within max_val " + std::to_string(max_val_);
                return out;
            }
            if (terms.size() % 2 == 1)
                primed_odd(out);
            else
                primed_even(out);
            return out;
        }
    }

private:
    // Last piece was a row: the primed term measures vertical arrows into the
    // corner, found through the connecting map of S' = S minus the corner.
    void primed_odd(ASequence& out) const {
        const auto& terms = out.terms;
        const auto corner = s_region_corner(col_.tau, terms);
        auto shorter = terms;
        shorter.back() -= 1;
        const auto rs = realize_region(c_, RegionSpec::s_region(col_.tau, terms, 0));
        const auto rsp = realize_region(c_, RegionSpec::s_region(col_.tau, shorter, 0));
        const auto target = copies_at(rsp, top_, 0);
        f2::Eliminator acc = f2::image_space(rsp.chain());
        if (acc.contains(target)) throw InvariantContradiction("column generator already dies before the corner");

        // Image in S' of d_S applied to the corner part of d^vert of a copy
        // at height l above the corner.
        auto delta_of = [&](int g, int l) {
            const auto tgts = vertical_targets(c_, g, l);
            const auto cvec = copies_at(rs, tgts, corner.first);
            return rsp.transfer(rs, rs.chain().apply(cvec), false);
        };

        int found = 0;
        for (int l = 1; l <= max_val_ && !found; ++l) {
            for (int g : generators_at(c_, corner.first, corner.second + l)) acc.insert(delta_of(g, l));
            if (acc.contains(target)) found = l;
        }
        if (!found) {
            out.tail = ASequence::Tail::Complete;
            out.note = "no primed term: no vertical arrow into the corner within max_val " + std::to_string(max_val_);
            return;
        }
        out.prime1 = -found;
        if (found >= 2) {
            out.tail = ASequence::Tail::Prime;
            return;
        }

        // a'_{n+2}: chains y one step above the corner with delta[d^vert y] = [x0];
        // report the longest first horizontal arrow any such y can be arranged to have.
        const auto ys = generators_at(c_, corner.first, corner.second + 1);
        const std::size_t base = rsp.dim();
        const std::size_t n = c_.size();
        std::vector<SparseVec> nf;
        for (int g : ys) nf.push_back(delta_of(g, 1));
        auto feasible = [&](int l) {
            const std::size_t dim = base + static_cast<std::size_t>(l) * n;
            f2::Eliminator e(dim);
            for (const auto& col : rsp.chain().boundary) e.insert(col);
            for (std::size_t k = 0; k < ys.size(); ++k) {
                std::vector<std::uint32_t> raw(nf[k].begin(), nf[k].end());
                for (int m = 1; m <= l; ++m)
                    append_block(raw, horizontal_targets(c_, ys[k], m), base + static_cast<std::size_t>(m - 1) * n);
                e.insert(f2::canonical(std::move(raw)));
            }
            return e.contains(target);
        };
        int lstar = 0;
        for (int l = 1; l <= max_val_ && !lstar; ++l)
            if (!feasible(l)) lstar = l;
        if (!lstar) {
            out.tail = ASequence::Tail::DepthLimit;
            out.note = "a'_{n+2} undefined: a chain above the corner has no horizontal arrow within max_val";
            return;
        }
        out.prime2 = -lstar;
        out.tail = ASequence::Tail::PrimePair;
    }

    // Last piece was a column: the primed term measures horizontal arrows out
    // of corner chains representing the column generator.
    void primed_even(ASequence& out) const {
        const auto& terms = out.terms;
        const auto corner = s_region_corner(col_.tau, terms);
        const auto rs = realize_region(c_, RegionSpec::s_region(col_.tau, terms, 0));
        const auto target = copies_at(rs, top_, 0);
        const auto cgens = generators_at(c_, corner.first, corner.second);
        const std::size_t base = rs.dim();
        const std::size_t n = c_.size();

        // y = sum lambda_g [g at corner] with y ~ z_top in S and the first l
        // horizontal components of y vanishing.
        auto system = [&](int l) {
            f2::Eliminator e(base + static_cast<std::size_t>(l) * n);
            for (const auto& col : rs.chain().boundary) e.insert(col);
            for (int g : cgens) {
                std::vector<std::uint32_t> raw{static_cast<std::uint32_t>(rs.index_of(g, corner.first))};
                for (int m = 1; m <= l; ++m)
                    append_block(raw, horizontal_targets(c_, g, m), base + static_cast<std::size_t>(m - 1) * n);
                e.insert(f2::canonical(std::move(raw)));
            }
            return e;
        };
        if (!system(0).contains(target)) {
            out.tail = ASequence::Tail::DepthLimit;
            out.note = "no corner chain represents the column generator";
            return;
        }
        int lstar = 0;
        for (int l = 1; l <= max_val_ && !lstar; ++l)
            if (!system(l).contains(target)) lstar = l;
        if (!lstar) {
            out.tail = ASequence::Tail::Complete;
            out.note = "corner representative has no horizontal arrow within max_val " + std::to_string(max_val_);
            return;
        }
        out.prime1 = -lstar;
        if (lstar >= 2) {
            out.tail = ASequence::Tail::Prime;
            return;
        }

        // a'_{n+2}: least L such that h_1(y) for some admissible y is the
        // corner-row part of d^vert of chains at heights 1..L in column i - 1.
        const int ci = corner.first - 1;
        const int cj = corner.second;
        const std::size_t hoff = base;
        f2::Eliminator e(base + n);
        for (const auto& col : rs.chain().boundary) e.insert(col);
        for (int g : cgens) {
            std::vector<std::uint32_t> raw{static_cast<std::uint32_t>(rs.index_of(g, corner.first))};
            append_block(raw, horizontal_targets(c_, g, 1), hoff);
            e.insert(f2::canonical(std::move(raw)));
        }
        int found = 0;
        for (int l = 1; l <= max_val_ && !found; ++l) {
            for (int g : generators_at(c_, ci, cj + l)) {
                std::vector<std::uint32_t> raw;
                append_block(raw, vertical_targets(c_, g, l), hoff);
                e.insert(f2::canonical(std::move(raw)));
            }
            if (e.contains(target)) found = l;
        }
        if (!found) {
            out.tail = ASequence::Tail::DepthLimit;
            out.note = "a'_{n+2} not found: no vertical arrow into the horizontal image within max_val";
            return;
        }
        out.prime2 = -found;
        out.tail = ASequence::Tail::PrimePair;
    }

    const Complex& c_;
    int max_len_;
    int max_val_;
    ColumnGenerator col_;
    std::vector<int> top_;  // part of the column generator at j >= tau
};

}  // namespace

namespace {

ColumnGenerator column_generator_of(const RegionComplex& r) {
    const Complex& c = r.source();
    const auto ess = f2::essential_classes(r.chain());
    if (ess.size() != 1)
        throw InvalidComplex("column homology of '" + c.name() + "' has rank " + std::to_string(ess.size()) + ", expected 1");
    ColumnGenerator out;
    out.tau = r.basis()[ess[0].birth_index].j;
    for (auto k : ess[0].cycle) out.cycle.push_back(r.basis()[k].gen);
    std::sort(out.cycle.begin(), out.cycle.end());
    return out;
}

}  // namespace

ColumnGenerator column_generator(const Complex& c) {
    if (c.size() == 0) throw InvalidComplex("empty complex has no column generator");
    return column_generator_of(realize_region(c, RegionSpec::column_i0()));
}

int tau(const Complex& c) { return column_generator(c).tau; }

int epsilon(const Complex& c) {
    if (c.size() == 0) throw InvalidComplex("empty complex has no column generator");
    const auto col = realize_region(c, RegionSpec::column_i0());
    const auto cg = column_generator_of(col);
    std::vector<int> top;
    for (int g : cg.cycle)
        if (c.gen(g).alexander >= cg.tau) top.push_back(g);

    const auto hook = realize_region(c, RegionSpec::min_hook(cg.tau));
    const bool f_trivial = f2::image_space(hook.chain()).contains(copies_at(hook, top, 0));

    // G hits the generator iff some cycle of the max-hook restricts to a
    // non-boundary of the column.
    const auto mh = realize_region(c, RegionSpec::max_hook(cg.tau));
    const auto col_img = f2::image_space(col.chain());
    bool g_trivial = true;
    for (const auto& w : f2::kernel_basis(mh.chain())) {
        SparseVec restricted;
        for (auto k : w)
            if (mh.basis()[k].i == 0) restricted.push_back(k);
        if (!col_img.contains(col.transfer(mh, restricted, false))) {
            g_trivial = false;
            break;
        }
    }
    if (f_trivial && g_trivial)
        throw InvariantContradiction("both F and G are trivial for '" + c.name() + "'");
    if (f_trivial) return 1;
    if (g_trivial) return -1;
    return 0;
}

int default_max_val(const Complex& c) { return 2 * (c.a_max() - c.a_min()) + 2; }

bool h_map_trivial(const Complex& c, const std::vector<int>& prefix, int s) {
    if (epsilon(c) != 1) throw PreconditionError("H-maps are defined only when epsilon = +1");
    if (s < 0) throw PreconditionError("h_map_trivial needs s >= 0");
    return Engine(c, 0, 0).h_trivial(prefix, s);
}

ASequence a_sequence(const Complex& c, int max_len, int max_val) {
    if (max_len < 1) throw PreconditionError("a_sequence needs max_len >= 1");
    if (epsilon(c) != 1) throw UndefinedInvariant("a-sequence of '" + c.name() + "' is undefined: epsilon != +1");
    if (max_val <= 0) max_val = default_max_val(c);
    return Engine(c, max_len, max_val).run();
}

InvariantReport invariants(const Complex& c, int max_len, int max_val) {
    InvariantReport r;
    r.tau = tau(c);
    r.epsilon = epsilon(c);
    if (r.epsilon == 0 && r.tau != 0)
        throw InvariantContradiction("epsilon = 0 but tau = " + std::to_string(r.tau) + " for '" + c.name() + "'");
    if (r.epsilon == 1) {
        r.aseq = a_sequence(c, max_len, max_val);
    } else if (r.epsilon == -1) {
        const auto d = dual_unchecked(c);
        r.aseq = a_sequence(d, max_len, max_val);
        r.aseq->from_dual = true;
    }
    return r;
}

const char* to_string(ASequence::Tail t) {
    switch (t) {
        case ASequence::Tail::Complete: return "complete";
        case ASequence::Tail::Prime: return "prime";
        case ASequence::Tail::PrimePair: return "prime_pair";
        case ASequence::Tail::DepthLimit: return "depth_limit";
    }
    return "?";
}

std::vector<int> ASequence::flattened() const {
    std::vector<int> out = terms;
    if (prime1 != 0) out.push_back(prime1);
    if (prime2 != 0) out.push_back(prime2);
    return out;
}

std::string ASequence::to_string() const {
    std::ostringstream os;
    const bool complete = tail == Tail::Complete;
    os << (complete ? "[" : "(");
    const auto all = flattened();
    for (std::size_t k = 0; k < all.size(); ++k) os << (k ? "," : "") << all[k];
    if (tail == Tail::DepthLimit) os << (all.empty() ? "..." : ",...");
    os << (complete ? "]" : ")");
    return os.str();
}

bool ASequence::operator==(const ASequence& o) const {
    return terms == o.terms && tail == o.tail && prime1 == o.prime1 && prime2 == o.prime2;
}

}  // namespace cfk
