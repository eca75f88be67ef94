#include "cfk/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "cfk/errors.hpp"
#include "cfk/f2.hpp"

namespace cfk {

const char* to_string(ArrowKind k) {
    switch (k) {
        case ArrowKind::Vertical: return "vertical";
        case ArrowKind::Horizontal: return "horizontal";
        case ArrowKind::Diagonal: return "diagonal";
    }
    return "?";
}

bool valid_generator_id(const std::string& id) {
    if (id.empty()) return false;
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                        ch == '*' || ch == '^';
        if (!ok) return false;
    }
    return true;
}

Complex::Complex(std::string name, std::vector<Generator> generators, std::vector<Arrow> arrows, bool uv_truncated)
    : name_(std::move(name)), generators_(std::move(generators)), arrows_(std::move(arrows)), uv_truncated_(uv_truncated) {
    index_.reserve(generators_.size());
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto& id = generators_[i].id;
        if (!valid_generator_id(id)) throw InvalidComplex("malformed generator id '" + id + "'");
        if (!index_.emplace(id, static_cast<int>(i)).second) throw InvalidComplex("duplicate generator id '" + id + "'");
    }
    const int n = static_cast<int>(generators_.size());
    for (const auto& a : arrows_) {
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n) throw InvalidComplex("arrow endpoint out of range");
        if (a.upower < 0) throw InvalidComplex("negative U-power on arrow from '" + generators_[static_cast<std::size_t>(a.from)].id + "'");
    }
    std::sort(arrows_.begin(), arrows_.end(), [](const Arrow& x, const Arrow& y) {
        return std::tie(x.from, x.to, x.upower) < std::tie(y.from, y.to, y.upower);
    });
    for (std::size_t i = 1; i < arrows_.size(); ++i) {
        if (arrows_[i] == arrows_[i - 1]) {
            throw InvalidComplex("repeated arrow " + generators_[static_cast<std::size_t>(arrows_[i].from)].id + " -> " +
                                 generators_[static_cast<std::size_t>(arrows_[i].to)].id);
        }
    }
    out_offset_.assign(generators_.size() + 1, 0);
    in_offset_.assign(generators_.size() + 1, 0);
    for (const auto& a : arrows_) {
        ++out_offset_[static_cast<std::size_t>(a.from) + 1];
        ++in_offset_[static_cast<std::size_t>(a.to) + 1];
    }
    for (std::size_t g = 0; g < generators_.size(); ++g) {
        out_offset_[g + 1] += out_offset_[g];
        in_offset_[g + 1] += in_offset_[g];
    }
    out_.resize(arrows_.size());
    in_.resize(arrows_.size());
    std::vector<std::size_t> of(out_offset_.begin(), out_offset_.end() - 1), inf(in_offset_.begin(), in_offset_.end() - 1);
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        out_[of[static_cast<std::size_t>(arrows_[i].from)]++] = static_cast<int>(i);
        in_[inf[static_cast<std::size_t>(arrows_[i].to)]++] = static_cast<int>(i);
    }
}

Complex Complex::from_specs(std::string name, std::vector<Generator> generators, const std::vector<ArrowSpec>& arrows) {
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < generators.size(); ++i) idx.emplace(generators[i].id, static_cast<int>(i));
    std::vector<Arrow> out;
    out.reserve(arrows.size());
    for (const auto& a : arrows) {
        auto f = idx.find(a.from);
        auto t = idx.find(a.to);
        if (f == idx.end() || t == idx.end())
            throw InvalidComplex("arrow " + a.from + " -> " + a.to + " names an unknown generator");
        out.push_back({f->second, t->second, a.upower});
    }
    return Complex(std::move(name), std::move(generators), std::move(out));
}

int Complex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int Complex::a_min() const {
    int m = 0;
    bool first = true;
    for (const auto& g : generators_) {
        if (first || g.alexander < m) m = g.alexander;
        first = false;
    }
    return m;
}

int Complex::a_max() const {
    int m = 0;
    bool first = true;
    for (const auto& g : generators_) {
        if (first || g.alexander > m) m = g.alexander;
        first = false;
    }
    return m;
}

bool Complex::reduced() const {
    for (const auto& a : arrows_)
        if (a.upower == 0 && gen(a.from).alexander == gen(a.to).alexander) return false;
    return true;
}

Complex Complex::renamed(std::string name) const {
    Complex c = *this;
    c.name_ = std::move(name);
    return c;
}

std::vector<ArrowSpec> Complex::arrow_specs() const {
    std::vector<ArrowSpec> out;
    out.reserve(arrows_.size());
    for (const auto& a : arrows_) out.push_back({gen(a.from).id, gen(a.to).id, a.upower});
    return out;
}

bool ValidationReport::ok_except_reducedness() const {
    for (const auto& v : violations)
        if (v.code != "not_reduced") return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].code << ": " << violations[i].detail;
    }
    return os.str();
}

namespace {

f2::ChainComplex forget_u(const Complex& c, bool column_only) {
    f2::ChainComplex cc;
    cc.dim = c.size();
    cc.boundary.assign(c.size(), {});
    std::vector<std::vector<std::uint32_t>> raw(c.size());
    for (const auto& a : c.arrows()) {
        if (column_only && a.upower != 0) continue;
        raw[static_cast<std::size_t>(a.from)].push_back(static_cast<std::uint32_t>(a.to));
    }
    for (std::size_t j = 0; j < c.size(); ++j) cc.boundary[j] = f2::canonical(std::move(raw[j]));
    return cc;
}

bool mixed_kinds(const Complex& c, const Arrow& a, const Arrow& b) {
    auto kind = [&](const Arrow& x) {
        if (x.upower == 0) return 0;
        return c.gen(x.to).alexander - x.upower == c.gen(x.from).alexander ? 1 : 2;
    };
    const int ka = kind(a), kb = kind(b);
    return ka == 2 || kb == 2 || ka != kb;
}

}  // namespace

ValidationReport validate(const Complex& c) {
    ValidationReport r;
    bool grading_ok = true;
    for (const auto& a : c.arrows()) {
        const auto& f = c.gen(a.from);
        const auto& t = c.gen(a.to);
        const std::string tag = f.id + "->" + t.id + " (n=" + std::to_string(a.upower) + ")";
        if (a.upower < std::max(0, t.alexander - f.alexander))
            r.violations.push_back({"filtration", tag + " raises a filtration"});
        if (a.upower == 0 && t.alexander == f.alexander)
            r.violations.push_back({"not_reduced", tag + " preserves both filtrations"});
        if (t.maslov - 2 * a.upower != f.maslov - 1) {
            grading_ok = false;
            r.violations.push_back({"grading", tag + " breaks M(to) - 2n = M(from) - 1"});
        }
    }

    // d^2 = 0 over F2[U,U^-1]: count two-step paths per (target, total power).
    for (int x = 0; x < static_cast<int>(c.size()); ++x) {
        std::map<std::pair<int, int>, int> count;
        for (int ai : c.out_arrows(x)) {
            const auto& a = c.arrows()[static_cast<std::size_t>(ai)];
            for (int bi : c.out_arrows(a.to)) {
                const auto& b = c.arrows()[static_cast<std::size_t>(bi)];
                if (c.uv_truncated() && mixed_kinds(c, a, b)) continue;
                count[{b.to, a.upower + b.upower}] ^= 1;
            }
        }
        for (const auto& [key, parity] : count) {
            if (parity) {
                r.violations.push_back({"d_squared", "d^2 " + c.gen(x).id + " contains U^" + std::to_string(key.second) +
                                                         " " + c.gen(key.first).id});
            }
        }
    }

    r.column_homology_dim = f2::homology(forget_u(c, true)).rank;
    if (r.column_homology_dim != 1)
        r.violations.push_back({"column_rank", "i=0 column homology has dimension " + std::to_string(r.column_homology_dim)});
    r.collapse_homology_dim = f2::homology(forget_u(c, false)).rank;
    if (r.collapse_homology_dim != 1)
        r.violations.push_back({"collapse", "U-forgotten homology has dimension " + std::to_string(r.collapse_homology_dim)});
    if (!grading_ok)
        r.notes.push_back("collapse condition is only a proxy for the total-homology condition when the Maslov grading is inconsistent");

    std::vector<std::pair<int, int>> lhs, rhs;
    for (const auto& g : c.generators()) {
        lhs.emplace_back(g.alexander, g.maslov);
        rhs.emplace_back(-g.alexander, g.maslov - 2 * g.alexander);
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) r.violations.push_back({"symmetry", "(A, M) multiset differs from (-A, M - 2A)"});
    return r;
}

void require_valid(const Complex& c, bool allow_unreduced) {
    auto r = validate(c);
    if (r.ok() || (allow_unreduced && r.ok_except_reducedness())) return;
    throw InvalidComplex("complex '" + c.name() + "' is invalid: " + r.summary());
}

ArrowKind arrow_kind(const Complex& c, const Arrow& a) {
    const int af = c.gen(a.from).alexander;
    const int at = c.gen(a.to).alexander;
    if (a.upower == 0) {
        if (at == af) throw NotReduced("arrow " + c.gen(a.from).id + "->" + c.gen(a.to).id + " preserves both filtrations");
        if (at > af) throw InvalidComplex("arrow " + c.gen(a.from).id + "->" + c.gen(a.to).id + " raises the Alexander filtration");
        return ArrowKind::Vertical;
    }
    if (at - a.upower == af) return ArrowKind::Horizontal;
    if (at - a.upower < af) return ArrowKind::Diagonal;
    throw InvalidComplex("arrow " + c.gen(a.from).id + "->" + c.gen(a.to).id + " raises the Alexander filtration");
}

Complex dual_unchecked(const Complex& c) {
    std::vector<Generator> gens;
    gens.reserve(c.size());
    for (const auto& g : c.generators()) gens.push_back({g.id + "^", -g.alexander, -g.maslov});
    std::vector<Arrow> arrows;
    arrows.reserve(c.arrows().size());
    for (const auto& a : c.arrows()) arrows.push_back({a.to, a.from, a.upower});
    return Complex(c.name() + "^", std::move(gens), std::move(arrows), c.uv_truncated());
}

Complex tensor_unchecked(const Complex& a, const Complex& b, bool short_ids) {
    const std::size_t na = a.size(), nb = b.size();
    std::vector<Generator> gens;
    gens.reserve(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            const auto& x = a.generators()[i];
            const auto& y = b.generators()[j];
            std::string id = short_ids ? "g" + std::to_string(i * nb + j) : x.id + "*" + y.id;
            gens.push_back({std::move(id), x.alexander + y.alexander, x.maslov + y.maslov});
        }
    }
    std::vector<Arrow> arrows;
    arrows.reserve(a.arrows().size() * nb + b.arrows().size() * na);
    const auto idx = [nb](std::size_t i, std::size_t j) { return static_cast<int>(i * nb + j); };
    for (const auto& ar : a.arrows())
        for (std::size_t j = 0; j < nb; ++j)
            arrows.push_back({idx(static_cast<std::size_t>(ar.from), j), idx(static_cast<std::size_t>(ar.to), j), ar.upower});
    for (std::size_t i = 0; i < na; ++i)
        for (const auto& br : b.arrows())
            arrows.push_back({idx(i, static_cast<std::size_t>(br.from)), idx(i, static_cast<std::size_t>(br.to)), br.upower});
    return Complex(a.name() + "*" + b.name(), std::move(gens), std::move(arrows), a.uv_truncated() || b.uv_truncated());
}

Complex dual(const Complex& c) {
    require_valid(c);
    return dual_unchecked(c);
}

Complex tensor(const Complex& a, const Complex& b) {
    require_valid(a);
    require_valid(b);
    return tensor_unchecked(a, b);
}

Complex reduce(const Complex& c) {
    const int n = static_cast<int>(c.size());
    // Adjacency as ordered sets of (neighbour, power) so splicing toggles
    // coefficients over F2.
    std::vector<std::set<std::pair<int, int>>> out(c.size()), in(c.size());
    for (const auto& a : c.arrows()) {
        out[static_cast<std::size_t>(a.from)].insert({a.to, a.upower});
        in[static_cast<std::size_t>(a.to)].insert({a.from, a.upower});
    }
    using Key = std::tuple<std::string, std::string, int, int>;
    std::set<Key> eligible;
    auto is_eligible = [&](int f, int t, int p) { return p == 0 && c.gen(f).alexander == c.gen(t).alexander; };
    auto toggle = [&](int f, int t, int p) {
        if (f == t) throw InvalidComplex("cancellation in '" + c.name() + "' produced a self-arrow on " + c.gen(f).id);
        auto& o = out[static_cast<std::size_t>(f)];
        const bool present = o.count({t, p}) > 0;
        if (present) {
            o.erase({t, p});
            in[static_cast<std::size_t>(t)].erase({f, p});
            if (is_eligible(f, t, p)) eligible.erase({c.gen(f).id, c.gen(t).id, f, t});
        } else {
            o.insert({t, p});
            in[static_cast<std::size_t>(t)].insert({f, p});
            if (is_eligible(f, t, p)) eligible.insert({c.gen(f).id, c.gen(t).id, f, t});
        }
    };
    for (const auto& a : c.arrows())
        if (is_eligible(a.from, a.to, a.upower)) eligible.insert({c.gen(a.from).id, c.gen(a.to).id, a.from, a.to});

    std::vector<char> alive(c.size(), 1);
    while (!eligible.empty()) {
        const auto [fid, tid, x, y] = *eligible.begin();
        std::vector<std::pair<int, int>> preds, succs;
        for (const auto& [a, p] : in[static_cast<std::size_t>(y)])
            if (!(a == x && p == 0)) preds.emplace_back(a, p);
        for (const auto& [b, q] : out[static_cast<std::size_t>(x)])
            if (!(b == y && q == 0)) succs.emplace_back(b, q);
        // Detach x and y completely.
        for (int v : {x, y}) {
            auto outs = out[static_cast<std::size_t>(v)];
            for (const auto& [t, p] : outs) toggle(v, t, p);
            auto ins = in[static_cast<std::size_t>(v)];
            for (const auto& [f, p] : ins) toggle(f, v, p);
        }
        alive[static_cast<std::size_t>(x)] = alive[static_cast<std::size_t>(y)] = 0;
        for (const auto& [a, p] : preds) {
            if (a == x || a == y) continue;
            for (const auto& [b, q] : succs) {
                if (b == x || b == y) continue;
                toggle(a, b, p + q);
            }
        }
    }

    std::vector<int> remap(c.size(), -1);
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) {
        if (!alive[static_cast<std::size_t>(i)]) continue;
        remap[static_cast<std::size_t>(i)] = static_cast<int>(gens.size());
        gens.push_back(c.gen(i));
    }
    std::vector<Arrow> arrows;
    for (int i = 0; i < n; ++i) {
        if (!alive[static_cast<std::size_t>(i)]) continue;
        for (const auto& [t, p] : out[static_cast<std::size_t>(i)])
            arrows.push_back({remap[static_cast<std::size_t>(i)], remap[static_cast<std::size_t>(t)], p});
    }
    return Complex(c.name(), std::move(gens), std::move(arrows), c.uv_truncated());
}

Complex difference(const Complex& a, const Complex& b) { return tensor(a, dual(b)); }

Complex multiple(const Complex& c, int k) {
    if (k < 1) throw PreconditionError("multiple needs k >= 1");
    require_valid(c);
    Complex p = c;
    for (int i = 2; i <= k; ++i) p = reduce(tensor_unchecked(p, c));
    return p.renamed(std::to_string(k) + "x(" + c.name() + ")");
}

Complex uv_truncate(const Complex& c) {
    std::vector<Arrow> arrows;
    for (const auto& a : c.arrows()) {
        if (a.upower == 0 || c.gen(a.to).alexander - a.upower == c.gen(a.from).alexander) arrows.push_back(a);
    }
    return Complex(c.name(), c.generators(), std::move(arrows), true);
}

Complex unknot_complex() { return Complex("unknot", {{"x0", 0, 0}}, {}); }

std::vector<std::pair<int, int>> graded_multiset(const Complex& c) {
    std::vector<std::pair<int, int>> m;
    for (const auto& g : c.generators()) m.emplace_back(g.alexander, g.maslov);
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace cfk
