#include "cfk/region.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cfk/errors.hpp"

namespace cfk {

namespace {

constexpr long kInf = LONG_MAX / 4;

// Axis-parallel lattice segment; vertical segments fix i, horizontal ones fix j.
struct Segment {
    bool vertical;
    long fixed;
    long lo;
    long hi;
};

std::vector<Segment> segments_of(const RegionSpec& s) {
    using K = RegionSpec::Kind;
    std::vector<Segment> out;
    switch (s.kind) {
        case K::ColumnI0:
            out.push_back({true, 0, -kInf, kInf});
            break;
        case K::ColumnSegment:
            out.push_back({true, s.i, s.jmin, s.jmax});
            break;
        case K::RowSegment:
            out.push_back({false, s.row, s.imin, s.imax});
            break;
        case K::MinHook:
            out.push_back({true, 0, s.tau, kInf});
            out.push_back({false, s.tau, 0, kInf});
            break;
        case K::MaxHook:
            out.push_back({true, 0, -kInf, s.tau});
            out.push_back({false, s.tau, -kInf, 0});
            break;
        case K::TruncatedMinHook:
            out.push_back({true, 0, s.tau, kInf});
            out.push_back({false, s.tau, 0, s.s});
            break;
        case K::SRegion: {
            out.push_back({true, 0, s.tau, kInf});
            long odd = 0, even = 0;
            std::vector<int> lens = s.prefix;
            lens.push_back(s.s);
            for (std::size_t k = 1; k <= lens.size(); ++k) {
                const long len = lens[k - 1];
                if (k % 2 == 1) {
                    if (len > 0) out.push_back({false, s.tau - even, odd + 1, odd + len});
                    odd += len;
                } else {
                    if (len > 0) out.push_back({true, odd, s.tau - even - len, s.tau - even - 1});
                    even += len;
                }
            }
            break;
        }
        case K::Explicit:
            break;
    }
    return out;
}

bool order_convex(const std::vector<std::pair<int, int>>& pts) {
    std::set<std::pair<int, int>> set(pts.begin(), pts.end());
    for (const auto& p : pts) {
        for (const auto& r : pts) {
            if (!(p.first <= r.first && p.second <= r.second)) continue;
            for (int i = p.first; i <= r.first; ++i)
                for (int j = p.second; j <= r.second; ++j)
                    if (!set.count({i, j})) return false;
        }
    }
    return true;
}

}  // namespace

RegionSpec RegionSpec::column_i0() { return RegionSpec{}; }

RegionSpec RegionSpec::column_segment(int i, int jmin, int jmax) {
    RegionSpec r;
    r.kind = Kind::ColumnSegment;
    r.i = i;
    r.jmin = jmin;
    r.jmax = jmax;
    return r;
}

RegionSpec RegionSpec::row_segment(int j, int imin, int imax) {
    RegionSpec r;
    r.kind = Kind::RowSegment;
    r.row = j;
    r.imin = imin;
    r.imax = imax;
    return r;
}

RegionSpec RegionSpec::min_hook(int tau) {
    RegionSpec r;
    r.kind = Kind::MinHook;
    r.tau = tau;
    return r;
}

RegionSpec RegionSpec::max_hook(int tau) {
    RegionSpec r;
    r.kind = Kind::MaxHook;
    r.tau = tau;
    return r;
}

RegionSpec RegionSpec::truncated_min_hook(int tau, int s) {
    if (s < 0) throw PreconditionError("truncated hook needs s >= 0");
    RegionSpec r;
    r.kind = Kind::TruncatedMinHook;
    r.tau = tau;
    r.s = s;
    return r;
}

RegionSpec RegionSpec::s_region(int tau, std::vector<int> prefix, int s) {
    if (s < 0) throw PreconditionError("S-region needs s >= 0");
    for (int a : prefix)
        if (a < 0) throw PreconditionError("S-region prefix entries must be >= 0");
    RegionSpec r;
    r.kind = Kind::SRegion;
    r.tau = tau;
    r.prefix = std::move(prefix);
    r.s = s;
    return r;
}

RegionSpec RegionSpec::explicit_points(std::vector<std::pair<int, int>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    RegionSpec r;
    r.kind = Kind::Explicit;
    r.points = std::move(pts);
    return r;
}

bool RegionSpec::contains(int pi, int pj) const {
    if (kind == Kind::Explicit) return std::binary_search(points.begin(), points.end(), std::make_pair(pi, pj));
    for (const auto& seg : segments_of(*this)) {
        const long along = seg.vertical ? pj : pi;
        const long across = seg.vertical ? pi : pj;
        if (across == seg.fixed && along >= seg.lo && along <= seg.hi) return true;
    }
    return false;
}

std::string RegionSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::ColumnI0: os << "column(i=0)"; break;
        case Kind::ColumnSegment: os << "column(i=" << i << ", " << jmin << "<=j<=" << jmax << ")"; break;
        case Kind::RowSegment: os << "row(j=" << row << ", " << imin << "<=i<=" << imax << ")"; break;
        case Kind::MinHook: os << "min_hook(tau=" << tau << ")"; break;
        case Kind::MaxHook: os << "max_hook(tau=" << tau << ")"; break;
        case Kind::TruncatedMinHook: os << "truncated_min_hook(tau=" << tau << ", s=" << s << ")"; break;
        case Kind::SRegion:
            os << "S(tau=" << tau << "; ";
            for (int a : prefix) os << a << ",";
            os << " s=" << s << ")";
            break;
        case Kind::Explicit: os << "explicit(" << points.size() << " points)"; break;
    }
    return os.str();
}

std::pair<int, int> s_region_corner(int tau, const std::vector<int>& prefix) {
    int odd = 0, even = 0;
    for (std::size_t k = 0; k < prefix.size(); ++k) (k % 2 == 0 ? odd : even) += prefix[k];
    return {odd, tau - even};
}

long RegionComplex::index_of(int g, int i) const {
    if (g < 0 || static_cast<std::size_t>(g) + 1 >= gen_offset_.size()) return -1;
    for (std::size_t k = gen_offset_[static_cast<std::size_t>(g)]; k < gen_offset_[static_cast<std::size_t>(g) + 1]; ++k)
        if (gen_entries_[k].first == i) return gen_entries_[k].second;
    return -1;
}

std::string RegionComplex::label(std::size_t k) const {
    const auto& p = basis_[k];
    return source_->gen(p.gen).id + "@(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

f2::SparseVec RegionComplex::transfer(const RegionComplex& from, const f2::SparseVec& v, bool drop_missing) const {
    std::vector<std::uint32_t> raw;
    for (auto k : v) {
        const auto& p = from.basis_[k];
        const long idx = index_of(p.gen, p.i);
        if (idx < 0) {
            if (drop_missing) continue;
            throw PreconditionError("copy " + from.label(k) + " is not in " + spec_.describe());
        }
        raw.push_back(static_cast<std::uint32_t>(idx));
    }
    return f2::canonical(std::move(raw));
}

int region_window(const Complex& c, const RegionSpec& s) {
    using K = RegionSpec::Kind;
    const int span = c.size() ? c.a_max() - c.a_min() : 0;
    int extent = 0;
    switch (s.kind) {
        case K::ColumnI0: break;
        case K::ColumnSegment: extent = std::abs(s.i); break;
        case K::RowSegment: extent = std::abs(s.row); break;
        case K::MinHook:
        case K::MaxHook: extent = std::abs(s.tau); break;
        case K::TruncatedMinHook: extent = std::abs(s.tau) + s.s; break;
        case K::SRegion:
            extent = std::abs(s.tau) + s.s;
            for (int a : s.prefix) extent += a;
            break;
        case K::Explicit:
            for (const auto& [pi, pj] : s.points) extent = std::max({extent, std::abs(pi), std::abs(pj)});
            break;
    }
    return 2 * span + extent + 2;
}

RegionComplex realize_region(const Complex& c, const RegionSpec& s) {
    if (!c.reduced()) throw NotReduced("realize_region needs a reduced complex ('" + c.name() + "')");
    if (s.kind == RegionSpec::Kind::Explicit && !order_convex(s.points))
        throw NonConvex("explicit region is not order-convex");

    const long w = region_window(c, s);
    const auto segs = segments_of(s);
    RegionComplex r;
    r.source_ = &c;
    r.spec_ = s;
    std::vector<long> is;
    for (int g = 0; g < static_cast<int>(c.size()); ++g) {
        const long a = c.gen(g).alexander;
        is.clear();
        for (const auto& seg : segs) {
            // Diagonal j = a + i crosses the segment's line once.
            const long i = seg.vertical ? seg.fixed : seg.fixed - a;
            const long along = seg.vertical ? a + seg.fixed : seg.fixed - a;
            if (along >= seg.lo && along <= seg.hi) is.push_back(i);
        }
        for (const auto& [pi, pj] : s.points)
            if (pj - pi == a) is.push_back(pi);
        std::sort(is.begin(), is.end());
        is.erase(std::unique(is.begin(), is.end()), is.end());
        for (long i : is) {
            if (i < -w || i > w || a + i < -w || a + i > w)
                throw InfiniteRegion("region " + s.describe() + " meets the diagonal of " + c.gen(g).id + " outside the window " +
                                     std::to_string(w));
            r.basis_.push_back({g, static_cast<int>(i), static_cast<int>(a + i)});
        }
    }
    std::sort(r.basis_.begin(), r.basis_.end(), [](const RegionPoint& x, const RegionPoint& y) {
        return std::tie(x.j, x.i, x.gen) < std::tie(y.j, y.i, y.gen);
    });
    r.gen_offset_.assign(c.size() + 1, 0);
    for (const auto& p : r.basis_) ++r.gen_offset_[static_cast<std::size_t>(p.gen) + 1];
    for (std::size_t g = 0; g < c.size(); ++g) r.gen_offset_[g + 1] += r.gen_offset_[g];
    r.gen_entries_.resize(r.basis_.size());
    {
        std::vector<std::size_t> fill(r.gen_offset_.begin(), r.gen_offset_.end() - 1);
        for (std::size_t k = 0; k < r.basis_.size(); ++k) {
            const auto& p = r.basis_[k];
            r.gen_entries_[fill[static_cast<std::size_t>(p.gen)]++] = {p.i, static_cast<int>(k)};
        }
    }

    r.chain_.dim = r.basis_.size();
    r.chain_.boundary.assign(r.basis_.size(), {});
    std::vector<std::uint32_t> raw;
    for (std::size_t k = 0; k < r.basis_.size(); ++k) {
        const auto& p = r.basis_[k];
        raw.clear();
        for (int ai : c.out_arrows(p.gen)) {
            const auto& ar = c.arrows()[static_cast<std::size_t>(ai)];
            const long idx = r.index_of(ar.to, p.i - ar.upower);
            if (idx >= 0) raw.push_back(static_cast<std::uint32_t>(idx));
        }
        r.chain_.boundary[k] = f2::canonical(raw);
    }
    if (!r.chain_.squares_to_zero())
        throw InvalidComplex("realization of " + s.describe() + " in '" + c.name() + "' has d^2 != 0");
    return r;
}

f2::HomologyBasis homology_f2(const RegionComplex& r) { return f2::homology(r.chain()); }

HomologyCoordinates::HomologyCoordinates(const RegionComplex& r)
    : region_(&r), basis_(f2::homology(r.chain())), elim_(r.dim()) {
    for (const auto& col : r.chain().boundary) elim_.insert(col);
    for (std::size_t k = 0; k < basis_.representatives.size(); ++k)
        elim_.insert(basis_.representatives[k], static_cast<long>(k));
}

f2::SparseVec HomologyCoordinates::coords(const f2::SparseVec& v) const {
    if (!region_->chain().apply(v).empty()) throw NotACycle("vector is not a cycle of " + region_->spec().describe());
    f2::SparseVec combo;
    if (!elim_.reduce(v, &combo).empty()) throw std::logic_error("cycle outside the span of boundaries and representatives");
    return combo;
}

bool HomologyCoordinates::is_boundary(const f2::SparseVec& v) const {
    if (!region_->chain().apply(v).empty()) return false;
    return coords(v).empty();
}

bool InducedMap::is_zero() const {
    for (const auto& c : columns)
        if (!c.empty()) return false;
    return true;
}

std::size_t InducedMap::rank() const {
    f2::Eliminator e(target_rank);
    std::size_t r = 0;
    for (const auto& c : columns)
        if (e.insert(c)) ++r;
    return r;
}

namespace {

// Checks that every element of `part` (a realization over the same source) is
// in `whole` and that `part` is closed under the boundary of `whole`.
void require_subcomplex(const RegionComplex& part, const RegionComplex& whole) {
    std::vector<char> in_part(whole.dim(), 0);
    for (std::size_t k = 0; k < part.dim(); ++k) {
        const auto& p = part.basis()[k];
        const long idx = whole.index_of(p.gen, p.i);
        if (idx < 0)
            throw PreconditionError(part.spec().describe() + " is not contained in " + whole.spec().describe());
        in_part[static_cast<std::size_t>(idx)] = 1;
    }
    for (std::size_t k = 0; k < whole.dim(); ++k) {
        if (!in_part[k]) continue;
        for (auto t : whole.chain().boundary[k])
            if (!in_part[t])
                throw PreconditionError(part.spec().describe() + " is not a subcomplex of " + whole.spec().describe());
    }
}

}  // namespace

InducedMap quotient_include_map(const Complex& c, const RegionSpec& source, const RegionSpec& killed,
                                const RegionSpec& target) {
    const auto rs = realize_region(c, source);
    const auto rk = realize_region(c, killed);
    const auto rt = realize_region(c, target);
    require_subcomplex(rk, rs);

    std::vector<char> is_killed(rs.dim(), 0);
    for (const auto& p : rk.basis()) is_killed[static_cast<std::size_t>(rs.index_of(p.gen, p.i))] = 1;

    // Quotient elements must embed in the target as a subcomplex.
    std::vector<long> to_target(rs.dim(), -1);
    for (std::size_t k = 0; k < rs.dim(); ++k) {
        if (is_killed[k]) continue;
        const auto& p = rs.basis()[k];
        to_target[k] = rt.index_of(p.gen, p.i);
        if (to_target[k] < 0)
            throw PreconditionError("copy " + rs.label(k) + " of the quotient is missing from " + target.describe());
    }
    for (std::size_t k = 0; k < rs.dim(); ++k) {
        if (is_killed[k]) continue;
        std::vector<std::uint32_t> via_quotient;
        for (auto t : rs.chain().boundary[k])
            if (!is_killed[t]) via_quotient.push_back(static_cast<std::uint32_t>(to_target[t]));
        if (f2::canonical(std::move(via_quotient)) != rt.chain().boundary[static_cast<std::size_t>(to_target[k])])
            throw ChainMapViolation("copy identification fails to commute with d at " + rs.label(k));
    }

    const auto hs = homology_f2(rs);
    const HomologyCoordinates ht(rt);
    InducedMap m;
    m.source_rank = hs.rank;
    m.target_rank = ht.rank();
    for (const auto& z : hs.representatives) {
        std::vector<std::uint32_t> raw;
        for (auto k : z)
            if (!is_killed[k]) raw.push_back(static_cast<std::uint32_t>(to_target[k]));
        m.columns.push_back(ht.coords(f2::canonical(std::move(raw))));
    }
    return m;
}

ConnectingResult connecting_map(const Complex& c, const RegionSpec& sub, const RegionSpec& total,
                                const f2::SparseVec& quotient_cycle) {
    const auto rt = realize_region(c, total);
    const auto rs = realize_region(c, sub);
    require_subcomplex(rs, rt);
    std::vector<char> in_sub(rt.dim(), 0);
    for (const auto& p : rs.basis()) in_sub[static_cast<std::size_t>(rt.index_of(p.gen, p.i))] = 1;

    f2::SparseVec lift;
    for (auto k : quotient_cycle) {
        if (k >= rt.dim()) throw PreconditionError("quotient cycle index out of range");
        if (!in_sub[k]) lift.push_back(k);
    }
    const auto d = rt.chain().apply(lift);
    for (auto k : d)
        if (!in_sub[k]) throw NotACycle("class is not a cycle of " + total.describe() + " / " + sub.describe());
    ConnectingResult out;
    out.cycle = rs.transfer(rt, d, false);
    out.coords = HomologyCoordinates(rs).coords(out.cycle);
    return out;
}

bool class_equal(const RegionComplex& r, const f2::SparseVec& u, const f2::SparseVec& v) {
    if (!r.chain().apply(u).empty() || !r.chain().apply(v).empty())
        throw NotACycle("class_equal needs cycles of " + r.spec().describe());
    return f2::image_space(r.chain()).contains(f2::xor_sparse(u, v));
}

}  // namespace cfk
