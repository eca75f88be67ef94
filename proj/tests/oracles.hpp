#pragma once

// Independent reference implementations used only by the tests.  They share
// no code with the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cfk/complex.hpp"
#include "cfk/region.hpp"

namespace oracle {

// Dense coefficient vector, index = exponent.
using Poly = std::vector<long long>;

inline Poly convolve(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Torus knot polynomial from the numerical semigroup <p,q>:
// Delta = (1 - t) * sum_{s in S, s < 2g} t^s + t^{2g}.
inline Poly torus_by_semigroup(int p, int q) {
    const int two_g = (p - 1) * (q - 1);
    std::vector<char> in(static_cast<std::size_t>(two_g) + 1, 0);
    for (int a = 0; a * p <= two_g; ++a)
        for (int b = 0; a * p + b * q <= two_g; ++b) in[static_cast<std::size_t>(a * p + b * q)] = 1;
    Poly r(static_cast<std::size_t>(two_g) + 1, 0);
    for (int s = 0; s < two_g; ++s) {
        if (!in[static_cast<std::size_t>(s)]) continue;
        r[static_cast<std::size_t>(s)] += 1;
        r[static_cast<std::size_t>(s) + 1] -= 1;
    }
    r[static_cast<std::size_t>(two_g)] += 1;
    return r;
}

inline Poly substitute(const Poly& a, int k) {
    Poly r((a.size() - 1) * static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i * static_cast<std::size_t>(k)] = a[i];
    return r;
}

// Staircase built straight from the step description: x0 on top, odd x_k
// carries a horizontal arrow to x_{k-1} and a vertical arrow to x_{k+1}.
inline cfk::Complex staircase(const std::vector<int>& steps, const std::string& name = "oracle") {
    int top = 0;
    for (std::size_t k = 1; k < steps.size(); k += 2) top += steps[k];
    std::vector<cfk::Generator> gens;
    int a = top, m = 0;
    gens.push_back({"x0", a, m});
    for (std::size_t k = 0; k < steps.size(); ++k) {
        a -= steps[k];
        // odd generator: M(x_k) = M(x_{k-1}) - 2 b_k + 1; even: one below its odd neighbour
        m = (k % 2 == 0) ? m - 2 * steps[k] + 1 : m - 1;
        gens.push_back({"x" + std::to_string(k + 1), a, m});
    }
    std::vector<cfk::Arrow> arrows;
    for (std::size_t k = 1; k <= steps.size(); k += 2) {
        arrows.push_back({static_cast<int>(k), static_cast<int>(k - 1), steps[k - 1]});
        arrows.push_back({static_cast<int>(k), static_cast<int>(k + 1), 0});
    }
    return cfk::Complex(name, gens, arrows);
}

// d^2 over F2[U,U^-1] computed as a product of sparse polynomial matrices.
inline bool d_squared_zero(const cfk::Complex& c) {
    std::map<std::pair<int, int>, std::set<int>> d;  // (from, to) -> set of powers
    for (const auto& a : c.arrows()) {
        auto& s = d[{a.from, a.to}];
        if (!s.insert(a.upower).second) s.erase(a.upower);
    }
    std::map<std::tuple<int, int, int>, int> dd;
    for (const auto& [k1, p1] : d)
        for (const auto& [k2, p2] : d)
            if (k1.second == k2.first)
                for (int u : p1)
                    for (int v : p2) dd[{k1.first, k2.second, u + v}] ^= 1;
    for (const auto& [k, v] : dd)
        if (v) return false;
    return true;
}

// Rank over F2 of a dense 0/1 matrix by plain row reduction.
inline std::size_t rank_f2(std::vector<std::vector<int>> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && !m[p][c]) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

// dim H of the F2 complex with the given arrows (U forgotten or filtered
// before the call): dim = n - 2 rank d.
inline std::size_t homology_dim(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& [f, t] : edges) m[static_cast<std::size_t>(t)][static_cast<std::size_t>(f)] ^= 1;
    return n - 2 * rank_f2(m);
}

// Membership written directly from the region definitions.  S-regions are
// traced one lattice step at a time along the path.
inline bool region_contains(const cfk::RegionSpec& s, int i, int j) {
    using K = cfk::RegionSpec::Kind;
    switch (s.kind) {
        case K::ColumnI0: return i == 0;
        case K::ColumnSegment: return i == s.i && j >= s.jmin && j <= s.jmax;
        case K::RowSegment: return j == s.row && i >= s.imin && i <= s.imax;
        case K::MinHook: return std::min(i, j - s.tau) == 0;
        case K::MaxHook: return std::max(i, j - s.tau) == 0;
        case K::TruncatedMinHook: return std::min(i, j - s.tau) == 0 && i <= s.s;
        case K::SRegion: {
            if (i == 0 && j >= s.tau) return true;
            std::set<std::pair<int, int>> path;
            int ci = 0, cj = s.tau;
            auto lens = s.prefix;
            lens.push_back(s.s);
            for (std::size_t k = 0; k < lens.size(); ++k)
                for (int step = 0; step < lens[k]; ++step) {
                    if (k % 2 == 0) ++ci; else --cj;
                    path.insert({ci, cj});
                }
            return path.count({i, j}) > 0;
        }
        case K::Explicit:
            return std::find(s.points.begin(), s.points.end(), std::make_pair(i, j)) != s.points.end();
    }
    return false;
}

inline std::size_t region_dimension(const cfk::Complex& c, const cfk::RegionSpec& s) {
    const int w = cfk::region_window(c, s);
    std::size_t n = 0;
    for (const auto& g : c.generators())
        for (int i = -w; i <= w; ++i)
            if (region_contains(s, i, g.alexander + i)) ++n;
    return n;
}

}  // namespace oracle
