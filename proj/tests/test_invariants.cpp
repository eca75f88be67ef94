#include <climits>

#include "cfk/catalog.hpp"
#include "cfk/errors.hpp"
#include "cfk/invariants.hpp"
#include "cfk/region.hpp"
#include "doctest.h"

using namespace cfk;

namespace {

// Epsilon read off the induced maps of the region module, independent of the
// direct cycle tests inside epsilon().
int epsilon_via_maps(const Complex& c) {
    const int t = tau(c);
    const auto f = quotient_include_map(c, RegionSpec::column_i0(), RegionSpec::column_segment(0, INT_MIN / 4, t - 1),
                                        RegionSpec::min_hook(t));
    const auto g = quotient_include_map(c, RegionSpec::max_hook(t), RegionSpec::row_segment(t, INT_MIN / 4, -1),
                                        RegionSpec::column_i0());
    if (f.is_zero()) return 1;
    if (g.is_zero()) return -1;
    return 0;
}

// Same complex with generators listed in reverse order.
Complex reversed(const Complex& c) {
    const int n = static_cast<int>(c.size());
    std::vector<Generator> gens(c.generators().rbegin(), c.generators().rend());
    std::vector<Arrow> arrows;
    for (const auto& a : c.arrows()) arrows.push_back({n - 1 - a.from, n - 1 - a.to, a.upower});
    return Complex(c.name(), gens, arrows);
}

std::vector<int> prefix(const ASequence& a, std::size_t k) {
    auto f = a.flattened();
    if (f.size() > k) f.resize(k);
    return f;
}

std::vector<Complex> fixtures() {
    return {unknot_complex(),      staircase({1, 1}),        staircase({2, 2}),        staircase({1, 2, 2, 1}),
            staircase({1, 3, 3, 1}), torus_complex(4, 5),      trefoil_cable_complex(3), figure2_fixture(),
            kn_model(2),           kn_model(3)};
}

}  // namespace

TEST_CASE("tau examples") {
    CHECK(tau(unknot_complex()) == 0);
    CHECK(tau(staircase({1, 2, 2, 1})) == 3);
    CHECK(tau(dual(staircase({1, 2, 2, 1}))) == -3);
    CHECK(tau(figure2_fixture()) == 0);
}

TEST_CASE("epsilon examples") {
    CHECK(epsilon(unknot_complex()) == 0);
    CHECK(epsilon(staircase({1, 2, 2, 1})) == 1);
    CHECK(epsilon(figure2_fixture()) == 0);
    CHECK(epsilon(difference(staircase({1, 1}), staircase({2, 2}))) == 1);
    CHECK(epsilon(difference(staircase({2, 2}), staircase({1, 1}))) == -1);
}

TEST_CASE("epsilon agrees with the induced-map route and flips under duality") {
    for (const auto& c : fixtures()) {
        const int e = epsilon(c);
        CHECK_MESSAGE(e == epsilon_via_maps(c), c.name());
        CHECK(epsilon(dual(c)) == -e);
        if (e == 0) CHECK(tau(c) == 0);
        CHECK(epsilon(difference(c, c)) == 0);
    }
}

TEST_CASE("H-maps") {
    const auto s = staircase({1, 2, 2, 1});
    CHECK_FALSE(h_map_trivial(s, {}, 0));
    CHECK(h_map_trivial(s, {}, 1));
    CHECK_THROWS_AS(h_map_trivial(unknot_complex(), {}, 1), PreconditionError);
}

TEST_CASE("a-sequences of the worked examples") {
    const auto a = a_sequence(staircase({1, 2, 2, 1}));
    CHECK(a.terms == std::vector<int>{1, 2, 2, 1});
    CHECK(a.tail == ASequence::Tail::Complete);
    CHECK(a.to_string() == "[1,2,2,1]");
    CHECK(prefix(a_sequence(torus_complex(4, 5)), 3) == std::vector<int>{1, 3, 2});
    CHECK(prefix(a_sequence(trefoil_cable_complex(4)), 4) == std::vector<int>{1, 4, 1, 2});
    CHECK_THROWS_AS(a_sequence(unknot_complex()), UndefinedInvariant);
}

TEST_CASE("staircases are recovered exactly from their a-sequence") {
    for (const auto& st : std::vector<std::vector<int>>{
             {1, 1}, {2, 2}, {3, 3}, {1, 2, 2, 1}, {1, 3, 3, 1}, {2, 1, 1, 2}, {1, 3, 2, 2, 3, 1}, {1, 3, 1, 1, 1, 1, 3, 1}}) {
        const auto a = a_sequence(staircase(st));
        CHECK_MESSAGE(a.terms == st, staircase_name(st) << " gave " << a.to_string());
        CHECK(a.tail == ASequence::Tail::Complete);
    }
}

TEST_CASE("invariants do not depend on generator order") {
    for (const auto& c : fixtures()) {
        const auto r = reversed(c);
        CHECK(tau(r) == tau(c));
        CHECK(epsilon(r) == epsilon(c));
        const auto ic = invariants(c, 8);
        const auto ir = invariants(r, 8);
        CHECK(ic.aseq.has_value() == ir.aseq.has_value());
        if (ic.aseq) CHECK(*ic.aseq == *ir.aseq);
    }
}

TEST_CASE("negative complexes report the dual's sequence") {
    const auto r = invariants(dual(staircase({1, 2, 2, 1})));
    CHECK(r.epsilon == -1);
    REQUIRE(r.aseq);
    CHECK(r.aseq->from_dual);
    CHECK(r.aseq->terms == std::vector<int>{1, 2, 2, 1});
}

TEST_CASE("reduce and tensor preserve invariants") {
    const auto a = staircase({1, 2, 2, 1});
    const auto b = staircase({1, 1});
    const auto ab = tensor(a, b), ba = tensor(b, a);
    CHECK(epsilon(ab) == epsilon(ba));
    CHECK(tau(ab) == tau(ba));
    CHECK(a_sequence(ab, 6) == a_sequence(ba, 6));
    CHECK(tau(ab) == tau(a) + tau(b));
}
