#include <random>

#include "cfk/catalog.hpp"
#include "cfk/errors.hpp"
#include "cfk/invariants.hpp"
#include "cfk/order.hpp"
#include "doctest.h"

using namespace cfk;

namespace {

int eps_compare(const std::vector<int>& a, const std::vector<int>& b) {
    return epsilon(tensor_unchecked(standard_complex(a), dual_unchecked(standard_complex(b)), true));
}

std::vector<Complex> fixtures() {
    return {unknot_complex(),        staircase({1, 1}),          staircase({2, 2}),   staircase({1, 2, 2, 1}),
            staircase({1, 3, 3, 1}), torus_complex(4, 5),        figure2_fixture(),   kn_model(2),
            dual(staircase({1, 1})), dual(staircase({1, 2, 2, 1})), trefoil_cable_complex(3)};
}

}  // namespace

TEST_CASE("standard complexes reproduce staircases") {
    for (const auto& st : std::vector<std::vector<int>>{{1, 1}, {2, 2}, {1, 2, 2, 1}, {1, 3, 2, 2, 3, 1}}) {
        const auto s = standard_complex(staircase_standard_sequence(st));
        const auto c = staircase(st);
        CHECK(graded_multiset(s) == graded_multiset(c));
        REQUIRE(s.arrows().size() == c.arrows().size());
        for (std::size_t k = 0; k < s.arrows().size(); ++k) CHECK(s.arrows()[k] == c.arrows()[k]);
    }
    CHECK(standard_complex({}).size() == 1);
    CHECK_THROWS_AS(standard_complex({1}), PreconditionError);
    CHECK_THROWS_AS(standard_complex({1, 0}), PreconditionError);
}

TEST_CASE("lexicographic order on standard sequences") {
    CHECK(standard_compare({1, -1}, {2, -2}) == 1);
    CHECK(standard_compare({}, {1, -1}) == -1);
    CHECK(standard_compare({}, {-1, 1}) == 1);
    CHECK(standard_compare({1, -2, 2, -1}, {1, -1}) == 1);
    CHECK(standard_compare({1, -2}, {1, -2}) == 0);
    CHECK(standard_compare({-2, 1}, {-1, 1}) == 1);
}

TEST_CASE("epsilon comparison of standard complexes matches the lexicographic order") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> mag(1, 3), sign(0, 1), len(0, 3);
    auto random_seq = [&] {
        std::vector<int> s(static_cast<std::size_t>(2 * len(rng)));
        for (auto& v : s) v = sign(rng) ? mag(rng) : -mag(rng);
        return s;
    };
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_seq(), b = random_seq();
        if (trial % 5 == 0 && !a.empty()) {
            b = a;  // share a prefix so later positions decide
            b.back() = -b.back();
        }
        CHECK_MESSAGE(eps_compare(a, b) == standard_compare(a, b), "trial " << trial);
    }
}

TEST_CASE("standard representatives are certified and recover staircases") {
    for (const auto& st : std::vector<std::vector<int>>{{1, 1}, {2, 2}, {1, 2, 2, 1}, {1, 3, 2, 2, 3, 1}}) {
        const auto r = standard_representative(staircase(st));
        CHECK(r.sequence == staircase_standard_sequence(st));
        auto neg = staircase_standard_sequence(st);
        for (auto& v : neg) v = -v;
        CHECK(standard_representative(dual(staircase(st))).sequence == neg);
    }
    CHECK(standard_representative(unknot_complex()).sequence.empty());
    CHECK(standard_representative(figure2_fixture()).sequence.empty());
    const auto two = multiple(staircase({1, 2, 2, 1}), 2);
    CHECK(standard_representative(two).sequence == staircase_standard_sequence({1, 2, 1, 2, 2, 1, 2, 1}));
    for (const auto& c : {kn_model(2), kn_model(3), trefoil_cable_complex(3)}) {
        const auto s = standard_complex(standard_representative(c).sequence);
        CHECK(epsilon(tensor_unchecked(c, dual_unchecked(s), true)) == 0);
    }
}

TEST_CASE("compare examples") {
    const auto t = staircase({1, 1});
    CHECK(compare(t, t).value == 0);
    CHECK(compare(staircase({1, 1}), staircase({2, 2})).value == 1);
    CHECK(compare(unknot_complex(), staircase({1, 1})).value == -1);
}

TEST_CASE("compressed comparisons agree with direct ones") {
    OrderOptions tight;
    tight.direct_limit = 1;
    const auto fx = fixtures();
    for (const auto& a : fx)
        for (const auto& b : fx) {
            const auto direct = compare(a, b);
            CHECK_FALSE(direct.compressed);
            const auto squeezed = compare(a, b, tight);
            if (a.size() * b.size() > 1) CHECK(squeezed.compressed);
            CHECK(squeezed.value == direct.value);
        }
}

TEST_CASE("abs") {
    CHECK(abs(unknot_complex()).size() == 1);
    const auto a = abs(dual(staircase({1, 1})));
    CHECK(graded_multiset(a) == graded_multiset(staircase({1, 1})));
    CHECK(compare(a, staircase({1, 1})).value == 0);
    CHECK(abs(kn_model(2)).name() == kn_model(2).name());
}

TEST_CASE("order coherence over fixtures") {
    const auto fx = fixtures();
    const std::size_t n = fx.size();
    std::vector<std::vector<int>> cmp(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cmp[i][j] = compare(fx[i], fx[j]).value;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(cmp[i][j] == -cmp[j][i]);
            for (std::size_t k = 0; k < n; ++k) {
                if (cmp[i][j] >= 0 && cmp[j][k] >= 0) CHECK(cmp[i][k] >= 0);
                if (cmp[i][j] > 0 && cmp[j][k] >= 0) CHECK(cmp[i][k] > 0);
            }
        }
    const auto d = staircase({1, 2, 2, 1});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(compare(tensor_unchecked(fx[i], d, true), tensor_unchecked(fx[j], d, true)).value == cmp[i][j]);
}

TEST_CASE("multiples increase strictly and ladders match exact multiples") {
    OrderOptions eager;
    eager.compress_above = 1;
    for (const auto& c : {staircase({1, 1}), staircase({1, 2, 2, 1}), kn_model(2)}) {
        for (int k = 1; k <= 3; ++k) {
            CHECK(compare(class_multiple(c, k), class_multiple(c, k + 1)).value == -1);
            CHECK(compare(class_multiple(c, k, eager), multiple(c, k)).value == 0);
        }
    }
    MultipleLadder ladder(kn_model(3), eager);
    ladder.next();
    CHECK(ladder.compressed());
}

TEST_CASE("Archimedean witnesses") {
    const auto c = staircase({1, 2, 2, 1});
    const auto once = arch_equivalent(c, c, 1);
    CHECK(once.outcome == ArchWitness::Outcome::Unknown);
    CHECK(once.searched_up_to == 1);
    const auto twice = arch_equivalent(c, c, 2);
    CHECK(twice.outcome == ArchWitness::Outcome::Witness);
    CHECK(twice.n == 2);
    const auto kn = arch_equivalent(c, kn_model(2), 8);
    CHECK(kn.outcome == ArchWitness::Outcome::Witness);
    CHECK(kn.n <= 2);
    const auto far = arch_equivalent(staircase({1, 1}), staircase({2, 2}), 8);
    CHECK(far.outcome == ArchWitness::Outcome::Unknown);
    CHECK(far.searched_up_to == 8);
    CHECK(far.g_side == 1);
    CHECK(far.h_side == 0);
    CHECK_THROWS_AS(arch_equivalent(unknot_complex(), c, 2), ZeroElement);
    CHECK_THROWS_AS(arch_equivalent(c, figure2_fixture(), 2), ZeroElement);
}

TEST_CASE("dominance") {
    const auto a = dominance_consistent(staircase({2, 2}), staircase({1, 1}), 6);
    CHECK_FALSE(a.refuted_at);
    CHECK(a.consistent_up_to == 6);
    const auto b = dominance_consistent(kn_model(2), kn_model(3), 4);
    CHECK_FALSE(b.refuted_at);
    CHECK(b.consistent_up_to == 4);
    // compare(C, 1*C) = 0 already fails the strict inequality at N = 1.
    const auto c = dominance_consistent(staircase({1, 1}), staircase({1, 1}), 2);
    REQUIRE(c.refuted_at);
    CHECK(*c.refuted_at == 1);
    CHECK_THROWS_AS(dominance_consistent(unknot_complex(), staircase({1, 1}), 2), ZeroElement);
}
