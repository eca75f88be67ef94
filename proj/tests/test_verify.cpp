#include <algorithm>
#include <random>

#include "cfk/catalog.hpp"
#include "cfk/errors.hpp"
#include "cfk/verify.hpp"
#include "doctest.h"

using namespace cfk;
using Tag = FormsCase::Tag;

namespace {

ASequence seq(std::vector<int> terms, ASequence::Tail tail = ASequence::Tail::DepthLimit, int p1 = 0, int p2 = 0) {
    ASequence a;
    a.terms = std::move(terms);
    a.tail = tail;
    a.prime1 = p1;
    a.prime2 = p2;
    a.max_len = 12;
    return a;
}

// Sequences with negative entries only ever carry them as primed terms.
ASequence from_flat(const std::vector<int>& flat) {
    ASequence a;
    a.max_len = 99;
    for (int v : flat) {
        if (v > 0 && a.prime1 == 0) {
            a.terms.push_back(v);
        } else if (a.prime1 == 0) {
            a.prime1 = v;
        } else {
            a.prime2 = v;
        }
    }
    a.tail = ASequence::Tail::DepthLimit;
    return a;
}

std::vector<int> rep(const std::vector<int>& unit, int times) {
    std::vector<int> out;
    for (int t = 0; t < times; ++t) out.insert(out.end(), unit.begin(), unit.end());
    return out;
}

std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool starts_with(const std::vector<int>& l, const std::vector<int>& p) {
    return l.size() >= p.size() && std::equal(p.begin(), p.end(), l.begin());
}

// Direct reading of the eight shapes, independent of the agreement search.
std::vector<FormsCase> oracle_forms(const std::vector<int>& l, int n) {
    std::vector<FormsCase> out;
    auto at = [&](std::size_t i) { return i < l.size() ? l[i] : 0; };
    if (l.empty()) return out;
    if (l[0] >= 2) out.push_back({Tag::A, n, 0, 0, l[0], 0});
    if (l.size() >= 2 && l[0] == 1 && l[1] == 1) out.push_back({Tag::B, n});
    for (int k = 1; 2 * k <= static_cast<int>(l.size()); ++k) {
        const auto head = rep({1, n}, k);
        if (!starts_with(l, head)) break;
        const std::size_t h = head.size();
        if (at(h) == 1 && at(h + 1) != 0 && at(h + 1) != n) out.push_back({Tag::C, n, k, 0, at(h + 1), 0});
        if (at(h) != 0 && at(h) != 1 && at(h) != n && at(h) != -1) out.push_back({Tag::D, n, k, 0, at(h), 0});
        if (at(h) == -1 && at(h + 1) != 0) out.push_back({Tag::E, n, k, 0, -1, at(h + 1)});
        for (int l2 = 0; l2 <= k; ++l2) {
            const auto mid = cat(head, rep({n, 1}, l2));
            if (!starts_with(l, mid)) break;
            const std::size_t q = mid.size();
            if (l2 >= 1 && l2 < k && at(q) != 0 && at(q) != n) out.push_back({Tag::F, n, k, l2, at(q), 0});
            if (l2 < k && at(q) == n && at(q + 1) != 0 && at(q + 1) != 1)
                out.push_back({Tag::G, n, k, l2, at(q + 1), 0});
            if (l2 == k && at(q) != 0) out.push_back({Tag::H, n, k, 0, at(q), 0});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("forms lemma examples") {
    CHECK(classify_form(seq({2}), 3).tag == Tag::A);
    CHECK(classify_form(seq({2}), 3).m == 2);
    CHECK(classify_form(seq({1, 1}), 3).tag == Tag::B);

    const auto c = classify_form(seq({1, 3, 1, 2}), 3);
    CHECK(c.tag == Tag::C);
    CHECK(c.k == 1);
    CHECK(c.m == 2);

    const auto mp = classify_form(seq({1, 3, 3, 1}, ASequence::Tail::Complete), 3);
    CHECK(mp.tag == Tag::MultiplePattern);
    CHECK(mp.k == 1);

    CHECK(classify_form(seq({1, 3, 2}), 3).tag == Tag::D);
    const auto e = classify_form(seq({1, 3}, ASequence::Tail::PrimePair, -1, -2), 3);
    CHECK(e.tag == Tag::E);
    CHECK(e.m2 == -2);
    const auto f = classify_form(seq({1, 3, 1, 3, 3, 1, 2}), 3);
    CHECK(f.tag == Tag::F);
    CHECK(f.l == 1);
    const auto g = classify_form(seq({1, 3, 3, 2}), 3);
    CHECK(g.tag == Tag::G);
    CHECK(g.l == 0);
    const auto h = classify_form(seq({1, 3, 3, 1, 5}), 3);
    CHECK(h.tag == Tag::H);
    CHECK(h.m == 5);
}

TEST_CASE("classification needs enough depth") {
    CHECK_THROWS_AS(classify_form(seq({1, 3, 1, 3}), 3), Unclassifiable);
    CHECK_THROWS_AS(classify_form(seq({1, 3}, ASequence::Tail::DepthLimit, -1), 3), Unclassifiable);
    CHECK_THROWS_AS(classify_form(seq({1, 3, 3, 1}), 3), Unclassifiable);
    CHECK_THROWS_AS(classify_form(seq({}), 3), Unclassifiable);
    CHECK_THROWS_AS(classify_form(seq({1, 2, 2, 1}), 3), PreconditionError);
    CHECK_THROWS_AS(classify_form(seq({2}), 1), PreconditionError);
}

TEST_CASE("exactly one form applies to random sequences") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> nd(2, 4), kd(1, 3), md(-6, 6), shape(0, 4);
    int checked = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = nd(rng);
        const int k = kd(rng);
        std::uniform_int_distribution<int> ld(0, k);
        std::vector<int> l = rep({1, n}, k);
        switch (shape(rng)) {
            case 0: break;
            case 1: l.push_back(1); break;
            case 2: l = cat(l, rep({n, 1}, ld(rng))); break;
            case 3: l = cat(cat(l, rep({n, 1}, ld(rng))), {n}); break;
            case 4: l.push_back(-1); break;
        }
        int m = 0;
        while (m == 0) m = md(rng);
        l.push_back(m);
        int m2 = 0;
        while (m2 == 0) m2 = md(rng);
        l.push_back(m2);
        // Negative values are primed and end the sequence.
        auto neg = std::find_if(l.begin(), l.end(), [](int v) { return v < 0; });
        if (neg != l.end()) l.erase(std::min(l.end(), neg + 2), l.end());
        if (neg != l.end() && neg + 1 != l.end() && *(neg + 1) > 0) continue;

        const auto expected = oracle_forms(l, n);
        const auto a = from_flat(l);
        if (expected.empty()) {
            CHECK_THROWS_AS(classify_form(a, n), Unclassifiable);
            continue;
        }
        REQUIRE_MESSAGE(expected.size() == 1, "ambiguous sequence");
        const auto got = classify_form(a, n);
        CHECK_MESSAGE(got == expected.front(), (got.to_string() + " vs " + expected.front().to_string()));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("lemma claims") {
    const auto c = lemma_claim({Tag::C, 3, 1, 0, 2, 0});
    CHECK(c.kind == LemmaClaim::Kind::Difference);
    CHECK(c.sign == 1);
    CHECK(c.prefix == std::vector<int>{1, 2});
    CHECK(lemma_claim({Tag::C, 3, 1, 0, 4, 0}).kind == LemmaClaim::Kind::Dominates);
    CHECK(lemma_claim({Tag::C, 3, 1, 0, -4, 0}).kind == LemmaClaim::Kind::Dominates);
    CHECK(lemma_claim({Tag::C, 3, 1, 0, -2, 0}).kind == LemmaClaim::Kind::OutOfRange);
    CHECK(lemma_claim({Tag::D, 3, 1, 0, -5, 0}).prefix == std::vector<int>{3});
    CHECK(lemma_claim({Tag::D, 4, 1, 0, -2, 0}).prefix == std::vector<int>{2});
    CHECK(lemma_claim({Tag::E, 3, 1, 0, -1, -2}).prefix == std::vector<int>{1, 2});
    CHECK(lemma_claim({Tag::H, 3, 1, 0, 5, 0}).prefix == std::vector<int>{5});
    CHECK(lemma_claim({Tag::H, 3, 1, 0, -2, 0}).sign == -1);
    CHECK(lemma_claim({Tag::A, 3, 0, 0, 2, 0}).kind == LemmaClaim::Kind::Dominated);
}

TEST_CASE("corpus contents") {
    const auto c2 = corpus_generate(3, 1, {2});
    auto has = [](const Corpus& c, const std::string& name) {
        return std::any_of(c.items.begin(), c.items.end(), [&](const Complex& x) { return x.name() == name; });
    };
    CHECK(has(c2, "staircase[1,3,1,2,2,1,3,1]"));
    CHECK(has(corpus_generate(3, 1, {4}), "staircase[1,3,4,4,3,1]"));
    CHECK(has(c2, "staircase[1,3,1,2,2,1,3,1]^"));
    for (const auto& x : c2.items) {
        const auto r = validate(x);
        CHECK_MESSAGE(r.ok(), (x.name() + ": " + r.summary()));
    }
    CHECK(c2.notices.empty());

    const auto small = corpus_generate(3, 1, {2}, 10);
    CHECK_FALSE(small.notices.empty());
    for (const auto& x : small.items) CHECK(x.size() <= 10);
    CHECK_THROWS_AS(corpus_generate(1, 1, {2}), PreconditionError);
}

TEST_CASE("section 4 worked examples") {
    auto only = [](const SuiteReport& r) {
        REQUIRE(r.records.size() == 1);
        return r.records.front();
    };
    const auto a = only(check_section4(staircase({1, 3, 1, 2, 2, 1, 3, 1}), 3, 3));
    CHECK(a.status == CheckStatus::Pass);
    CHECK(a.check == "section4.c");
    CHECK(a.expected == "a(C-staircase[1,3,3,1]) begins (1,2)");

    const auto b = only(check_section4(staircase({1, 3, 2, 2, 3, 1}), 3, 3));
    CHECK(b.status == CheckStatus::Pass);
    CHECK(b.expected == "a(C-staircase[1,3,3,1]) begins (2)");

    const auto c = only(check_section4(staircase({1, 3, 4, 4, 3, 1}), 3, 3));
    CHECK(c.status == CheckStatus::Pass);
    CHECK(c.expected == "a(staircase[1,3,3,1]-C) begins (3)");

    const auto z = only(check_section4(figure2_fixture(), 3, 3));
    CHECK(z.status == CheckStatus::Skip);
}

TEST_CASE("suites pass on a small corpus and are deterministic") {
    const auto corpus = corpus_generate(2, 1, {2}).items;
    SuiteOptions one;
    SuiteOptions many;
    many.threads = 3;

    const auto s4 = check_section4_corpus(corpus, 2, 3, one);
    CHECK(s4.ok());
    CHECK(s4.to_json() == check_section4_corpus(corpus, 2, 3, many).to_json());

    const auto s3 = check_section3(corpus, one);
    CHECK(s3.ok());

    const auto eps = check_epsilon_calculus(corpus, one);
    CHECK(eps.ok());
    CHECK(eps.count(CheckStatus::Pass) > corpus.size());
    CHECK(eps.to_json() == check_epsilon_calculus(corpus, many).to_json());

    std::vector<Complex> few(corpus.begin(), corpus.begin() + std::min<std::size_t>(12, corpus.size()));
    const auto ord = check_order_coherence(few, 2, many);
    CHECK(ord.ok());
    CHECK(ord.count(CheckStatus::Pass) >= few.size() * (few.size() - 1) / 2);
}

TEST_CASE("main theorem checks for n = 2") {
    const auto rep = check_main_theorem({2}, 4);
    CHECK(rep.ok());
    CHECK(rep.records.size() == 4);
    const auto arch = std::find_if(rep.records.begin(), rep.records.end(),
                                   [](const CheckRecord& r) { return r.check == "main.archimedean"; });
    REQUIRE(arch != rep.records.end());
    CHECK(arch->computed == "witness N=2");
}

TEST_CASE("failed records carry the offending complex") {
    // Two unknots: the column homology has rank two, so epsilon throws and the
    // suite records the error.
    const Complex bad("two", {{"a", 0, 0}, {"b", 0, 0}}, {});
    const auto rep = check_section4(bad, 2, 2);
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].status == CheckStatus::Fail);
    CHECK(rep.records[0].complex_json.find("\"format_version\": 1") != std::string::npos);
    CHECK(rep.to_json().find("\"complex\"") != std::string::npos);
}
