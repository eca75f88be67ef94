// Acceptance runner: one PASS/FAIL line per criterion, exit code 1 if any
// criterion fails.  Time limits and exact expected values are pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cfk/catalog.hpp"
#include "cfk/errors.hpp"
#include "cfk/invariants.hpp"
#include "cfk/io.hpp"
#include "cfk/order.hpp"
#include "cfk/region.hpp"
#include "cfk/verify.hpp"
#include "cli_cases.hpp"
#include "oracles.hpp"

using namespace cfk;
namespace fs = std::filesystem;

namespace {

constexpr double kFixtureSeconds = 10.0;
constexpr double kASequenceSeconds = 60.0;
constexpr double kMultipleSeconds = 300.0;
constexpr double kMainSeconds = 600.0;
constexpr std::size_t kOracleMaxDim = 200;
constexpr int kArchNmax = 8;
constexpr int kArchExpectedN = 2;
constexpr int kDominanceN = 4;
constexpr int kSection4Nbound = 3;
constexpr int kCorpusKmax = 2;

struct Outcome {
    bool pass = true;
    std::vector<std::string> problems;
    std::string summary;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            problems.push_back(what);
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double seconds_limit;  // <= 0: no time limit
    std::function<Outcome()> run;
};

bool begins_with(const std::vector<int>& seq, const std::vector<int>& prefix) {
    return seq.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), seq.begin());
}

std::vector<int> staircase_pattern(int n, int k) {
    std::vector<int> s;
    for (int t = 0; t < k; ++t) s.insert(s.end(), {1, n});
    for (int t = 0; t < k; ++t) s.insert(s.end(), {n, 1});
    return s;
}

std::vector<fs::path> fixture_files() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(cli_cases::kSource / "fixtures"))
        if (e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

Outcome criterion_fixture_validation() {
    Outcome o;
    std::vector<Complex> all{unknot_complex(),        staircase({1, 1}),      staircase({2, 2}),
                             staircase({1, 2, 2, 1}), staircase({1, 3, 3, 1}), torus_complex(2, 3),
                             torus_complex(3, 4),     torus_complex(4, 5),     figure2_fixture()};
    for (int n = 2; n <= 5; ++n) all.push_back(trefoil_cable_complex(n));
    for (int n = 2; n <= 4; ++n) all.push_back(kn_model(n));
    for (const auto& f : fixture_files()) all.push_back(load_complex(f.string()));
    for (const auto& c : all) {
        const auto rep = validate(c);
        o.require(rep.violations.empty(), c.name() + " fails validate");
    }
    o.summary = std::to_string(all.size()) + " complexes valid";
    return o;
}

Outcome criterion_figure2_invariants() {
    Outcome o;
    const auto c = figure2_fixture();
    const int e = epsilon(c);
    const int t = tau(c);
    o.require(e == 0, "epsilon = " + std::to_string(e));
    o.require(t == 0, "tau = " + std::to_string(t));
    o.summary = "epsilon " + std::to_string(e) + ", tau " + std::to_string(t);
    return o;
}

Outcome criterion_a_sequences() {
    Outcome o;
    const auto two = a_sequence(trefoil_cable_complex(2));
    o.require(two.tail == ASequence::Tail::Complete && two.terms == std::vector<int>{1, 2, 2, 1},
              "cable n=2 gives " + two.to_string());
    std::string seen = "cable2 " + two.to_string();
    for (int n = 3; n <= 5; ++n) {
        const auto cab = a_sequence(trefoil_cable_complex(n));
        o.require(begins_with(cab.flattened(), {1, n, 1, n - 2}), "cable n=" + std::to_string(n) + " gives " + cab.to_string());
        const auto tor = a_sequence(torus_complex(n, n + 1));
        o.require(begins_with(tor.flattened(), {1, n - 1, 2}),
                  "T(" + std::to_string(n) + "," + std::to_string(n + 1) + ") gives " + tor.to_string());
        seen += "; cable" + std::to_string(n) + " " + cab.to_string() + ", T" + std::to_string(n) + " " + tor.to_string();
    }
    o.summary = seen;
    return o;
}

Outcome criterion_multiple_pattern() {
    Outcome o;
    int checked = 0;
    for (int n : {2, 3})
        for (int k = 1; k <= 3; ++k) {
            const auto lhs = multiple(staircase({1, n, n, 1}), k);
            const auto r = compare(lhs, staircase(staircase_pattern(n, k)));
            o.require(r.value == 0, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " compares " + std::to_string(r.value));
            ++checked;
        }
    o.summary = std::to_string(checked) + " identities";
    return o;
}

Outcome criterion_section4_instances(const SuiteOptions& so) {
    Outcome o;
    std::vector<std::pair<Complex, int>> items{{staircase({1, 3, 1, 2, 2, 1, 3, 1}), 3},
                                               {staircase({1, 3, 2, 2, 3, 1}), 3},
                                               {staircase({1, 3, 4, 4, 3, 1}), 3}};
    for (int n : {2, 3})
        for (int m = 2; m <= n + 1; ++m) {
            items.push_back({staircase({1, n, m, m, n, 1}), n});
            items.push_back({staircase({1, n, 1, m, m, 1, n, 1}), n});
        }
    std::size_t passed = 0;
    for (const auto& [c, n] : items) {
        const auto rep = check_section4(c, n, kSection4Nbound, so);
        for (const auto& r : rep.records) {
            const bool ok = r.status == CheckStatus::Pass;
            o.require(ok, c.name() + ": " + r.check + " expected " + r.expected + ", computed " + r.computed);
            passed += ok ? 1 : 0;
        }
        o.require(!rep.records.empty(), c.name() + ": no record");
    }
    o.summary = std::to_string(passed) + " of " + std::to_string(items.size()) + " instances match their lemma";
    return o;
}

Outcome criterion_main_theorem() {
    Outcome o;
    std::string seen;
    for (int n : {2, 3, 4}) {
        const auto w = arch_equivalent(kn_model(n), staircase({1, n, n, 1}), kArchNmax);
        const bool ok = w.outcome == ArchWitness::Outcome::Witness && w.n <= kArchExpectedN;
        o.require(ok, "arch n=" + std::to_string(n) +
                          (w.outcome == ArchWitness::Outcome::Witness ? " witness N=" + std::to_string(w.n) : " unknown"));
        if (ok) seen += "arch n=" + std::to_string(n) + " N=" + std::to_string(w.n) + "; ";
    }
    for (int n : {2, 3}) {
        const auto d = dominance_consistent(kn_model(n), kn_model(n + 1), kDominanceN);
        o.require(!d.refuted_at && d.consistent_up_to == kDominanceN,
                  "dominance n=" + std::to_string(n) + " refuted at " + std::to_string(d.refuted_at.value_or(0)));
        if (!d.refuted_at) seen += "K" + std::to_string(n) + " << K" + std::to_string(n + 1) + " to N=" + std::to_string(kDominanceN) + "; ";
    }
    o.summary = seen.empty() ? "" : seen.substr(0, seen.size() - 2);
    return o;
}

Outcome criterion_property_suites(const SuiteOptions& so) {
    Outcome o;
    std::string seen;
    for (int n : {2, 3}) {
        std::vector<int> mrange;
        for (int m = 2; m <= n + 1; ++m) mrange.push_back(m);
        const auto corpus = corpus_generate(n, kCorpusKmax, mrange, so.size_budget);
        for (const auto& c : corpus.items) o.require(c.size() <= so.size_budget, c.name() + " exceeds the size budget");
        const auto eps = check_epsilon_calculus(corpus.items, so);
        const auto s3 = check_section3(corpus.items, so);
        const auto ord = check_order_coherence(corpus.items, n, so);
        for (const auto* rep : {&eps, &s3, &ord})
            for (const auto& r : rep->records)
                o.require(r.status != CheckStatus::Fail, "n=" + std::to_string(n) + " " + r.check + " [" + r.params + "]");
        seen += "n=" + std::to_string(n) + ": " + std::to_string(corpus.items.size()) + " complexes, " +
                std::to_string(eps.count(CheckStatus::Pass) + s3.count(CheckStatus::Pass) + ord.count(CheckStatus::Pass)) +
                " pass, " +
                std::to_string(eps.count(CheckStatus::Skip) + s3.count(CheckStatus::Skip) + ord.count(CheckStatus::Skip)) +
                " skip; ";
    }
    o.summary = seen.substr(0, seen.size() - 2);
    return o;
}

std::vector<RegionSpec> regions_for(int tau) {
    const int lo = -1000000, hi = 1000000;
    return {RegionSpec::column_i0(),
            RegionSpec::column_segment(1, tau - 2, tau + 1),
            RegionSpec::column_segment(-1, lo, hi),
            RegionSpec::row_segment(tau, lo, -1),
            RegionSpec::min_hook(tau),
            RegionSpec::max_hook(tau),
            RegionSpec::truncated_min_hook(tau, 2),
            RegionSpec::s_region(tau, {1}, 0),
            RegionSpec::s_region(tau, {1, 2}, 1),
            RegionSpec::s_region(tau, {2, 1, 1}, 3),
            RegionSpec::explicit_points({{0, 0}, {0, 1}, {1, 0}, {1, 1}})};
}

Outcome criterion_oracle_equivalence() {
    Outcome o;
    std::size_t dims = 0, ranks = 0;
    for (const auto& f : fixture_files()) {
        const auto c = load_complex(f.string());
        if (!c.reduced()) continue;
        const int t = tau(c);
        for (int shift : {-1, 0, 1}) {
            for (const auto& spec : regions_for(t + shift)) {
                const auto r = realize_region(c, spec);
                const auto expect = oracle::region_dimension(c, spec);
                o.require(r.dim() == expect, c.name() + " " + spec.describe() + ": dim " + std::to_string(r.dim()) +
                                                 " vs " + std::to_string(expect));
                ++dims;
                if (r.dim() > kOracleMaxDim) continue;
                std::vector<std::pair<int, int>> edges;
                for (std::size_t k = 0; k < r.dim(); ++k)
                    for (auto to : r.chain().boundary[k]) edges.emplace_back(static_cast<int>(k), static_cast<int>(to));
                const auto naive = oracle::homology_dim(r.dim(), edges);
                o.require(homology_f2(r).rank == naive, c.name() + " " + spec.describe() + ": homology rank");
                ++ranks;
            }
        }
    }
    o.summary = std::to_string(dims) + " dimensions, " + std::to_string(ranks) + " homology ranks";
    return o;
}

Outcome criterion_cli_io() {
    Outcome o;
    std::size_t trips = 0;
    for (const auto& f : fixture_files()) {
        const auto text = read_text_file(f.string());
        o.require(serialize(parse(text)) == text, f.filename().string() + " is not byte stable");
        ++trips;
    }
    std::size_t goldens = 0;
    for (const auto& gc : cli_cases::cases()) {
        const auto r = cli_cases::run(gc.args);
        o.require(r.code == gc.exit_code, gc.golden + ": exit " + std::to_string(r.code));
        if (!gc.error_kind.empty()) {
            const auto rec = nlohmann::json::parse(r.err.substr(0, r.err.find('\n')), nullptr, false);
            o.require(!rec.is_discarded() && rec.value("error", "") == gc.error_kind, gc.golden + ": error kind");
        }
        const auto path = cli_cases::golden_path(gc);
        o.require(fs::exists(path) && read_text_file(path.string()) == r.out, gc.golden + ": output differs");
        ++goldens;
    }
    o.summary = std::to_string(trips) + " round trips, " + std::to_string(goldens) + " golden invocations";
    return o;
}

}  // namespace

int main() {
    SuiteOptions so;
    so.threads = default_thread_count();

    const std::vector<Criterion> criteria{
        {1, "fixture validation", kFixtureSeconds, criterion_fixture_validation},
        {2, "figure2 epsilon and tau", 0, criterion_figure2_invariants},
        {3, "a-sequences of cables and torus knots", kASequenceSeconds, criterion_a_sequences},
        {4, "multiple-pattern identity", kMultipleSeconds, criterion_multiple_pattern},
        {5, "section 4 instance checks", 0, [&] { return criterion_section4_instances(so); }},
        {6, "main-theorem assembly", kMainSeconds, criterion_main_theorem},
        {7, "property suites over the corpus", 0, [&] { return criterion_property_suites(so); }},
        {8, "oracle equivalence", 0, criterion_oracle_equivalence},
        {9, "CLI and IO contract", 0, criterion_cli_io},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.seconds_limit > 0 && secs > c.seconds_limit) {
            std::ostringstream msg;
            msg << "took " << secs << " s, limit " << c.seconds_limit << " s";
            o.require(false, msg.str());
        }
        std::printf("%s criterion %d: %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    o.summary.c_str());
        const std::size_t shown = std::min<std::size_t>(o.problems.size(), 10);
        for (std::size_t k = 0; k < shown; ++k) std::printf("    %s\n", o.problems[k].c_str());
        if (o.problems.size() > shown) std::printf("    ... %zu more\n", o.problems.size() - shown);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
