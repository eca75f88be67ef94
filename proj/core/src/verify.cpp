#include "cfk/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cfk/catalog.hpp"
#include "cfk/errors.hpp"
#include "cfk/io.hpp"

namespace cfk {

namespace {

std::string seq_text(const std::vector<int>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << ")";
    return os.str();
}

std::string pattern_name(int n, int k) { return staircase_name(multiple_pattern(n, k)); }

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Runs one check, timing it and turning library errors into failed records.
// Unclassifiable becomes a skip: the caller has to look deeper.
CheckRecord run_check(std::string check, std::string params, const Complex* subject,
                      const std::function<void(CheckRecord&)>& body) {
    CheckRecord r;
    r.check = std::move(check);
    r.params = std::move(params);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const Unclassifiable& e) {
        r.status = CheckStatus::Skip;
        r.computed = std::string("Unclassifiable: ") + e.what();
    } catch (const Error& e) {
        r.status = CheckStatus::Fail;
        r.computed = e.kind() + ": " + e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (r.status == CheckStatus::Fail && subject) r.complex_json = serialize(*subject);
    return r;
}

void expect_equal(CheckRecord& r, const std::string& expected, const std::string& computed) {
    r.expected = expected;
    r.computed = computed;
    r.status = expected == computed ? CheckStatus::Pass : CheckStatus::Fail;
}

Complex reduced_difference(const Complex& a, const Complex& b) {
    return reduce(difference(a, b)).renamed("(" + a.name() + ")-(" + b.name() + ")");
}

Complex oriented(const Complex& c, int eps) { return eps >= 0 ? c : dual(c); }

}  // namespace

const char* to_string(FormsCase::Tag t) {
    switch (t) {
        case FormsCase::Tag::A: return "a";
        case FormsCase::Tag::B: return "b";
        case FormsCase::Tag::C: return "c";
        case FormsCase::Tag::D: return "d";
        case FormsCase::Tag::E: return "e";
        case FormsCase::Tag::F: return "f";
        case FormsCase::Tag::G: return "g";
        case FormsCase::Tag::H: return "h";
        case FormsCase::Tag::MultiplePattern: return "multiple";
    }
    return "?";
}

std::string FormsCase::to_string() const {
    std::ostringstream os;
    os << cfk::to_string(tag) << "(n=" << n;
    switch (tag) {
        case Tag::A: os << ",m=" << m; break;
        case Tag::B: break;
        case Tag::C:
        case Tag::D:
        case Tag::H: os << ",k=" << k << ",m=" << m; break;
        case Tag::E: os << ",k=" << k << ",m=" << m2; break;
        case Tag::F:
        case Tag::G: os << ",k=" << k << ",l=" << l << ",m=" << m; break;
        case Tag::MultiplePattern: os << ",k=" << k; break;
    }
    os << ")";
    return os.str();
}

std::vector<int> multiple_pattern(int n, int k) {
    std::vector<int> out;
    for (int t = 0; t < k; ++t) {
        out.push_back(1);
        out.push_back(n);
    }
    for (int t = 0; t < k; ++t) {
        out.push_back(n);
        out.push_back(1);
    }
    return out;
}

FormsCase classify_form(const ASequence& aseq, int n) {
    if (n < 2) throw PreconditionError("classify_form needs n >= 2");
    const auto L = aseq.flattened();
    auto need = [&](std::size_t idx) {
        if (idx >= L.size())
            throw Unclassifiable(aseq.to_string() + " stops before term " + std::to_string(idx + 1) +
                                 " (max_len " + std::to_string(aseq.max_len) + ")");
    };
    FormsCase fc;
    fc.n = n;
    need(0);
    if (L[0] != 1) {
        if (L[0] < 2) throw Unclassifiable(aseq.to_string() + " has no a_1");
        fc.tag = FormsCase::Tag::A;
        fc.m = L[0];
        return fc;
    }
    need(1);
    if (L[1] == 1) {
        fc.tag = FormsCase::Tag::B;
        return fc;
    }
    if (L[1] != n)
        throw PreconditionError("a_2 = " + std::to_string(L[1]) + " but n = " + std::to_string(n));

    // Least k whose pattern agrees with the sequence for the most terms.
    std::size_t best = 0;
    int k = 1;
    const int kmax = static_cast<int>(L.size() / 2) + 1;
    for (int kk = 1; kk <= kmax; ++kk) {
        const auto t = multiple_pattern(n, kk);
        std::size_t agree = 0;
        while (agree < L.size() && agree < t.size() && L[agree] == t[agree]) ++agree;
        if (agree > best) {
            best = agree;
            k = kk;
        }
    }
    if (best == L.size()) {
        if (aseq.tail == ASequence::Tail::Complete && L == multiple_pattern(n, k)) {
            fc.tag = FormsCase::Tag::MultiplePattern;
            fc.k = k;
            return fc;
        }
        throw Unclassifiable(aseq.to_string() + " stops inside the pattern " + pattern_name(n, k) + " (max_len " +
                             std::to_string(aseq.max_len) + ")");
    }

    const int p = static_cast<int>(best) + 1;  // first differing position, 1-based
    const int m = L[best];
    if (p == 2 * k) {
        fc.tag = FormsCase::Tag::C;
        fc.k = k - 1;
        fc.m = m;
    } else if (p == 2 * k + 1) {
        fc.k = k;
        if (m == -1) {
            need(best + 1);
            fc.tag = FormsCase::Tag::E;
            fc.m = -1;
            fc.m2 = L[best + 1];
        } else {
            fc.tag = FormsCase::Tag::D;
            fc.m = m;
        }
    } else if (p <= 4 * k) {
        fc.k = k;
        fc.m = m;
        if (p % 2 == 1) {
            fc.tag = FormsCase::Tag::F;
            fc.l = (p - 2 * k - 1) / 2;
        } else {
            fc.tag = FormsCase::Tag::G;
            fc.l = (p - 2 * k - 2) / 2;
        }
    } else {
        fc.tag = FormsCase::Tag::H;
        fc.k = k;
        fc.m = m;
    }
    return fc;
}

LemmaClaim lemma_claim(const FormsCase& fc) {
    using Tag = FormsCase::Tag;
    using Kind = LemmaClaim::Kind;
    const int n = fc.n;
    const int m = fc.m;
    LemmaClaim c;
    c.k = fc.k;
    auto diff = [&](int sign, std::vector<int> prefix) {
        c.kind = Kind::Difference;
        c.sign = sign;
        c.prefix = std::move(prefix);
        const std::string t = pattern_name(n, fc.k);
        c.statement = "a(" + (sign > 0 ? "C-" + t : t + "-C") + ") begins " + seq_text(c.prefix);
    };
    const std::string base = staircase_name({1, n, n, 1});
    switch (fc.tag) {
        case Tag::A:
        case Tag::B:
            c.kind = Kind::Dominated;
            c.statement = "C << " + base;
            break;
        case Tag::C:
            if (m > n || m < -n) {
                c.kind = Kind::Dominates;
                c.statement = "C >> " + base;
            } else if (0 < m && m < n) {
                diff(+1, {1, m});
            }
            break;
        case Tag::D:
            if (m > n)
                diff(-1, {n});
            else if (1 < m && m < n)
                diff(+1, {m});
            else if (m < -1)
                diff(-1, {std::min(-m, n)});
            break;
        case Tag::E:
            if (-n < fc.m2 && fc.m2 < 0) diff(-1, {1, -fc.m2});
            break;
        case Tag::F:
            if (0 < m && m < n)
                diff(+1, {n});
            else if (m > n || m < -n)
                diff(-1, {n});
            break;
        case Tag::G:
            if (m >= 2 || m < 0) diff(+1, {n});
            break;
        case Tag::H:
            if (m > 0)
                diff(+1, {std::max(m, n)});
            else if (m < 0)
                diff(-1, {std::max(-m, n)});
            break;
        case Tag::MultiplePattern:
            c.kind = Kind::Equal;
            c.statement = "C = " + std::to_string(fc.k) + base;
            break;
    }
    if (c.kind == Kind::OutOfRange) c.statement = fc.to_string() + " lies outside the forms lemma";
    return c;
}

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skip: return "SKIP";
    }
    return "?";
}

std::size_t SuiteReport::count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [&](const CheckRecord& r) { return r.status == s; }));
}

void SuiteReport::append(SuiteReport other) {
    records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                   std::make_move_iterator(other.records.end()));
}

void SuiteReport::sort_by_check() {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.check < b.check; });
}

std::string SuiteReport::to_json(bool with_timing) const {
    using ojson = nlohmann::ordered_json;
    ojson doc;
    doc["summary"] = {{"pass", count(CheckStatus::Pass)},
                      {"fail", count(CheckStatus::Fail)},
                      {"skip", count(CheckStatus::Skip)}};
    ojson list = ojson::array();
    for (const auto& r : records) {
        ojson o;
        o["check"] = r.check;
        o["params"] = r.params;
        o["expected"] = r.expected;
        o["computed"] = r.computed;
        o["status"] = to_string(r.status);
        if (with_timing) o["runtime_ms"] = r.runtime_ms;
        if (!r.complex_json.empty()) o["complex"] = ojson::parse(r.complex_json);
        list.push_back(std::move(o));
    }
    doc["records"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string SuiteReport::to_text(bool with_timing) const {
    std::ostringstream os;
    for (const auto& r : records) {
        os << to_string(r.status) << " " << r.check << " [" << r.params << "] expected: " << r.expected
           << " computed: " << r.computed;
        if (with_timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.1f", r.runtime_ms);
            os << " (" << buf << " ms)";
        }
        os << "\n";
    }
    os << "pass " << count(CheckStatus::Pass) << ", fail " << count(CheckStatus::Fail) << ", skip "
       << count(CheckStatus::Skip) << "\n";
    return os.str();
}

int default_thread_count() {
    if (const char* env = std::getenv("CFK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

Corpus corpus_generate(int n, int kmax, const std::vector<int>& mrange, std::size_t size_budget) {
    if (n < 2) throw PreconditionError("corpus_generate needs n >= 2");
    if (kmax < 1) throw PreconditionError("corpus_generate needs kmax >= 1");
    for (int m : mrange)
        if (m < 1) throw PreconditionError("corpus_generate needs every m >= 1");

    Corpus out;
    std::set<std::string> names;
    auto add = [&](const Complex& c) {
        if (c.size() > size_budget) {
            out.notices.push_back("dropped " + c.name() + ": " + std::to_string(c.size()) + " generators exceed " +
                                  std::to_string(size_budget));
            return;
        }
        if (names.insert(c.name()).second) out.items.push_back(c);
    };

    add(unknot_complex());
    add(figure2_fixture());

    std::vector<Complex> stairs;
    for (int k = 1; k <= kmax; ++k) stairs.push_back(staircase(multiple_pattern(n, k)));
    for (int k = 1; k <= kmax; ++k) {
        for (int m : mrange) {
            std::vector<int> head;
            for (int t = 0; t < k; ++t) {
                head.push_back(1);
                head.push_back(n);
            }
            std::vector<int> tail(head.rbegin(), head.rend());
            std::vector<int> s1 = head;
            s1.insert(s1.end(), {m, m});
            s1.insert(s1.end(), tail.begin(), tail.end());
            std::vector<int> s2 = head;
            s2.insert(s2.end(), {1, m, m, 1});
            s2.insert(s2.end(), tail.begin(), tail.end());
            stairs.push_back(staircase(s1));
            stairs.push_back(staircase(s2));
            // Sequences that run through a whole pattern, or stop one (n, 1)
            // short of it, before m appears.
            const auto t = multiple_pattern(n, k);
            std::vector<int> s3 = t;
            s3.insert(s3.end(), {m, m});
            s3.insert(s3.end(), t.begin(), t.end());
            stairs.push_back(staircase(s3));
            if (k >= 2) {
                std::vector<int> s4(t.begin(), t.end() - 2);
                s4.insert(s4.end(), {m, m});
                s4.insert(s4.end(), t.begin() + 2, t.end());
                stairs.push_back(staircase(s4));
            }
        }
    }

    std::vector<Complex> knots;
    const std::vector<std::pair<int, int>> torus{{2, 3}, {2, 5}, {3, 4}, {3, 5}, {n, n + 1}};
    for (auto [p, q] : torus) knots.push_back(torus_complex(p, q));
    knots.push_back(trefoil_cable_complex(n));
    knots.push_back(trefoil_cable_complex(n + 1));
    knots.push_back(kn_model(n));

    for (const auto& c : stairs) add(c);
    for (const auto& c : knots) add(c);
    for (const auto& c : stairs) add(dual(c));
    for (const auto& c : knots) add(dual(c));

    const Complex base = staircase({1, n, n, 1});
    for (const auto& c : stairs) {
        if (c.size() * base.size() > size_budget * 4) {
            out.notices.push_back("skipped differences of " + c.name() + " with " + base.name());
            continue;
        }
        add(reduced_difference(c, base));
        add(reduced_difference(base, c));
    }
    return out;
}

SuiteReport check_section4(const Complex& c, int n, int nbound, const SuiteOptions& opts) {
    SuiteReport rep;
    auto record = run_check("section4", c.name() + ", n=" + std::to_string(n), &c, [&](CheckRecord& r) {
        const int e = epsilon(c);
        if (e == 0) {
            r.status = CheckStatus::Skip;
            r.expected = "epsilon = +-1";
            r.computed = "epsilon 0, outside the forms lemma";
            return;
        }
        const Complex x = oriented(c, e);
        ASequence a = a_sequence(x, opts.max_len);
        auto effective_n = [&](const ASequence& s) {
            const auto L = s.flattened();
            return (L.size() >= 2 && L[0] == 1 && L[1] >= 2) ? L[1] : n;
        };
        FormsCase fc;
        try {
            fc = classify_form(a, effective_n(a));
        } catch (const Unclassifiable&) {
            a = a_sequence(x, 2 * opts.max_len);
            fc = classify_form(a, effective_n(a));
        }
        const LemmaClaim claim = lemma_claim(fc);
        r.check = "section4." + std::string(to_string(fc.tag));
        r.params += ", sign " + std::to_string(e) + ", a=" + a.to_string() + ", " + fc.to_string();
        r.expected = claim.statement;
        const Complex base = staircase({1, fc.n, fc.n, 1});
        switch (claim.kind) {
            case LemmaClaim::Kind::Dominated:
            case LemmaClaim::Kind::Dominates: {
                const bool below = claim.kind == LemmaClaim::Kind::Dominated;
                const auto d = below ? dominance_consistent(x, base, nbound, opts.order)
                                     : dominance_consistent(base, x, nbound, opts.order);
                if (d.refuted_at) {
                    r.status = CheckStatus::Fail;
                    r.computed = "refuted at N=" + std::to_string(*d.refuted_at);
                } else {
                    r.status = CheckStatus::Pass;
                    r.computed = "consistent up to N=" + std::to_string(d.consistent_up_to);
                }
                break;
            }
            case LemmaClaim::Kind::Difference: {
                const Complex t = staircase(multiple_pattern(fc.n, claim.k));
                const Complex d = claim.sign > 0 ? reduced_difference(x, t) : reduced_difference(t, x);
                const int ed = epsilon(d);
                if (ed != 1) {
                    r.status = CheckStatus::Fail;
                    r.computed = "epsilon of the difference is " + std::to_string(ed);
                    break;
                }
                const auto ad = a_sequence(d, static_cast<int>(claim.prefix.size()));
                const auto L = ad.flattened();
                const bool match = L.size() >= claim.prefix.size() &&
                                   std::equal(claim.prefix.begin(), claim.prefix.end(), L.begin());
                r.status = match ? CheckStatus::Pass : CheckStatus::Fail;
                r.computed = "a=" + ad.to_string();
                break;
            }
            case LemmaClaim::Kind::Equal: {
                const int v = compare(x, staircase(multiple_pattern(fc.n, fc.k)), opts.order).value;
                r.status = v == 0 ? CheckStatus::Pass : CheckStatus::Fail;
                r.computed = "compare = " + std::to_string(v);
                break;
            }
            case LemmaClaim::Kind::OutOfRange:
                r.status = CheckStatus::Fail;
                r.computed = "a=" + a.to_string();
                break;
        }
    });
    rep.records.push_back(std::move(record));
    return rep;
}

SuiteReport check_section4_corpus(const std::vector<Complex>& corpus, int n, int nbound, const SuiteOptions& opts) {
    std::vector<SuiteReport> parts(corpus.size());
    parallel_for(corpus.size(), opts.threads,
                 [&](std::size_t i) { parts[i] = check_section4(corpus[i], n, nbound, opts); });
    SuiteReport rep;
    for (auto& p : parts) rep.append(std::move(p));
    for (const char* tag : {"a", "b", "c", "d", "e", "f", "g", "h", "multiple"}) {
        const std::string id = std::string("section4.") + tag;
        const bool covered = std::any_of(rep.records.begin(), rep.records.end(),
                                         [&](const CheckRecord& r) { return r.check == id; });
        if (!covered) {
            CheckRecord r;
            r.check = id;
            r.params = "n=" + std::to_string(n);
            r.expected = "at least one corpus instance";
            r.computed = "zero coverage";
            r.status = CheckStatus::Skip;
            rep.records.push_back(std::move(r));
        }
    }
    rep.sort_by_check();
    return rep;
}

namespace {

// Length of the leading run of (1, n) pairs and the following run of (n, 1)
// pairs; rest is the index just past them.
struct PatternPrefix {
    int k = 0;
    int l = 0;
    std::size_t rest = 0;
};

PatternPrefix pattern_prefix(const std::vector<int>& t, int n) {
    PatternPrefix p;
    std::size_t i = 0;
    while (i + 1 < t.size() && t[i] == 1 && t[i + 1] == n) {
        ++p.k;
        i += 2;
    }
    while (p.k > 0 && i + 1 < t.size() && t[i] == n && t[i + 1] == 1) {
        ++p.l;
        i += 2;
    }
    p.rest = i;
    return p;
}

}  // namespace

SuiteReport check_section3(const std::vector<Complex>& corpus, const SuiteOptions& opts) {
    std::vector<std::vector<CheckRecord>> parts(corpus.size());
    parallel_for(corpus.size(), opts.threads, [&](std::size_t idx) {
        const Complex& c = corpus[idx];
        auto& out = parts[idx];
        int e = 0;
        ASequence a;
        auto setup = run_check("section3.setup", c.name(), &c, [&](CheckRecord& r) {
            e = epsilon(c);
            r.expected = "a-sequence computable";
            if (e != 0) a = a_sequence(oriented(c, e), opts.max_len);
            r.computed = e == 0 ? "epsilon 0" : a.to_string();
        });
        if (setup.status == CheckStatus::Fail) {
            out.push_back(std::move(setup));
            return;
        }
        if (e == 0) return;
        const Complex x = oriented(c, e);
        const std::string params = c.name() + ", a=" + a.to_string();
        const auto& t = a.terms;
        if (!t.empty() && t[0] == 1) {
            out.push_back(run_check("section3.a1_defines_a2", params, &x, [&](CheckRecord& r) {
                r.expected = "a_2 defined";
                const bool ok = t.size() >= 2;
                r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
                r.computed = ok ? "a_2 = " + std::to_string(t[1]) : "a_2 undefined";
            }));
        }
        if (t.size() < 2 || t[0] != 1 || t[1] < 2) return;
        const int n = t[1];
        const auto pp = pattern_prefix(t, n);
        const bool primed = a.tail == ASequence::Tail::Prime || a.tail == ASequence::Tail::PrimePair;
        const std::string bound = "a' < -" + std::to_string(n);
        if (pp.l == 0 && pp.rest + 1 == t.size() && t[pp.rest] == 1 && primed) {
            out.push_back(run_check("section3.primed_after_1", params, &x, [&](CheckRecord& r) {
                r.status = a.prime1 < -n ? CheckStatus::Pass : CheckStatus::Fail;
                r.expected = bound;
                r.computed = "a' = " + std::to_string(a.prime1);
            }));
        }
        if (pp.l >= 1 && pp.rest == t.size() && primed) {
            out.push_back(run_check("section3.primed_after_n1", params, &x, [&](CheckRecord& r) {
                r.status = a.prime1 < -n ? CheckStatus::Pass : CheckStatus::Fail;
                r.expected = bound;
                r.computed = "a' = " + std::to_string(a.prime1);
            }));
        }
        if (pp.l == 0 && pp.rest == t.size() && a.prime1 == -1) {
            out.push_back(run_check("section3.primed_pair", params, &x, [&](CheckRecord& r) {
                r.expected = "second primed term defined with 0 < |a'| < " + std::to_string(n);
                const bool ok = a.tail == ASequence::Tail::PrimePair && a.prime2 < 0 && -a.prime2 < n;
                r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
                r.computed = a.tail == ASequence::Tail::PrimePair ? "a' = " + std::to_string(a.prime2)
                                                                  : std::string("undefined (") + to_string(a.tail) + ")";
            }));
        }
    });
    SuiteReport rep;
    for (auto& p : parts)
        for (auto& r : p) rep.records.push_back(std::move(r));
    for (const char* id : {"section3.a1_defines_a2", "section3.primed_after_1", "section3.primed_after_n1",
                           "section3.primed_pair"}) {
        const bool covered =
            std::any_of(rep.records.begin(), rep.records.end(), [&](const CheckRecord& r) { return r.check == id; });
        if (!covered) {
            CheckRecord r;
            r.check = id;
            r.expected = "at least one corpus instance";
            r.computed = "zero coverage";
            r.status = CheckStatus::Skip;
            rep.records.push_back(std::move(r));
        }
    }
    rep.sort_by_check();
    return rep;
}

SuiteReport check_epsilon_calculus(const std::vector<Complex>& corpus, const SuiteOptions& opts) {
    const std::size_t count = corpus.size();
    std::vector<int> eps(count), taus(count);
    std::vector<std::vector<CheckRecord>> singles(count);
    parallel_for(count, opts.threads, [&](std::size_t i) {
        const Complex& c = corpus[i];
        auto& out = singles[i];
        out.push_back(run_check("epsilon.dual_negates", c.name(), &c, [&](CheckRecord& r) {
            eps[i] = epsilon(c);
            taus[i] = tau(c);
            const int ed = epsilon(dual(c));
            expect_equal(r, std::to_string(-eps[i]), std::to_string(ed));
        }));
        if (out.back().status == CheckStatus::Pass && eps[i] == 0) {
            out.push_back(run_check("epsilon.zero_forces_tau", c.name(), &c, [&](CheckRecord& r) {
                expect_equal(r, "tau 0", "tau " + std::to_string(taus[i]));
            }));
        }
    });
    SuiteReport rep;
    for (auto& s : singles)
        for (auto& r : s) rep.records.push_back(std::move(r));

    // Pairwise sign rules on products that stay inside the size budget.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i; j < count; ++j) {
            if (corpus[i].size() * corpus[j].size() > opts.size_budget) continue;
            if (eps[i] == 0 || eps[j] == 0 || eps[i] == eps[j]) pairs.emplace_back(i, j);
        }
    std::vector<CheckRecord> pair_records(pairs.size());
    parallel_for(pairs.size(), opts.threads, [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const bool zero = eps[i] == 0 || eps[j] == 0;
        const int expected = eps[i] == 0 ? eps[j] : eps[i];
        const Complex prod = reduce(tensor(corpus[i], corpus[j]));
        pair_records[p] = run_check(zero ? "epsilon.zero_summand" : "epsilon.same_sign",
                                    corpus[i].name() + " # " + corpus[j].name(), &prod, [&](CheckRecord& r) {
                                        expect_equal(r, std::to_string(expected), std::to_string(epsilon(prod)));
                                    });
    });
    for (auto& r : pair_records) rep.records.push_back(std::move(r));

    const Complex s11 = staircase({1, 1});
    const Complex s1221 = staircase({1, 2, 2, 1});
    const Complex fig2 = figure2_fixture();
    const Complex ex1 = reduce(tensor(s11, s1221));
    rep.records.push_back(run_check("epsilon.example", "staircase[1,1] # staircase[1,2,2,1]", &ex1,
                                    [&](CheckRecord& r) { expect_equal(r, "1", std::to_string(epsilon(ex1))); }));
    const Complex ex2 = reduce(tensor(fig2, s11));
    rep.records.push_back(run_check("epsilon.example", "figure2 # staircase[1,1]", &ex2,
                                    [&](CheckRecord& r) { expect_equal(r, "1", std::to_string(epsilon(ex2))); }));
    rep.sort_by_check();
    return rep;
}

SuiteReport check_order_coherence(const std::vector<Complex>& corpus, int n, const SuiteOptions& opts) {
    const std::size_t count = corpus.size();
    SuiteReport rep;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < count; ++j)
            if (i != j) pairs.emplace_back(i, j);

    std::vector<int> cmp(count * count, 0);
    std::vector<std::string> errors(pairs.size());
    parallel_for(pairs.size(), opts.threads, [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        try {
            cmp[i * count + j] = compare(corpus[i], corpus[j], opts.order).value;
        } catch (const Error& e) {
            errors[p] = e.kind() + ": " + e.what();
        }
    });
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (errors[p].empty()) continue;
        CheckRecord r;
        r.check = "order.compare";
        r.params = corpus[pairs[p].first].name() + " vs " + corpus[pairs[p].second].name();
        r.expected = "comparison computable";
        r.computed = errors[p];
        r.status = CheckStatus::Fail;
        r.complex_json = serialize(corpus[pairs[p].first]);
        rep.records.push_back(std::move(r));
    }
    auto at = [&](std::size_t i, std::size_t j) { return i == j ? 0 : cmp[i * count + j]; };

    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            CheckRecord r;
            r.check = "order.antisymmetry";
            r.params = corpus[i].name() + " vs " + corpus[j].name();
            expect_equal(r, std::to_string(-at(i, j)), std::to_string(at(j, i)));
            rep.records.push_back(std::move(r));
        }

    // Transitivity of <= with the strict and equal parts kept apart.
    for (std::size_t i = 0; i < count; ++i) {
        CheckRecord r;
        r.check = "order.transitivity";
        r.params = "from " + corpus[i].name();
        r.expected = "a >= b >= c implies a >= c, strictly when either step is strict";
        std::size_t violations = 0, triples = 0;
        std::string first;
        for (std::size_t j = 0; j < count; ++j) {
            if (at(i, j) < 0) continue;
            for (std::size_t k = 0; k < count; ++k) {
                if (at(j, k) < 0) continue;
                ++triples;
                const int want = (at(i, j) > 0 || at(j, k) > 0) ? 1 : 0;
                if (at(i, k) != want) {
                    if (violations++ == 0) first = corpus[j].name() + ", " + corpus[k].name();
                }
            }
        }
        r.status = violations == 0 ? CheckStatus::Pass : CheckStatus::Fail;
        r.computed = std::to_string(triples) + " triples, " + std::to_string(violations) + " violations" +
                     (violations ? " (first via " + first + ")" : "");
        rep.records.push_back(std::move(r));
    }

    // Translation invariance under adding a fixed staircase.
    const std::vector<Complex> shifts{staircase({1, 1}), staircase({1, n, n, 1})};
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> work;
    for (std::size_t s = 0; s < shifts.size(); ++s)
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                const std::size_t sz = shifts[s].size() * shifts[s].size();
                if (corpus[i].size() * corpus[j].size() * sz <= opts.translation_limit) work.emplace_back(s, i, j);
            }
    std::vector<CheckRecord> shifted(work.size());
    parallel_for(work.size(), opts.threads, [&](std::size_t w) {
        const auto [s, i, j] = work[w];
        shifted[w] = run_check("order.translation",
                               corpus[i].name() + " vs " + corpus[j].name() + " plus " + shifts[s].name(), &corpus[i],
                               [&](CheckRecord& r) {
                                   const Complex a = reduce(tensor(corpus[i], shifts[s]));
                                   const Complex b = reduce(tensor(corpus[j], shifts[s]));
                                   expect_equal(r, std::to_string(at(i, j)),
                                                std::to_string(compare(a, b, opts.order).value));
                               });
    });
    for (auto& r : shifted) rep.records.push_back(std::move(r));
    rep.sort_by_check();
    return rep;
}

SuiteReport check_main_theorem(const std::vector<int>& nrange, int nbound, const SuiteOptions& opts) {
    struct Task {
        std::string check;
        std::string params;
        std::function<void(CheckRecord&)> body;
    };
    std::vector<Task> tasks;
    for (std::size_t idx = 0; idx < nrange.size(); ++idx) {
        const int n = nrange[idx];
        tasks.push_back({"main.archimedean", "kn_model(" + std::to_string(n) + ") vs staircase[1," +
                                                 std::to_string(n) + "," + std::to_string(n) + ",1]",
                         [=](CheckRecord& r) {
                             const auto w = arch_equivalent(kn_model(n), staircase({1, n, n, 1}), nbound, opts.order);
                             r.expected = "witness with N <= " + std::to_string(nbound);
                             if (w.outcome == ArchWitness::Outcome::Witness) {
                                 r.status = CheckStatus::Pass;
                                 r.computed = "witness N=" + std::to_string(w.n);
                             } else {
                                 r.status = CheckStatus::Fail;
                                 r.computed = "unknown up to N=" + std::to_string(w.searched_up_to);
                             }
                         }});
        if (idx + 1 < nrange.size() && nrange[idx + 1] == n + 1) {
            tasks.push_back({"main.dominance",
                             "kn_model(" + std::to_string(n) + ") << kn_model(" + std::to_string(n + 1) + ")",
                             [=](CheckRecord& r) {
                                 const auto d = dominance_consistent(kn_model(n), kn_model(n + 1), nbound, opts.order);
                                 r.expected = "consistent up to N=" + std::to_string(nbound);
                                 r.status = d.refuted_at ? CheckStatus::Fail : CheckStatus::Pass;
                                 r.computed = d.refuted_at ? "refuted at N=" + std::to_string(*d.refuted_at)
                                                           : "consistent up to N=" +
                                                                 std::to_string(d.consistent_up_to);
                             }});
        }
        for (int k = 1; k <= 3; ++k) {
            tasks.push_back({"main.multiple_pattern",
                             "n=" + std::to_string(n) + ", k=" + std::to_string(k), [=](CheckRecord& r) {
                                 const Complex lhs = multiple(staircase({1, n, n, 1}), k);
                                 const Complex rhs = staircase(multiple_pattern(n, k));
                                 expect_equal(r, "0", std::to_string(compare(lhs, rhs, opts.order).value));
                             }});
        }
    }
    std::vector<CheckRecord> records(tasks.size());
    parallel_for(tasks.size(), opts.threads,
                 [&](std::size_t t) { records[t] = run_check(tasks[t].check, tasks[t].params, nullptr, tasks[t].body); });
    SuiteReport rep;
    rep.records = std::move(records);
    rep.sort_by_check();
    return rep;
}

}  // namespace cfk
