#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cfk/complex.hpp"
#include "cfk/invariants.hpp"
#include "cfk/order.hpp"

namespace cfk {

// Case of the forms lemma for a positive a-sequence that is not a multiple of
// [1, n, n, 1].  The pattern T_k below is [(1, n)^k, (n, 1)^k].
struct FormsCase {
    enum class Tag { A, B, C, D, E, F, G, H, MultiplePattern };

    Tag tag = Tag::A;
    int n = 0;
    int k = 0;  // exponent of (1, n) in the form
    int l = 0;  // exponent of (n, 1) in forms f and g
    int m = 0;  // the first term that leaves the pattern (a_1 in form a)
    int m2 = 0; // form e: the term after -1

    std::string to_string() const;
    bool operator==(const FormsCase& o) const = default;
};

const char* to_string(FormsCase::Tag t);

// [(1, n)^k, (n, 1)^k].
std::vector<int> multiple_pattern(int n, int k);

// Throws Unclassifiable when the sequence stops before the deciding term and
// PreconditionError when a_1 = 1 but a_2 is neither 1 nor n.
FormsCase classify_form(const ASequence& aseq, int n);

// What the lemmas say about a complex in a given case.
struct LemmaClaim {
    enum class Kind {
        Dominated,   // C << [1, n, n, 1]
        Dominates,   // C >> [1, n, n, 1]
        Difference,  // sign * (C - T_k) is positive with a-sequence starting with prefix
        Equal,       // C = k [1, n, n, 1]
        OutOfRange,  // the parameters violate the forms lemma itself
    };
    Kind kind = Kind::OutOfRange;
    int sign = 1;
    int k = 0;
    std::vector<int> prefix;
    std::string statement;
};

LemmaClaim lemma_claim(const FormsCase& fc);

enum class CheckStatus { Pass, Fail, Skip };
const char* to_string(CheckStatus s);

struct CheckRecord {
    std::string check;     // e.g. "section4.difference"
    std::string params;    // instance description
    std::string expected;  // claim being checked
    std::string computed;
    CheckStatus status = CheckStatus::Pass;
    double runtime_ms = 0.0;
    std::string complex_json;  // serialized offending complex, failures only
};

struct SuiteReport {
    std::vector<CheckRecord> records;

    std::size_t count(CheckStatus s) const;
    bool ok() const { return count(CheckStatus::Fail) == 0; }
    void append(SuiteReport other);
    // Sorted by check id, stable within a check.
    void sort_by_check();
    // Runtimes are left out unless asked for, so reports compare byte-equal
    // across runs.
    std::string to_json(bool with_timing = false) const;
    std::string to_text(bool with_timing = false) const;
};

struct SuiteOptions {
    int threads = 1;
    std::size_t size_budget = 2000;  // generators per corpus complex
    int max_len = 12;                // first a-sequence depth; doubled once when unclassifiable
    // Translation checks run on pairs whose shifted sizes multiply to at most this.
    std::size_t translation_limit = 12000;
    OrderOptions order;
};

struct Corpus {
    std::vector<Complex> items;
    std::vector<std::string> notices;  // complexes dropped by the size budget
};

// Staircases T_k for k <= kmax, the symmetric insertions
// [(1,n)^k, m, m, (n,1)^k], [(1,n)^k, 1, m, m, 1, (n,1)^k], [T_k, m, m, T_k] and
// [(1,n)^k, (n,1)^(k-1), m, m, (1,n)^(k-1), (n,1)^k] for m in mrange,
// torus and trefoil-cable staircases, kn_model(n), duals, and reduced
// differences of every staircase with [1, n, n, 1] in both orders.
Corpus corpus_generate(int n, int kmax, const std::vector<int>& mrange, std::size_t size_budget = 2000);

SuiteReport check_section4(const Complex& c, int n, int nbound, const SuiteOptions& opts = {});
SuiteReport check_section4_corpus(const std::vector<Complex>& corpus, int n, int nbound,
                                  const SuiteOptions& opts = {});
SuiteReport check_section3(const std::vector<Complex>& corpus, const SuiteOptions& opts = {});
SuiteReport check_epsilon_calculus(const std::vector<Complex>& corpus, const SuiteOptions& opts = {});
// Antisymmetry and transitivity of compare, and invariance under adding
// staircase [1,1] and [1, n, n, 1].
SuiteReport check_order_coherence(const std::vector<Complex>& corpus, int n, const SuiteOptions& opts = {});
SuiteReport check_main_theorem(const std::vector<int>& nrange, int nbound, const SuiteOptions& opts = {});

// Reads CFK_THREADS; falls back to the hardware concurrency (at least 1).
int default_thread_count();

}  // namespace cfk
