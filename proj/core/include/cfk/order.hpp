#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cfk/complex.hpp"

namespace cfk {

// Standard complex C(s_1..s_2m) over F[U,V]/(UV): generators t0..t2m, odd
// links horizontal and even links vertical, each of length |s_k|.  s_k > 0
// points the arrow from t_k to t_{k-1}, s_k < 0 from t_{k-1} to t_k.  t0 sits
// at Maslov grading 0 and t2m has gr_V = M - 2A = 0.  The staircase
// [b_1..b_2m] is C(b_1, -b_2, b_3, -b_4, ...).
Complex standard_complex(const std::vector<int>& s);
std::vector<int> staircase_standard_sequence(const std::vector<int>& steps);

// Lexicographic order on standard sequences with symbol key 1/s and key 0
// for the end of a sequence.  Returns -1, 0 or +1.
int standard_compare(const std::vector<int>& a, const std::vector<int>& b);

struct OrderOptions {
    std::size_t direct_limit = 40000;  // largest tensor product handed to epsilon
    std::size_t compress_above = 200;  // multiples larger than this are compressed
    std::size_t probe_budget = 6000;   // epsilon probes per representative search
};

struct StandardRepresentative {
    std::vector<int> sequence;
    std::size_t probes = 0;  // epsilon evaluations spent, including the certifying one
};

// Standard sequence s with epsilon(c (x) C(s)^*) = 0, found by lexicographic
// search over epsilon probes.  The returned sequence is certified by that
// final epsilon computation.  Throws SearchLimit when the search fails within
// the probe budget.
StandardRepresentative standard_representative(const Complex& c, const OrderOptions& opts = {});

struct ComparisonResult {
    int value = 0;            // sign of c1 - c2
    bool compressed = false;  // an operand was replaced by its certified representative
};

ComparisonResult compare(const Complex& c1, const Complex& c2, const OrderOptions& opts = {});

// c when epsilon(c) >= 0, else its dual.
Complex abs(const Complex& c);

// Successive multiples k*c, k = 1, 2, ...  A rung is multiplied as is while
// the product stays below compress_above generators; otherwise the rung (and
// once, the base) is first replaced by its certified standard representative.
// Every rung is therefore epsilon-equivalent to k*c.
class MultipleLadder {
public:
    MultipleLadder(Complex c, OrderOptions opts = {});
    int k() const { return k_; }
    const Complex& current() const { return current_; }
    bool compressed() const { return compressed_; }  // some rung so far went through a representative
    const Complex& next();

private:
    Complex base_;
    OrderOptions opts_;
    Complex current_;
    std::optional<Complex> step_;  // base, or its representative once products grow
    int k_ = 1;
    bool compressed_ = false;
    bool current_standard_ = false;
};

Complex class_multiple(const Complex& c, int k, const OrderOptions& opts = {});

struct ArchWitness {
    enum class Outcome { Witness, Unknown };
    Outcome outcome = Outcome::Unknown;
    int n = 0;               // Witness: least confirming N
    int searched_up_to = 0;  // Unknown: Nmax
    int g_side = 0;          // least N with N|g| > |h| seen, 0 if none
    int h_side = 0;          // least N with N|h| > |g| seen, 0 if none
};

// Throws ZeroElement if g or h is epsilon-equivalent to the trivial complex.
ArchWitness arch_equivalent(const Complex& g, const Complex& h, int nmax, const OrderOptions& opts = {});

struct DominanceReport {
    std::optional<int> refuted_at;
    int consistent_up_to = 0;
};

// Checks |big| > N |small| for N = 1..nmax.  Throws ZeroElement.
DominanceReport dominance_consistent(const Complex& small, const Complex& big, int nmax,
                                     const OrderOptions& opts = {});

}  // namespace cfk
