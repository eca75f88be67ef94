#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfk/complex.hpp"
#include "cfk/f2.hpp"

namespace cfk {

// Column data shared by every invariant: tau and a cycle generating the
// homology of the i = 0 column.
struct ColumnGenerator {
    int tau = 0;
    std::vector<int> cycle;  // generator indices; the copy of g sits at (0, A(g))
};

// Throws InvalidComplex if the column homology does not have rank one.
ColumnGenerator column_generator(const Complex& c);

int tau(const Complex& c);
// +1 when F kills the column generator, -1 when the generator is not in the
// image of G, 0 otherwise.  InvariantContradiction if both maps are trivial.
int epsilon(const Complex& c);

// Whether the quotient-then-include map from the column into
// S(tau; prefix, s) kills the generator.  Needs epsilon = +1.
bool h_map_trivial(const Complex& c, const std::vector<int>& prefix, int s);

struct ASequence {
    enum class Tail { Complete, Prime, PrimePair, DepthLimit };

    std::vector<int> terms;  // a_1..a_n, all >= 1
    Tail tail = Tail::DepthLimit;
    int prime1 = 0;          // a'_{n+1} (Prime, PrimePair, or DepthLimit after a'_{n+1} = -1)
    int prime2 = 0;          // a'_{n+2} (PrimePair)
    int max_len = 0;         // bounds the search ran with
    int max_val = 0;
    bool from_dual = false;  // computed on the dual because epsilon = -1
    std::string note;

    // Terms followed by the primed values that exist.
    std::vector<int> flattened() const;
    // "[1,2,2,1]" for complete sequences, "(1,3,2,-4)" otherwise, with "..."
    // appended on a depth limit.
    std::string to_string() const;
    bool operator==(const ASequence& o) const;
};

const char* to_string(ASequence::Tail t);

// max_val <= 0 selects 2 (A_max - A_min) + 2.  Throws UndefinedInvariant if
// epsilon != +1.
ASequence a_sequence(const Complex& c, int max_len = 12, int max_val = 0);
int default_max_val(const Complex& c);

struct InvariantReport {
    int tau = 0;
    int epsilon = 0;
    std::optional<ASequence> aseq;  // for epsilon = -1, taken from the dual
};

// Throws InvariantContradiction if epsilon = 0 but tau != 0.
InvariantReport invariants(const Complex& c, int max_len = 12, int max_val = 0);

}  // namespace cfk
