#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cfk {

struct Generator {
    std::string id;
    int alexander = 0;
    int maslov = 0;
};

// Arrow between generator indices.  The copy of `from` at (0, A(from)) hits the
// copy of `to` at (-upower, A(to) - upower).
struct Arrow {
    int from = 0;
    int to = 0;
    int upower = 0;

    bool operator==(const Arrow& o) const { return from == o.from && to == o.to && upower == o.upower; }
};

// Arrow written with generator ids, used at construction and I/O boundaries.
struct ArrowSpec {
    std::string from;
    std::string to;
    int upower = 0;
};

enum class ArrowKind { Vertical, Horizontal, Diagonal };
const char* to_string(ArrowKind k);

// Finitely generated free complex over F2[U,U^-1] with two filtrations.
// Immutable after construction; arrows are kept sorted by (from, to, upower)
// index order and are unique.
class Complex {
public:
    Complex() = default;
    // Throws InvalidComplex on structural faults: duplicate or malformed ids,
    // dangling endpoints, negative U-powers or repeated arrows.
    Complex(std::string name, std::vector<Generator> generators, std::vector<Arrow> arrows,
            bool uv_truncated = false);
    static Complex from_specs(std::string name, std::vector<Generator> generators,
                              const std::vector<ArrowSpec>& arrows);

    const std::string& name() const { return name_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::size_t size() const { return generators_.size(); }
    const Generator& gen(int i) const { return generators_[static_cast<std::size_t>(i)]; }
    int index_of(const std::string& id) const;  // -1 when absent
    // Arrow indices leaving / entering a generator.
    std::span<const int> out_arrows(int g) const { return slice(out_offset_, out_, g); }
    std::span<const int> in_arrows(int g) const { return slice(in_offset_, in_, g); }

    int a_min() const;
    int a_max() const;
    // No arrow preserves both filtrations.
    bool reduced() const;
    // Internal marker for complexes over F[U,V]/(UV): only horizontal and
    // vertical arrows are meaningful and d^2 may fail by diagonal terms.
    bool uv_truncated() const { return uv_truncated_; }

    Complex renamed(std::string name) const;
    std::vector<ArrowSpec> arrow_specs() const;

private:
    std::string name_;
    std::vector<Generator> generators_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, int> index_;
    static std::span<const int> slice(const std::vector<std::size_t>& off, const std::vector<int>& v, int g) {
        const auto k = static_cast<std::size_t>(g);
        return {v.data() + off[k], off[k + 1] - off[k]};
    }
    // Arrow indices per generator, CSR layout.
    std::vector<std::size_t> out_offset_, in_offset_;
    std::vector<int> out_, in_;
    bool uv_truncated_ = false;
};

bool valid_generator_id(const std::string& id);

struct Violation {
    std::string code;    // machine tag, e.g. "d_squared", "column_rank"
    std::string detail;  // offending ids and numbers
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> notes;
    std::size_t column_homology_dim = 0;
    std::size_t collapse_homology_dim = 0;

    bool ok() const { return violations.empty(); }
    // True when the only violations concern reducedness.
    bool ok_except_reducedness() const;
    std::string summary() const;
};

ValidationReport validate(const Complex& c);
// Throws InvalidComplex when validate reports anything (optionally tolerating
// non-reduced input).
void require_valid(const Complex& c, bool allow_unreduced = false);

ArrowKind arrow_kind(const Complex& c, const Arrow& a);

Complex dual(const Complex& c);
Complex tensor(const Complex& a, const Complex& b);
Complex reduce(const Complex& c);
Complex difference(const Complex& a, const Complex& b);
Complex multiple(const Complex& c, int k);

// Drop diagonal arrows; the result lives over F[U,V]/(UV).
Complex uv_truncate(const Complex& c);

// Unchecked tensor product used by internal pipelines that already validated
// their inputs; keeps the uv flag if either side carries it.
Complex tensor_unchecked(const Complex& a, const Complex& b, bool short_ids = false);
Complex dual_unchecked(const Complex& c);

// Trivial complex: one generator at A = M = 0.
Complex unknot_complex();

// Multiset of (A, M) pairs, sorted; useful for equality up to renaming.
std::vector<std::pair<int, int>> graded_multiset(const Complex& c);

}  // namespace cfk
