#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace cfk::f2 {

// Sparse F2 vector: sorted, duplicate-free list of set coordinates.
using SparseVec = std::vector<std::uint32_t>;

SparseVec xor_sparse(const SparseVec& a, const SparseVec& b);
void xor_into(SparseVec& acc, const SparseVec& b);
// Canonicalize an unsorted list with repetitions (pairs cancel over F2).
SparseVec canonical(std::vector<std::uint32_t> raw);

// Bit-packed dense F2 vector.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
    static BitVec from_sparse(std::size_t n, const SparseVec& v);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    void xor_with(const BitVec& o);
    bool is_zero() const;
    // Highest set index, or -1.
    long highest() const;
    std::size_t popcount() const;
    SparseVec to_sparse() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && words_ == o.words_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

enum class Storage { Auto, Dense, Sparse };

// Incremental Gaussian elimination over F2.  Stored vectors are kept reduced
// with pivot = highest set coordinate; the pivot owner table makes reduction a
// walk down from the top.  Every stored vector carries a combination of caller
// labels, which lets callers recover how a vector was expressed.
class Eliminator {
public:
    // Dimensions up to this bound use bit-packed rows under Storage::Auto.
    static constexpr std::size_t kDenseLimit = 4096;

    explicit Eliminator(std::size_t dim, Storage storage = Storage::Auto);
    Eliminator(const Eliminator&);
    Eliminator& operator=(const Eliminator&);
    Eliminator(Eliminator&&) noexcept;
    Eliminator& operator=(Eliminator&&) noexcept;
    ~Eliminator();

    std::size_t dim() const;
    std::size_t rank() const;
    bool dense() const;

    // Reduce v until its top coordinate is not a pivot; the result is zero
    // exactly when v lies in the span.  If combo is non-null it receives the
    // XOR of the label combinations of every stored vector that was used.
    SparseVec reduce(const SparseVec& v, SparseVec* combo = nullptr) const;
    bool contains(const SparseVec& v) const;
    // Fully reduced representative of v modulo the span: no coordinate of the
    // result is a pivot, so equal cosets give equal normal forms.
    SparseVec normal_form(const SparseVec& v, SparseVec* combo = nullptr) const;

    // Insert v tagged with label (negative = untracked).  Returns true if v was
    // independent.  When dependent and combo is non-null, combo receives the
    // labels expressing v.
    bool insert(const SparseVec& v, long label = -1, SparseVec* combo = nullptr);
    // As insert, but returns the pivot of the stored vector, or -1 if dependent.
    long insert_pivot(const SparseVec& v, long label = -1, SparseVec* combo = nullptr);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Finite chain complex over F2: boundary[j] = d(e_j) as a sparse column.
struct ChainComplex {
    std::size_t dim = 0;
    std::vector<SparseVec> boundary;

    SparseVec apply(const SparseVec& v) const;
    bool squares_to_zero() const;
};

struct HomologyBasis {
    std::vector<SparseVec> representatives;  // cycles whose classes form a basis
    std::size_t rank = 0;
    std::size_t kernel_dim = 0;
    std::size_t image_dim = 0;
};

// Cycle basis of ker d, processed in increasing basis order.
std::vector<SparseVec> kernel_basis(const ChainComplex& c, Storage storage = Storage::Auto);

// Homology with deterministic representatives: kernel basis vectors are
// scanned in order and kept when independent modulo the boundaries.
HomologyBasis homology(const ChainComplex& c, Storage storage = Storage::Auto);

// Span of the boundary columns, ready for membership tests.
Eliminator image_space(const ChainComplex& c, Storage storage = Storage::Auto);

// Persistence of the sublevel filtration given by basis order: returns the
// index of every basis element whose cycle is never killed, together with a
// representative cycle for each.
struct EssentialClass {
    std::size_t birth_index;
    SparseVec cycle;
};
std::vector<EssentialClass> essential_classes(const ChainComplex& c, Storage storage = Storage::Auto);

}  // namespace cfk::f2
