#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cfk/complex.hpp"
#include "cfk/f2.hpp"

namespace cfk {

// A lattice region of the (i, j) plane.  Every variant except Explicit is a
// union of axis-parallel segments forming a down-right path, so each
// generator's diagonal {(i, A + i)} meets it at most once.
struct RegionSpec {
    enum class Kind { ColumnI0, ColumnSegment, RowSegment, MinHook, MaxHook, TruncatedMinHook, SRegion, Explicit };

    Kind kind = Kind::ColumnI0;
    int i = 0;      // ColumnSegment
    int jmin = 0;   // ColumnSegment
    int jmax = 0;   // ColumnSegment
    int row = 0;    // RowSegment: j = row, imin <= i <= imax
    int imin = 0;
    int imax = 0;
    int tau = 0;    // hooks and S-regions
    int s = 0;      // TruncatedMinHook, SRegion
    std::vector<int> prefix;                    // SRegion a_1..a_n
    std::vector<std::pair<int, int>> points;    // Explicit, sorted and unique

    static RegionSpec column_i0();
    static RegionSpec column_segment(int i, int jmin, int jmax);
    static RegionSpec row_segment(int j, int imin, int imax);
    static RegionSpec min_hook(int tau);
    static RegionSpec max_hook(int tau);
    static RegionSpec truncated_min_hook(int tau, int s);
    static RegionSpec s_region(int tau, std::vector<int> prefix, int s);
    static RegionSpec explicit_points(std::vector<std::pair<int, int>> pts);

    bool contains(int i, int j) const;
    std::string describe() const;
};

// Corner of S(a_1..a_n, s) before the final piece is laid down: the end point
// of the path traced by the prefix.
std::pair<int, int> s_region_corner(int tau, const std::vector<int>& prefix);

struct RegionPoint {
    int gen = 0;  // generator index in the source complex
    int i = 0;
    int j = 0;
};

// Finite F2 complex C{S}.  Basis sorted by (j, i, generator); the source
// complex must outlive the realization.
class RegionComplex {
public:
    const Complex& source() const { return *source_; }
    const RegionSpec& spec() const { return spec_; }
    const std::vector<RegionPoint>& basis() const { return basis_; }
    const f2::ChainComplex& chain() const { return chain_; }
    std::size_t dim() const { return basis_.size(); }

    // Basis index of the copy of generator g at column i, or -1.
    long index_of(int g, int i) const;
    std::string label(std::size_t k) const;  // "id@(i,j)"

    // Re-express a vector of another realization over the same source;
    // copies missing here are dropped when drop_missing, else PreconditionError.
    f2::SparseVec transfer(const RegionComplex& from, const f2::SparseVec& v, bool drop_missing) const;

private:
    friend RegionComplex realize_region(const Complex& c, const RegionSpec& s);
    const Complex* source_ = nullptr;
    RegionSpec spec_;
    std::vector<RegionPoint> basis_;
    f2::ChainComplex chain_;
    // Per generator, (i, basis index) pairs in gen_entries_[gen_offset_[g] .. gen_offset_[g + 1]).
    std::vector<std::size_t> gen_offset_;
    std::vector<std::pair<int, int>> gen_entries_;
};

// Window half-width used to certify finiteness of a realization.
int region_window(const Complex& c, const RegionSpec& s);

// Throws NotReduced for unreduced input, InfiniteRegion if the realization
// leaves the window, NonConvex for non-convex explicit point sets.
RegionComplex realize_region(const Complex& c, const RegionSpec& s);

f2::HomologyBasis homology_f2(const RegionComplex& r);

// Coordinates of cycles in a fixed homology basis of one realization.
class HomologyCoordinates {
public:
    explicit HomologyCoordinates(const RegionComplex& r);
    const f2::HomologyBasis& basis() const { return basis_; }
    std::size_t rank() const { return basis_.rank; }
    // Throws NotACycle if d v != 0.
    f2::SparseVec coords(const f2::SparseVec& v) const;
    bool is_boundary(const f2::SparseVec& v) const;

private:
    const RegionComplex* region_;
    f2::HomologyBasis basis_;
    f2::Eliminator elim_;
};

// Matrix of an induced map on homology; columns[k] lists the target
// coordinates of the image of source class k.
struct InducedMap {
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
    std::vector<f2::SparseVec> columns;

    bool is_zero() const;
    std::size_t rank() const;
};

// H(source) -> H(source / killed) -> H(target), identity on shared copies.
// Throws PreconditionError when killed is not a subcomplex of source or the
// quotient does not sit inside target, ChainMapViolation when the copy
// identification does not commute with the boundaries.
InducedMap quotient_include_map(const Complex& c, const RegionSpec& source, const RegionSpec& killed,
                                const RegionSpec& target);

struct ConnectingResult {
    f2::SparseVec cycle;   // d(lift), in the basis of the sub realization
    f2::SparseVec coords;  // its class in homology_f2 coordinates of sub
};

// Connecting homomorphism of sub -> total -> total/sub applied to a quotient
// cycle given in the basis of the total realization.  Throws NotACycle when
// the class is not a cycle of the quotient.
ConnectingResult connecting_map(const Complex& c, const RegionSpec& sub, const RegionSpec& total,
                                const f2::SparseVec& quotient_cycle);

// True iff u - v is a boundary.  Throws NotACycle if either is not a cycle.
bool class_equal(const RegionComplex& r, const f2::SparseVec& u, const f2::SparseVec& v);

}  // namespace cfk
