#include "cfk/f2.hpp"

#include <algorithm>
#include <bit>

#include "cfk/errors.hpp"

namespace cfk::f2 {

SparseVec xor_sparse(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else if (b[j] < a[i]) {
            out.push_back(b[j++]);
        } else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
    return out;
}

void xor_into(SparseVec& acc, const SparseVec& b) {
    if (b.empty()) return;
    acc = xor_sparse(acc, b);
}

SparseVec canonical(std::vector<std::uint32_t> raw) {
    std::sort(raw.begin(), raw.end());
    SparseVec out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(raw[i]);
        i = j;
    }
    return out;
}

BitVec BitVec::from_sparse(std::size_t n, const SparseVec& v) {
    BitVec b(n);
    for (auto i : v) {
        if (i >= n) throw PreconditionError("sparse index out of range for bit vector");
        b.flip(i);
    }
    return b;
}

void BitVec::xor_with(const BitVec& o) {
    const std::size_t m = std::min(words_.size(), o.words_.size());
    for (std::size_t k = 0; k < m; ++k) words_[k] ^= o.words_[k];
}

bool BitVec::is_zero() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

long BitVec::highest() const {
    for (std::size_t k = words_.size(); k-- > 0;) {
        if (words_[k]) return static_cast<long>(k * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[k])));
    }
    return -1;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

SparseVec BitVec::to_sparse() const {
    SparseVec out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t w = words_[k];
        while (w) {
            const int b = std::countr_zero(w);
            out.push_back(static_cast<std::uint32_t>(k * 64 + static_cast<std::size_t>(b)));
            w &= w - 1;
        }
    }
    return out;
}

struct Eliminator::Impl {
    std::size_t dim = 0;
    bool dense = false;
    std::vector<BitVec> dvecs;
    std::vector<SparseVec> svecs;
    std::vector<SparseVec> combos;
    std::vector<std::int32_t> owner;

    // Reduce until the top coordinate is not a pivot; returns that top or -1.
    long reduce_dense(BitVec& b, SparseVec* combo) const {
        for (;;) {
            const long h = b.highest();
            if (h < 0) return -1;
            const auto o = owner[static_cast<std::size_t>(h)];
            if (o < 0) return h;
            b.xor_with(dvecs[static_cast<std::size_t>(o)]);
            if (combo) xor_into(*combo, combos[static_cast<std::size_t>(o)]);
        }
    }

    long reduce_sparse(SparseVec& v, SparseVec* combo) const {
        for (;;) {
            if (v.empty()) return -1;
            const auto h = v.back();
            const auto o = owner[h];
            if (o < 0) return static_cast<long>(h);
            v = xor_sparse(v, svecs[static_cast<std::size_t>(o)]);
            if (combo) xor_into(*combo, combos[static_cast<std::size_t>(o)]);
        }
    }
};

Eliminator::Eliminator(std::size_t dim, Storage storage) : impl_(std::make_unique<Impl>()) {
    impl_->dim = dim;
    impl_->dense = storage == Storage::Dense || (storage == Storage::Auto && dim <= kDenseLimit);
    impl_->owner.assign(dim, -1);
}

Eliminator::Eliminator(const Eliminator& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}
Eliminator& Eliminator::operator=(const Eliminator& o) {
    if (this != &o) impl_ = std::make_unique<Impl>(*o.impl_);
    return *this;
}
Eliminator::Eliminator(Eliminator&&) noexcept = default;
Eliminator& Eliminator::operator=(Eliminator&&) noexcept = default;
Eliminator::~Eliminator() = default;

std::size_t Eliminator::dim() const { return impl_->dim; }
std::size_t Eliminator::rank() const { return impl_->combos.size(); }
bool Eliminator::dense() const { return impl_->dense; }

SparseVec Eliminator::reduce(const SparseVec& v, SparseVec* combo) const {
    if (combo) combo->clear();
    if (impl_->dense) {
        BitVec b = BitVec::from_sparse(impl_->dim, v);
        impl_->reduce_dense(b, combo);
        return b.to_sparse();
    }
    SparseVec w = v;
    for (auto i : w)
        if (i >= impl_->dim) throw PreconditionError("sparse index out of range for eliminator");
    impl_->reduce_sparse(w, combo);
    return w;
}

bool Eliminator::contains(const SparseVec& v) const { return reduce(v).empty(); }

SparseVec Eliminator::normal_form(const SparseVec& v, SparseVec* combo) const {
    if (combo) combo->clear();
    BitVec b = BitVec::from_sparse(impl_->dim, v);
    // Walk coordinates downward; stored vectors only touch coordinates at or
    // below their pivot, so one pass clears every pivot.
    for (long h = b.highest(); h >= 0; --h) {
        if (!b.get(static_cast<std::size_t>(h))) continue;
        const auto o = impl_->owner[static_cast<std::size_t>(h)];
        if (o < 0) continue;
        if (impl_->dense) {
            b.xor_with(impl_->dvecs[static_cast<std::size_t>(o)]);
        } else {
            for (auto k : impl_->svecs[static_cast<std::size_t>(o)]) b.flip(k);
        }
        if (combo) xor_into(*combo, impl_->combos[static_cast<std::size_t>(o)]);
    }
    return b.to_sparse();
}

bool Eliminator::insert(const SparseVec& v, long label, SparseVec* combo) {
    return insert_pivot(v, label, combo) >= 0;
}

long Eliminator::insert_pivot(const SparseVec& v, long label, SparseVec* combo) {
    SparseVec c;
    if (label >= 0) c.push_back(static_cast<std::uint32_t>(label));
    SparseVec used;
    if (impl_->dense) {
        BitVec b = BitVec::from_sparse(impl_->dim, v);
        const long h = impl_->reduce_dense(b, &used);
        if (h < 0) {
            if (combo) *combo = used;
            return -1;
        }
        xor_into(c, used);
        impl_->owner[static_cast<std::size_t>(h)] = static_cast<std::int32_t>(impl_->combos.size());
        impl_->dvecs.push_back(std::move(b));
        impl_->combos.push_back(std::move(c));
        return h;
    }
    SparseVec w = v;
    for (auto i : w)
        if (i >= impl_->dim) throw PreconditionError("sparse index out of range for eliminator");
    const long h = impl_->reduce_sparse(w, &used);
    if (h < 0) {
        if (combo) *combo = used;
        return -1;
    }
    xor_into(c, used);
    impl_->owner[static_cast<std::size_t>(h)] = static_cast<std::int32_t>(impl_->combos.size());
    impl_->svecs.push_back(std::move(w));
    impl_->combos.push_back(std::move(c));
    return h;
}

SparseVec ChainComplex::apply(const SparseVec& v) const {
    std::vector<std::uint32_t> raw;
    for (auto j : v) raw.insert(raw.end(), boundary[j].begin(), boundary[j].end());
    return canonical(std::move(raw));
}

bool ChainComplex::squares_to_zero() const {
    std::vector<std::uint32_t> raw;
    for (std::size_t j = 0; j < dim; ++j) {
        raw.clear();
        for (auto k : boundary[j]) raw.insert(raw.end(), boundary[k].begin(), boundary[k].end());
        std::sort(raw.begin(), raw.end());
        for (std::size_t i = 0; i < raw.size(); i += 2)
            if (i + 1 >= raw.size() || raw[i] != raw[i + 1]) return false;
    }
    return true;
}

std::vector<SparseVec> kernel_basis(const ChainComplex& c, Storage storage) {
    Eliminator e(c.dim, storage);
    std::vector<SparseVec> out;
    for (std::size_t j = 0; j < c.dim; ++j) {
        SparseVec combo;
        if (!e.insert(c.boundary[j], static_cast<long>(j), &combo)) {
            xor_into(combo, SparseVec{static_cast<std::uint32_t>(j)});
            out.push_back(std::move(combo));
        }
    }
    return out;
}

Eliminator image_space(const ChainComplex& c, Storage storage) {
    Eliminator e(c.dim, storage);
    for (std::size_t j = 0; j < c.dim; ++j) e.insert(c.boundary[j]);
    return e;
}

HomologyBasis homology(const ChainComplex& c, Storage storage) {
    HomologyBasis h;
    auto ker = kernel_basis(c, storage);
    Eliminator im = image_space(c, storage);
    h.kernel_dim = ker.size();
    h.image_dim = im.rank();
    for (auto& z : ker) {
        if (im.insert(z)) h.representatives.push_back(z);
    }
    h.rank = h.representatives.size();
    return h;
}

std::vector<EssentialClass> essential_classes(const ChainComplex& c, Storage storage) {
    // Standard persistence reduction: process columns in basis order with the
    // highest index as pivot.  Zero columns open a class at their index; a
    // non-zero reduced column closes the class opened at its pivot.
    Eliminator e(c.dim, storage);
    std::vector<SparseVec> born(c.dim);
    std::vector<char> is_born(c.dim, 0), killed(c.dim, 0);
    for (std::size_t j = 0; j < c.dim; ++j) {
        SparseVec combo;
        const long piv = e.insert_pivot(c.boundary[j], static_cast<long>(j), &combo);
        if (piv < 0) {
            xor_into(combo, SparseVec{static_cast<std::uint32_t>(j)});
            born[j] = std::move(combo);
            is_born[j] = 1;
        } else {
            killed[static_cast<std::size_t>(piv)] = 1;
        }
    }
    std::vector<EssentialClass> out;
    for (std::size_t j = 0; j < c.dim; ++j)
        if (is_born[j] && !killed[j]) out.push_back({j, born[j]});
    return out;
}

}  // namespace cfk::f2
