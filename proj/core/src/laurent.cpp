#include "cfk/laurent.hpp"

#include <numeric>
#include <sstream>

#include "cfk/errors.hpp"

namespace cfk {

namespace {

LaurentPoly::Coeff checked_add(LaurentPoly::Coeff a, LaurentPoly::Coeff b) {
    LaurentPoly::Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("Laurent coefficient overflow in addition");
    return r;
}

LaurentPoly::Coeff checked_mul(LaurentPoly::Coeff a, LaurentPoly::Coeff b) {
    LaurentPoly::Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("Laurent coefficient overflow in multiplication");
    return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(Coeff c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(Coeff c, int exponent) {
    LaurentPoly p;
    p.add_term(exponent, c);
    return p;
}

LaurentPoly LaurentPoly::from_coeffs(const std::vector<Coeff>& ascending, int shift) {
    LaurentPoly p;
    for (std::size_t i = 0; i < ascending.size(); ++i) p.add_term(static_cast<int>(i) + shift, ascending[i]);
    return p;
}

void LaurentPoly::add_term(int exponent, Coeff c) {
    if (c == 0) return;
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        terms_.emplace(exponent, c);
        return;
    }
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly::Coeff LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw PreconditionError("min_exponent of the zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw PreconditionError("max_exponent of the zero polynomial");
    return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::normalized() const {
    if (is_zero()) return *this;
    LaurentPoly r;
    const int lo = min_exponent();
    for (const auto& [e, c] : terms_) r.terms_.emplace(e - lo, c);
    return r;
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add_term(e * k, c);
    return r;
}

LaurentPoly::Coeff LaurentPoly::evaluate_at_one() const {
    Coeff s = 0;
    for (const auto& [e, c] : terms_) s = checked_add(s, c);
    return s;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, checked_mul(c, -1));
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, checked_mul(c1, c2));
    return r;
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const int e = it->first;
        Coeff c = it->second;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const Coeff mag = c < 0 ? -c : c;
        if (e == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag;
        os << "t";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

LaurentPoly multiply(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw PreconditionError("division by the zero polynomial");
    LaurentPoly rem = num;
    LaurentPoly quot;
    const int dtop = den.max_exponent();
    const LaurentPoly::Coeff lead = den.coeff(dtop);
    const int dspan = dtop - den.min_exponent();
    while (!rem.is_zero()) {
        const int rtop = rem.max_exponent();
        const LaurentPoly::Coeff rc = rem.coeff(rtop);
        if (rtop - rem.min_exponent() < dspan || rc % lead != 0)
            throw PreconditionError("polynomial division is not exact");
        LaurentPoly step = LaurentPoly::monomial(rc / lead, rtop - dtop);
        quot = quot + step;
        rem = rem - step * den;
    }
    return quot;
}

LaurentPoly torus_alexander(int p, int q) {
    if (p < 2 || q < 2) throw PreconditionError("torus_alexander needs p, q >= 2");
    if (std::gcd(p, q) != 1) throw PreconditionError("torus_alexander needs gcd(p, q) = 1");
    const LaurentPoly one = LaurentPoly::constant(1);
    const LaurentPoly t = LaurentPoly::monomial(1, 1);
    LaurentPoly num = (LaurentPoly::monomial(1, p * q) - one) * (t - one);
    LaurentPoly den = (LaurentPoly::monomial(1, p) - one) * (LaurentPoly::monomial(1, q) - one);
    return exact_divide(num, den).normalized();
}

LaurentPoly torus_alexander_consecutive(int n) {
    if (n < 1) throw PreconditionError("torus_alexander_consecutive needs n >= 1");
    LaurentPoly r;
    for (int i = 0; i <= n - 1; ++i) r = r + LaurentPoly::monomial(1, n * i);
    for (int i = 0; i <= n - 2; ++i) r = r - LaurentPoly::monomial(1, 1 + (n + 1) * i);
    return r.normalized();
}

LaurentPoly cable_alexander(const LaurentPoly& companion, int p, int q) {
    if (p < 2) throw PreconditionError("cable_alexander needs p >= 2");
    if (q == 0 || std::gcd(p, q < 0 ? -q : q) != 1) throw PreconditionError("cable_alexander needs q coprime to p");
    const auto at_one = companion.evaluate_at_one();
    if (at_one != 1 && at_one != -1) throw PreconditionError("companion polynomial must satisfy Delta(1) = +-1");
    const int aq = q < 0 ? -q : q;
    LaurentPoly pattern = aq == 1 ? LaurentPoly::constant(1) : torus_alexander(p, aq);
    return (companion.substitute_power(p) * pattern).normalized();
}

std::vector<int> alternating_exponents(const LaurentPoly& delta) {
    if (delta.is_zero()) throw NotLSpaceShape("zero polynomial has no staircase shape");
    std::vector<int> out;
    LaurentPoly::Coeff expect = 1;
    for (auto it = delta.terms().rbegin(); it != delta.terms().rend(); ++it) {
        if (it->second != expect) {
            throw NotLSpaceShape("coefficient of t^" + std::to_string(it->first) + " is " + std::to_string(it->second) +
                                 ", expected " + std::to_string(expect));
        }
        out.push_back(it->first);
        expect = -expect;
    }
    if (out.size() % 2 == 0) throw NotLSpaceShape("alternating pattern must end with +1");
    return out;
}

}  // namespace cfk
