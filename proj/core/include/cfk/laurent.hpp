#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cfk {

// Integer Laurent polynomial in one variable t.  Zero coefficients are never
// stored.  Arithmetic is exact; overflow of the 64-bit coefficients throws
// ArithmeticOverflow instead of wrapping.
class LaurentPoly {
public:
    using Coeff = std::int64_t;

    LaurentPoly() = default;
    static LaurentPoly constant(Coeff c);
    static LaurentPoly monomial(Coeff c, int exponent);
    // Coefficients listed from exponent 0 upward.
    static LaurentPoly from_coeffs(const std::vector<Coeff>& ascending, int shift = 0);

    const std::map<int, Coeff>& terms() const { return terms_; }
    Coeff coeff(int exponent) const;
    bool is_zero() const { return terms_.empty(); }
    int min_exponent() const;  // precondition: non-zero
    int max_exponent() const;  // precondition: non-zero

    // Shift so the lowest exponent is 0 (zero stays zero).
    LaurentPoly normalized() const;
    // p(t) -> p(t^k)
    LaurentPoly substitute_power(int k) const;
    Coeff evaluate_at_one() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Human-readable form, highest exponent first, e.g. "t^6 - t^5 + t^3 - t + 1".
    std::string to_string() const;

private:
    void add_term(int exponent, Coeff c);
    std::map<int, Coeff> terms_;
};

LaurentPoly multiply(const LaurentPoly& p, const LaurentPoly& q);

// Exact division; throws PreconditionError if the divisor does not divide.
LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den);

// Alexander polynomial of T(p,q), normalized to lowest exponent 0.
LaurentPoly torus_alexander(int p, int q);

// Closed form sum_{i<n} t^{ni} - t sum_{i<n-1} t^{(n+1)i} for T(n,n+1).
LaurentPoly torus_alexander_consecutive(int n);

// Delta_K(t^p) * Delta_{T(p,q)}(t) for the (p,q) cable of K.
LaurentPoly cable_alexander(const LaurentPoly& companion, int p, int q);

// Exponents in decreasing order; coefficients must read +1,-1,...,+1 from the top.
std::vector<int> alternating_exponents(const LaurentPoly& delta);

}  // namespace cfk
