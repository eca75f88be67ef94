#pragma once

#include <string>
#include <vector>

#include "cfk/complex.hpp"
#include "cfk/laurent.hpp"

namespace cfk {

// Staircase with steps b_1..b_2m: generators x0..x2m, odd x_k carries a
// horizontal arrow of length b_k to x_{k-1} and a vertical arrow of length
// b_{k+1} to x_{k+1}.  Non-palindromic steps describe algebraic elements
// that are not knot complexes and need allow_non_palindromic.
Complex staircase(const std::vector<int>& steps, bool allow_non_palindromic = false);
std::string staircase_name(const std::vector<int>& steps);

// Alexander polynomial whose alternating exponent gaps are the steps.
LaurentPoly staircase_alexander(const std::vector<int>& steps);

// Steps read off the gaps of alternating_exponents(delta).
std::vector<int> staircase_steps_from_alexander(const LaurentPoly& delta);
Complex staircase_from_alexander(const LaurentPoly& delta);

// Staircase of T(p,q), 2 <= p < q coprime.
Complex torus_complex(int p, int q);
// Staircase of the (n, n+1) cable of the right-handed trefoil.
Complex trefoil_cable_complex(int n);
// Model of K_n = D_{n,n+1} # -T(n,n+1) with the Whitehead double D replaced by
// the trefoil, which has the same epsilon class.
Complex kn_model(int n);

// The nine-generator complex with epsilon = 0 drawn in the second figure.
Complex figure2_fixture();

}  // namespace cfk
