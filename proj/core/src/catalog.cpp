#include "cfk/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cfk/errors.hpp"

namespace cfk {

std::string staircase_name(const std::vector<int>& steps) {
    std::ostringstream os;
    os << "staircase[";
    for (std::size_t k = 0; k < steps.size(); ++k) os << (k ? "," : "") << steps[k];
    os << "]";
    return os.str();
}

Complex staircase(const std::vector<int>& steps, bool allow_non_palindromic) {
    if (steps.size() % 2 != 0) throw PreconditionError("staircase needs an even number of steps");
    for (int b : steps)
        if (b < 1) throw PreconditionError("staircase steps must be >= 1");
    if (!allow_non_palindromic && !std::equal(steps.begin(), steps.end(), steps.rbegin()))
        throw PreconditionError(staircase_name(steps) + " is not palindromic");

    int a = 0;
    for (std::size_t k = 1; k < steps.size(); k += 2) a += steps[k];
    int m = 0;
    std::vector<Generator> gens{{"x0", a, m}};
    std::vector<Arrow> arrows;
    for (std::size_t k = 1; k <= steps.size(); ++k) {
        const int b = steps[k - 1];
        a -= b;
        if (k % 2 == 1) {
            m = m - 2 * b + 1;
            arrows.push_back({static_cast<int>(k), static_cast<int>(k - 1), b});
            arrows.push_back({static_cast<int>(k), static_cast<int>(k + 1), 0});
        } else {
            m -= 1;
        }
        gens.push_back({"x" + std::to_string(k), a, m});
    }
    Complex c(staircase_name(steps), std::move(gens), std::move(arrows));
    const bool palindromic = std::equal(steps.begin(), steps.end(), steps.rbegin());
    const auto report = validate(c);
    for (const auto& v : report.violations) {
        // A non-palindromic staircase is never symmetric; everything else must hold.
        if (!palindromic && v.code == "symmetry") continue;
        throw InvalidComplex("complex '" + c.name() + "' is invalid: " + report.summary());
    }
    return c;
}

LaurentPoly staircase_alexander(const std::vector<int>& steps) {
    int e = std::accumulate(steps.begin(), steps.end(), 0);
    LaurentPoly p = LaurentPoly::monomial(1, e);
    LaurentPoly::Coeff sign = -1;
    for (int b : steps) {
        e -= b;
        p = p + LaurentPoly::monomial(sign, e);
        sign = -sign;
    }
    return p;
}

std::vector<int> staircase_steps_from_alexander(const LaurentPoly& delta) {
    const auto ex = alternating_exponents(delta);
    std::vector<int> steps;
    for (std::size_t k = 1; k < ex.size(); ++k) steps.push_back(ex[k - 1] - ex[k]);
    return steps;
}

Complex staircase_from_alexander(const LaurentPoly& delta) {
    const auto steps = staircase_steps_from_alexander(delta);
    if (steps.empty()) return unknot_complex();
    return staircase(steps);
}

Complex torus_complex(int p, int q) {
    if (!(2 <= p && p < q)) throw PreconditionError("torus_complex needs 2 <= p < q");
    return staircase_from_alexander(torus_alexander(p, q))
        .renamed("T(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

Complex trefoil_cable_complex(int n) {
    if (n < 2) throw PreconditionError("trefoil_cable_complex needs n >= 2");
    const auto delta = cable_alexander(torus_alexander(2, 3), n, n + 1);
    return staircase_from_alexander(delta).renamed("T(2,3;" + std::to_string(n) + "," + std::to_string(n + 1) + ")");
}

Complex kn_model(int n) {
    if (n < 2) throw PreconditionError("kn_model needs n >= 2");
    const auto c = reduce(tensor(trefoil_cable_complex(n), dual(torus_complex(n, n + 1))));
    return c.renamed("K" + std::to_string(n) + " model: T(2,3;" + std::to_string(n) + "," + std::to_string(n + 1) +
                     ") # -T(" + std::to_string(n) + "," + std::to_string(n + 1) +
                     "), Whitehead double D modeled by T(2,3)");
}

Complex figure2_fixture() {
    std::vector<Generator> gens{{"a", 2, 0},   {"b", 2, 0},   {"c", 0, -3}, {"d", 0, -3}, {"e", 0, -2},
                                {"f", 0, -1},  {"g", 0, -1},  {"h", -2, -4}, {"i", -2, -4}};
    std::vector<ArrowSpec> arrows{{"c", "a", 2}, {"c", "i", 0}, {"d", "b", 2}, {"d", "h", 0},
                                  {"d", "e", 1}, {"a", "f", 0}, {"b", "g", 0}, {"e", "f", 1},
                                  {"i", "f", 2}, {"h", "g", 2}, {"h", "f", 2}};
    auto c = Complex::from_specs("figure2", std::move(gens), arrows);
    require_valid(c);
    return c;
}

}  // namespace cfk
