#include "doctest.h"

#include <umbilic/polynomial.hpp>

#include <random>
#include <vector>

using namespace umbilic;

namespace {

Polynomial P(const char* text, int n = 2) { return Polynomial::parse(text, n); }

// Random sparse polynomial with small rational coefficients.
Polynomial random_poly(std::mt19937_64& rng, int n, int max_deg, bool with_s) {
    std::uniform_int_distribution<int> n_terms(1, 6);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 6);
    std::uniform_int_distribution<int> deg(0, max_deg);
    Polynomial p(n);
    const int terms = n_terms(rng);
    for (int t = 0; t < terms; ++t) {
        Polynomial::Mono m(static_cast<std::size_t>(n) + 1, 0);
        for (int v = 0; v < n; ++v) m[static_cast<std::size_t>(v)] = deg(rng);
        if (with_s) m[static_cast<std::size_t>(n)] = deg(rng) / 2;
        p.add_term(std::move(m), rat(num(rng), den(rng)));
    }
    return p;
}

Rational random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 6);
    return rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("differentiation") {
    CHECK(P("x^3").differentiate(0) == P("3*x^2"));
    // antiderivative cross-check for the family's y-derivative
    CHECK(P("-6*x*y^2 + y^2").differentiate(1) == P("-12*x*y + 2*y"));
    CHECK(P("x^2").differentiate(2) == Polynomial(2));  // d/ds of an s-free input
    CHECK_THROWS_AS((void)P("x^2").differentiate(5), std::invalid_argument);
    CHECK_THROWS_AS((void)P("x^2").differentiate(-1), std::invalid_argument);

    // mixed partials commute
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = random_poly(rng, 2, 4, true);
        CHECK(p.differentiate(0).differentiate(1) == p.differentiate(1).differentiate(0));
    }
}

TEST_CASE("laplacian") {
    CHECK(P("x^2 + y^2").laplacian() == P("4"));
    CHECK(P("x^3 - 6*x*y^2 + y^2").laplacian() == P("-6*x + 2"));
    CHECK(P("x^3 - 3*x*y^2").laplacian().is_zero());  // harmonic cubic
}

TEST_CASE("heat residual") {
    const Polynomial f = P("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");
    CHECK(f.heat_residual().is_zero());
    CHECK(P("x^2 + y^2 + 4*s").heat_residual().is_zero());
    CHECK(P("s*x").heat_residual() == P("x"));
}

TEST_CASE("evaluation") {
    const Polynomial f = P("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");

    const Rational at_cusp[] = {rat(1, 6), rat(0)};
    CHECK(f.evaluate_exact(at_cusp, rat(1, 72)) == rat(1, 54));

    CHECK(f.evaluate({{0.0, 0.0}, 0.0}) == 0.0);

    // pc1+ at s = 1/144: value equals s + 1/216
    const Rational at_pc1[] = {rat(1, 6), rat(1, 12)};
    CHECK(f.evaluate_exact(at_pc1, rat(1, 144)) == rat(1, 144) + rat(1, 216));

    CHECK(f.evaluate({{1.0, 1.0}, 0.0}) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)f.evaluate({{1.0}, 0.0}), std::invalid_argument);

    // double evaluation follows the exact value
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = random_poly(rng, 2, 3, true);
        const Rational xs[] = {random_rat(rng), random_rat(rng)};
        const Rational s = random_rat(rng);
        const double exact = to_double(p.evaluate_exact(xs, s));
        const double approx = p.evaluate({{to_double(xs[0]), to_double(xs[1])}, to_double(s)});
        CHECK(approx == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("recentering") {
    const Polynomial f = P("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");
    const Rational shift[] = {rat(1, 6), rat(0), rat(0)};
    CHECK(f.recenter(shift) ==
          P("x^3 - 6*x*y^2 + 1/2*x^2 + 1/12*x - 6*s*x + 1/216 + s"));

    const Rational zero[] = {rat(0), rat(0), rat(0)};
    CHECK(f.recenter(zero) == f);

    const Rational ax[] = {rat(3, 2), rat(0)};
    CHECK(P("x^2").recenter(ax) == P("x^2 + 3*x + 9/4"));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        const Polynomial p = random_poly(rng, 2, 4, true);
        const Rational a[] = {random_rat(rng), random_rat(rng), random_rat(rng)};
        Rational neg[3];
        for (int k = 0; k < 3; ++k) neg[k] = -a[k];
        CHECK(p.recenter(a).recenter(neg) == p);
    }
}

TEST_CASE("heat flow") {
    CHECK(P("x^2").heat_flow(rat(3, 7)) == P("x^2 + 6/7"));
    CHECK(P("x^2").heat_flow_symbolic() == P("x^2 + 2*s"));

    // the exponential-Laplacian series regenerates the family exactly
    CHECK(P("x^3 - 6*x*y^2 + y^2").heat_flow_symbolic() ==
          P("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s"));

    // harmonic polynomials are fixed points
    CHECK(P("x^3 - 3*x*y^2").heat_flow(rat(2, 3)) == P("x^3 - 3*x*y^2"));

    CHECK_THROWS_AS((void)P("s*x").heat_flow_symbolic(), std::domain_error);
    CHECK_THROWS_AS((void)P("x^2").heat_flow(rat(-1)), std::domain_error);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        const Polynomial p = random_poly(rng, 2, 5, false);
        // semigroup law, exact
        Rational t1 = random_rat(rng), t2 = random_rat(rng);
        if (t1 < 0) t1 = -t1;
        if (t2 < 0) t2 = -t2;
        CHECK(p.heat_flow(t1 + t2) == p.heat_flow(t1).heat_flow(t2));
        // flowing with symbolic scale always yields a heat solution
        CHECK(p.heat_flow_symbolic().heat_residual().is_zero());
    }
}

TEST_CASE("weighted degree") {
    CHECK(P("s*x").weighted_degree() == 3);  // s carries weight 2
    CHECK(P("x^3").weighted_degree() == 3);
    CHECK(P("s^2").weighted_degree() == 4);
    CHECK_THROWS_AS((void)Polynomial(2).weighted_degree(), std::domain_error);
}

TEST_CASE("render and parse") {
    const Polynomial f = P("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");
    CHECK(f.str() == "x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");
    CHECK(Polynomial(2).str() == "0");
    CHECK(P("1/2*x^2 - 1").str() == "1/2*x^2 - 1");
    CHECK(P("-x + s").str() == "-x + s");

    // whitespace-insensitive, order-insensitive
    CHECK(P("2*s-6*s*x+y^2+x^3-6*x*y^2") == f);
    CHECK(P("  x ^ 3 - 6 * x * y ^ 2 + y^2 - 6*s*x + 2*s ") == f);

    // n > 3 naming
    CHECK(Polynomial::parse("x1^2 + x4^2 + 8*s", 4).str() == "x1^2 + x4^2 + 8*s");

    CHECK_THROWS_AS((void)P("x + q"), std::invalid_argument);
    CHECK_THROWS_AS((void)P("z"), std::invalid_argument);  // n = 2 has no z
    CHECK_THROWS_AS((void)P("2x"), std::invalid_argument);  // '*' is mandatory
    CHECK_THROWS_AS((void)P("x +"), std::invalid_argument);
    CHECK_THROWS_AS((void)P(""), std::invalid_argument);
    CHECK_THROWS_AS((void)P("1/0"), std::invalid_argument);

    std::mt19937_64 rng(43);
    for (int i = 0; i < 60; ++i) {
        const Polynomial p = random_poly(rng, 2, 4, true);
        CHECK(Polynomial::parse(p.str(), 2) == p);
    }
}

TEST_CASE("substitute scale") {
    const Polynomial f = P("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");
    CHECK(f.substitute_scale(rat(1, 72)) ==
          P("x^3 - 6*x*y^2 + y^2 - 1/12*x + 1/36"));
    CHECK(f.substitute_scale(rat(0)) == P("x^3 - 6*x*y^2 + y^2"));
}

TEST_CASE("compiled 2d evaluator matches generic evaluation") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 30; ++i) {
        const Polynomial p = random_poly(rng, 2, 5, false);
        const CompiledPoly2 c(p);
        std::uniform_real_distribution<double> coord(-1.5, 1.5);
        for (int k = 0; k < 20; ++k) {
            const double x = coord(rng), y = coord(rng);
            CHECK(c(x, y) == doctest::Approx(p.evaluate({{x, y}, 0.0})).epsilon(1e-12));
        }
    }
}
