#pragma once

#include <umbilic/rational.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace umbilic {

// Evaluation point: spatial coordinates plus the scale coordinate s.
struct Point {
    std::vector<double> x;
    double s = 0.0;
};

// Sparse multivariate polynomial in (x_1..x_n, s) with exact rational
// coefficients. Terms are kept canonical: no zero coefficients, exponents
// stored as (e_1..e_n, e_s), and a fixed term order (descending spatial
// degree, then descending spatial exponents, then ascending s exponent)
// so equality is map equality and printing is deterministic.
class Polynomial {
  public:
    using Mono = std::vector<std::uint32_t>;  // length n_spatial + 1, s last

    struct TermOrder {
        int n = 0;
        bool operator()(const Mono& a, const Mono& b) const;
    };
    using TermMap = std::map<Mono, Rational, TermOrder>;

    explicit Polynomial(int n_spatial);

    static Polynomial constant(int n_spatial, const Rational& c);
    // var in [0, n_spatial) selects a spatial variable, var == n_spatial selects s.
    static Polynomial variable(int n_spatial, int var);
    static Polynomial scale_variable(int n_spatial);

    // Canonical ASCII form, e.g. "x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s".
    // '*' is mandatory between factors, '^' introduces integer powers,
    // coefficients may be "p/q". Spaces are optional.
    static Polynomial parse(std::string_view text, int n_spatial);

    int n_spatial() const { return n_spatial_; }
    int scale_var() const { return n_spatial_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    Rational coefficient(const Mono& m) const;

    void add_term(Mono m, const Rational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& c);

    // Exact partial derivative. Throws std::invalid_argument for an unknown
    // variable id.
    Polynomial differentiate(int var) const;

    // Sum of second derivatives over the spatial variables only.
    Polynomial laplacian() const;

    // d/ds - laplacian; identically zero exactly when the polynomial solves
    // the heat equation.
    Polynomial heat_residual() const;

    double evaluate(const Point& pt) const;
    Rational evaluate_exact(std::span<const Rational> spatial, const Rational& s) const;

    // Composition with the translation x_i -> x_i + offset_i, s -> s + offset_s.
    // offset has length n_spatial (s shift zero) or n_spatial + 1.
    Polynomial recenter(std::span<const Rational> offset) const;

    // e^{t*laplacian} as the finite sum  sum_k t^k laplacian^k / k!.
    Polynomial heat_flow(const Rational& t) const;
    // Same with t replaced by the scale variable s; requires an s-free input.
    Polynomial heat_flow_symbolic() const;

    // Partial evaluation of s (the result keeps the same variable set).
    Polynomial substitute_scale(const Rational& s) const;

    // max over terms of (spatial degree + 2 * s exponent). Throws
    // std::domain_error on the zero polynomial.
    int weighted_degree() const;

    int total_degree() const;      // -1 for the zero polynomial
    int max_scale_exponent() const;

    std::string str() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.n_spatial_ == b.n_spatial_ && a.terms_ == b.terms_;
    }

  private:
    int n_spatial_;
    TermMap terms_;

    template <typename Scalar, typename Coord>
    Scalar evaluate_horner(const Coord& coord) const;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Rational& c);
Polynomial operator*(const Rational& c, Polynomial a);

// Variable naming used by parse/str: spatial variables are "x","y","z" for
// n <= 3 and "x1".."xn" in general (always accepted); "s" is the scale.
std::string variable_name(int n_spatial, int var);

// Dense 2D evaluator compiled from an s-substituted polynomial with
// n_spatial == 2; used in inner sampling loops.
class CompiledPoly2 {
  public:
    explicit CompiledPoly2(const Polynomial& p);
    double operator()(double x, double y) const;

  private:
    // coeffs_[ex] = dense coefficient row in y
    std::vector<std::vector<double>> rows_;
};

}  // namespace umbilic
