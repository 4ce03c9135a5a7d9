#pragma once

#include <umbilic/geometry.hpp>
#include <umbilic/polynomial.hpp>

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace umbilic::cubic_family {

// The built-in one-parameter heat solution
//     f(x, y, s) = x^3 - 6 x y^2 + y^2 - 6 s x + 2 s
// analyzed in closed form: critical branches, Hessians, eigen data, Morse
// census, critical values, and the two scale bifurcations. Everything here
// is the exact reference the grid engine is tested against.
Polynomial family_polynomial();

// Eigenvalue threshold for calling a closed-form point degenerate.
inline constexpr double kEigenEps = 1e-9;

// Scale of the triple merge, as an exact rational.
Rational merge_scale();  // 1/72

Vec2 gradient(double x, double y, double s);
SymMat2 hessian_at(double x, double y);

// Closed-form branch positions. pc1+-: (1/6, +-sqrt(1-72s)/(6 sqrt 2)), real
// for s <= 1/72. pc2+-: (+-sqrt(2s), 0), real for s >= 0.
struct BranchDescriptor {
    Branch branch;
    bool real_at(const Rational& s) const;
    Vec2 position(double s) const;
};
std::array<BranchDescriptor, 4> branches();

// All real critical points at scale s, fully populated. Exactly at s = 0 the
// coincident pc2 pair collapses to one degenerate point; exactly at s = 1/72
// pc1+- and pc2+ collapse to one degenerate point at (1/6, 0).
std::vector<CriticalPoint> critical_points(const Rational& s);
std::vector<CriticalPoint> critical_points(double s);

// Closed-form eigen pairs in a fixed per-branch listing order: pc1+ lists the
// (1 - 3 sqrt(1-64s))/2 eigenvalue first, pc1- the opposite, and the pc2
// branches list the y-axis eigenvalue first. The closed-form eigenvector
// expressions are undefined at s = 1/72.
std::array<EigenPair, 2> eigen_closed_form(Branch b, double s);
bool eigen_vectors_defined(double s);

// Numeric eigen-decomposition of cp.hessian, ordered to match the closed-form
// listing for cp.branch (ascending when there is no branch tag).
std::array<EigenPair, 2> eigen_analysis(const CriticalPoint& cp);

Morse classify(const CriticalPoint& cp, double eps = kEigenEps);

// Critical values: z1 = s + 1/216 on pc1+-, z2+- = 2s(1 -+ 2 sqrt(2s)).
std::map<Branch, double> critical_values(double s);
Rational critical_value_z1_exact(const Rational& s);
// Exact when sqrt(2s) is rational (e.g. s = 1/72), otherwise nullopt.
std::optional<Rational> critical_value_z2_exact(const Rational& s, int sign);

// Samples of the y = 0 section x^3 - 6 s x + 2 s.
std::vector<std::pair<double, double>> median_section(double s,
                                                      const std::vector<double>& xs);

enum class BifurcationKind { Creation, TripleMerge };

struct ScaleBifurcation {
    BifurcationKind kind;
    Rational s;
    Vec2 location;
    // After the triple merge the surviving pc2+ point continues as a saddle.
    std::optional<Branch> survivor;
};

// Exactly two events: a creation at s = 0, (0,0) and the triple merge at
// s = 1/72, (1/6, 0).
std::vector<ScaleBifurcation> bifurcation_events();

// Exact solutions of 1 - 3 sqrt(1-64s) = 0 and 1 - 6 sqrt(2s) = 0; both give
// 1/72.
std::array<Rational, 2> eigen_signchange_scales();

}  // namespace umbilic::cubic_family
