#pragma once

#include <umbilic/geometry.hpp>
#include <umbilic/polynomial.hpp>

#include <utility>
#include <vector>

namespace umbilic::unfolding {

// Universal unfolding of the cubic x^3 - 6 x y^2:
//   g_{w,u,v}(x, y) = x^3 - 6 x y^2 + w x^2 + u x + v y  (+ c)
// with gradient (3x^2 - 6y^2 + 2wx + u, -12xy + v) and Hessian
// [[6x + 2w, -12y], [-12y, -12x]].
struct UnfoldingParams {
    double w = 0, u = 0, v = 0;
    double c = 0;  // additive constant carried into critical values
};

double evaluate_g(const UnfoldingParams& p, double x, double y);
Vec2 gradient_g(const UnfoldingParams& p, double x, double y);
SymMat2 hessian_g(const UnfoldingParams& p, double x, double y);

struct UnfoldingCriticalPoint {
    double x = 0, y = 0, z = 0;
    Morse morse = Morse::Degenerate;
    int index = -1;
};

// All real critical points of g. For v != 0 the stationarity system reduces
// to the quartic 3x^4 + 2wx^3 + ux^2 - v^2/24 = 0 (roots via the companion
// matrix, polished by Newton) with y = v / (12x). For v = 0 the two exact
// branches are used: y = 0 with 3x^2 + 2wx + u = 0, and x = 0 with
// y = +-sqrt(u/6) for u >= 0.
std::vector<UnfoldingCriticalPoint> critical_points_g(const UnfoldingParams& p);

struct DiscriminantSample {
    double u = 0, v = 0;  // parameter point on the degeneracy locus
    double x = 0, y = 0;  // the degenerate critical point generating it
    bool is_cusp = false;
};

struct DiscriminantCurve {
    std::vector<DiscriminantSample> samples;  // ordered along the closed loop
    std::vector<Vec2> cusps;                  // (u, v) cusp locations
    std::vector<Vec2> fold_axis_crossings;    // v = 0 crossings
};

// The w-section of the degeneracy locus, parameterized by the degenerate
// point abscissa x in [-w/3, 0]:
//   y^2 = -x(3x + w)/6,  u = -6x^2 - 3wx,  v = 12xy.
// Interior cusps sit where the parameterization velocity vanishes (x = -w/4,
// both y signs); the branch joint at x = 0 is the third cusp. Requires w > 0
// and n_samples >= 16.
DiscriminantCurve discriminant_section(double w, int n_samples);

// The printed section quartic (-1+u)u^3 + (486 - 648u + 144u^2)v^2 + 5184v^4,
// kept verbatim for comparison against the parametric locus. The two disagree
// (e.g. the fold crossing at u = 1/12 is not a root); the parametric curve is
// the ground truth since every sample re-verifies grad g = 0, det H = 0.
double implicit_residual(double u, double v);

struct CriticalValueSample {
    double u = 0, v = 0, z = 0;
    Morse morse = Morse::Degenerate;
};

// All critical-value sheets of g_{w,u,v} over an (u, v) grid. Requires
// resolution >= 8 per axis.
std::vector<CriticalValueSample> critical_value_graph(double w, double u_min,
                                                      double u_max, double v_min,
                                                      double v_max, int resolution);

// The one-parameter family embeds into the w = 1/2 section along
// u = 1/12 - 6s, c = s + 1/216.
struct EmbeddingPoint {
    double u = 0, c = 0;
};
EmbeddingPoint embedding_line(double s);
std::pair<Rational, Rational> embedding_line_exact(const Rational& s);
// True exactly when g_{1/2, u(s), 0} has four real critical points.
bool embedding_inside(double s);

// x^3 - 6 x y^2 + x^2/2 + 1/54: the degenerate germ the family unfolds from,
// cross-checked against recentering the family at (1/6, 0) and s = 1/72.
Polynomial organizing_center();

}  // namespace umbilic::unfolding
