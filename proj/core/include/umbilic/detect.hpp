#pragma once

#include <umbilic/geometry.hpp>
#include <umbilic/grid.hpp>

#include <vector>

namespace umbilic {

struct DetectConfig {
    int max_newton_iters = 20;
    double step_tol_cells = 1e-4;     // converged when |step| < step_tol_cells * h
    double dedup_radius_cells = 1.0;  // duplicates within this radius are merged
    double cond_limit = 1e12;         // singular-fit fallback threshold
    double eps_lambda_cells = 1.0;    // degeneracy threshold eps = eps_lambda_cells * h^2
    double accept_grad_tol = 1e-6;    // model gradient bound for accepting a point
};

// Least-squares quadratic fit over the 3x3 neighborhood of a node, exact for
// quadratics. Derivatives are in physical units; (dx, dy) is the offset from
// the fit node.
struct QuadFit {
    Vec2 node_pos;
    double value0;   // fitted value at the node
    Vec2 grad0;      // fitted gradient at the node
    SymMat2 hess;    // constant over the patch

    double value(const Vec2& d) const {
        return value0 + grad0.x * d.x + grad0.y * d.y +
               0.5 * (hess.a11 * d.x * d.x + hess.a22 * d.y * d.y) +
               hess.a12 * d.x * d.y;
    }
    Vec2 gradient(const Vec2& d) const {
        return {grad0.x + hess.a11 * d.x + hess.a12 * d.y,
                grad0.y + hess.a12 * d.x + hess.a22 * d.y};
    }
};

QuadFit fit_quadratic(const GridField& field, int i, int j);

// Subpixel critical points of a sampled field: cells where both
// central-difference gradient components change sign are refined by Newton
// iteration on the local quadratic fit (step clamped to one cell), duplicates
// within one cell merged, detections inside the blur margin discarded.
// Classification uses eps = eps_lambda_cells * h^2. Requires dims >= 8x8.
std::vector<CriticalPoint> detect(const GridField& field, const DetectConfig& cfg = {});

}  // namespace umbilic
