#include <umbilic/unfolding.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umbilic::unfolding {

namespace {

constexpr double kRealImagTol = 1e-9;
constexpr double kDedupTol = 1e-8;
constexpr double kEigenEps = 1e-9;

double quartic_value(double w, double u, double v, double x) {
    // 3x^4 + 2wx^3 + ux^2 - v^2/24
    return ((3.0 * x + 2.0 * w) * x + u) * x * x - v * v / 24.0;
}

double quartic_derivative(double w, double u, double v, double x) {
    (void)v;
    return ((12.0 * x + 6.0 * w) * x + 2.0 * u) * x;
}

std::vector<double> quartic_real_roots(double w, double u, double v) {
    // Companion matrix of the monic form x^4 + (2w/3)x^3 + (u/3)x^2 - v^2/72.
    const double c3 = 2.0 * w / 3.0, c2 = u / 3.0, c1 = 0.0, c0 = -v * v / 72.0;
    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    companion(0, 3) = -c0;
    companion(1, 3) = -c1;
    companion(2, 3) = -c2;
    companion(3, 3) = -c3;
    companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;

    const Eigen::EigenSolver<Eigen::Matrix4d> solver(companion);
    std::vector<double> roots;
    for (int k = 0; k < 4; ++k) {
        const auto ev = solver.eigenvalues()(k);
        // A real double root rounds into a conjugate pair with imag of order
        // sqrt(eps), so candidates up to 1e-6 are polished and accepted by
        // the residual, not by the imaginary part alone.
        const double imag_scale = std::max(1.0, std::abs(ev.real()));
        if (std::abs(ev.imag()) > 1e3 * kRealImagTol * imag_scale) continue;
        double x = ev.real();
        for (int it = 0; it < 8; ++it) {  // polish
            const double d = quartic_derivative(w, u, v, x);
            if (d == 0.0) break;
            const double step = quartic_value(w, u, v, x) / d;
            x -= step;
            if (std::abs(step) < 1e-16 * imag_scale) break;
        }
        const double scale = std::max({1.0, std::abs(x) * std::abs(x) * std::abs(x) * std::abs(x),
                                       std::abs(c3), std::abs(c2), std::abs(c0)});
        if (std::abs(ev.imag()) > kRealImagTol * imag_scale &&
            std::abs(quartic_value(w, u, v, x)) > 1e-11 * scale)
            continue;
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) <= kDedupTol; }),
                roots.end());
    return roots;
}

UnfoldingCriticalPoint make_cp(const UnfoldingParams& p, double x, double y) {
    UnfoldingCriticalPoint cp;
    cp.x = x;
    cp.y = y;
    cp.z = evaluate_g(p, x, y) + p.c;
    const auto eig = sym_eigen(hessian_g(p, x, y));
    cp.morse = classify_eigen(eig[0].lambda, eig[1].lambda, kEigenEps);
    cp.index = morse_index(eig[0].lambda, eig[1].lambda, kEigenEps);
    return cp;
}

}  // namespace

double evaluate_g(const UnfoldingParams& p, double x, double y) {
    return x * x * x - 6.0 * x * y * y + p.w * x * x + p.u * x + p.v * y;
}

Vec2 gradient_g(const UnfoldingParams& p, double x, double y) {
    return {3.0 * x * x - 6.0 * y * y + 2.0 * p.w * x + p.u, -12.0 * x * y + p.v};
}

SymMat2 hessian_g(const UnfoldingParams& p, double x, double y) {
    return {6.0 * x + 2.0 * p.w, -12.0 * y, -12.0 * x};
}

std::vector<UnfoldingCriticalPoint> critical_points_g(const UnfoldingParams& p) {
    std::vector<UnfoldingCriticalPoint> out;
    if (p.v != 0.0) {
        for (const double x : quartic_real_roots(p.w, p.u, p.v)) {
            if (x == 0.0) continue;  // impossible for v != 0
            out.push_back(make_cp(p, x, p.v / (12.0 * x)));
        }
    } else {
        // y = 0 branch: 3x^2 + 2wx + u = 0.
        const double disc = p.w * p.w - 3.0 * p.u;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            out.push_back(make_cp(p, (-p.w + root) / 3.0, 0.0));
            if (root > 0.0) out.push_back(make_cp(p, (-p.w - root) / 3.0, 0.0));
        }
        // x = 0 branch: y = +-sqrt(u/6).
        if (p.u > 0.0) {
            const double y = std::sqrt(p.u / 6.0);
            out.push_back(make_cp(p, 0.0, y));
            out.push_back(make_cp(p, 0.0, -y));
        } else if (p.u == 0.0) {
            out.push_back(make_cp(p, 0.0, 0.0));
        }
        // Deduplicate (u = 0 puts the origin on both branches).
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.x != b.x) return a.x < b.x;
            return a.y < b.y;
        });
        out.erase(std::unique(out.begin(), out.end(),
                              [](const auto& a, const auto& b) {
                                  return std::abs(a.x - b.x) <= kDedupTol &&
                                         std::abs(a.y - b.y) <= kDedupTol;
                              }),
                  out.end());
        return out;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return out;
}

namespace {

// Locus parameterization at fixed w (x in [-w/3, 0]).
struct LocusPoint {
    double u, v, x, y;
};

LocusPoint locus_at(double w, double x, int y_sign) {
    const double y2 = std::max(0.0, -x * (3.0 * x + w) / 6.0);
    const double y = y_sign * std::sqrt(y2);
    return {-6.0 * x * x - 3.0 * w * x, 12.0 * x * y, x, y};
}

}  // namespace

double implicit_residual(double u, double v) {
    const double u2 = u * u, v2 = v * v;
    return (-1.0 + u) * u2 * u + (486.0 - 648.0 * u + 144.0 * u2) * v2 +
           5184.0 * v2 * v2;
}

DiscriminantCurve discriminant_section(double w, int n_samples) {
    if (w <= 0.0) throw std::invalid_argument("discriminant section is empty for w <= 0");
    if (n_samples < 16) throw std::invalid_argument("need at least 16 samples");

    DiscriminantCurve curve;

    // Interior cusps: du/dx = -3(4x + w) and dv/dx = -3x(4x + w)/y vanish
    // together exactly at 4x + w = 0. Located by bisection on du/dx to keep
    // this a computation rather than a transcription.
    double lo = -w / 3.0, hi = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (-3.0 * (4.0 * mid + w) > 0.0) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-15 * std::max(1.0, w)) break;
    }
    const double x_cusp = 0.5 * (lo + hi);
    const LocusPoint cusp_pos = locus_at(w, x_cusp, +1);
    const LocusPoint cusp_neg = locus_at(w, x_cusp, -1);

    // Branch joint at x = 0: the two y-sign arcs meet with reversed tangents
    // (both tangent to the u axis), a cusp at (0, 0).
    const LocusPoint joint = locus_at(w, 0.0, +1);
    const double eps_x = (w / 3.0) * 1e-7;
    const LocusPoint approach_pos = locus_at(w, -eps_x, +1);
    const LocusPoint approach_neg = locus_at(w, -eps_x, -1);
    const Vec2 tan_in{approach_pos.u - joint.u, approach_pos.v - joint.v};
    const Vec2 tan_out{joint.u - approach_neg.u, joint.v - approach_neg.v};
    const bool joint_is_cusp = tan_in.dot(tan_out) < 0.0;

    curve.cusps.push_back({joint.u, joint.v});
    curve.cusps.push_back({cusp_pos.u, cusp_pos.v});
    curve.cusps.push_back({cusp_neg.u, cusp_neg.v});
    if (!joint_is_cusp) curve.cusps.erase(curve.cusps.begin());

    curve.fold_axis_crossings.push_back({locus_at(w, 0.0, +1).u, 0.0});
    curve.fold_axis_crossings.push_back({locus_at(w, -w / 3.0, +1).u, 0.0});

    // Uniform sampling in x along the closed loop: the y > 0 arc from x = 0
    // down to -w/3, then the y < 0 arc back up to x = 0. The exact cusp
    // parameter is inserted as a dedicated marked sample on each arc; uniform
    // samples colliding with it are dropped so exactly three rows carry the
    // cusp mark.
    auto add_sample = [&](double x, int y_sign, bool cusp) {
        const LocusPoint lp = locus_at(w, x, y_sign);
        curve.samples.push_back({lp.u, lp.v, lp.x, lp.y, cusp});
    };
    const double step = (w / 3.0) / n_samples;

    add_sample(0.0, +1, joint_is_cusp);  // loop start, the branch joint
    double x_prev = 0.0;
    for (int k = 1; k <= n_samples; ++k) {
        const double x = -(w / 3.0) * k / n_samples;
        if (x_prev > x_cusp && x <= x_cusp) add_sample(x_cusp, +1, true);
        if (std::abs(x - x_cusp) > 0.25 * step) add_sample(x, +1, false);
        x_prev = x;
    }
    x_prev = -w / 3.0;
    for (int k = 1; k <= n_samples; ++k) {
        const double x = -(w / 3.0) * (1.0 - static_cast<double>(k) / n_samples);
        if (x_prev < x_cusp && x >= x_cusp) add_sample(x_cusp, -1, true);
        if (std::abs(x - x_cusp) > 0.25 * step) add_sample(x, -1, false);
        x_prev = x;
    }
    return curve;
}

std::vector<CriticalValueSample> critical_value_graph(double w, double u_min,
                                                      double u_max, double v_min,
                                                      double v_max, int resolution) {
    if (resolution < 8)
        throw std::invalid_argument("critical_value_graph: resolution must be >= 8");
    std::vector<CriticalValueSample> out;
    for (int j = 0; j < resolution; ++j) {
        const double v = v_min + (v_max - v_min) * j / (resolution - 1);
        for (int i = 0; i < resolution; ++i) {
            const double u = u_min + (u_max - u_min) * i / (resolution - 1);
            const UnfoldingParams p{w, u, v, 0.0};
            for (const auto& cp : critical_points_g(p))
                out.push_back({u, v, cp.z, cp.morse});
        }
    }
    return out;
}

EmbeddingPoint embedding_line(double s) {
    return {1.0 / 12.0 - 6.0 * s, s + 1.0 / 216.0};
}

std::pair<Rational, Rational> embedding_line_exact(const Rational& s) {
    return {rat(1, 12) - Rational(6) * s, s + rat(1, 216)};
}

bool embedding_inside(double s) {
    const UnfoldingParams p{0.5, embedding_line(s).u, 0.0, 0.0};
    return critical_points_g(p).size() == 4;
}

Polynomial organizing_center() {
    return Polynomial::parse("x^3 - 6*x*y^2 + 1/2*x^2 + 1/54", 2);
}

}  // namespace umbilic::unfolding
