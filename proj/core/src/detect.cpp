#include <umbilic/detect.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umbilic {

QuadFit fit_quadratic(const GridField& f, int i, int j) {
    // Closed-form least squares of a + b u + c w + d u^2 + e u w + g w^2 over
    // the 3x3 stencil, u, w in {-1, 0, 1} (grid units).
    double A = 0, B = 0, C = 0, Su = 0, Sw = 0, Suw = 0;
    for (int dw = -1; dw <= 1; ++dw) {
        for (int du = -1; du <= 1; ++du) {
            const double v = f.at(i + du, j + dw);
            A += v;
            B += du * du * v;
            C += dw * dw * v;
            Su += du * v;
            Sw += dw * v;
            Suw += du * dw * v;
        }
    }
    const double alpha = (5.0 * A - 3.0 * B - 3.0 * C) / 9.0;
    const double beta = Su / 6.0, gamma = Sw / 6.0;
    const double delta = (-2.0 * A + 3.0 * B) / 6.0;
    const double zeta = (-2.0 * A + 3.0 * C) / 6.0;
    const double eps = Suw / 4.0;

    QuadFit fit;
    fit.node_pos = {f.x(i), f.y(j)};
    fit.value0 = alpha;
    fit.grad0 = {beta / f.h, gamma / f.h};
    const double h2 = f.h * f.h;
    fit.hess = {2.0 * delta / h2, eps / h2, 2.0 * zeta / h2};
    return fit;
}

namespace {

struct Candidate {
    Vec2 pos;
    double value = 0;
    SymMat2 hess{};
    double grad_norm = 0;
    bool refined = true;  // false: singular-fit fallback at the cell center
};

bool sign_change(double v0, double v1, double v2, double v3) {
    const double lo = std::min(std::min(v0, v1), std::min(v2, v3));
    const double hi = std::max(std::max(v0, v1), std::max(v2, v3));
    return lo <= 0.0 && hi >= 0.0 && (lo < 0.0 || hi > 0.0);
}

// Newton on the piecewise-bilinear interpolation of the central-difference
// gradient, using the interpolant's exact per-cell Jacobian. Near weakly
// degenerate points the quadratic-fit model is not trustworthy (its Hessian
// error O(h f''') can exceed the small eigenvalue), while the interpolant's
// zero stays within O(h^2) of the true critical point.
Vec2 polish_on_gradient(const GridField& f, Vec2 p, int iters, double* out_norm) {
    const double h = f.h;
    auto eval = [&](const Vec2& q, Vec2& G, double J[2][2]) {
        double fi = (q.x - f.x0) / h, fj = (q.y - f.y0) / h;
        fi = std::clamp(fi, 1.0, static_cast<double>(f.nx - 2) - 1e-9);
        fj = std::clamp(fj, 1.0, static_cast<double>(f.ny - 2) - 1e-9);
        const int i = std::min(static_cast<int>(fi), f.nx - 3);
        const int j = std::min(static_cast<int>(fj), f.ny - 3);
        const double tx = fi - i, ty = fj - j;
        const Vec2 g00 = node_gradient(f, i, j), g10 = node_gradient(f, i + 1, j);
        const Vec2 g01 = node_gradient(f, i, j + 1), g11 = node_gradient(f, i + 1, j + 1);
        G = g00 * ((1 - tx) * (1 - ty)) + g10 * (tx * (1 - ty)) +
            g01 * ((1 - tx) * ty) + g11 * (tx * ty);
        const Vec2 dx = (g10 - g00) * (1 - ty) + (g11 - g01) * ty;
        const Vec2 dy = (g01 - g00) * (1 - tx) + (g11 - g10) * tx;
        J[0][0] = dx.x / h;
        J[0][1] = dy.x / h;
        J[1][0] = dx.y / h;
        J[1][1] = dy.y / h;
    };

    Vec2 G;
    double J[2][2];
    eval(p, G, J);
    for (int it = 0; it < iters && G.norm() > 1e-14; ++it) {
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0) break;
        Vec2 step{-(J[1][1] * G.x - J[0][1] * G.y) / det,
                  -(J[0][0] * G.y - J[1][0] * G.x) / det};
        if (step.norm() > h) step = step * (h / step.norm());
        Vec2 next = p + step;
        Vec2 Gn;
        double Jn[2][2];
        eval(next, Gn, Jn);
        int backtracks = 0;
        while (Gn.norm() > G.norm() && backtracks < 6) {
            step = step * 0.5;
            next = p + step;
            eval(next, Gn, Jn);
            ++backtracks;
        }
        if (Gn.norm() >= G.norm()) break;
        p = next;
        G = Gn;
        std::copy(&Jn[0][0], &Jn[0][0] + 4, &J[0][0]);
        if (step.norm() < 1e-9 * h) break;
    }
    if (out_norm) *out_norm = G.norm();
    return p;
}

}  // namespace

std::vector<CriticalPoint> detect(const GridField& f, const DetectConfig& cfg) {
    if (f.nx < 8 || f.ny < 8)
        throw std::invalid_argument("detect: field dims must be at least 8x8");

    // Candidate cells must keep the 3x3 fit inside the grid and stay out of
    // the boundary-affected margin.
    const int lo = std::max(f.margin, 1);
    const int hi_x = f.nx - 2 - lo, hi_y = f.ny - 2 - lo;
    std::vector<Candidate> cands;

    const double step_tol = cfg.step_tol_cells * f.h;
    const double max_step = f.h;

    for (int j = lo; j <= hi_y; ++j) {
        for (int i = lo; i <= hi_x; ++i) {
            const Vec2 g00 = node_gradient(f, i, j), g10 = node_gradient(f, i + 1, j);
            const Vec2 g01 = node_gradient(f, i, j + 1), g11 = node_gradient(f, i + 1, j + 1);
            if (!sign_change(g00.x, g10.x, g01.x, g11.x)) continue;
            if (!sign_change(g00.y, g10.y, g01.y, g11.y)) continue;

            Vec2 p{f.x(i) + 0.5 * f.h, f.y(j) + 0.5 * f.h};
            const Vec2 cell_center = p;
            bool fallback = false;
            QuadFit fit{};
            for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
                const int ni = std::clamp(static_cast<int>(std::lround((p.x - f.x0) / f.h)),
                                          1, f.nx - 2);
                const int nj = std::clamp(static_cast<int>(std::lround((p.y - f.y0) / f.h)),
                                          1, f.ny - 2);
                fit = fit_quadratic(f, ni, nj);
                const auto eig = sym_eigen(fit.hess);
                const double lmin = std::min(std::abs(eig[0].lambda), std::abs(eig[1].lambda));
                const double lmax = std::max(std::abs(eig[0].lambda), std::abs(eig[1].lambda));
                if (lmin == 0.0 || lmax / lmin > cfg.cond_limit) {
                    fallback = true;
                    break;
                }
                const Vec2 g = fit.gradient(p - fit.node_pos);
                auto step = fit.hess.solve(g * -1.0);
                if (!step) {
                    fallback = true;
                    break;
                }
                if (step->norm() > max_step) *step = *step * (max_step / step->norm());
                p = p + *step;
                if (step->norm() < step_tol) break;
            }

            Candidate c;
            if (fallback) {
                c.pos = cell_center;
                c.refined = false;
                const int ni = std::clamp(static_cast<int>(std::lround((c.pos.x - f.x0) / f.h)),
                                          1, f.nx - 2);
                const int nj = std::clamp(static_cast<int>(std::lround((c.pos.y - f.y0) / f.h)),
                                          1, f.ny - 2);
                const QuadFit cf = fit_quadratic(f, ni, nj);
                c.value = cf.value(c.pos - cf.node_pos);
                c.hess = cf.hess;
                c.grad_norm = cf.gradient(c.pos - cf.node_pos).norm();
            } else {
                double gnorm = 0.0;
                p = polish_on_gradient(f, p, 2 * cfg.max_newton_iters, &gnorm);
                const int ni = std::clamp(
                    static_cast<int>(std::lround((p.x - f.x0) / f.h)), 1, f.nx - 2);
                const int nj = std::clamp(
                    static_cast<int>(std::lround((p.y - f.y0) / f.h)), 1, f.ny - 2);
                fit = fit_quadratic(f, ni, nj);
                c.pos = p;
                c.value = fit.value(p - fit.node_pos);
                c.hess = fit.hess;
                c.grad_norm = gnorm;
                if (c.grad_norm > cfg.accept_grad_tol) continue;  // did not converge
            }

            // Keep the point inside the valid interior box.
            const double bx0 = f.x(lo), bx1 = f.x(f.nx - 1 - lo);
            const double by0 = f.y(lo), by1 = f.y(f.ny - 1 - lo);
            if (c.pos.x < bx0 || c.pos.x > bx1 || c.pos.y < by0 || c.pos.y > by1) continue;
            cands.push_back(c);
        }
    }

    // Deduplicate within one cell, keeping the smallest gradient residual.
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.pos.x != b.pos.x) return a.pos.x < b.pos.x;
        return a.pos.y < b.pos.y;
    });
    const double dedup = cfg.dedup_radius_cells * f.h;
    std::vector<Candidate> kept;
    std::vector<bool> used(cands.size(), false);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (used[i]) continue;
        Candidate best = cands[i];
        for (std::size_t k = i + 1; k < cands.size(); ++k) {
            if (used[k]) continue;
            if (cands[k].pos.x - best.pos.x > 2 * dedup) break;
            // Unrefined fallbacks sit on cell centers, so their positions are
            // quantized to the cell; merge those at twice the radius.
            const double radius =
                (cands[k].refined && best.refined) ? dedup : 2 * dedup;
            if (distance(cands[k].pos, best.pos) <= radius) {
                used[k] = true;
                // Prefer refined points, then the smaller gradient residual.
                if ((cands[k].refined && !best.refined) ||
                    (cands[k].refined == best.refined &&
                     cands[k].grad_norm < best.grad_norm))
                    best = cands[k];
            }
        }
        kept.push_back(best);
    }

    const double eps_lambda = cfg.eps_lambda_cells * f.h * f.h;
    std::vector<CriticalPoint> out;
    out.reserve(kept.size());
    for (const Candidate& c : kept) {
        CriticalPoint cp;
        cp.pos = c.pos;
        cp.s = f.scale;
        cp.z = c.value;
        cp.hessian = c.hess;
        cp.eigen = sym_eigen(c.hess);
        cp.refined = c.refined;
        if (!c.refined) {
            cp.morse = Morse::Degenerate;
            cp.index = -1;
        } else {
            cp.morse = classify_eigen(cp.eigen[0].lambda, cp.eigen[1].lambda, eps_lambda);
            cp.index = morse_index(cp.eigen[0].lambda, cp.eigen[1].lambda, eps_lambda);
        }
        out.push_back(cp);
    }
    return out;
}

}  // namespace umbilic
