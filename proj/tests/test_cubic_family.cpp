#include "doctest.h"

#include <umbilic/cubic_family.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace umbilic;
namespace cf = umbilic::cubic_family;

namespace {

// Independent oracle: damped 2D Newton on the gradient from a grid of starts,
// deduplicated. Uses only gradient/hessian arithmetic, no branch formulas.
std::vector<Vec2> newton_multistart(double s, int grid = 13, double span = 0.6) {
    std::vector<Vec2> roots;
    for (int a = 0; a < grid; ++a) {
        for (int b = 0; b < grid; ++b) {
            Vec2 p{-span + 2 * span * a / (grid - 1), -span + 2 * span * b / (grid - 1)};
            bool ok = false;
            for (int it = 0; it < 80; ++it) {
                const Vec2 g = cf::gradient(p.x, p.y, s);
                if (g.norm() < 1e-13) {
                    ok = true;
                    break;
                }
                const SymMat2 h = cf::hessian_at(p.x, p.y);
                const auto step = h.solve(g * -1.0);
                if (!step) break;
                Vec2 st = *step;
                if (st.norm() > 0.25) st = st * (0.25 / st.norm());
                p = p + st;
                if (!std::isfinite(p.x) || !std::isfinite(p.y)) break;
            }
            if (!ok || p.norm() > 2.0) continue;
            bool dup = false;
            for (const auto& r : roots)
                if (distance(r, p) < 1e-7) dup = true;
            if (!dup) roots.push_back(p);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Vec2& a, const Vec2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return roots;
}

const CriticalPoint& find_branch(const std::vector<CriticalPoint>& pts, Branch b) {
    for (const auto& cp : pts)
        if (cp.branch == b) return cp;
    REQUIRE(false);
    return pts.front();
}

// Greatest nearest-neighbor distance between two equal-sized point sets.
double set_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        double best = 1e300;
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (used[k]) continue;
            const double d = distance(p, b[k]);
            if (d < best) {
                best = d;
                best_k = k;
            }
        }
        used[best_k] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("gradient closed form") {
    CHECK(cf::gradient(0, 0, 0).norm() == 0.0);
    CHECK(cf::gradient(1.0 / 6, 1.0 / 12, 1.0 / 144).norm() < 1e-15);
    const Vec2 g = cf::gradient(1, 1, 0);
    CHECK(g.x == doctest::Approx(-3.0));
    CHECK(g.y == doctest::Approx(-10.0));
}

TEST_CASE("hessian closed form") {
    const SymMat2 h1 = cf::hessian_at(1.0 / 6, 0);
    CHECK(h1.a11 == doctest::Approx(1.0));
    CHECK(h1.a12 == 0.0);
    CHECK(h1.a22 == doctest::Approx(0.0));

    const SymMat2 h0 = cf::hessian_at(0, 0);
    CHECK(h0.a11 == 0.0);
    CHECK(h0.a22 == doctest::Approx(2.0));

    const double s = 1.0 / 50;
    const double r = std::sqrt(2 * s);
    const SymMat2 h2 = cf::hessian_at(r, 0);
    CHECK(h2.a11 == doctest::Approx(6 * r).epsilon(1e-14));
    CHECK(h2.a22 == doctest::Approx(2 * (1 - 6 * r)).epsilon(1e-14));
    CHECK(h2.a12 == 0.0);
}

TEST_CASE("critical points against the Newton multistart oracle") {
    SUBCASE("four points below the merge scale") {
        const auto pts = cf::critical_points(rat(1, 144));
        REQUIRE(pts.size() == 4);
        const auto oracle = newton_multistart(1.0 / 144);
        REQUIRE(oracle.size() == 4);
        std::vector<Vec2> got;
        for (const auto& cp : pts) got.push_back(cp.pos);
        CHECK(set_distance(got, oracle) < 1e-10);

        CHECK(find_branch(pts, Branch::Pc1Plus).pos.y == doctest::Approx(1.0 / 12));
        CHECK(find_branch(pts, Branch::Pc2Plus).pos.x ==
              doctest::Approx(1.0 / (6 * std::sqrt(2.0))));
    }

    SUBCASE("two points above the merge scale") {
        const auto pts = cf::critical_points(rat(1, 36));
        REQUIRE(pts.size() == 2);
        const auto oracle = newton_multistart(1.0 / 36);
        REQUIRE(oracle.size() == 2);
        CHECK(find_branch(pts, Branch::Pc2Plus).pos.x ==
              doctest::Approx(std::sqrt(1.0 / 18)));
        CHECK(find_branch(pts, Branch::Pc2Minus).pos.x ==
              doctest::Approx(-std::sqrt(1.0 / 18)));
    }

    SUBCASE("negative scale keeps only the pc1 pair") {
        const auto pts = cf::critical_points(rat(-1, 72));
        REQUIRE(pts.size() == 2);
        CHECK(find_branch(pts, Branch::Pc1Plus).pos.y == doctest::Approx(1.0 / 6));
        CHECK(find_branch(pts, Branch::Pc1Minus).pos.y == doctest::Approx(-1.0 / 6));
    }

    SUBCASE("exact coincidences collapse to degenerate points") {
        const auto at_merge = cf::critical_points(rat(1, 72));
        REQUIRE(at_merge.size() == 2);
        CHECK(at_merge[0].morse == Morse::Degenerate);
        CHECK(at_merge[0].pos.x == doctest::Approx(1.0 / 6));
        CHECK(at_merge[1].branch == Branch::Pc2Minus);

        const auto at_zero = cf::critical_points(rat(0));
        REQUIRE(at_zero.size() == 3);
        int degenerate = 0;
        for (const auto& cp : at_zero)
            if (cp.morse == Morse::Degenerate) ++degenerate;
        CHECK(degenerate == 1);
    }
}

TEST_CASE("eigen analysis matches the published listing") {
    SUBCASE("pc2+ at the merge scale") {
        const auto pair = cf::eigen_closed_form(Branch::Pc2Plus, 1.0 / 72);
        CHECK(pair[0].lambda == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(pair[1].lambda == doctest::Approx(1.0));
    }
    SUBCASE("pc1+ at s = 0") {
        const auto pair = cf::eigen_closed_form(Branch::Pc1Plus, 0.0);
        CHECK(pair[0].lambda == doctest::Approx(-1.0));
        CHECK(pair[1].lambda == doctest::Approx(2.0));
    }
    SUBCASE("pc2- at the merge scale") {
        const auto pair = cf::eigen_closed_form(Branch::Pc2Minus, 1.0 / 72);
        CHECK(pair[0].lambda == doctest::Approx(4.0));
        CHECK(pair[1].lambda == doctest::Approx(-1.0));
    }

    SUBCASE("closed forms agree with the numeric decomposition across scales") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> below(-0.02, 1.0 / 72 - 1e-6);
        std::uniform_real_distribution<double> above(1e-6, 0.05);
        for (int i = 0; i < 300; ++i) {
            const double s1 = below(rng);
            for (const Branch b : {Branch::Pc1Plus, Branch::Pc1Minus}) {
                CriticalPoint cp;
                cp.s = s1;
                cp.branch = b;
                cp.pos = cf::BranchDescriptor{b}.position(s1);
                cp.hessian = cf::hessian_at(cp.pos.x, cp.pos.y);
                const auto numeric = cf::eigen_analysis(cp);
                const auto closed = cf::eigen_closed_form(b, s1);
                for (int k = 0; k < 2; ++k) {
                    CHECK(numeric[k].lambda ==
                          doctest::Approx(closed[k].lambda).epsilon(1e-10));
                    const double align = std::abs(
                        numeric[k].vec.normalized().dot(closed[k].vec.normalized()));
                    CHECK(align == doctest::Approx(1.0).epsilon(1e-10));
                    // the eigen equation itself
                    const Vec2 hv = cp.hessian.apply(numeric[k].vec);
                    CHECK((hv - numeric[k].vec * numeric[k].lambda).norm() <
                          1e-12 * std::max(1.0, std::abs(numeric[k].lambda)));
                }
            }
            const double s2 = above(rng);
            for (const Branch b : {Branch::Pc2Plus, Branch::Pc2Minus}) {
                CriticalPoint cp;
                cp.s = s2;
                cp.branch = b;
                cp.pos = cf::BranchDescriptor{b}.position(s2);
                cp.hessian = cf::hessian_at(cp.pos.x, cp.pos.y);
                const auto numeric = cf::eigen_analysis(cp);
                const auto closed = cf::eigen_closed_form(b, s2);
                for (int k = 0; k < 2; ++k) {
                    CHECK(numeric[k].lambda ==
                          doctest::Approx(closed[k].lambda).epsilon(1e-10));
                    const double align = std::abs(
                        numeric[k].vec.normalized().dot(closed[k].vec.normalized()));
                    CHECK(align == doctest::Approx(1.0).epsilon(1e-10));
                }
            }
        }
    }

    CHECK_FALSE(cf::eigen_vectors_defined(1.0 / 72));
    CHECK(cf::eigen_vectors_defined(0.013));
}

TEST_CASE("classification table") {
    const auto below = cf::critical_points(rat(1, 144));
    CHECK(find_branch(below, Branch::Pc2Plus).morse == Morse::Min);
    CHECK(find_branch(below, Branch::Pc1Plus).morse == Morse::Saddle);
    CHECK(find_branch(below, Branch::Pc1Minus).morse == Morse::Saddle);
    CHECK(find_branch(below, Branch::Pc2Minus).morse == Morse::Saddle);

    const auto above = cf::critical_points(rat(1, 36));
    CHECK(find_branch(above, Branch::Pc2Plus).morse == Morse::Saddle);
    CHECK(find_branch(above, Branch::Pc2Minus).morse == Morse::Saddle);
}

TEST_CASE("critical values") {
    // triple-point coincidence at the merge scale, exact
    CHECK(cf::critical_value_z1_exact(rat(1, 72)) == rat(1, 54));
    REQUIRE(cf::critical_value_z2_exact(rat(1, 72), +1).has_value());
    CHECK(*cf::critical_value_z2_exact(rat(1, 72), +1) == rat(1, 54));
    CHECK(*cf::critical_value_z2_exact(rat(1, 72), -1) == rat(1, 27));

    CHECK(*cf::critical_value_z2_exact(rat(0), +1) == 0);
    CHECK(cf::critical_value_z1_exact(rat(0)) == rat(1, 216));

    // no exact square root at s = 1/144
    CHECK_FALSE(cf::critical_value_z2_exact(rat(1, 144), +1).has_value());
    CHECK_THROWS_AS((void)cf::critical_value_z1_exact(rat(1, 36)), std::domain_error);

    // values agree with direct evaluation of the family
    const Polynomial f = cf::family_polynomial();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> scales(-0.01, 0.05);
    for (int i = 0; i < 1000; ++i) {
        const double s = scales(rng);
        for (const auto& cp : cf::critical_points(s)) {
            const double direct = f.evaluate({{cp.pos.x, cp.pos.y}, s});
            CHECK(std::abs(direct - cp.z) < 1e-12);
        }
    }
}

TEST_CASE("median section") {
    auto at = [](double s, double x) {
        return cf::median_section(s, {x}).front().second;
    };
    CHECK(at(0, 0) == 0.0);
    CHECK(at(1.0 / 72, 1.0 / 6) == doctest::Approx(1.0 / 54).epsilon(1e-15));
    const double s = 1.0 / 144;
    const double x = -1.0 / (6 * std::sqrt(2.0));
    CHECK(at(s, x) ==
          doctest::Approx(2 * s * (1 + 2 * std::sqrt(2 * s))).epsilon(1e-13));
}

TEST_CASE("bifurcation events") {
    const auto events = cf::bifurcation_events();
    REQUIRE(events.size() == 2);
    CHECK(events[0].kind == cf::BifurcationKind::Creation);
    CHECK(events[0].s == 0);
    CHECK(events[0].location.norm() == 0.0);
    CHECK(events[1].kind == cf::BifurcationKind::TripleMerge);
    CHECK(events[1].s == rat(1, 72));
    CHECK(events[1].location.x == doctest::Approx(1.0 / 6));
    CHECK(events[1].survivor == Branch::Pc2Plus);
}

TEST_CASE("eigen sign-change scales solve to exactly 1/72") {
    const auto scales = cf::eigen_signchange_scales();
    CHECK(scales[0] == rat(1, 72));
    CHECK(scales[1] == rat(1, 72));
    // arithmetic cross-check: 1 - 64/72 = 1/9, sqrt = 1/3, 3 * 1/3 = 1
    CHECK(Rational(1) - Rational(64) * rat(1, 72) == rat(1, 9));
}

TEST_CASE("gradient vanishes along both branches") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> below(-0.05, 1.0 / 72);
    std::uniform_real_distribution<double> above(0.0, 0.08);
    for (int i = 0; i < 1000; ++i) {
        for (const auto bd : cf::branches()) {
            const double s = (bd.branch == Branch::Pc1Plus || bd.branch == Branch::Pc1Minus)
                                 ? below(rng)
                                 : above(rng);
            const Vec2 p = bd.position(s);
            CHECK(cf::gradient(p.x, p.y, s).norm() <= 1e-12);
        }
    }
}

TEST_CASE("morse census over the scale ranges") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> below(1e-5, 1.0 / 72 - 1e-5);
    std::uniform_real_distribution<double> above(1.0 / 72 + 1e-5, 0.1);
    for (int i = 0; i < 200; ++i) {
        const auto pts_below = cf::critical_points(below(rng));
        int saddles = 0, mins = 0;
        for (const auto& cp : pts_below) {
            saddles += cp.morse == Morse::Saddle;
            mins += cp.morse == Morse::Min;
        }
        CHECK(pts_below.size() == 4);
        CHECK(saddles == 3);
        CHECK(mins == 1);

        const auto pts_above = cf::critical_points(above(rng));
        CHECK(pts_above.size() == 2);
        for (const auto& cp : pts_above) CHECK(cp.morse == Morse::Saddle);
    }
}

TEST_CASE("pc2 Hessian determinant sign change") {
    // det H at pc2+- is +-12 sqrt(2s) (1 -+ 6 sqrt(2s)); only pc2+ changes
    // sign, exactly at s = 1/72.
    auto det_at = [](Branch b, double s) {
        const Vec2 p = cf::BranchDescriptor{b}.position(s);
        return cf::hessian_at(p.x, p.y).det();
    };
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> scales(1e-6, 0.2);
    for (int i = 0; i < 300; ++i) {
        const double s = scales(rng);
        const double r = std::sqrt(2 * s);
        CHECK(det_at(Branch::Pc2Plus, s) ==
              doctest::Approx(12 * r * (1 - 6 * r)).epsilon(1e-10));
        CHECK(det_at(Branch::Pc2Minus, s) ==
              doctest::Approx(-12 * r * (1 + 6 * r)).epsilon(1e-10));
        CHECK((det_at(Branch::Pc2Plus, s) > 0) == (s < 1.0 / 72));
        CHECK(det_at(Branch::Pc2Minus, s) < 0);
    }
}

TEST_CASE("family polynomial is the exact generator") {
    const Polynomial f = cf::family_polynomial();
    CHECK(f.heat_residual().is_zero());
    CHECK(f.str() == "x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s");
    CHECK(cf::merge_scale() == rat(1, 72));
}
