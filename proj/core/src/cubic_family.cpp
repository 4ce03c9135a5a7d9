#include <umbilic/cubic_family.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace umbilic::cubic_family {

namespace {

const Rational kMergeScale = rat(1, 72);

double y1_of(double s) { return std::sqrt(std::max(0.0, 1.0 - 72.0 * s)) / (6.0 * std::sqrt(2.0)); }
double x2_of(double s) { return std::sqrt(std::max(0.0, 2.0 * s)); }

double branch_value(Branch b, double s) {
    switch (b) {
        case Branch::Pc1Plus:
        case Branch::Pc1Minus:
            return s + 1.0 / 216.0;
        case Branch::Pc2Plus:
            return 2.0 * s * (1.0 - 2.0 * std::sqrt(std::max(0.0, 2.0 * s)));
        case Branch::Pc2Minus:
            return 2.0 * s * (1.0 + 2.0 * std::sqrt(std::max(0.0, 2.0 * s)));
    }
    return 0.0;
}

CriticalPoint make_point(Branch b, double x, double y, double s) {
    CriticalPoint cp;
    cp.pos = {x, y};
    cp.s = s;
    cp.branch = b;
    cp.hessian = hessian_at(x, y);
    cp.z = branch_value(b, s);
    cp.eigen = eigen_analysis(cp);
    cp.morse = classify_eigen(cp.eigen[0].lambda, cp.eigen[1].lambda, kEigenEps);
    cp.index = morse_index(cp.eigen[0].lambda, cp.eigen[1].lambda, kEigenEps);
    return cp;
}

CriticalPoint make_degenerate(Branch b, double x, double y, double s, double z) {
    CriticalPoint cp;
    cp.pos = {x, y};
    cp.s = s;
    cp.z = z;
    cp.branch = b;
    cp.hessian = hessian_at(x, y);
    cp.eigen = sym_eigen(cp.hessian);
    cp.morse = Morse::Degenerate;
    cp.index = -1;
    return cp;
}

}  // namespace

Polynomial family_polynomial() {
    return Polynomial::parse("x^3 - 6*x*y^2 + y^2 - 6*s*x + 2*s", 2);
}

Rational merge_scale() { return kMergeScale; }

Vec2 gradient(double x, double y, double s) {
    return {3.0 * x * x - 6.0 * y * y - 6.0 * s, -12.0 * x * y + 2.0 * y};
}

SymMat2 hessian_at(double x, double y) {
    return {6.0 * x, -12.0 * y, 2.0 - 12.0 * x};
}

bool BranchDescriptor::real_at(const Rational& s) const {
    switch (branch) {
        case Branch::Pc1Plus:
        case Branch::Pc1Minus:
            return s <= kMergeScale;
        case Branch::Pc2Plus:
        case Branch::Pc2Minus:
            return s >= 0;
    }
    return false;
}

Vec2 BranchDescriptor::position(double s) const {
    switch (branch) {
        case Branch::Pc1Plus: return {1.0 / 6.0, y1_of(s)};
        case Branch::Pc1Minus: return {1.0 / 6.0, -y1_of(s)};
        case Branch::Pc2Plus: return {x2_of(s), 0.0};
        case Branch::Pc2Minus: return {-x2_of(s), 0.0};
    }
    return {};
}

std::array<BranchDescriptor, 4> branches() {
    return {BranchDescriptor{Branch::Pc1Plus}, BranchDescriptor{Branch::Pc1Minus},
            BranchDescriptor{Branch::Pc2Plus}, BranchDescriptor{Branch::Pc2Minus}};
}

std::vector<CriticalPoint> critical_points(const Rational& s) {
    const double sd = to_double(s);
    std::vector<CriticalPoint> out;

    if (s == kMergeScale) {
        // pc1+, pc1- and pc2+ coincide at (1/6, 0): one degenerate point.
        out.push_back(make_degenerate(Branch::Pc2Plus, 1.0 / 6.0, 0.0, sd,
                                      to_double(critical_value_z1_exact(s))));
        out.push_back(make_point(Branch::Pc2Minus, -x2_of(sd), 0.0, sd));
        return out;
    }

    if (s <= kMergeScale) {
        out.push_back(make_point(Branch::Pc1Plus, 1.0 / 6.0, y1_of(sd), sd));
        out.push_back(make_point(Branch::Pc1Minus, 1.0 / 6.0, -y1_of(sd), sd));
    }
    if (s == 0) {
        // pc2+ and pc2- coincide at the origin: one degenerate point.
        out.push_back(make_degenerate(Branch::Pc2Plus, 0.0, 0.0, 0.0, 0.0));
    } else if (s > 0) {
        out.push_back(make_point(Branch::Pc2Plus, x2_of(sd), 0.0, sd));
        out.push_back(make_point(Branch::Pc2Minus, -x2_of(sd), 0.0, sd));
    }
    return out;
}

std::vector<CriticalPoint> critical_points(double s) {
    return critical_points(Rational(s));
}

bool eigen_vectors_defined(double s) { return s != to_double(kMergeScale); }

std::array<EigenPair, 2> eigen_closed_form(Branch b, double s) {
    const double r = std::sqrt(std::max(0.0, 2.0 * s));
    switch (b) {
        case Branch::Pc2Plus:
            return {EigenPair{2.0 - 12.0 * r, {0.0, 1.0}}, EigenPair{6.0 * r, {1.0, 0.0}}};
        case Branch::Pc2Minus:
            return {EigenPair{2.0 + 12.0 * r, {0.0, 1.0}}, EigenPair{-6.0 * r, {1.0, 0.0}}};
        default:
            break;
    }
    const double d = std::sqrt(std::max(0.0, 1.0 - 64.0 * s));
    const double la = 0.5 * (1.0 - 3.0 * d);
    const double lb = 0.5 * (1.0 + 3.0 * d);
    const double c = std::sqrt(std::max(0.0, 2.0 * (1.0 - 72.0 * s)));
    // Off-diagonal Hessian entry is -+ c on pc1+-; each eigenvector is
    // (lambda / entry, 1), which is the pairing that satisfies H v = lambda v.
    if (b == Branch::Pc1Plus) {
        return {EigenPair{la, {c == 0 ? 0.0 : la / -c, 1.0}},
                EigenPair{lb, {c == 0 ? 0.0 : lb / -c, 1.0}}};
    }
    return {EigenPair{lb, {c == 0 ? 0.0 : lb / c, 1.0}},
            EigenPair{la, {c == 0 ? 0.0 : la / c, 1.0}}};
}

std::array<EigenPair, 2> eigen_analysis(const CriticalPoint& cp) {
    auto numeric = sym_eigen(cp.hessian);  // ascending
    if (!cp.branch) return numeric;
    const auto closed = eigen_closed_form(*cp.branch, cp.s);
    // Reorder the numeric pair to follow the closed-form listing.
    if (std::abs(numeric[0].lambda - closed[0].lambda) >
        std::abs(numeric[1].lambda - closed[0].lambda))
        std::swap(numeric[0], numeric[1]);
    return numeric;
}

Morse classify(const CriticalPoint& cp, double eps) {
    return classify_eigen(cp.eigen[0].lambda, cp.eigen[1].lambda, eps);
}

std::map<Branch, double> critical_values(double s) {
    std::map<Branch, double> out;
    const double r = std::sqrt(std::max(0.0, 2.0 * s));
    if (s <= to_double(kMergeScale)) {
        const double z1 = s + 1.0 / 216.0;
        out[Branch::Pc1Plus] = z1;
        out[Branch::Pc1Minus] = z1;
    }
    if (s >= 0.0) {
        out[Branch::Pc2Plus] = 2.0 * s * (1.0 - 2.0 * r);
        out[Branch::Pc2Minus] = 2.0 * s * (1.0 + 2.0 * r);
    }
    return out;
}

Rational critical_value_z1_exact(const Rational& s) {
    if (s > kMergeScale)
        throw std::domain_error("pc1 branch is not real for s > 1/72");
    return s + rat(1, 216);
}

std::optional<Rational> critical_value_z2_exact(const Rational& s, int sign) {
    if (s < 0) throw std::domain_error("pc2 branch is not real for s < 0");
    const auto root = exact_sqrt(Rational(2) * s);
    if (!root) return std::nullopt;
    Rational factor = 1;
    if (sign > 0) factor -= Rational(2) * *root;
    else factor += Rational(2) * *root;
    return Rational(Rational(2) * s * factor);
}

std::vector<std::pair<double, double>> median_section(double s,
                                                      const std::vector<double>& xs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (const double x : xs)
        out.emplace_back(x, x * x * x - 6.0 * s * x + 2.0 * s);
    return out;
}

std::vector<ScaleBifurcation> bifurcation_events() {
    return {
        {BifurcationKind::Creation, Rational(0), Vec2{0.0, 0.0}, std::nullopt},
        {BifurcationKind::TripleMerge, kMergeScale, Vec2{1.0 / 6.0, 0.0},
         Branch::Pc2Plus},
    };
}

std::array<Rational, 2> eigen_signchange_scales() {
    // 1 - 3 sqrt(1-64s) = 0  =>  1 - 64 s = 1/9  =>  s = (8/9)/64
    const Rational first = (Rational(1) - rat(1, 9)) / Rational(64);
    // 1 - 6 sqrt(2s) = 0     =>  2 s = 1/36      =>  s = 1/72
    const Rational second = rat(1, 36) / Rational(2);
    return {first, second};
}

}  // namespace umbilic::cubic_family
