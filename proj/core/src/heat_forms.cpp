#include <umbilic/heat_forms.hpp>

#include <numeric>

namespace umbilic {

namespace {

Rational coeff_sum(const std::vector<Rational>& a) {
    return std::accumulate(a.begin(), a.end(), Rational(0));
}

void require_nonzero(const std::vector<Rational>& a, const std::string& form,
                     int index_base) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == 0)
            throw constraint_error(form + ": a_" + std::to_string(index_base + i) +
                                   " = 0 violates a_i != 0");
}

void require_size(const std::vector<Rational>& a, std::size_t want,
                  const std::string& form) {
    if (a.size() != want)
        throw constraint_error(form + ": expected " + std::to_string(want) +
                               " coefficients, got " + std::to_string(a.size()));
}

Polynomial x_squared_sum(int n) {
    Polynomial p(n);
    for (int i = 0; i < n; ++i) {
        Polynomial xi = Polynomial::variable(n, i);
        p += xi * xi;
    }
    return p;
}

// sum a_i x_i^2 with a indexed from spatial variable `first_var`.
Polynomial weighted_squares(int n, const std::vector<Rational>& a, int first_var) {
    Polynomial p(n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Polynomial xi = Polynomial::variable(n, first_var + static_cast<int>(i));
        p += a[i] * xi * xi;
    }
    return p;
}

// Embed a polynomial over (x1..xm, s) into n >= m spatial variables with the
// spatial indices shifted by `shift`.
Polynomial embed_shifted(const Polynomial& p, int n, int shift) {
    const int m = p.n_spatial();
    Polynomial out(n);
    for (const auto& [mono, c] : p.terms()) {
        Polynomial::Mono big(static_cast<std::size_t>(n) + 1, 0);
        for (int i = 0; i < m; ++i) big[static_cast<std::size_t>(i + shift)] = mono[i];
        big[static_cast<std::size_t>(n)] = mono[static_cast<std::size_t>(m)];
        out.add_term(std::move(big), c);
    }
    return out;
}

Polynomial cubic_head(int n, int s_sign) {
    // x1^3 + s_sign * 6 s x1
    Polynomial x1 = Polynomial::variable(n, 0);
    Polynomial s = Polynomial::scale_variable(n);
    return x1 * x1 * x1 + Rational(6 * s_sign) * s * x1;
}

Polynomial build_tail(const NormalForm& parent, const std::string& parent_name) {
    if (parent.n < 2) {
        if (parent.tail)
            throw constraint_error(parent_name + ": no tail variables available at n = 1");
        return Polynomial(parent.n);
    }
    if (!parent.tail)
        throw constraint_error(parent_name +
                               ": a quadratic tail over x2..xn is required for n >= 2");
    const NormalForm& t = *parent.tail;
    switch (t.id) {
        case FormId::F1:
        case FormId::F2:
        case FormId::F5:
        case FormId::F6:
            break;
        default:
            throw constraint_error(parent_name + ": tail must be a quadratic form " +
                                   "(F1/F2/F5/F6), got " + form_name(t.id));
    }
    if (t.n != parent.n - 1)
        throw constraint_error(parent_name + ": tail dimension must be n-1 = " +
                               std::to_string(parent.n - 1) + ", got " +
                               std::to_string(t.n));
    return embed_shifted(build(t), parent.n, 1);
}

}  // namespace

std::string form_name(FormId id) {
    return "F" + std::to_string(static_cast<int>(id) + 1);
}

FormKind form_kind(FormId id) {
    switch (id) {
        case FormId::F1:
        case FormId::F2:
        case FormId::F3:
        case FormId::F4:
            return FormKind::HStable;
        default:
            return FormKind::ISStable;
    }
}

Polynomial build(const NormalForm& form) {
    const std::string name = form_name(form.id);
    const int n = form.n;
    if (n < 1) throw constraint_error(name + ": spatial dimension must be >= 1");
    if (form.sign != 1 && form.sign != -1)
        throw constraint_error(name + ": sign must be +1 or -1");

    const Polynomial s = Polynomial::scale_variable(n);

    switch (form.id) {
        case FormId::F1:
        case FormId::F5: {
            // Coupled signs: sign * (sum x_i^2 + 2n s). Anti-coupled signs do
            // not solve the heat equation.
            Polynomial p = x_squared_sum(n) + Rational(2 * n) * s;
            return Rational(form.sign) * p;
        }
        case FormId::F2: {
            require_size(form.coeffs, static_cast<std::size_t>(n), name);
            require_nonzero(form.coeffs, name, 1);
            if (coeff_sum(form.coeffs) != 0)
                throw constraint_error(name + ": sum a_i = " +
                                       coeff_sum(form.coeffs).get_str() +
                                       ", must be exactly 0");
            return weighted_squares(n, form.coeffs, 0);
        }
        case FormId::F6: {
            require_size(form.coeffs, static_cast<std::size_t>(n), name);
            require_nonzero(form.coeffs, name, 1);
            const Rational sum = coeff_sum(form.coeffs);
            if (sum == 0)
                throw constraint_error(name + ": sum a_i must be nonzero");
            return weighted_squares(n, form.coeffs, 0) + Rational(2) * sum * s;
        }
        case FormId::F3:
            return cubic_head(n, +1) + build_tail(form, name);
        case FormId::F4: {
            if (n < 2) throw constraint_error(name + ": requires n >= 2");
            Polynomial x1 = Polynomial::variable(n, 0);
            Polynomial x2 = Polynomial::variable(n, 1);
            return cubic_head(n, -1) - Rational(6) * x1 * x2 * x2 +
                   build_tail(form, name);
        }
        case FormId::F7: {
            if (n != 2) throw constraint_error(name + ": requires n = 2");
            require_size(form.coeffs, 2, name);
            require_nonzero(form.coeffs, name, 1);
            if (coeff_sum(form.coeffs) != 0)
                throw constraint_error(name + ": sum a_i must be exactly 0");
            Polynomial r2 = x_squared_sum(2);
            Polynomial block =
                s * s + rat(1, 2) * s * r2 + form.quartic_coeff * r2 * r2;
            return weighted_squares(2, form.coeffs, 0) + Rational(form.sign) * block;
        }
        case FormId::F8:
        case FormId::F9: {
            if (n < 2)
                throw constraint_error(name + ": requires n >= 2 (nonempty tail sum)");
            require_size(form.coeffs, static_cast<std::size_t>(n - 1), name);
            require_nonzero(form.coeffs, name, 2);
            const Rational sum = coeff_sum(form.coeffs);
            if (sum == 0)
                throw constraint_error(name + ": sum_{i>=2} a_i must be nonzero");
            Polynomial quad = weighted_squares(n, form.coeffs, 1) + Rational(2) * sum * s;
            if (form.id == FormId::F8) return cubic_head(n, +1) + quad;
            Polynomial x1 = Polynomial::variable(n, 0);
            Polynomial x2 = Polynomial::variable(n, 1);
            return cubic_head(n, -1) - Rational(6) * x1 * x2 * x2 + quad;
        }
    }
    throw constraint_error("unknown form id");
}

HeatCheck verify_heat(const NormalForm& form) {
    Polynomial residual = build(form).heat_residual();
    const bool ok = residual.is_zero();
    return {std::move(residual), ok};
}

std::vector<CatalogTemplate> list_catalog(int n) {
    if (n < 1) throw std::invalid_argument("catalog requires n >= 1");
    std::vector<CatalogTemplate> all = {
        {FormId::F1, FormKind::HStable, "sign*(sum_i x_i^2 + 2*n*s)",
         "signs coupled (both + or both -)", 1},
        {FormId::F2, FormKind::HStable, "sum_i a_i*x_i^2",
         "a_i != 0 for all i, sum a_i = 0", 2},
        {FormId::F3, FormKind::HStable, "x1^3 + 6*s*x1 + Q(x2..xn, s)",
         "Q a quadratic catalog entry (omitted at n = 1)", 1},
        {FormId::F4, FormKind::HStable, "x1^3 - 6*s*x1 - 6*x1*x2^2 + Q(x2..xn, s)",
         "Q a quadratic catalog entry", 2},
        {FormId::F5, FormKind::ISStable, "sign*(sum_i x_i^2 + 2*n*s)",
         "signs coupled (both + or both -)", 1},
        {FormId::F6, FormKind::ISStable, "sum_i a_i*x_i^2 + 2*(sum a_i)*s",
         "a_i != 0 for all i, sum a_i != 0", 1},
        {FormId::F7, FormKind::ISStable,
         "a1*x1^2 + a2*x2^2 +- (s^2 + 1/2*s*r^2 + q*r^4), r^2 = x1^2+x2^2",
         "n = 2, a_i != 0, a1 + a2 = 0; q defaults to the printed 1/16 "
         "(not a heat solution; q = 1/32 closes the equation)",
         2, true},
        {FormId::F8, FormKind::ISStable,
         "x1^3 + 6*s*x1 + sum_{i>=2} a_i*x_i^2 + 2*(sum_{i>=2} a_i)*s",
         "a_i != 0 for i >= 2, sum_{i>=2} a_i != 0", 2},
        {FormId::F9, FormKind::ISStable,
         "x1^3 - 6*s*x1 - 6*x1*x2^2 + sum_{i>=2} a_i*x_i^2 + 2*(sum_{i>=2} a_i)*s",
         "a_i != 0 for i >= 2, sum_{i>=2} a_i != 0", 2},
    };
    std::vector<CatalogTemplate> out;
    for (auto& t : all) {
        if (n < t.min_n) continue;
        if (t.exact_n2 && n != 2) continue;
        out.push_back(std::move(t));
    }
    return out;
}

namespace presets {

NormalForm f7_printed(int sign) {
    NormalForm f;
    f.id = FormId::F7;
    f.n = 2;
    f.coeffs = {rat(1), rat(-1)};
    f.sign = sign;
    f.quartic_coeff = rat(1, 16);
    return f;
}

NormalForm f7_corrected(int sign) {
    NormalForm f = f7_printed(sign);
    f.quartic_coeff = rat(1, 32);
    return f;
}

}  // namespace presets

}  // namespace umbilic
