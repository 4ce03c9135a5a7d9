#include <umbilic/polynomial.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace umbilic {

namespace {

int spatial_degree(const Polynomial::Mono& m, int n) {
    int d = 0;
    for (int i = 0; i < n; ++i) d += static_cast<int>(m[i]);
    return d;
}

template <typename T>
T scalar_cast(const Rational& r);
template <>
double scalar_cast<double>(const Rational& r) { return r.get_d(); }
template <>
Rational scalar_cast<Rational>(const Rational& r) { return r; }

using FlatTerms = std::vector<std::pair<const Polynomial::Mono*, const Rational*>>;

// Sparse Horner: terms in [lo,hi) share exponents on variables < var and are
// sorted by descending exponent at position var.
template <typename Scalar, typename CoordFn>
Scalar eval_range(const FlatTerms& flat, int n_vars, const CoordFn& coord, int var,
                  std::size_t lo, std::size_t hi) {
    if (var == n_vars) return scalar_cast<Scalar>(*flat[lo].second);
    const Scalar x = coord(var);
    Scalar acc(0);
    std::uint32_t prev = (*flat[lo].first)[static_cast<std::size_t>(var)];
    std::size_t i = lo;
    while (i < hi) {
        const std::uint32_t e = (*flat[i].first)[static_cast<std::size_t>(var)];
        std::size_t j = i;
        while (j < hi && (*flat[j].first)[static_cast<std::size_t>(var)] == e) ++j;
        for (std::uint32_t k = e; k < prev; ++k) acc *= x;
        acc += eval_range<Scalar>(flat, n_vars, coord, var + 1, i, j);
        prev = e;
        i = j;
    }
    for (std::uint32_t k = 0; k < prev; ++k) acc *= x;
    return acc;
}

}  // namespace

bool Polynomial::TermOrder::operator()(const Mono& a, const Mono& b) const {
    const int da = spatial_degree(a, n), db = spatial_degree(b, n);
    if (da != db) return da > db;
    for (int i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return a[n] < b[n];
}

Polynomial::Polynomial(int n_spatial)
    : n_spatial_(n_spatial), terms_(TermOrder{n_spatial}) {
    if (n_spatial < 0) throw std::invalid_argument("negative spatial dimension");
}

Polynomial Polynomial::constant(int n_spatial, const Rational& c) {
    Polynomial p(n_spatial);
    p.add_term(Mono(n_spatial + 1, 0), c);
    return p;
}

Polynomial Polynomial::variable(int n_spatial, int var) {
    if (var < 0 || var > n_spatial)
        throw std::invalid_argument("unknown variable id " + std::to_string(var));
    Polynomial p(n_spatial);
    Mono m(n_spatial + 1, 0);
    m[var] = 1;
    p.add_term(std::move(m), 1);
    return p;
}

Polynomial Polynomial::scale_variable(int n_spatial) {
    return variable(n_spatial, n_spatial);
}

Rational Polynomial::coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(Mono m, const Rational& c) {
    if (static_cast<int>(m.size()) != n_spatial_ + 1)
        throw std::invalid_argument("exponent vector has wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out(n_spatial_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.n_spatial_ != n_spatial_)
        throw std::invalid_argument("dimension mismatch in polynomial sum");
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.n_spatial_ != n_spatial_)
        throw std::invalid_argument("dimension mismatch in polynomial difference");
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    if (rhs.n_spatial_ != n_spatial_)
        throw std::invalid_argument("dimension mismatch in polynomial product");
    Polynomial out(n_spatial_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Mono m(n_spatial_ + 1);
            for (int i = 0; i <= n_spatial_; ++i) m[i] = ma[i] + mb[i];
            out.add_term(std::move(m), ca * cb);
        }
    }
    *this = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

Polynomial Polynomial::differentiate(int var) const {
    if (var < 0 || var > n_spatial_)
        throw std::invalid_argument("unknown variable id " + std::to_string(var));
    Polynomial out(n_spatial_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Mono d = m;
        d[var] -= 1;
        out.add_term(std::move(d), c * Rational(static_cast<long>(m[var])));
    }
    return out;
}

Polynomial Polynomial::laplacian() const {
    Polynomial out(n_spatial_);
    for (int i = 0; i < n_spatial_; ++i)
        out += differentiate(i).differentiate(i);
    return out;
}

Polynomial Polynomial::heat_residual() const {
    return differentiate(n_spatial_) - laplacian();
}

template <typename Scalar, typename Coord>
Scalar Polynomial::evaluate_horner(const Coord& coord) const {
    if (terms_.empty()) return Scalar(0);
    // Regroup lexicographically (variable 0 major, descending) so each
    // recursion level sees contiguous exponent groups.
    FlatTerms flat;
    flat.reserve(terms_.size());
    for (const auto& [m, c] : terms_) flat.emplace_back(&m, &c);
    std::sort(flat.begin(), flat.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(b.first->begin(), b.first->end(),
                                            a.first->begin(), a.first->end());
    });
    return eval_range<Scalar>(flat, n_spatial_ + 1, coord, 0, 0, flat.size());
}

double Polynomial::evaluate(const Point& pt) const {
    if (static_cast<int>(pt.x.size()) != n_spatial_)
        throw std::invalid_argument("point dimension mismatch");
    auto coord = [&](int var) -> double {
        return var == n_spatial_ ? pt.s : pt.x[static_cast<std::size_t>(var)];
    };
    return evaluate_horner<double>(coord);
}

Rational Polynomial::evaluate_exact(std::span<const Rational> spatial,
                                    const Rational& s) const {
    if (static_cast<int>(spatial.size()) != n_spatial_)
        throw std::invalid_argument("point dimension mismatch");
    auto coord = [&](int var) -> Rational {
        return var == n_spatial_ ? s : spatial[static_cast<std::size_t>(var)];
    };
    return evaluate_horner<Rational>(coord);
}

Polynomial Polynomial::recenter(std::span<const Rational> offset) const {
    if (static_cast<int>(offset.size()) != n_spatial_ &&
        static_cast<int>(offset.size()) != n_spatial_ + 1)
        throw std::invalid_argument("offset dimension mismatch");

    std::vector<Rational> shift(offset.begin(), offset.end());
    shift.resize(n_spatial_ + 1, Rational(0));

    // Binomial expansion of each shifted power, variable by variable.
    Polynomial out(n_spatial_);
    for (const auto& [m, c] : terms_) {
        Polynomial term = constant(n_spatial_, c);
        for (int v = 0; v <= n_spatial_; ++v) {
            if (m[v] == 0) continue;
            Polynomial base = variable(n_spatial_, v) + constant(n_spatial_, shift[v]);
            Polynomial pw = constant(n_spatial_, 1);
            for (std::uint32_t k = 0; k < m[v]; ++k) pw *= base;
            term *= pw;
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::heat_flow(const Rational& t) const {
    if (t < 0) throw std::domain_error("heat_flow requires t >= 0");
    Polynomial acc = *this;
    Polynomial lap = laplacian();
    Rational factor = 1;
    for (long k = 1; !lap.is_zero(); ++k) {
        factor *= t / Rational(k);
        acc += lap * factor;
        lap = lap.laplacian();
    }
    return acc;
}

Polynomial Polynomial::heat_flow_symbolic() const {
    if (max_scale_exponent() > 0)
        throw std::domain_error("symbolic heat flow requires an s-free polynomial");
    Polynomial acc = *this;
    Polynomial lap = laplacian();
    const Polynomial s = scale_variable(n_spatial_);
    Polynomial s_pow = constant(n_spatial_, 1);
    Rational inv_fact = 1;
    for (long k = 1; !lap.is_zero(); ++k) {
        inv_fact /= Rational(k);
        s_pow *= s;
        acc += lap * s_pow * inv_fact;
        lap = lap.laplacian();
    }
    return acc;
}

Polynomial Polynomial::substitute_scale(const Rational& s) const {
    Polynomial out(n_spatial_);
    for (const auto& [m, c] : terms_) {
        Mono flat = m;
        flat[n_spatial_] = 0;
        out.add_term(std::move(flat), c * rational_pow(s, m[n_spatial_]));
    }
    return out;
}

int Polynomial::weighted_degree() const {
    if (terms_.empty())
        throw std::domain_error("weighted degree of the zero polynomial");
    int best = 0;
    for (const auto& [m, c] : terms_) {
        const int d = spatial_degree(m, n_spatial_) + 2 * static_cast<int>(m[n_spatial_]);
        best = std::max(best, d);
    }
    return best;
}

int Polynomial::total_degree() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        best = std::max(best,
                        spatial_degree(m, n_spatial_) + static_cast<int>(m[n_spatial_]));
    return best;
}

int Polynomial::max_scale_exponent() const {
    int best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, static_cast<int>(m[n_spatial_]));
    return best;
}

std::string variable_name(int n_spatial, int var) {
    if (var == n_spatial) return "s";
    if (n_spatial <= 3) {
        static const char* names[] = {"x", "y", "z"};
        return names[var];
    }
    return "x" + std::to_string(var + 1);
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        std::vector<std::string> factors;
        // s first, then spatial variables in index order
        auto push_var = [&](int var, std::uint32_t e) {
            if (e == 0) return;
            std::string f = variable_name(n_spatial_, var);
            if (e > 1) f += "^" + std::to_string(e);
            factors.push_back(std::move(f));
        };
        push_var(n_spatial_, m[n_spatial_]);
        for (int i = 0; i < n_spatial_; ++i) push_var(i, m[i]);

        if (factors.empty()) {
            out << mag.get_str();
        } else {
            bool wrote = false;
            if (mag != 1) {
                out << mag.get_str();
                wrote = true;
            }
            for (const auto& f : factors) {
                if (wrote) out << "*";
                out << f;
                wrote = true;
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    int n;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at offset " +
                                    std::to_string(pos) + ": " + what);
    }

    unsigned long parse_uint() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected integer");
        unsigned long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<unsigned long>(text[pos] - '0');
            ++pos;
        }
        return v;
    }

    Rational parse_number() {
        const unsigned long num = parse_uint();
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            const unsigned long den = parse_uint();
            if (den == 0) fail("zero denominator");
            return rat(static_cast<long>(num), static_cast<long>(den));
        }
        return Rational(static_cast<long>(num));
    }

    int parse_variable() {
        skip_ws();
        const char c = text[pos];
        if (c == 's') {
            ++pos;
            return n;
        }
        if (c == 'x' && pos + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
            ++pos;
            const unsigned long k = parse_uint();
            if (k < 1 || static_cast<int>(k) > n) fail("unknown variable x" + std::to_string(k));
            return static_cast<int>(k) - 1;
        }
        int idx = -1;
        if (c == 'x') idx = 0;
        else if (c == 'y') idx = 1;
        else if (c == 'z') idx = 2;
        if (idx < 0 || idx >= n) fail(std::string("unknown variable '") + c + "'");
        ++pos;
        return idx;
    }

    // factor ('*' factor)*
    void parse_term(Polynomial& out, bool negative) {
        Rational coeff = negative ? -1 : 1;
        Polynomial::Mono mono(static_cast<std::size_t>(n) + 1, 0);
        bool any = false;
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            const char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_number();
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                const int var = parse_variable();
                unsigned long e = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_uint();
                }
                mono[static_cast<std::size_t>(var)] += static_cast<std::uint32_t>(e);
            } else {
                fail("unexpected character");
            }
            any = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        out.add_term(std::move(mono), coeff);
    }

    Polynomial run() {
        Polynomial out(n);
        bool negative = false;
        skip_ws();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            negative = text[pos] == '-';
            ++pos;
        }
        if (eof()) fail("empty input");
        while (true) {
            parse_term(out, negative);
            if (eof()) break;
            const char c = peek();
            if (c == '+') negative = false;
            else if (c == '-') negative = true;
            else fail("expected '+' or '-'");
            ++pos;
        }
        return out;
    }
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, int n_spatial) {
    Parser p{text, 0, n_spatial};
    return p.run();
}

// ---------------------------------------------------------------------------

CompiledPoly2::CompiledPoly2(const Polynomial& p) {
    if (p.n_spatial() != 2)
        throw std::invalid_argument("CompiledPoly2 requires n_spatial == 2");
    if (p.max_scale_exponent() > 0)
        throw std::invalid_argument("CompiledPoly2 requires an s-free polynomial");
    for (const auto& [m, c] : p.terms()) {
        const std::size_t ex = m[0], ey = m[1];
        if (rows_.size() <= ex) rows_.resize(ex + 1);
        if (rows_[ex].size() <= ey) rows_[ex].resize(ey + 1, 0.0);
        rows_[ex][ey] += to_double(c);
    }
}

double CompiledPoly2::operator()(double x, double y) const {
    double acc = 0.0;
    for (std::size_t ex = rows_.size(); ex-- > 0;) {
        const auto& row = rows_[ex];
        double ry = 0.0;
        for (std::size_t ey = row.size(); ey-- > 0;) ry = ry * y + row[ey];
        acc = acc * x + ry;
    }
    return acc;
}

}  // namespace umbilic
