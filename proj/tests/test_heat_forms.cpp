#include "doctest.h"

#include <umbilic/heat_forms.hpp>

#include <random>
#include <string>

using namespace umbilic;

namespace {

Rational nonzero_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 12);
    int n = 0;
    while (n == 0) n = num(rng);
    return rat(n, den(rng));
}

std::shared_ptr<NormalForm> random_quadratic_tail(std::mt19937_64& rng, int n_tail) {
    auto tail = std::make_shared<NormalForm>();
    tail->n = n_tail;
    std::uniform_int_distribution<int> pick(0, n_tail >= 2 ? 2 : 1);
    switch (pick(rng)) {
        case 0:
            tail->id = FormId::F1;
            tail->sign = rng() % 2 ? 1 : -1;
            break;
        case 1: {
            tail->id = FormId::F6;
            Rational sum = 0;
            do {
                tail->coeffs.clear();
                sum = 0;
                for (int i = 0; i < n_tail; ++i) {
                    tail->coeffs.push_back(nonzero_rat(rng));
                    sum += tail->coeffs.back();
                }
            } while (sum == 0);
            break;
        }
        default: {
            tail->id = FormId::F2;
            Rational sum = 0;
            tail->coeffs.clear();
            for (int i = 0; i + 1 < n_tail; ++i) {
                tail->coeffs.push_back(nonzero_rat(rng));
                sum += tail->coeffs.back();
            }
            if (sum == 0) {
                tail->coeffs[0] += 1;
                sum += 1;
            }
            tail->coeffs.push_back(Rational(-sum));
            break;
        }
    }
    return tail;
}

// A random valid parameter draw at dimension n.
NormalForm random_form(std::mt19937_64& rng, FormId id, int n) {
    NormalForm f;
    f.id = id;
    f.n = n;
    f.sign = rng() % 2 ? 1 : -1;
    switch (id) {
        case FormId::F1:
        case FormId::F5:
            break;
        case FormId::F2: {
            Rational sum = 0;
            for (int i = 0; i + 1 < n; ++i) {
                f.coeffs.push_back(nonzero_rat(rng));
                sum += f.coeffs.back();
            }
            if (sum == 0) {
                f.coeffs[0] += 1;
                sum += 1;
            }
            f.coeffs.push_back(Rational(-sum));
            break;
        }
        case FormId::F6: {
            Rational sum = 0;
            do {
                f.coeffs.clear();
                sum = 0;
                for (int i = 0; i < n; ++i) {
                    f.coeffs.push_back(nonzero_rat(rng));
                    sum += f.coeffs.back();
                }
            } while (sum == 0);
            break;
        }
        case FormId::F3:
        case FormId::F4:
            if (n >= 2) f.tail = random_quadratic_tail(rng, n - 1);
            break;
        case FormId::F7: {
            const Rational a = nonzero_rat(rng);
            f.coeffs = {a, Rational(-a)};
            f.quartic_coeff = rat(1, 32);
            break;
        }
        case FormId::F8:
        case FormId::F9: {
            Rational sum = 0;
            do {
                f.coeffs.clear();
                sum = 0;
                for (int i = 0; i < n - 1; ++i) {
                    f.coeffs.push_back(nonzero_rat(rng));
                    sum += f.coeffs.back();
                }
            } while (sum == 0);
            break;
        }
    }
    return f;
}

}  // namespace

TEST_CASE("catalog construction") {
    NormalForm f1{FormId::F1, 2};
    CHECK(build(f1) == Polynomial::parse("x^2 + y^2 + 4*s", 2));

    NormalForm f1neg{FormId::F1, 2, {}, -1};
    CHECK(build(f1neg) == Polynomial::parse("-x^2 - y^2 - 4*s", 2));

    NormalForm f2{FormId::F2, 2, {rat(1), rat(-1)}};
    CHECK(build(f2) == Polynomial::parse("x^2 - y^2", 2));

    NormalForm f6{FormId::F6, 2, {rat(1), rat(2)}};
    CHECK(build(f6) == Polynomial::parse("x^2 + 2*y^2 + 6*s", 2));

    NormalForm f3{FormId::F3, 1};
    CHECK(build(f3) == Polynomial::parse("x^3 + 6*s*x", 1));

    NormalForm f3t{FormId::F3, 2};
    f3t.tail = std::make_shared<NormalForm>(NormalForm{FormId::F1, 1});
    CHECK(build(f3t) == Polynomial::parse("x^3 + 6*s*x + y^2 + 2*s", 2));

    NormalForm f4{FormId::F4, 2};
    f4.tail = std::make_shared<NormalForm>(NormalForm{FormId::F6, 1, {rat(2)}});
    CHECK(build(f4) ==
          Polynomial::parse("x^3 - 6*s*x - 6*x*y^2 + 2*y^2 + 4*s", 2));

    NormalForm f8{FormId::F8, 3, {rat(1), rat(2)}};
    CHECK(build(f8) ==
          Polynomial::parse("x^3 + 6*s*x + y^2 + 2*z^2 + 6*s", 3));
}

TEST_CASE("constraint diagnostics name the violation") {
    NormalForm bad_sum{FormId::F2, 2, {rat(1), rat(-2)}};
    CHECK_THROWS_WITH_AS((void)build(bad_sum), doctest::Contains("sum a_i"),
                         constraint_error);

    NormalForm zero_coeff{FormId::F6, 2, {rat(1), rat(0)}};
    CHECK_THROWS_WITH_AS((void)build(zero_coeff), doctest::Contains("a_2"),
                         constraint_error);

    NormalForm f6zero{FormId::F6, 2, {rat(1), rat(-1)}};
    CHECK_THROWS_AS((void)build(f6zero), constraint_error);

    NormalForm f7n3{FormId::F7, 3, {rat(1), rat(-1)}};
    CHECK_THROWS_WITH_AS((void)build(f7n3), doctest::Contains("n = 2"),
                         constraint_error);

    NormalForm f4n1{FormId::F4, 1};
    CHECK_THROWS_AS((void)build(f4n1), constraint_error);

    NormalForm f8n1{FormId::F8, 1};  // empty tail sum
    CHECK_THROWS_AS((void)build(f8n1), constraint_error);

    NormalForm bad_tail{FormId::F3, 2};
    bad_tail.tail = std::make_shared<NormalForm>(NormalForm{FormId::F3, 1});
    CHECK_THROWS_WITH_AS((void)build(bad_tail), doctest::Contains("quadratic"),
                         constraint_error);

    NormalForm missing_tail{FormId::F3, 3};
    CHECK_THROWS_WITH_AS((void)build(missing_tail), doctest::Contains("tail"),
                         constraint_error);

    NormalForm wrong_dim_tail{FormId::F3, 3};
    wrong_dim_tail.tail = std::make_shared<NormalForm>(NormalForm{FormId::F1, 1});
    CHECK_THROWS_AS((void)build(wrong_dim_tail), constraint_error);
}

TEST_CASE("heat verification of the catalog") {
    CHECK(verify_heat({FormId::F3, 1}).is_solution);

    SUBCASE("printed F7 misses the heat equation by -+ r^2/2") {
        for (const int sign : {+1, -1}) {
            const auto check = verify_heat(presets::f7_printed(sign));
            CHECK_FALSE(check.is_solution);
            const Polynomial expected =
                rat(-sign, 2) * Polynomial::parse("x^2 + y^2", 2);
            CHECK(check.residual == expected);
        }
    }

    SUBCASE("quartic coefficient 1/32 closes the equation") {
        CHECK(verify_heat(presets::f7_corrected(+1)).is_solution);
        CHECK(verify_heat(presets::f7_corrected(-1)).is_solution);
    }
}

TEST_CASE("random parameter draws all verify exactly") {
    std::mt19937_64 rng(2026);
    const FormId solved[] = {FormId::F1, FormId::F2, FormId::F3, FormId::F4,
                             FormId::F5, FormId::F6, FormId::F7, FormId::F8,
                             FormId::F9};
    for (const FormId id : solved) {
        for (int draw = 0; draw < 100; ++draw) {
            int n = 1 + static_cast<int>(rng() % 4);
            if (id == FormId::F7) n = 2;
            if ((id == FormId::F2 || id == FormId::F4 || id == FormId::F8 ||
                 id == FormId::F9) &&
                n < 2)
                n = 2;
            const auto check = verify_heat(random_form(rng, id, n));
            CHECK(check.is_solution);
        }
    }
}

TEST_CASE("sign couplings are forced by the heat equation") {
    // Anti-coupled F1 signs leave the constant residual -+ 4n.
    for (const int n : {1, 2, 3}) {
        for (const int sign : {+1, -1}) {
            Polynomial p(n);
            for (int i = 0; i < n; ++i) {
                const Polynomial xi = Polynomial::variable(n, i);
                p += Rational(sign) * xi * xi;
            }
            p += Rational(-sign) * Rational(2 * n) * Polynomial::scale_variable(n);
            CHECK(p.heat_residual() == Polynomial::constant(n, Rational(-4 * n * sign)));
        }
    }

    // Flipping only the x1 x2^2 sign of the F4 shape breaks the identity.
    CHECK_FALSE(Polynomial::parse("x^3 - 6*s*x + 6*x*y^2 + y^2 + 2*s", 2)
                    .heat_residual()
                    .is_zero());
    CHECK(Polynomial::parse("x^3 - 6*s*x - 6*x*y^2 + y^2 + 2*s", 2)
              .heat_residual()
              .is_zero());
}

TEST_CASE("catalog listing tracks applicability") {
    auto ids = [](const std::vector<CatalogTemplate>& ts) {
        std::string out;
        for (const auto& t : ts) out += form_name(t.id) + " ";
        return out;
    };
    CHECK(ids(list_catalog(1)) == "F1 F3 F5 F6 ");
    CHECK(ids(list_catalog(2)) == "F1 F2 F3 F4 F5 F6 F7 F8 F9 ");
    CHECK(ids(list_catalog(3)) == "F1 F2 F3 F4 F5 F6 F8 F9 ");  // F7 is n = 2 only
    CHECK_THROWS_AS((void)list_catalog(0), std::invalid_argument);

    for (const auto& t : list_catalog(2)) {
        CHECK(!t.formula.empty());
        CHECK(!t.constraints.empty());
        CHECK(form_kind(t.id) == t.kind);
    }
}
