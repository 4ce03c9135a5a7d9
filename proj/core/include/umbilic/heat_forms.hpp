#pragma once

#include <umbilic/polynomial.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace umbilic {

// Catalog of the stable space-scale normal forms, every one of which is
// supposed to solve the heat equation exactly (F7 as printed does not; the
// verifier reports its residual instead of failing).
enum class FormId { F1, F2, F3, F4, F5, F6, F7, F8, F9 };
enum class FormKind { HStable, ISStable };

std::string form_name(FormId id);
FormKind form_kind(FormId id);

struct constraint_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A parameterized catalog entry:
//   F1/F5 : sign * (sum x_i^2 + 2n s)
//   F2    : sum a_i x_i^2                    (a_i != 0, sum a_i = 0)
//   F3    : x1^3 + 6 s x1 + Q(x2..xn, s)
//   F4    : x1^3 - 6 s x1 - 6 x1 x2^2 + Q(x2..xn, s)
//   F6    : sum a_i x_i^2 + 2 (sum a_i) s    (a_i != 0, sum a_i != 0)
//   F7    : a1 x1^2 + a2 x2^2 +- (s^2 + s r^2 / 2 + q r^4), r^2 = x1^2 + x2^2
//           (n = 2, a_i != 0, a1 + a2 = 0; q defaults to the printed 1/16)
//   F8    : x1^3 + 6 s x1 + sum_{i>=2} a_i x_i^2 + 2 (sum_{i>=2} a_i) s
//   F9    : x1^3 - 6 s x1 - 6 x1 x2^2 + sum_{i>=2} a_i x_i^2 + 2 (sum_{i>=2} a_i) s
// The quadratic tails Q of F3/F4 live over x2..xn and must themselves be
// quadratic catalog entries (F1/F2/F5/F6); build rejects anything else.
struct NormalForm {
    FormId id = FormId::F1;
    int n = 1;  // spatial dimension of the full form
    std::vector<Rational> coeffs;  // a_i (F2/F6/F7: a_1..a_n; F8/F9: a_2..a_n)
    int sign = +1;                 // F1/F5 coupled sign, F7 sign of the scale block
    Rational quartic_coeff = rat(1, 16);         // F7 only
    std::shared_ptr<NormalForm> tail;            // F3/F4 only, dimension n-1
};

// Exact polynomial realization in n spatial variables plus s. Throws
// constraint_error naming the violated constraint.
Polynomial build(const NormalForm& form);

struct HeatCheck {
    Polynomial residual;
    bool is_solution;
};

// residual = heat_residual(build(form)); is_solution iff it is exactly zero.
HeatCheck verify_heat(const NormalForm& form);

struct CatalogTemplate {
    FormId id;
    FormKind kind;
    std::string formula;      // schematic, in x1..xn / s notation
    std::string constraints;  // human-readable parameter constraints
    int min_n;                // smallest admissible spatial dimension
    bool exact_n2 = false;    // F7: admissible only at n == 2
};

// All templates applicable at spatial dimension n (n >= 1, else throws).
std::vector<CatalogTemplate> list_catalog(int n);

namespace presets {

// F7 exactly as printed (quartic coefficient 1/16). Not a heat solution;
// verify_heat reports the residual -+ (x1^2 + x2^2)/2.
NormalForm f7_printed(int sign = +1);
// F7 with the quartic coefficient 1/32 that closes the heat equation.
NormalForm f7_corrected(int sign = +1);

}  // namespace presets

}  // namespace umbilic
