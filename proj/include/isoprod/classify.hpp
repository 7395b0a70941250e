#pragma once

#include <map>
#include <optional>
#include <string>

#include "isoprod/geometry.hpp"
#include "isoprod/models.hpp"

namespace isoprod {

/// A classification verdict that contradicts the constant-curvature
/// taxonomy. This signals a bug or a tolerance failure and is never
/// silently ignored.
class AnomalyError : public Error {
public:
    using Error::Error;
};

enum class CurvatureQuantity { K, H };

std::string_view to_string(CurvatureQuantity q);

struct GridSpec {
    Box2 box;
    int nx = 0, ny = 0;
};

/// 21x21 over [0.5, 5]^2; separates the exact-zero families from slowly
/// varying ones at unit scale.
GridSpec default_grid();

inline constexpr double kDefaultTol = 1e-8;

struct ConstancyVerdict {
    CurvatureQuantity quantity = CurvatureQuantity::K;
    bool is_constant = false;
    std::optional<double> value;  // grid mean when constant
    double spread = 0.0;          // max - min over the grid
    GridSpec grid;
};

/// Samples the Monge curvature over the grid; constant iff
/// spread <= tol * (1 + |mean|).
ConstancyVerdict constancy_test(const Expr& h, CurvatureQuantity quantity,
                                const GridSpec& grid, double tol);

enum class CaseLabel {
    K_A1_factor_constant,
    K_A2_transcendental,
    K_A3_cobb_douglas,
    K_B_bilinear,
    H_A_quadratic_times_constant,
    H_B_minimal_bilinear,
    none,
};

std::string_view to_string(CaseLabel label);
std::string_view short_case_name(CaseLabel label);  // e.g. "K_A2"

struct ClassificationResult {
    CaseLabel label = CaseLabel::none;
    std::map<std::string, double> params;
    bool economically_degenerate = false;
};

/// Constant-K taxonomy of h = f(x) g(y):
///   K_A1  one factor constant
///   K_A2  K0 = 0, separation constant lambda = 1: h = A exp(c1 x + c2 y)
///   K_A3  K0 = 0, lambda != 1: power factors, exponents (1/(1-l), -l/(1-l))
///   K_B   K0 < 0: affine factors, canonical h = sqrt(-K0) x y
///   none  K not constant
/// A constant K0 > 0, or a constant K0 that fails the case checks, raises
/// AnomalyError.
ClassificationResult classify_constant_K(const Expr& f, const Expr& g,
                                         const GridSpec& grid, double tol);
ClassificationResult classify_constant_K(const Expr& f, const Expr& g, double tol = kDefaultTol);

/// Constant-H taxonomy of h = f(x) g(y):
///   H_A   one factor constant, the other quadratic; H0 = 2 q g0 for
///         quadratic coefficient q
///   H_B   both non-constant: forces H0 = 0 and affine factors, h = A x y
///   none  H not constant
ClassificationResult classify_constant_H(const Expr& f, const Expr& g,
                                         const GridSpec& grid, double tol);
ClassificationResult classify_constant_H(const Expr& f, const Expr& g, double tol = kDefaultTol);

/// Canonical representative of a case; classify(synthesize(L, p)) round-trips
/// to (L, p) up to the translation/scaling normalizations.
ProductionModel synthesize_case(CaseLabel label, const std::map<std::string, double>& params);

/// Spillman-Mitscherlich surfaces have neither constant K nor constant H;
/// true iff both constancy tests reject.
bool check_corollary_34(double A, double a, double b, const GridSpec& grid, double tol);
bool check_corollary_34(double A, double a, double b);

enum class KZeroBranch { A1, A2 };

struct Corollary35Result {
    std::optional<KZeroBranch> k_zero_case;
    bool h_zero = false;
};

/// Transcendental surface h = A x^a1 e^{b1 x} y^a2 e^{b2 y}:
///   K == 0 iff (A1) a1 = a2 = 0 with b1, b2 != 0, or
///             (A2) a1 + a2 = 1, a1, a2 != 0, b1 = b2 = 0;
///   H == 0 iff (B) a1 = a2 = 1, b1 = b2 = 0.
/// The parameter predicates are cross-checked against the constancy tests;
/// a mismatch raises AnomalyError.
Corollary35Result check_corollary_35(double A, double a1, double b1, double a2, double b2,
                                     const GridSpec& grid, double tol);
Corollary35Result check_corollary_35(double A, double a1, double b1, double a2, double b2);

}  // namespace isoprod
