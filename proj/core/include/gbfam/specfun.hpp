#pragma once

// Special-function kernels behind every closed form in the library:
// beta/gamma logarithms, regularized incomplete beta and gamma, Gauss
// hypergeometric 2F1 on the negative real axis and Appell F1.
//
// All functions are pure and safe to call concurrently.

namespace gbfam::specfun {

struct SeriesControl {
    double rel_tol = 1e-12;
    int max_terms = 100000;

    /// Throws DomainError unless rel_tol > 0 and max_terms >= 1.
    void validate() const;
};

/// log|Gamma(x)|; thread-safe replacement for std::lgamma.
double log_abs_gamma(double x, int* sign = nullptr);

/// ln B(p, q) for p, q > 0.
double ln_beta(double p, double q);

/// Regularized incomplete beta I(y; p, q), y in [0, 1].
/// Lentz continued fraction, evaluated on the side of the symmetry split
/// y = (p+1)/(p+q+2) where it converges fastest.
double reg_inc_beta(double y, double p, double q);

struct BetaRoot {
    double y;              ///< root of I(y; p, q) = u
    double one_minus_y;    ///< 1 - y, computed without cancellation
};

/// Inverse of reg_inc_beta in y. Safeguarded Newton inside a shrinking
/// bracket; the result satisfies |I(y) - u| <= 1e-12.
double inv_reg_inc_beta(double u, double p, double q);

/// Same root as inv_reg_inc_beta but also returns 1 - y at full relative
/// precision, which callers need when the root sits close to 1.
BetaRoot inv_reg_inc_beta_split(double u, double p, double q);

/// Regularized lower incomplete gamma P(a, x).
double reg_inc_gamma_lower(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly.
double reg_inc_gamma_upper(double a, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0.
///
/// The Pfaff transformation maps z to w = z/(z-1) in [0, 1) where the
/// power series converges. For z < -3 the 1/z connection formula is used
/// instead unless b - a is (numerically) an integer.
/// Throws NumericError carrying the partial sum if max_terms is exhausted.
double gauss_2f1(double a, double b, double c, double z, const SeriesControl& ctl = {});

/// Appell F1(a; b1, b2; c; x, y) from the Euler integral
///   Gamma(c)/(Gamma(a)Gamma(c-a)) Int_0^1 t^{a-1} (1-t)^{c-a-1} (1-xt)^{-b1} (1-yt)^{-b2} dt,
/// which requires a > 0, c - a > 0, 0 <= x < 1 and y < 1.
double appell_f1(double a, double b1, double b2, double c, double x, double y,
                 const SeriesControl& ctl = {});

}  // namespace gbfam::specfun
