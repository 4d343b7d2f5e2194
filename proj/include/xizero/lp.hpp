// Laguerre-Polya polynomial toolkit: Jensen/Appell polynomials, multiplier
// sequence and Turan tests, the Hermite-Poulain and Laguerre transforms,
// the L_n quadratic functionals, Jensen disks, shifted sums, and windowed
// growth estimators with canonical-product evaluation.
//
// Polynomials are kept with exact rational coefficients so the sign
// predicates (all of which are strict) are decided exactly; floating
// arithmetic appears only in the complex root finder and growth estimates.
#ifndef XIZERO_LP_HPP
#define XIZERO_LP_HPP

#include "xizero/polynomial.hpp"
#include "xizero/precision.hpp"

#include <optional>
#include <vector>

namespace xizero::lp {

// TaylorSeq: gamma_n = f^(n)(0), finite prefix.
using TaylorSeq = std::vector<Rational>;

// J_{n,m}(f; z) = sum_k binom(n,k) gamma_{k+m} z^k; InsufficientData if the
// sequence is too short.
RatPoly jensen_poly(const TaylorSeq& gamma, int n, int m = 0);
// Appell variant: coefficient-reversed, z^n J_n(f; 1/z).
RatPoly appell_poly(const TaylorSeq& gamma, int n, int m = 0);

// Distinct real roots of p in (a, b].
int sturm_count(const RatPoly& p, const Rational& a, const Rational& b);

struct MsTestResult {
    bool pass = false;
    std::optional<int> first_failure;
};
// Jensen polynomials J_1..J_N all real-rooted?
MsTestResult multiplier_sequence_test(const TaylorSeq& gamma, int N);

// gamma_n^2 - gamma_{n-1} gamma_{n+1} for n = 1 .. len-2.
std::vector<Rational> turan_check(const TaylorSeq& gamma);

// sum_k a_k p^{(k)}; requires the multiplier polynomial a to be real-rooted
// (NonRealMultiplier otherwise). Real-root counts never decrease under this.
RatPoly hermite_poulain(const RatPoly& a, const RatPoly& p);

// Q(0)c_0 + Q(1)c_1 z + ... + Q(d)c_d z^d; requires Q real-rooted with no
// zero in [0, d].
RatPoly laguerre_transform(const RatPoly& Q, const std::vector<Rational>& c, int d);

// L_n(f)(t) = sum_{k=0}^{2n} (-1)^{k+n}/(2n)! binom(2n,k) f^(k)(t) f^(2n-k)(t);
// L_0 = f(t)^2.
Rational l_functional(const RatPoly& p, int n, const Rational& t);

// Coefficient of y^{2n} in |p(x + i y)|^2 for fixed rational x, computed by
// exact expansion; equals l_functional(p, n, x).
Rational lambda_functional(const RatPoly& p, int n, const Rational& x);

struct JensenDisk {
    Real center;
    Real radius;
};
struct JensenDiskReport {
    std::vector<JensenDisk> disks;             // one per conjugate root pair
    std::vector<Cplx> nonreal_critical_points; // upper half-plane reps
    bool contained = false;                    // every critical point in some disk
    Real worst_slack;                          // max over points of dist - radius
};
// Disks over the nonreal zeros of p; verifies the nonreal critical points of
// p lie in their union (within abs_tol slack).
JensenDiskReport jensen_disks(const RatPoly& p, const PrecisionContext& ctx);

// f_lambda(z) = f(z + i lambda) + f(z - i lambda), which is again real:
// 2 sum_m (-1)^m lambda^{2m}/(2m)! f^{(2m)}(z).
RatPoly shifted_sum(const RatPoly& p, const Rational& lambda);

struct GrowthEstimates {
    Real order_est;
    Real type_est;
    std::vector<Real> kappa_est; // one per requested radius-list window point
    int window_lo = 0, window_hi = 0;
};
// Windowed estimators for order/type from Taylor coefficients and the
// convergence exponent from zero moduli. Estimates, not limits: the order
// comes from a two-parameter fit of log 1/|c_n| = (n log n)/rho + beta n on
// the window, which cancels the linear term that plain ratios choke on.
GrowthEstimates growth_estimates(const std::vector<Real>& coeffs, int N,
                                 const std::vector<Real>& zero_moduli = {});

// Weierstrass primary factor E(z,p) and finite canonical products.
Cplx primary_factor(const Cplx& z, int p);
Cplx canonical_product(const std::vector<Cplx>& zeros, int genus, const Cplx& z);

} // namespace xizero::lp

#endif
