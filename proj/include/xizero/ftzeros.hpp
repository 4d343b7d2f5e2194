// Zeros of finite Fourier transforms f_A(z) = int_0^A phi(t) e^{izt} dt and
// of the sine-weighted family W_{A,alpha}: exceptional step-function
// detection, ambient-interval zero census, rectangle winding counts below the
// real axis, Hermite-Biehler/Chebotarev data, and the exp(-t^alpha) cosine
// transforms with their asymptotic law.
#ifndef XIZERO_FTZEROS_HPP
#define XIZERO_FTZEROS_HPP

#include "xizero/numerics.hpp"
#include "xizero/polynomial.hpp"
#include "xizero/precision.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace xizero::ftz {

// Increasing piecewise-constant density on [0, A]. Breakpoints are exact
// rationals; a breakpoint standing in for an irrational number carries a
// proxy flag, which is what the exceptionality dichotomy keys on.
struct StepFunction {
    std::vector<Rational> breakpoints;   // 0 = t_0 < t_1 < ... < t_{n+1} = A
    std::vector<Real> values;            // c_0 .. c_n on the open gaps
    std::vector<bool> irrational_proxy;  // one flag per interior breakpoint

    Rational A() const { return breakpoints.back(); }
    void validate() const;
    bool strictly_increasing() const;

    // Fixture format: header "A=<num>/<den>", then one line per piece
    // "t_num/t_den c" giving the left endpoint of the piece; a trailing '~'
    // on the rational marks an irrational proxy.
    static StepFunction parse(std::istream& in);
    void serialize(std::ostream& out) const;
};

struct SampledDensity {
    std::function<Real(const Real&)> evaluator;
    Real A;
    bool monotone_increasing = false;
    Real integrable_bound;  // bound on int_0^A |phi|
    std::string name;
};

using Density = std::variant<StepFunction, SampledDensity>;

// Registered sampled densities addressable from fixture files and the CLI
// ("linear", "exp", "sqrt", "quadratic", "log1p").
SampledDensity lookup_density(const std::string& name);

// f_A(z) = int_0^A phi(t) e^{izt} dt; closed form for steps, quadrature for
// sampled densities. |Im z| <= 8 envelope guard.
Cplx ft_eval(const Density& phi, const Cplx& z, const PrecisionContext& ctx);

// W_{A,alpha}(z) = int_0^A phi(t) sin(zt + alpha) dt (real z).
Real w_eval(const Density& phi, const Real& alpha, const Real& z, const PrecisionContext& ctx);

// True iff no breakpoint is an irrational proxy (the arithmetic dichotomy of
// increasing step densities; proxies make the intent decidable).
bool exceptional_test(const StepFunction& phi);
// The common denominator q of the scaled breakpoints t_j / A; the real zeros
// of f_A for exceptional phi sit at the multiples of 2 pi q / A.
Integer exceptional_q(const StepFunction& phi);

struct AmbientInterval {
    int p;      // interval index: ((p-1)pi - alpha)/A .. (p pi - alpha)/A
    Real lo, hi;
    int zeros_found = 0;
    bool simple = true;
    Real zero;  // location when zeros_found == 1
};
struct AmbientReport {
    std::vector<AmbientInterval> intervals; // p = 2 .. K+1
    bool endpoint_signs_ok = false;         // (-1)^k W((k pi - alpha)/A) < 0, k >= 1
    bool zero_at_origin_ok = true;          // alpha = 0: simple zero at 0
    bool pass = false;
};
// Verifies the one-simple-zero-per-interval structure for positive increasing
// phi; throws StructureViolation on failure when strict.
AmbientReport ambient_report(const Density& phi, const Real& alpha, int K,
                             const PrecisionContext& ctx, bool strict = false);

struct Rectangle {
    Real x_lo, x_hi, y_lo, y_hi; // y_hi < 0: strictly below the real axis
};
// Winding number of f_A around the rectangle boundary (argument principle),
// with adaptive subdivision keeping every argument step under pi/2.
int half_plane_count(const Density& phi, const Rectangle& rect, const PrecisionContext& ctx);

struct HermiteBiehlerResult {
    bool interlaced = false;
    bool wronskian_sign_ok = false; // Q P' - P Q' keeps one strict sign
    int half_plane = 0;             // +1: zeros of P + iQ in the lower half-plane,
                                    // -1: upper, 0: mixed/not applicable
};
// Reality+simplicity by Sturm, interlacing by isolated-root merge, Wronskian
// sign between consecutive roots. Throws CommonZero when gcd(P,Q) != const.
HermiteBiehlerResult hermite_biehler_check(const RatPoly& P, const RatPoly& Q);

// Phi_alpha(z) = int_0^inf exp(-t^alpha) cos(zt) dt, alpha > 1.
numerics::QuadratureResult phi_alpha_eval(const Real& alpha, const Real& z,
                                          const PrecisionContext& ctx);
// x^{alpha+1} Phi_alpha(x) - Gamma(alpha+1) sin(pi alpha / 2) for each x.
std::vector<Real> asymptotic_check(const Real& alpha, const std::vector<Real>& xs,
                                   const PrecisionContext& ctx);

struct BernsteinSums {
    std::vector<std::pair<Real, Real>> partials; // (R, sum_{r_n <= R} cos(theta_n)/r_n)
    Real logderiv;                               // -Re f'(0)/f(0) of the specimen
};
// Conditionally-convergent zero sums of the built-in boundary specimen
// f(z) = (e^{iz} - 1)(e^{-iz} + i)/(iz), enumerated in the modulus order the
// theory prescribes.
BernsteinSums bernstein_zero_sum(const std::vector<Real>& R_list, const PrecisionContext& ctx);

} // namespace xizero::ftz

#endif
