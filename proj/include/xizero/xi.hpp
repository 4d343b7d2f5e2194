// Evaluation of S-hat(z) = (1/8) Xi(z/2) by Fourier integral and by the
// alternating moment series, isolation of its positive real zeros, the
// reciprocal-square sum rule, the heat deformation Xi_lambda, and the heat
// operator e^{-lambda D^2} on polynomials.
#ifndef XIZERO_XI_HPP
#define XIZERO_XI_HPP

#include "xizero/moments.hpp"
#include "xizero/numerics.hpp"
#include "xizero/polynomial.hpp"
#include "xizero/precision.hpp"

#include <memory>
#include <vector>

namespace xizero::xi {

enum class Method { Auto, Series, Integral };

// Shared evaluator: caches the moment table (series route) and the frozen
// cosine-transform nodes (integral route) for one context.
class XiEvaluator {
  public:
    explicit XiEvaluator(const PrecisionContext& ctx, double z_max = 220.0);

    // S-hat at real z. Series for |z| <= 30, integral beyond, per the
    // crossover recorded in `series_crossover`.
    numerics::QuadratureResult eval(const Real& z, Method method = Method::Auto) const;
    // Complex argument inside the strip |Im z| <= 1.
    std::pair<Cplx, Real> eval_complex(const Cplx& z, Method method = Method::Auto) const;

    // Cross-checked evaluation: both routes must agree within combined
    // bounds, else MethodDisagreement.
    numerics::QuadratureResult eval_checked(const Real& z) const;

    const moments::MomentTable& table() const { return *table_; }
    const PrecisionContext& ctx() const { return ctx_; }
    static constexpr double series_crossover = 30.0;

  private:
    PrecisionContext ctx_;
    double z_max_;
    std::shared_ptr<moments::MomentTable> table_;
    mutable std::shared_ptr<numerics::CosineTransformPlan> plan_; // built lazily
    mutable std::vector<std::pair<Real, Real>> series_terms_;     // C_k with errors

    numerics::QuadratureResult eval_series(const Real& z) const;
    numerics::QuadratureResult eval_integral(const Real& z) const;
};

// Positive real zeros x_n <= X (default window cap 200).
std::vector<numerics::ZeroRecord> positive_zeros(const Real& X, const PrecisionContext& ctx);
std::vector<numerics::ZeroRecord> positive_zeros(const XiEvaluator& ev, const Real& X);

struct SumRuleReport {
    Real partial;      // sum_{n<=N} x_n^{-2}
    Real target;       // b_1 / (2 b_0)
    Real gap;          // target - partial, positive under the equivalence
    Real gap_err;
    std::vector<Real> zeros;
};
// Throws NegativeGap if the gap falls below its propagated error (bug signal).
SumRuleReport sum_rule_report(int N, const PrecisionContext& ctx);

// Xi_lambda(z) = int Phi38(t) e^{lambda t^2} e^{izt} dt (real z here).
numerics::QuadratureResult xi_heat(const Real& z, const Real& lambda, const PrecisionContext& ctx);

// Grid sign-change count of Xi_lambda on [lo, hi].
int heat_zero_count(const Real& lo, const Real& hi, const Real& lambda, const Real& step,
                    const PrecisionContext& ctx);

// e^{-lambda D^2} p = sum_n (-lambda)^n / n! p^{(2n)}; exact on rationals.
RatPoly heat_poly(const RatPoly& p, const Rational& lambda);

// Hermite polynomials H~_n(z) = (-1)^n e^{z^2/2} d^n/dz^n e^{-z^2/2}
// (probabilists' normalization), used by the heat identities.
RatPoly hermite_he(int n);

} // namespace xizero::xi

#endif
