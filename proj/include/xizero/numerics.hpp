// Tail-bounded series summation, adaptive quadrature on finite and
// semi-infinite intervals, and real-zero isolation. These three primitives
// carry explicit error bounds and are the substrate for every evaluator in
// the library.
#ifndef XIZERO_NUMERICS_HPP
#define XIZERO_NUMERICS_HPP

#include "xizero/precision.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace xizero::numerics {

struct QuadratureResult {
    Real value;
    Real error_bound;   // rigorous bound: tolerance test is err <= rel*|value| + abs
    long evaluations = 0;
};

struct ZeroRecord {
    Real location;
    Real bracket_width;
    Real derivative_magnitude;
    bool simple = false;
};

using RealFn = std::function<Real(const Real&)>;
using IndexFn = std::function<Real(long)>;

// Sum term(1) + term(2) + ... until tail_bound(N) <= rel*|partial| + abs.
// tail_bound(N) must bound |sum_{n>N} term(n)| and be eventually decreasing.
QuadratureResult sum_with_tail(const IndexFn& term, const IndexFn& tail_bound,
                               const PrecisionContext& ctx, long hard_cap = 1000000);

// Adaptive panel quadrature on [a,b]; pass b_infinite=true for [a,infinity),
// in which case tail_bound(T) must bound |int_T^inf f| and the integral is
// truncated where the tail clears the tolerance.
QuadratureResult integrate(const RealFn& f, const Real& a, const Real& b,
                           const PrecisionContext& ctx);
QuadratureResult integrate_semi_infinite(const RealFn& f, const Real& a,
                                         const RealFn& tail_bound,
                                         const PrecisionContext& ctx);

// Scan [lo,hi] at scan_step, bracket every sign change, refine each bracket by
// bisection + secant polishing down to abs_tol, and classify simplicity by a
// centered finite-difference derivative.
std::vector<ZeroRecord> isolate_zeros(const RealFn& f, const Real& lo, const Real& hi,
                                      const Real& scan_step, const PrecisionContext& ctx);

// --- fixed sampling plans -------------------------------------------------
//
// A converged tanh-sinh panelization of int_a^b w(t) dt, frozen so that many
// oscillatory overlays int w(t) cos(z t + phase) dt reuse the same nodes.
// Error per evaluation = |level L sum - level L-1 sum| + frozen tail bound.
class CosineTransformPlan {
  public:
    // Builds nodes for weight w on [0,T]; panel width is chosen so the plan
    // stays accurate for overlay frequencies up to z_max.
    CosineTransformPlan(const RealFn& w, const Real& T, const Real& z_max,
                        const Real& tail_bound_at_T, const PrecisionContext& ctx);

    // int_0^T w(t) cos(z t) dt with error bound.
    QuadratureResult eval(const Real& z) const;
    // Same with the overlay exp(y t) sin/cos split for complex frequency z+iy.
    QuadratureResult eval_exp(const Real& z, const Real& y, bool imaginary_part) const;

    long node_count() const { return static_cast<long>(t_.size()); }

  private:
    std::vector<Real> t_;       // nodes
    std::vector<Real> cw_;      // weight(t) * quadrature weight, finest level
    std::vector<char> coarse_;  // node also belongs to the next-coarser level
    Real tail_;
    unsigned bits_;
};

} // namespace xizero::numerics

#endif
