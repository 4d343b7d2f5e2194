// The Riemann Xi kernel Phi(t) = sum_n (2 pi^2 n^4 e^{9t} - 3 pi n^2 e^{5t})
// exp(-pi n^2 e^{4t}), its first two derivatives with certified truncation
// tails, and the inequality ledger that underpins the Turan machinery.
//
// Every term can be written e^t e^{-y} y (2y - 3) with y = pi n^2 e^{4t};
// derivatives in t keep that shape with the cubic/quartic polynomials in y
// spelled out below, which is what makes the explicit tail bounds possible.
#ifndef XIZERO_PHI_HPP
#define XIZERO_PHI_HPP

#include "xizero/numerics.hpp"
#include "xizero/precision.hpp"

#include <string>
#include <vector>

namespace xizero::phi {

struct PhiEvaluation {
    Real t;
    int order = 0; // 0, 1, 2
    Real value;
    long terms_used = 0;
    Real tail_bound; // bound on the dropped tail plus summation rounding
};

// Sum over n <= N of the order-th derivative of the n-th term, N chosen so
// the re-anchored comparison tail meets the context tolerance.
PhiEvaluation phi_eval(const Real& t, int order, const PrecisionContext& ctx);

// Same series started at n = 2 (the remainder the ledger calls Psi).
PhiEvaluation psi_eval(const Real& t, int order, const PrecisionContext& ctx);

// The sibling kernel with e^{2t} decay used by the heat flow; equals
// 2 * phi(t/2) together with the matching derivative rescalings.
PhiEvaluation phi38_eval(const Real& t, int order, const PrecisionContext& ctx);

// Escalate precision until the sign of phi_eval(t, order) is certified
// (|value| > error bound); needed on the negative axis where the series
// cancels catastrophically.
PhiEvaluation phi_eval_certified_sign(const Real& t, int order, const PrecisionContext& ctx);

// Leading single-term closed forms (n = 1), shared with the ledger:
//   a(t)  =  e^t e^{-y} y (2y - 3)
//   a'(t) = -e^t e^{-y} y (15 - 30 y + 8 y^2)
//   a''(t)=  e^t e^{-y} y (-75 + 330 y - 224 y^2 + 32 y^3)
Real a_term(const Real& t);
Real a_term_d1(const Real& t);
Real a_term_d2(const Real& t);

// Envelope constant C with Phi(t) <= C e^{9t} exp(-pi e^{4t}) for t >= 0.
Real phi_envelope_constant();

struct LedgerEntry {
    std::string name;
    Real margin;     // LHS - RHS of the strict inequality, > 0 expected
    Real error;      // propagated numeric error on the margin
    bool pass = false;
};

struct LedgerPoint {
    Real t;
    std::vector<LedgerEntry> entries;
    bool all_pass = false;
};

struct LedgerReport {
    std::vector<LedgerPoint> points;
    bool all_pass = false;
};

// Evaluates the nine inequalities (the six tail lemmas, the log-concavity
// determinant, the final 114 E(y) bound, and the finite-difference form of
// the derivative inequality for Phi'/(t Phi)) at each grid point t >= 0.
// Throws InequalityViolated when strict=true and a margin fails to clear its
// error bound.
LedgerReport phi_ledger(const std::vector<Real>& grid, const PrecisionContext& ctx,
                        bool strict = false);

} // namespace xizero::phi

#endif
