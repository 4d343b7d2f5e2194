// Moments b_k of the Phi kernel, the normalized coefficients C_k = b_k/(2k)!,
// and the determinant criteria (Turan differences, Toeplitz minors D(n,r),
// Newton power sums, Hankel forms, Borchardt-Hermite) whose uniform
// positivity is the determinant reformulation of RH.
#ifndef XIZERO_MOMENTS_HPP
#define XIZERO_MOMENTS_HPP

#include "xizero/numerics.hpp"
#include "xizero/polynomial.hpp"
#include "xizero/precision.hpp"

#include <map>
#include <optional>
#include <vector>

namespace xizero::moments {

struct MomentEntry {
    Real value;
    Real error;
};

// b_k = int_0^inf t^{2k} Phi(t) dt, with a certified truncation tail.
MomentEntry b_moment(int k, const PrecisionContext& ctx);

// Cache of moments for one context; immutable once entries are materialized.
class MomentTable {
  public:
    explicit MomentTable(const PrecisionContext& ctx) : ctx_(ctx) {}
    const MomentEntry& b(int k) const;
    // C_k = b_k / (2k)!  (exact factorial)
    MomentEntry c(int k) const;
    const PrecisionContext& ctx() const { return ctx_; }

  private:
    PrecisionContext ctx_;
    mutable std::map<int, MomentEntry> cache_;
};

struct TuranResult {
    Real delta;        // b_n^2 - (2n-1)/(2n+1) b_{n-1} b_{n+1}
    Real delta_err;
    Real strict_form;  // C_n^2 - (1 + 1/n) C_{n-1} C_{n+1}
    Real strict_err;
};
TuranResult turan_delta(int n, const MomentTable& table);

// Toeplitz minor D(n,r) = det [c_{n+i-j}]_{i,j=0..r-1} with c_m = 0 for m<0.
Rational dnr_exact(const std::vector<Rational>& seq, int n, int r);
// Floating variant; err carries the elimination-growth estimate plus the
// first-order sensitivity to the per-entry input errors. Throws
// IllConditioned when the result cannot be distinguished from 0 at rel_tol.
MomentEntry dnr(const std::vector<Real>& seq, const std::vector<Real>& errs, int n, int r,
                const PrecisionContext& ctx);

struct ScanViolation {
    int n, r;
    Real value;
};
struct ScanReport {
    Real min_margin;      // smallest D(n,r) seen
    int min_n = 0, min_r = 0;
    std::vector<ScanViolation> violations; // nonpositive minors
    bool all_positive = false;
};
ScanReport total_positivity_scan(const std::vector<Rational>& seq, int N, int R);
ScanReport total_positivity_scan(const std::vector<Real>& seq, const std::vector<Real>& errs,
                                 int N, int R, const PrecisionContext& ctx);

// Power sums of reciprocal zeros from Taylor coefficients:
//   c0 s_k + c1 s_{k-1} + ... + c_{k-1} s_1 + k c_k = 0.
std::vector<Rational> power_sums(const std::vector<Rational>& c, int m);
std::vector<Real> power_sums(const std::vector<Real>& c, int m);

// Taylor coefficients of S-hat(z) = sum (-1)^k C_k z^{2k} through degree kmax.
std::vector<Real> s_hat_taylor(int kmax, const MomentTable& table);

struct HankelResult {
    std::vector<Real> minors; // D_0 .. D_r (leading principal minors)
    bool all_positive = false;
};
// s must supply s_2 .. s_{2+2r}; entry s[j] corresponds to s_{2+j}.
HankelResult hankel_positive(const std::vector<Real>& s_from_2, int r);
std::vector<Rational> hankel_minors_exact(const std::vector<Rational>& s_from_2, int r);

struct BorchardtHermite {
    std::vector<Rational> minors; // Delta_1 .. Delta_n
    bool all_real = false;
    int distinct_count = 0;
};
// Hankel test on the Newton power sums S_k of p: zeros all real iff every
// Delta_k is nonnegative; the index of the last nonzero minor counts the
// distinct zeros.
BorchardtHermite borchardt_hermite(const RatPoly& p);

} // namespace xizero::moments

#endif
