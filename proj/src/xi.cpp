#include "xizero/xi.hpp"

#include "xizero/phi.hpp"

#include <sstream>

namespace mp = boost::multiprecision;

namespace xizero::xi {

namespace {

std::string fmt(const Real& x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// Truncation point for int_0^inf Phi(t) cos(zt) dt: past T the integrand is
// under C0 e^{9t - pi e^{4t}}, decaying at rate >= 4 pi e^{4T} - 9.
Real phi_tail_T(const PrecisionContext& ctx, Real* tail_out) {
    const Real C0 = phi::phi_envelope_constant();
    const Real pi = real_pi();
    auto tail_at = [&](const Real& T) {
        Real lam = 4 * pi * mp::exp(4 * T) - 9;
        return C0 * mp::exp(9 * T - pi * mp::exp(4 * T)) / lam;
    };
    Real T(1);
    while (!(tail_at(T) <= Real(ctx.abs_tol) / 4)) T += Real(1) / 4;
    if (tail_out) *tail_out = tail_at(T);
    return T;
}

} // namespace

XiEvaluator::XiEvaluator(const PrecisionContext& ctx, double z_max)
    : ctx_(ctx), z_max_(z_max), table_(std::make_shared<moments::MomentTable>(ctx)) {}

numerics::QuadratureResult XiEvaluator::eval_series(const Real& z) const {
    PrecisionGuard guard(ctx_);
    Real z2 = z * z;
    Real sum = 0, abs_sum = 0, err = 0;
    Real prev_term_mag = Real("1e100000");
    bool decreasing = false;
    for (int k = 0; k <= 64; ++k) {
        if (static_cast<int>(series_terms_.size()) <= k) {
            moments::MomentEntry ck = table_->c(k);
            series_terms_.emplace_back(ck.value, ck.error);
        }
        Real mag = series_terms_[k].first * mp::pow(z2, k);
        Real term = (k % 2 == 0) ? mag : -mag;
        sum += term;
        abs_sum += mag;
        err += series_terms_[k].second * mp::pow(z2, k);
        if (mag < prev_term_mag) decreasing = true;
        if (decreasing && mag <= ctx_.tol_for(sum) / 4) {
            // alternating series with (runtime-checked) decreasing terms:
            // first omitted term bounds the remainder
            numerics::QuadratureResult q;
            q.value = sum;
            q.error_bound = mag + err +
                            Real(k + 1) * mp::ldexp(abs_sum + 1, -static_cast<int>(ctx_.bits));
            q.evaluations = k + 1;
            return q;
        }
        prev_term_mag = mag;
    }
    raise(ErrorKind::NoConvergence, "xi series: no decreasing alternating tail by k=64 at z=" + fmt(z));
}

numerics::QuadratureResult XiEvaluator::eval_integral(const Real& z) const {
    PrecisionGuard guard(ctx_);
    if (!plan_) {
        Real tail;
        Real T = phi_tail_T(ctx_, &tail);
        auto w = [this](const Real& t) { return phi::phi_eval(t, 0, ctx_).value; };
        plan_ = std::make_shared<numerics::CosineTransformPlan>(w, T, Real(z_max_), tail, ctx_);
    }
    return plan_->eval(z);
}

numerics::QuadratureResult XiEvaluator::eval(const Real& z, Method method) const {
    Real az = mp::abs(z);
    if (method == Method::Auto)
        method = (az <= Real(series_crossover)) ? Method::Series : Method::Integral;
    if (method == Method::Integral && az > Real(z_max_))
        raise(ErrorKind::UsageError, "xi eval: |z| beyond the evaluator window");
    return method == Method::Series ? eval_series(z) : eval_integral(z);
}

numerics::QuadratureResult XiEvaluator::eval_checked(const Real& z) const {
    numerics::QuadratureResult a = eval(z, Method::Series);
    numerics::QuadratureResult b = eval(z, Method::Integral);
    if (mp::abs(a.value - b.value) > a.error_bound + b.error_bound)
        raise(ErrorKind::MethodDisagreement,
              "xi eval: series/integral mismatch at z=" + fmt(z) + ": " + fmt(a.value) + " vs " +
                  fmt(b.value));
    numerics::QuadratureResult out = (a.error_bound < b.error_bound) ? a : b;
    out.evaluations = a.evaluations + b.evaluations;
    return out;
}

std::pair<Cplx, Real> XiEvaluator::eval_complex(const Cplx& z, Method method) const {
    PrecisionGuard guard(ctx_);
    if (mp::abs(z.im) > 1)
        raise(ErrorKind::StripViolation, "xi eval: |Im z| <= 1 required");
    if (z.im == 0) {
        auto q = eval(z.re, method);
        return {Cplx(q.value), q.error_bound};
    }
    Real az = abs(z);
    if (method == Method::Auto)
        method = (az <= Real(series_crossover)) ? Method::Series : Method::Integral;
    if (method == Method::Series) {
        Cplx z2 = z * z;
        Cplx sum;
        Real err = 0, prev = Real("1e100000");
        bool decreasing = false;
        Cplx pw(Real(1));
        for (int k = 0; k <= 64; ++k) {
            if (static_cast<int>(series_terms_.size()) <= k) {
                moments::MomentEntry ck = table_->c(k);
                series_terms_.emplace_back(ck.value, ck.error);
            }
            Cplx term = series_terms_[k].first * pw;
            if (k % 2 == 1) term = -term;
            sum += term;
            Real mag = abs(term);
            err += series_terms_[k].second * abs(pw);
            pw = pw * z2;
            if (mag < prev) decreasing = true;
            if (decreasing && mag <= Real(ctx_.abs_tol) / 4 + Real(ctx_.rel_tol) * abs(sum) / 4)
                return {sum, err + mag * 2};
            prev = mag;
        }
        raise(ErrorKind::NoConvergence, "xi complex series: no convergence by k=64");
    }
    // integral route: cos(zt) = cos(xt)cosh(yt) - i sin(xt)sinh(yt)
    if (!plan_) {
        Real tail;
        Real T = phi_tail_T(ctx_, &tail);
        auto w = [this](const Real& t) { return phi::phi_eval(t, 0, ctx_).value; };
        plan_ = std::make_shared<numerics::CosineTransformPlan>(w, T, Real(z_max_), tail, ctx_);
    }
    auto cp = plan_->eval_exp(z.re, z.im, false);
    auto cm = plan_->eval_exp(z.re, -z.im, false);
    auto sp = plan_->eval_exp(z.re, z.im, true);
    auto sm = plan_->eval_exp(z.re, -z.im, true);
    Cplx val((cp.value + cm.value) / 2, -(sp.value - sm.value) / 2);
    Real err = (cp.error_bound + cm.error_bound + sp.error_bound + sm.error_bound) / 2;
    return {val, err};
}

std::vector<numerics::ZeroRecord> positive_zeros(const XiEvaluator& ev, const Real& X) {
    if (X > 200) raise(ErrorKind::UsageError, "positive_zeros: window capped at X = 200");
    PrecisionGuard guard(ev.ctx());
    Real step = real_pi() / 4;
    auto f = [&](const Real& z) { return ev.eval(z).value; };
    return numerics::isolate_zeros(f, step / 8, X, step, ev.ctx());
}

std::vector<numerics::ZeroRecord> positive_zeros(const Real& X, const PrecisionContext& ctx) {
    XiEvaluator ev(ctx, static_cast<double>(X) + 1);
    return positive_zeros(ev, X);
}

SumRuleReport sum_rule_report(int N, const PrecisionContext& ctx) {
    if (N < 1) raise(ErrorKind::UsageError, "sum_rule_report: N >= 1");
    PrecisionGuard guard(ctx);
    XiEvaluator ev(ctx, 205);
    // widen the window until N zeros are in hand (or the cap is reached)
    Real X(70);
    std::vector<numerics::ZeroRecord> zeros = positive_zeros(ev, X);
    while (static_cast<int>(zeros.size()) < N && X < 200) {
        X = rmin(Real(200), X * Real(3) / 2);
        zeros = positive_zeros(ev, X);
    }
    if (static_cast<int>(zeros.size()) < N)
        raise(ErrorKind::UsageError,
              "sum_rule_report: only " + std::to_string(zeros.size()) + " zeros in the window cap");

    SumRuleReport rep;
    rep.partial = 0;
    Real perr = 0;
    for (int i = 0; i < N; ++i) {
        const auto& z = zeros[i];
        rep.partial += 1 / (z.location * z.location);
        perr += 2 * z.bracket_width / mp::pow(z.location, 3);
        rep.zeros.push_back(z.location);
    }
    auto b0 = ev.table().b(0), b1 = ev.table().b(1);
    rep.target = b1.value / (2 * b0.value);
    Real terr = (b1.error + mp::abs(rep.target) * 2 * b0.error) / (2 * b0.value);
    rep.gap = rep.target - rep.partial;
    rep.gap_err = terr + perr;
    if (rep.gap < -rep.gap_err)
        raise(ErrorKind::NegativeGap, "sum_rule_report: gap " + fmt(rep.gap) + " below -error");
    return rep;
}

numerics::QuadratureResult xi_heat(const Real& z, const Real& lambda, const PrecisionContext& ctx) {
    if (lambda > 1) raise(ErrorKind::UsageError, "xi_heat: lambda <= 1 required");
    PrecisionGuard guard(ctx);
    const Real pi = real_pi();
    // Phi38(t) <= 2 * (203/202) * 2 pi^2 e^{9t/2} exp(-pi e^{2t})
    const Real C1 = 2 * phi::phi_envelope_constant();
    auto tail_bound = [&](const Real& T) {
        Real rate = 2 * pi * mp::exp(2 * T) - Real(9) / 2 - 2 * mp::abs(lambda) * T;
        if (rate < 1) return Real("1e100000");
        return 2 * C1 * mp::exp(lambda * T * T + Real(9) / 2 * T - pi * mp::exp(2 * T)) / rate;
    };
    auto f = [&](const Real& t) {
        return 2 * phi::phi38_eval(t, 0, ctx).value * mp::exp(lambda * t * t) * mp::cos(z * t);
    };
    return numerics::integrate_semi_infinite(f, Real(0), tail_bound, ctx);
}

int heat_zero_count(const Real& lo, const Real& hi, const Real& lambda, const Real& step,
                    const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    const Real pi = real_pi();
    const Real C1 = 2 * phi::phi_envelope_constant();
    Real T(1);
    auto tail_at = [&](const Real& TT) {
        Real rate = 2 * pi * mp::exp(2 * TT) - Real(9) / 2 - 2 * mp::abs(lambda) * TT;
        if (rate < 1) return Real("1e100000");
        return 2 * C1 * mp::exp(lambda * TT * TT + Real(9) / 2 * TT - pi * mp::exp(2 * TT)) / rate;
    };
    while (!(tail_at(T) <= Real(ctx.abs_tol) / 4)) T += Real(1) / 4;
    auto w = [&](const Real& t) {
        return 2 * phi::phi38_eval(t, 0, ctx).value * mp::exp(lambda * t * t);
    };
    numerics::CosineTransformPlan plan(w, T, mp::abs(hi) + 1, tail_at(T), ctx);
    int count = 0, prev = 0;
    for (Real x = lo; x <= hi; x += step) {
        Real v = plan.eval(x).value;
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (prev != 0 && s != 0 && s != prev) ++count;
        if (s != 0) prev = s;
    }
    return count;
}

RatPoly heat_poly(const RatPoly& p, const Rational& lambda) {
    RatPoly acc = p;
    RatPoly d2 = p.derivative().derivative();
    Rational coeff(1);
    for (long n = 1; !d2.is_zero(); ++n) {
        coeff *= -lambda / n;
        acc = acc + coeff * d2;
        d2 = d2.derivative().derivative();
    }
    return acc;
}

RatPoly hermite_he(int n) {
    RatPoly h0 = RatPoly::constant(Rational(1));
    if (n == 0) return h0;
    RatPoly z{std::vector<Rational>{Rational(0), Rational(1)}};
    RatPoly h1 = z;
    for (int k = 1; k < n; ++k) {
        RatPoly h2 = z * h1 - Rational(k) * h0;
        h0 = std::move(h1);
        h1 = std::move(h2);
    }
    return h1;
}

} // namespace xizero::xi
