#include "xizero/phi.hpp"

#include <sstream>

namespace mp = boost::multiprecision;

namespace xizero::phi {

namespace {

std::string fmt(const Real& x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// Polynomial factor of the order-th derivative of a term, as a function of y.
Real term_poly(const Real& y, int order) {
    switch (order) {
        case 0: return y * (2 * y - 3);
        case 1: return -y * (15 - 30 * y + 8 * y * y);
        default: return y * (-75 + y * (330 + y * (-224 + 32 * y)));
    }
}

// |polynomial factor| <= K(y_min) * y^m uniformly for y >= y_min.
Real poly_envelope_K(const Real& ymin, int order) {
    switch (order) {
        case 0: return Real(2); // needs y >= 3/4
        case 1: return 8 + 30 / ymin + 15 / (ymin * ymin);
        default: return 32 + 224 / ymin + (330 + 75 / ymin) / (ymin * ymin);
    }
}

int poly_power(int order) { return order + 2; }

// sum_{j>=0} (1+j)^{2m} q^j, converging fast for q <= 1/2.
Real jitter_series(const Real& q, int m, unsigned bits) {
    Real s = 0, cutoff = mp::ldexp(Real(1), -static_cast<int>(bits) - 8);
    for (long j = 0;; ++j) {
        Real term = mp::pow(Real(1 + j), 2 * m) * mp::pow(q, static_cast<unsigned>(j));
        s += term;
        if (term < cutoff * (s + 1) && j > 2) return s;
        if (j > 4096) return s * 2; // q close to 1/2; crude but safe headroom
    }
}

struct SeriesSpec {
    Real et;  // e^t
    Real y1;  // pi e^{4t}
};

Real nth_term(const SeriesSpec& sp, long n, int order, long start) {
    long idx = n + start - 1; // sum_with_tail indexes from 1
    Real y = sp.y1 * idx * idx;
    return sp.et * mp::exp(-y) * term_poly(y, order);
}

// Bound on |sum_{n > N}| of the series that starts at `start`; the comparison
// argument needs y_{N+1} >= max(3/4, 1) and geometric ratio q <= 1/2, so the
// bound returns +inf until N is large enough for both.
Real tail_after(const SeriesSpec& sp, long n_summed, int order, long start, unsigned bits) {
    long N = n_summed + start - 1; // absolute index of the last summed term
    Real ynext = sp.y1 * (N + 1) * (N + 1);
    if (ynext < 1) return Real("1e100000");
    Real q = mp::exp(-sp.y1 * (2 * N + 3));
    if (q > Real(1) / 2) return Real("1e100000");
    int m = poly_power(order);
    Real K = poly_envelope_K(ynext, order);
    return K * sp.et * mp::pow(ynext, m) * mp::exp(-ynext) * jitter_series(q, m, bits);
}

PhiEvaluation eval_series(const Real& t, int order, long start, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    SeriesSpec sp{mp::exp(t), real_pi() * mp::exp(4 * t)};
    numerics::QuadratureResult q = numerics::sum_with_tail(
        [&](long n) { return nth_term(sp, n, order, start); },
        [&](long n) { return tail_after(sp, n, order, start, ctx.bits); }, ctx);
    PhiEvaluation e;
    e.t = t;
    e.order = order;
    e.value = q.value;
    e.terms_used = q.evaluations;
    e.tail_bound = q.error_bound;
    return e;
}

} // namespace

PhiEvaluation phi_eval(const Real& t, int order, const PrecisionContext& ctx) {
    return eval_series(t, order, 1, ctx);
}

PhiEvaluation psi_eval(const Real& t, int order, const PrecisionContext& ctx) {
    return eval_series(t, order, 2, ctx);
}

PhiEvaluation phi38_eval(const Real& t, int order, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    PhiEvaluation inner = phi_eval(t / 2, order, ctx);
    // d/dt [2 phi(t/2)] = phi'(t/2), d^2/dt^2 = phi''(t/2)/2
    Real scale = mp::ldexp(Real(1), 1 - order);
    inner.t = t;
    inner.value *= scale;
    inner.tail_bound *= scale;
    return inner;
}

PhiEvaluation phi_eval_certified_sign(const Real& t, int order, const PrecisionContext& ctx) {
    PrecisionContext cur = ctx;
    while (true) {
        PhiEvaluation e = phi_eval(t, order, cur);
        if (mp::abs(e.value) > e.tail_bound) return e;
        if (cur.max_escalations == 0)
            raise(ErrorKind::SuspectedTangency,
                  "phi_eval: sign of Phi^(" + std::to_string(order) + ")(" + fmt(t) +
                      ") not certified at max escalation");
        cur = cur.escalated();
    }
}

Real a_term(const Real& t) {
    Real y = real_pi() * mp::exp(4 * t);
    return mp::exp(t) * mp::exp(-y) * term_poly(y, 0);
}
Real a_term_d1(const Real& t) {
    Real y = real_pi() * mp::exp(4 * t);
    return mp::exp(t) * mp::exp(-y) * term_poly(y, 1);
}
Real a_term_d2(const Real& t) {
    Real y = real_pi() * mp::exp(4 * t);
    return mp::exp(t) * mp::exp(-y) * term_poly(y, 2);
}

Real phi_envelope_constant() {
    // Phi <= (203/202) a(t) and a(t) = e^t e^{-y} y(2y-3) <= 2 e^t y^2 e^{-y},
    // with e^t y^2 = pi^2 e^{9t}.
    return Real(203) / 202 * 2 * real_pi() * real_pi();
}

namespace {

LedgerEntry entry(std::string name, Real margin, Real err) {
    LedgerEntry e;
    e.name = std::move(name);
    e.margin = margin;
    e.error = err;
    e.pass = margin > err;
    return e;
}

} // namespace

LedgerReport phi_ledger(const std::vector<Real>& grid, const PrecisionContext& ctx, bool strict) {
    PrecisionGuard guard(ctx);
    LedgerReport report;
    report.all_pass = true;

    const Real ulp_rel = mp::ldexp(Real(1), -static_cast<int>(ctx.bits) + 6);

    for (const Real& t : grid) {
        if (t < 0) raise(ErrorKind::UsageError, "phi_ledger: grid point below 0");
        LedgerPoint pt;
        pt.t = t;

        Real y = real_pi() * mp::exp(4 * t);
        Real et = mp::exp(t);
        Real E = mp::exp(2 * t) * mp::exp(-2 * y) * y * y * y;

        Real a0 = a_term(t), a1 = a_term_d1(t), a2 = a_term_d2(t);
        PhiEvaluation Ps = psi_eval(t, 0, ctx), Ps1 = psi_eval(t, 1, ctx), Ps2 = psi_eval(t, 2, ctx);
        PhiEvaluation Ph = phi_eval(t, 0, ctx), Ph1 = phi_eval(t, 1, ctx), Ph2 = phi_eval(t, 2, ctx);

        Real ea0 = mp::abs(a0) * ulp_rel, ea1 = mp::abs(a1) * ulp_rel, ea2 = mp::abs(a2) * ulp_rel;

        // Lemma 1: 0 < Psi <= 64 e^t y^2 e^{-4y}
        {
            Real bound = 64 * et * y * y * mp::exp(-4 * y);
            Real m = rmin(Ps.value, bound - Ps.value);
            pt.entries.push_back(entry("lemma1_psi_window", m, Ps.tail_bound + bound * ulp_rel));
        }
        // Lemma 2: |Psi'| <= 565 e^t y^3 e^{-4y}
        {
            Real bound = 565 * et * mp::pow(y, 3) * mp::exp(-4 * y);
            pt.entries.push_back(entry("lemma2_psi_d1", bound - mp::abs(Ps1.value),
                                       Ps1.tail_bound + bound * ulp_rel));
        }
        // Lemma 3: |Psi''| <= 1.031 * 2^13 e^t y^4 e^{-4y}
        {
            Real bound = Real("1.031") * 8192 * et * mp::pow(y, 4) * mp::exp(-4 * y);
            pt.entries.push_back(entry("lemma3_psi_d2", bound - mp::abs(Ps2.value),
                                       Ps2.tail_bound + bound * ulp_rel));
        }
        // Lemma 4: 0 < Phi < (203/202) a
        {
            Real bound = Real(203) / 202 * a0;
            Real m = rmin(Ph.value, bound - Ph.value);
            pt.entries.push_back(entry("lemma4_phi_vs_a", m, Ph.tail_bound + mp::abs(bound) * ulp_rel));
        }
        Real V = a1 * a1 - a0 * a2;
        Real eV = 2 * mp::abs(a1) * ea1 + mp::abs(a0) * ea2 + mp::abs(a2) * ea0;
        // Lemma 5: V >= 256 E
        pt.entries.push_back(entry("lemma5_V_lower", V - 256 * E, eV + 256 * E * ulp_rel));
        // Lemma 6: |U| <= 56424 E e^{-3y} y^3
        Real U = 2 * a1 * Ps1.value - a2 * Ps.value - Ph.value * Ps2.value;
        Real eU = 2 * (mp::abs(a1) * Ps1.tail_bound + mp::abs(Ps1.value) * ea1) +
                  mp::abs(a2) * Ps.tail_bound + mp::abs(Ps.value) * ea2 +
                  mp::abs(Ph.value) * Ps2.tail_bound + mp::abs(Ps2.value) * Ph.tail_bound;
        {
            Real bound = 56424 * E * mp::exp(-3 * y) * mp::pow(y, 3);
            pt.entries.push_back(entry("lemma6_U_bound", bound - mp::abs(U), eU + bound * ulp_rel));
        }
        // Log-concavity determinant: (Phi')^2 - Phi Phi'' > 0
        {
            Real det = Ph1.value * Ph1.value - Ph.value * Ph2.value;
            Real edet = 2 * mp::abs(Ph1.value) * Ph1.tail_bound + mp::abs(Ph.value) * Ph2.tail_bound +
                        mp::abs(Ph2.value) * Ph.tail_bound;
            pt.entries.push_back(entry("theorem_log_concavity", det, edet));
        }
        // Final bound: V + U > 114 E
        pt.entries.push_back(entry("final_114E", V + U - 114 * E, eV + eU + 114 * E * ulp_rel));
        // Derivative inequality, finite differences with h = sqrt(unit step):
        // d/dt [ Phi'(t) / (t Phi(t)) ] < 0 for t > 0; at the origin the
        // forward stencil keeps the sample points inside the hypothesis.
        {
            Real h = mp::ldexp(Real(1), -static_cast<int>(ctx.bits) / 2);
            Real g_noise(0);
            auto g = [&](const Real& s) {
                PhiEvaluation p1 = phi_eval(s, 1, ctx);
                PhiEvaluation p0 = phi_eval(s, 0, ctx);
                Real v = p1.value / (s * p0.value);
                g_noise = rmax(g_noise, (p1.tail_bound + mp::abs(v) * s * p0.tail_bound) /
                                               (s * mp::abs(p0.value)));
                return v;
            };
            auto stencil = [&](const Real& step) {
                return t > 2 * step ? (g(t + step) - g(t - step)) / (2 * step)
                                    : (g(t + 2 * step) - g(t + step)) / step;
            };
            Real d1 = stencil(h), d2 = stencil(2 * h);
            // Richardson gap as the truncation estimate plus the quotient
            // noise amplified by the step.
            Real err = mp::abs(d1 - d2) + 2 * g_noise / h;
            pt.entries.push_back(entry("deriv_quotient_decreasing", -d1, err));
        }

        pt.all_pass = true;
        for (const auto& e : pt.entries) pt.all_pass = pt.all_pass && e.pass;
        report.all_pass = report.all_pass && pt.all_pass;
        if (strict && !pt.all_pass) {
            for (const auto& e : pt.entries)
                if (!e.pass)
                    raise(ErrorKind::InequalityViolated,
                          "phi_ledger: " + e.name + " at t=" + fmt(t) + " margin=" + fmt(e.margin));
        }
        report.points.push_back(std::move(pt));
    }
    return report;
}

} // namespace xizero::phi
