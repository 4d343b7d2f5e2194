#include "xizero/lp.hpp"

namespace mp = boost::multiprecision;

namespace xizero::lp {

namespace {

Rational binom(int n, int k) {
    Integer num(1), den(1);
    for (int i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Rational(num) / Rational(den);
}

Integer factorial(int n) {
    Integer f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

RatPoly jensen_poly(const TaylorSeq& gamma, int n, int m) {
    if (n < 0 || m < 0 || n + m >= static_cast<int>(gamma.size()))
        raise(ErrorKind::InsufficientData, "jensen_poly: need gamma_0..gamma_{n+m}");
    std::vector<Rational> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = binom(n, k) * gamma[k + m];
    return RatPoly(std::move(c));
}

RatPoly appell_poly(const TaylorSeq& gamma, int n, int m) {
    RatPoly j = jensen_poly(gamma, n, m);
    std::vector<Rational> c(n + 1, Rational(0));
    for (int k = 0; k <= n; ++k) c[n - k] = j.coeff(k);
    return RatPoly(std::move(c));
}

int sturm_count(const RatPoly& p, const Rational& a, const Rational& b) {
    return xizero::sturm_count(p, a, b);
}

MsTestResult multiplier_sequence_test(const TaylorSeq& gamma, int N) {
    if (N >= static_cast<int>(gamma.size()))
        raise(ErrorKind::InsufficientData, "multiplier_sequence_test: N exceeds sequence length");
    MsTestResult r;
    r.pass = true;
    for (int n = 1; n <= N; ++n) {
        RatPoly jn = jensen_poly(gamma, n);
        if (!all_roots_real(jn)) {
            r.pass = false;
            r.first_failure = n;
            return r;
        }
    }
    return r;
}

std::vector<Rational> turan_check(const TaylorSeq& gamma) {
    if (gamma.size() < 3)
        raise(ErrorKind::InsufficientData, "turan_check: need at least gamma_0..gamma_2");
    std::vector<Rational> out;
    for (size_t n = 1; n + 1 < gamma.size(); ++n)
        out.push_back(gamma[n] * gamma[n] - gamma[n - 1] * gamma[n + 1]);
    return out;
}

RatPoly hermite_poulain(const RatPoly& a, const RatPoly& p) {
    if (a.is_zero()) raise(ErrorKind::NonRealMultiplier, "hermite_poulain: zero multiplier");
    if (!all_roots_real(a))
        raise(ErrorKind::NonRealMultiplier, "hermite_poulain: multiplier polynomial has nonreal zeros");
    RatPoly acc;
    RatPoly d = p;
    for (int k = 0; k <= a.degree(); ++k) {
        acc = acc + a.coeff(k) * d;
        d = d.derivative();
    }
    return acc;
}

RatPoly laguerre_transform(const RatPoly& Q, const std::vector<Rational>& c, int d) {
    if (Q.degree() < 1) raise(ErrorKind::UsageError, "laguerre_transform: Q nonconstant required");
    if (!all_roots_real(Q))
        raise(ErrorKind::ZeroInExclusionInterval, "laguerre_transform: Q has nonreal zeros");
    // no zero of Q in [0, d]: count in (-eps, d] must vanish
    Rational eps(1, 1 << 20);
    if (xizero::sturm_count(Q, -eps, Rational(d)) != 0)
        raise(ErrorKind::ZeroInExclusionInterval, "laguerre_transform: Q vanishes inside [0,d]");
    std::vector<Rational> out(d + 1, Rational(0));
    for (int k = 0; k <= d; ++k)
        if (k < static_cast<int>(c.size())) out[k] = Q.eval(Rational(k)) * c[k];
    return RatPoly(std::move(out));
}

Rational l_functional(const RatPoly& p, int n, const Rational& t) {
    if (n < 0) raise(ErrorKind::UsageError, "l_functional: n >= 0");
    std::vector<RatPoly> deriv;
    deriv.push_back(p);
    for (int k = 1; k <= 2 * n; ++k) deriv.push_back(deriv.back().derivative());
    if (n == 0) {
        Rational v = p.eval(t);
        return v * v;
    }
    Rational acc(0);
    Rational fact(factorial(2 * n));
    for (int k = 0; k <= 2 * n; ++k) {
        Rational term = binom(2 * n, k) * deriv[k].eval(t) * deriv[2 * n - k].eval(t) / fact;
        acc += ((k + n) % 2 == 0) ? term : -term;
    }
    return acc;
}

Rational lambda_functional(const RatPoly& p, int n, const Rational& x) {
    // p(x + iy) = sum_j p^{(j)}(x)/j! (iy)^j; split real/imaginary parts as
    // polynomials in y, then |p|^2 = A^2 + B^2.
    int deg = std::max(0, p.degree());
    std::vector<Rational> A(deg + 1, Rational(0)), B(deg + 1, Rational(0));
    RatPoly d = p;
    Integer jf(1);
    for (int j = 0; j <= deg; ++j) {
        if (j > 0) jf *= j;
        Rational coeff = d.eval(x) / Rational(jf);
        switch (j % 4) {
            case 0: A[j] = coeff; break;
            case 1: B[j] = coeff; break;
            case 2: A[j] = -coeff; break;
            default: B[j] = -coeff; break;
        }
        d = d.derivative();
    }
    RatPoly pa{std::move(A)}, pb{std::move(B)};
    RatPoly sq = pa * pa + pb * pb;
    return sq.coeff(2 * n);
}

JensenDiskReport jensen_disks(const RatPoly& p, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    JensenDiskReport rep;
    if (p.degree() < 2) {
        rep.contained = true;
        rep.worst_slack = 0;
        return rep;
    }
    Real imag_cut = mp::ldexp(Real(1), -static_cast<int>(ctx.bits) / 2);

    std::vector<Cplx> roots = complex_roots(to_real(p), ctx);
    for (const Cplx& r : roots)
        if (r.im > imag_cut) rep.disks.push_back({r.re, r.im});

    std::vector<Cplx> crit = complex_roots(to_real(p.derivative()), ctx);
    rep.contained = true;
    rep.worst_slack = 0;
    for (const Cplx& c : crit) {
        if (mp::abs(c.im) <= imag_cut) continue;
        Cplx rep_pt{c.re, mp::abs(c.im)};
        rep.nonreal_critical_points.push_back(rep_pt);
        Real best = Real("1e100000");
        for (const auto& dsk : rep.disks) {
            Real dist = mp::sqrt((rep_pt.re - dsk.center) * (rep_pt.re - dsk.center) +
                                 rep_pt.im * rep_pt.im);
            best = rmin(best, dist - dsk.radius);
        }
        rep.worst_slack = rmax(rep.worst_slack, best);
        if (best > Real(ctx.abs_tol)) rep.contained = false;
    }
    return rep;
}

RatPoly shifted_sum(const RatPoly& p, const Rational& lambda) {
    RatPoly acc = p;
    RatPoly d2 = p.derivative().derivative();
    Rational coeff(1);
    Rational l2 = lambda * lambda;
    for (long m = 1; !d2.is_zero(); ++m) {
        coeff *= -l2 / Rational((2 * m - 1) * (2 * m));
        acc = acc + coeff * d2;
        d2 = d2.derivative().derivative();
    }
    return Rational(2) * acc;
}

GrowthEstimates growth_estimates(const std::vector<Real>& coeffs, int N,
                                 const std::vector<Real>& zero_moduli) {
    if (N < 16 || N >= static_cast<int>(coeffs.size()))
        raise(ErrorKind::UsageError, "growth_estimates: need N >= 16 and coefficients through N");
    GrowthEstimates g;
    g.window_lo = N / 2;
    g.window_hi = N;

    auto L = [&](int n) -> std::optional<Real> {
        if (coeffs[n] == 0) return std::nullopt;
        return -mp::log(mp::abs(coeffs[n]));
    };
    // Pick three spread-out sample indices with nonzero coefficients.
    auto pick = [&](int target) -> int {
        for (int d = 0; d <= N; ++d) {
            if (target - d >= 0 && coeffs[target - d] != 0) return target - d;
            if (target + d <= N && coeffs[target + d] != 0) return target + d;
        }
        raise(ErrorKind::UsageError, "growth_estimates: all coefficients vanish");
    };
    int n1 = pick(N / 2), n2 = pick(3 * N / 4), n3 = pick(N);
    if (n1 == n2 || n2 == n3)
        raise(ErrorKind::UsageError, "growth_estimates: window too sparse");

    // Fit L_n = (n log n)/rho + beta n on the two differences.
    auto nj = [&](int n) { return Real(n) * mp::log(Real(n)); };
    Real d1 = *L(n2) - *L(n1), d2 = *L(n3) - *L(n2);
    Real a1 = nj(n2) - nj(n1), b1 = Real(n2 - n1);
    Real a2 = nj(n3) - nj(n2), b2 = Real(n3 - n2);
    Real det = a1 * b2 - a2 * b1;
    Real inv_rho;
    if (det == 0) {
        inv_rho = d1 / a1; // fallback: plain ratio
    } else {
        inv_rho = (d1 * b2 - d2 * b1) / det;
    }
    if (inv_rho <= 0) {
        g.order_est = Real("1e6"); // blows up: order effectively infinite on this window
    } else {
        g.order_est = 1 / inv_rho;
    }

    // Type from the display tau = (1/(rho e)) sup n |c_n|^{rho/n} with the
    // estimated order plugged in.
    Real e = mp::exp(Real(1));
    Real sup(0);
    bool any = false;
    if (g.order_est < Real("1e5")) {
        for (int n = g.window_lo; n <= g.window_hi; ++n) {
            if (coeffs[n] == 0) continue;
            Real v = Real(n) * mp::pow(mp::abs(coeffs[n]), g.order_est / n);
            sup = any ? rmax(sup, v) : v;
            any = true;
        }
    }
    g.type_est = any ? sup / (g.order_est * e) : Real(0);

    if (!zero_moduli.empty()) {
        int M = static_cast<int>(zero_moduli.size());
        for (int n = std::max(2, M / 2); n <= M; ++n) {
            const Real& r = zero_moduli[n - 1];
            if (r > 1) g.kappa_est.push_back(mp::log(Real(n)) / mp::log(r));
        }
    }
    return g;
}

Cplx primary_factor(const Cplx& z, int p) {
    Cplx one_minus = Cplx(Real(1)) - z;
    if (p == 0) return one_minus;
    Cplx acc, pw = z;
    for (int k = 1; k <= p; ++k) {
        acc += pw / Real(k);
        pw = pw * z;
    }
    return one_minus * cexp(acc);
}

Cplx canonical_product(const std::vector<Cplx>& zeros, int genus, const Cplx& z) {
    Cplx prod(Real(1));
    for (const Cplx& zn : zeros) {
        if (abs(zn) == 0) raise(ErrorKind::ZeroAtOrigin, "canonical_product: zero at the origin");
        prod = prod * primary_factor(z / zn, genus);
    }
    return prod;
}

} // namespace xizero::lp
