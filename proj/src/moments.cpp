#include "xizero/moments.hpp"

#include "xizero/phi.hpp"

namespace mp = boost::multiprecision;

namespace xizero::moments {

namespace {

Real factorial_real(int n) {
    Integer f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return Real(f);
}

} // namespace

MomentEntry b_moment(int k, const PrecisionContext& ctx) {
    if (k < 0 || k > 64)
        raise(ErrorKind::UsageError, "b_moment: k out of supported range [0,64]");
    PrecisionGuard guard(ctx);
    const Real C0 = phi::phi_envelope_constant();
    const Real pi = real_pi();

    // Window [0, T]: the envelope C0 t^{2k} e^{9t - pi e^{4t}} decays at rate
    // lambda(T) = 4 pi e^{4T} - 9 - 2k/T once past the integrand peak, so the
    // dropped tail is below envelope(T)/lambda(T).
    auto tail_at = [&](const Real& T) {
        Real lam = 4 * pi * mp::exp(4 * T) - 9 - Real(2 * k) / T;
        if (lam < 1) return Real("1e100000");
        Real env = C0 * mp::pow(T, 2 * k) * mp::exp(9 * T - pi * mp::exp(4 * T));
        return env / lam;
    };
    Real T(1);
    while (!(tail_at(T) <= Real(ctx.abs_tol))) {
        T += Real(1) / 2;
        if (T > 64) raise(ErrorKind::NoConvergence, "b_moment: tail window search failed");
    }

    auto f = [&](const Real& t) {
        return (k == 0 ? Real(1) : mp::pow(t, 2 * k)) * phi::phi_eval(t, 0, ctx).value;
    };
    numerics::QuadratureResult q = numerics::integrate(f, Real(0), T, ctx);
    MomentEntry e;
    e.value = q.value;
    e.error = q.error_bound + tail_at(T);
    return e;
}

const MomentEntry& MomentTable::b(int k) const {
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, b_moment(k, ctx_)).first;
    return it->second;
}

MomentEntry MomentTable::c(int k) const {
    PrecisionGuard guard(ctx_);
    const MomentEntry& bk = b(k);
    Real f = factorial_real(2 * k);
    return {bk.value / f, bk.error / f};
}

TuranResult turan_delta(int n, const MomentTable& table) {
    if (n < 1) raise(ErrorKind::UsageError, "turan_delta: n >= 1 required");
    PrecisionGuard guard(table.ctx());
    const MomentEntry bm = table.b(n - 1), b0 = table.b(n), bp = table.b(n + 1);
    TuranResult r;
    Real ratio = Real(2 * n - 1) / (2 * n + 1);
    r.delta = b0.value * b0.value - ratio * bm.value * bp.value;
    r.delta_err = 2 * mp::abs(b0.value) * b0.error +
                  ratio * (mp::abs(bm.value) * bp.error + mp::abs(bp.value) * bm.error);
    MomentEntry cm = table.c(n - 1), c0 = table.c(n), cp = table.c(n + 1);
    Real f = Real(1) + Real(1) / n;
    r.strict_form = c0.value * c0.value - f * cm.value * cp.value;
    r.strict_err = 2 * mp::abs(c0.value) * c0.error +
                   f * (mp::abs(cm.value) * cp.error + mp::abs(cp.value) * cm.error);
    return r;
}

namespace {

template <class T>
std::vector<std::vector<T>> dnr_matrix(const std::vector<T>& seq, int n, int r) {
    std::vector<std::vector<T>> m(r, std::vector<T>(r, T(0)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            int idx = n + i - j;
            if (idx >= 0) {
                if (idx >= static_cast<int>(seq.size()))
                    raise(ErrorKind::UsageError, "dnr: sequence too short for requested minor");
                m[i][j] = seq[idx];
            }
        }
    return m;
}

} // namespace

Rational dnr_exact(const std::vector<Rational>& seq, int n, int r) {
    if (r < 1 || n < 0) raise(ErrorKind::UsageError, "dnr: need n >= 0, r >= 1");
    return det_exact(dnr_matrix(seq, n, r));
}

MomentEntry dnr(const std::vector<Real>& seq, const std::vector<Real>& errs, int n, int r,
                const PrecisionContext& ctx) {
    if (r < 1 || n < 0) raise(ErrorKind::UsageError, "dnr: need n >= 0, r >= 1");
    PrecisionGuard guard(ctx);
    auto m = dnr_matrix(seq, n, r);
    auto [det, derr] = det_floating(m);
    // first-order sensitivity: each entry feeds its cofactor, bounded by
    // (r-1)! * (max |entry|)^{r-1}
    Real maxe(0), maxa(0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            int idx = n + i - j;
            if (idx >= 0) {
                maxa = rmax(maxa, mp::abs(seq[idx]));
                if (idx < static_cast<int>(errs.size())) maxe = rmax(maxe, errs[idx]);
            }
        }
    Real cof = factorial_real(r - 1) * mp::pow(rmax(maxa, Real(1e-300)), r - 1);
    derr += Real(r * r) * cof * maxe;
    if (derr > Real(ctx.rel_tol) * mp::abs(det) && derr > Real(ctx.abs_tol))
        raise(ErrorKind::IllConditioned, "dnr: determinant indistinguishable from 0 at working precision");
    return {det, derr};
}

namespace {

template <class Seq, class Eval>
ScanReport scan_impl(const Seq& seq, int N, int R, Eval&& eval) {
    ScanReport rep;
    bool first = true;
    rep.all_positive = true;
    for (int n = 0; n <= N; ++n)
        for (int r = 1; r <= R; ++r) {
            Real v = eval(n, r);
            if (first || v < rep.min_margin) {
                rep.min_margin = v;
                rep.min_n = n;
                rep.min_r = r;
                first = false;
            }
            if (!(v > 0)) {
                rep.violations.push_back({n, r, v});
                rep.all_positive = false;
            }
        }
    return rep;
}

} // namespace

ScanReport total_positivity_scan(const std::vector<Rational>& seq, int N, int R) {
    if (seq.empty() || seq[0] == 0)
        raise(ErrorKind::UsageError, "total_positivity_scan: c_0 must be nonzero");
    return scan_impl(seq, N, R, [&](int n, int r) { return Real(dnr_exact(seq, n, r)); });
}

ScanReport total_positivity_scan(const std::vector<Real>& seq, const std::vector<Real>& errs,
                                 int N, int R, const PrecisionContext& ctx) {
    if (seq.empty() || seq[0] == 0)
        raise(ErrorKind::UsageError, "total_positivity_scan: c_0 must be nonzero");
    return scan_impl(seq, N, R, [&](int n, int r) { return dnr(seq, errs, n, r, ctx).value; });
}

namespace {

template <class T>
std::vector<T> power_sums_impl(const std::vector<T>& c, int m) {
    if (c.empty() || c[0] == T(0))
        raise(ErrorKind::ZeroLeadingCoefficient, "power_sums: c_0 must be nonzero");
    std::vector<T> s(m + 1, T(0)); // s[0] unused
    for (int k = 1; k <= m; ++k) {
        T acc = (k < static_cast<int>(c.size())) ? T(k) * c[k] : T(0);
        for (int i = 1; i < k; ++i)
            if (i < static_cast<int>(c.size())) acc += c[i] * s[k - i];
        s[k] = -acc / c[0];
    }
    return std::vector<T>(s.begin() + 1, s.end());
}

} // namespace

std::vector<Rational> power_sums(const std::vector<Rational>& c, int m) {
    return power_sums_impl(c, m);
}
std::vector<Real> power_sums(const std::vector<Real>& c, int m) { return power_sums_impl(c, m); }

std::vector<Real> s_hat_taylor(int kmax, const MomentTable& table) {
    PrecisionGuard guard(table.ctx());
    std::vector<Real> c(kmax + 1, Real(0));
    for (int k = 0; 2 * k <= kmax; ++k) {
        Real v = table.c(k).value;
        c[2 * k] = (k % 2 == 0) ? v : -v;
    }
    return c;
}

HankelResult hankel_positive(const std::vector<Real>& s_from_2, int r) {
    if (static_cast<int>(s_from_2.size()) < 2 * r + 1)
        raise(ErrorKind::UsageError, "hankel_positive: need s_2 .. s_{2+2r}");
    HankelResult out;
    out.all_positive = true;
    for (int j = 0; j <= r; ++j) {
        std::vector<std::vector<Real>> m(j + 1, std::vector<Real>(j + 1));
        for (int a = 0; a <= j; ++a)
            for (int b = 0; b <= j; ++b) m[a][b] = s_from_2[a + b];
        auto [det, err] = det_floating(m);
        (void)err;
        out.minors.push_back(det);
        if (!(det > 0)) out.all_positive = false;
    }
    return out;
}

std::vector<Rational> hankel_minors_exact(const std::vector<Rational>& s_from_2, int r) {
    if (static_cast<int>(s_from_2.size()) < 2 * r + 1)
        raise(ErrorKind::UsageError, "hankel_minors: need s_2 .. s_{2+2r}");
    std::vector<Rational> out;
    for (int j = 0; j <= r; ++j) {
        std::vector<std::vector<Rational>> m(j + 1, std::vector<Rational>(j + 1));
        for (int a = 0; a <= j; ++a)
            for (int b = 0; b <= j; ++b) m[a][b] = s_from_2[a + b];
        out.push_back(det_exact(m));
    }
    return out;
}

BorchardtHermite borchardt_hermite(const RatPoly& p) {
    int n = p.degree();
    if (n < 1) raise(ErrorKind::UsageError, "borchardt_hermite: degree >= 1 required");
    // Newton sums S_0 = n, and for m >= 1:
    //   sum_{k=0}^{m} a_{n-k} S_{m-k} = (n-m) a_{n-m}   (a_j = 0 for j < 0)
    std::vector<Rational> S(2 * n - 1, Rational(0));
    S[0] = Rational(n);
    auto a = [&](int j) { return j >= 0 ? p.coeff(j) : Rational(0); };
    for (int m = 1; m <= 2 * n - 2; ++m) {
        Rational rhs = (m < n) ? Rational(n - m) * a(n - m) : Rational(0);
        Rational acc(0);
        for (int k = 1; k <= m; ++k) acc += a(n - k) * S[m - k];
        S[m] = (rhs - acc) / a(n);
    }
    BorchardtHermite out;
    out.all_real = true;
    out.distinct_count = 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = S[i + j];
        Rational d = det_exact(m);
        out.minors.push_back(d);
        if (d < 0) out.all_real = false;
        if (d != 0) out.distinct_count = k;
    }
    return out;
}

} // namespace xizero::moments
