#include "xizero/polynomial.hpp"

#include <random>

namespace mp = boost::multiprecision;

namespace xizero {

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divmod(b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Rational lead = a.leading();
    std::vector<Rational> c(a.coeffs());
    for (auto& v : c) v /= lead;
    return RatPoly(std::move(c));
}

RatPoly square_free(const RatPoly& p) {
    if (p.degree() <= 0) return p;
    RatPoly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return p.divmod(g).first;
}

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        const RatPoly& a = chain[chain.size() - 2];
        const RatPoly& b = chain.back();
        RatPoly r = a.divmod(b).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int variations_at(const std::vector<RatPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Sign variations "at -infinity" / "+infinity" from the leading coefficients.
int variations_at_inf(const std::vector<RatPoly>& chain, int dir) {
    int var = 0, prev = 0;
    for (const auto& q : chain) {
        if (q.is_zero()) continue;
        int s = sign_of(q.leading());
        if (dir < 0 && q.degree() % 2 == 1) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

} // namespace

int sturm_count(const RatPoly& p, const Rational& a, const Rational& b) {
    // With the zero-skipping variation count V is right-continuous, so
    // V(a) - V(b) is exactly the number of distinct roots in (a, b].
    if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
    RatPoly sf = square_free(p);
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_chain(sf);
    return variations_at(chain, a) - variations_at(chain, b);
}

int sturm_count_all(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
    RatPoly sf = square_free(p);
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_chain(sf);
    return variations_at_inf(chain, -1) - variations_at_inf(chain, +1);
}

bool all_roots_real(const RatPoly& p) {
    if (p.degree() <= 0) return true;
    RatPoly sf = square_free(p);
    return sturm_count_all(sf) == sf.degree();
}

Rational root_bound(const RatPoly& p) {
    if (p.degree() <= 0) return Rational(1);
    Rational lead = abs(p.leading());
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = rmax(m, Rational(abs(p.coeff(i)) / lead));
    return m + 1;
}

int real_root_count_with_multiplicity(const RatPoly& p, const Rational& a, const Rational& b) {
    // gcd chain: every root of cur appears once in cur/gcd(cur,cur') and with
    // multiplicity reduced by one in the gcd, so summing distinct-root counts
    // down the chain recovers multiplicities.
    RatPoly cur = p;
    int total = 0;
    while (cur.degree() > 0) {
        RatPoly g = poly_gcd(cur, cur.derivative());
        RatPoly d = g.degree() > 0 ? cur.divmod(g).first : cur;
        total += sturm_count(d, a, b);
        cur = g;
    }
    return total;
}

int real_root_count_with_multiplicity(const RatPoly& p) {
    Rational b = root_bound(p);
    return real_root_count_with_multiplicity(p, -b, b);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const RatPoly& p, const Rational& width) {
    std::vector<std::pair<Rational, Rational>> out;
    RatPoly sf = square_free(p);
    if (sf.degree() <= 0) return out;
    auto chain = sturm_chain(sf);
    auto count_in = [&](const Rational& a, const Rational& b) {
        return variations_at(chain, a) - variations_at(chain, b);
    };
    Rational bnd = root_bound(sf);
    struct Seg { Rational a, b; int n; };
    std::vector<Seg> work{{-bnd, bnd, count_in(-bnd, bnd)}};
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1 && s.b - s.a <= width) {
            out.emplace_back(s.a, s.b);
            continue;
        }
        Rational m = (s.a + s.b) / 2;
        int left = count_in(s.a, m);
        work.push_back({s.a, m, left});
        work.push_back({m, s.b, s.n - left});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Cplx> complex_roots(const RealPoly& p, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    int n = p.degree();
    if (n <= 0) return {};
    // monic normalization
    std::vector<Real> c(p.coeffs());
    Real lead = c.back();
    for (auto& v : c) v /= lead;
    RealPoly monic{std::vector<Real>(c)};

    Real radius(1);
    for (int i = 0; i < n; ++i) radius = rmax(radius, 2 * mp::pow(mp::abs(c[i]), Real(1) / (n - i)));

    std::mt19937 rng(20240901u);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    const Real pi = real_pi();

    for (int attempt = 0; attempt < 6; ++attempt) {
        std::vector<Cplx> z(n);
        for (int i = 0; i < n; ++i) {
            Real th = 2 * pi * (Real(i) + Real("0.357") + Real(jitter(rng))) / n;
            z[i] = Cplx(radius * mp::cos(th), radius * mp::sin(th));
        }
        Real eps = mp::ldexp(radius, -static_cast<int>(ctx.bits) + 6);
        bool done = false;
        for (int it = 0; it < 400 && !done; ++it) {
            Real move(0);
            for (int i = 0; i < n; ++i) {
                Cplx num = monic.eval(z[i]);
                Cplx den(Real(1), Real(0));
                for (int j = 0; j < n; ++j)
                    if (j != i) den = den * (z[i] - z[j]);
                if (abs(den) == 0) { den = Cplx(Real(1e-30), Real(0)); }
                Cplx d = num / den;
                z[i] -= d;
                move = rmax(move, abs(d));
            }
            if (move < eps) done = true;
        }
        if (done) {
            std::sort(z.begin(), z.end(), [](const Cplx& a, const Cplx& b) {
                if (a.re != b.re) return a.re < b.re;
                return a.im < b.im;
            });
            return z;
        }
        radius *= Real("1.5");
    }
    raise(ErrorKind::RootFindingNoConvergence, "complex_roots: Durand-Kerner stalled");
}

Rational det_exact(const std::vector<std::vector<Rational>>& m) {
    size_t n = m.size();
    if (n == 0) return Rational(1);
    // Clear denominators per row, track the scale, then Bareiss over Z.
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Rational scale(1);
    for (size_t i = 0; i < n; ++i) {
        Integer l(1);
        for (size_t j = 0; j < n; ++j) l = lcm(l, Integer(denominator(m[i][j])));
        scale /= Rational(l);
        for (size_t j = 0; j < n; ++j) {
            Rational v = m[i][j] * Rational(l);
            a[i][j] = Integer(numerator(v));
        }
    }
    Integer prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return Rational(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return Rational(sign) * Rational(a[n - 1][n - 1]) * scale;
}

std::pair<Real, Real> det_floating(std::vector<std::vector<Real>> m) {
    size_t n = m.size();
    if (n == 0) return {Real(1), Real(0)};
    Real det(1);
    Real growth(0);
    for (auto& row : m)
        for (auto& v : row) growth = rmax(growth, mp::abs(v));
    Real initial_scale = growth;
    unsigned digits = Real::default_precision();
    int bits = static_cast<int>(digits * 3.32) - 4;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (mp::abs(m[i][k]) > mp::abs(m[piv][k])) piv = i;
        if (m[piv][k] == 0)
            return {Real(0), mp::pow(growth, static_cast<int>(n)) * mp::ldexp(Real(static_cast<long>(n)), -bits)};
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            Real f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                growth = rmax(growth, mp::abs(m[i][j]));
            }
        }
    }
    Real err = Real(static_cast<long>(n * n * n)) * (growth / rmax(Real(1e-300), initial_scale)) *
               mp::abs(det) * mp::ldexp(Real(1), -bits) +
               mp::pow(growth, static_cast<int>(n)) * Real(static_cast<long>(n * n)) * mp::ldexp(Real(1), -bits);
    return {det, err};
}

} // namespace xizero
