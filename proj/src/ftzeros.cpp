#include "xizero/ftzeros.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace mp = boost::multiprecision;

namespace xizero::ftz {

namespace {

std::string fmt(const Real& x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

} // namespace

void StepFunction::validate() const {
    if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
        raise(ErrorKind::UsageError, "StepFunction: need n+2 breakpoints for n+1 values");
    if (breakpoints.front() != 0) raise(ErrorKind::UsageError, "StepFunction: t_0 must be 0");
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            raise(ErrorKind::UsageError, "StepFunction: breakpoints must strictly increase");
    if (!(A() > 0)) raise(ErrorKind::UsageError, "StepFunction: A must be positive");
    if (irrational_proxy.size() > std::max<size_t>(breakpoints.size(), 2) - 2)
        raise(ErrorKind::UsageError, "StepFunction: one proxy flag per interior breakpoint");
}

bool StepFunction::strictly_increasing() const {
    if (!(values.front() > 0)) return false;
    for (size_t i = 0; i + 1 < values.size(); ++i)
        if (!(values[i] < values[i + 1])) return false;
    return true;
}

StepFunction StepFunction::parse(std::istream& in) {
    StepFunction sf;
    std::string line;
    Rational A(0);
    std::vector<std::pair<Rational, bool>> lefts;
    std::vector<Real> vals;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("A=", 0) == 0) {
            A = Rational(line.substr(2));
            continue;
        }
        std::istringstream ls(line);
        std::string rat, val;
        if (!(ls >> rat >> val)) raise(ErrorKind::IoError, "StepFunction: bad fixture line: " + line);
        bool proxy = false;
        if (!rat.empty() && rat.back() == '~') {
            proxy = true;
            rat.pop_back();
        }
        lefts.emplace_back(Rational(rat), proxy);
        vals.emplace_back(Real(val));
    }
    if (A == 0 || lefts.empty()) raise(ErrorKind::IoError, "StepFunction: fixture missing A= or pieces");
    for (auto& [t, proxy] : lefts) sf.breakpoints.push_back(t);
    sf.breakpoints.push_back(A);
    sf.values = std::move(vals);
    for (size_t i = 1; i < lefts.size(); ++i) sf.irrational_proxy.push_back(lefts[i].second);
    sf.validate();
    return sf;
}

void StepFunction::serialize(std::ostream& out) const {
    out << "A=" << A() << "\n";
    for (size_t i = 0; i < values.size(); ++i) {
        out << breakpoints[i];
        if (i >= 1 && i - 1 < irrational_proxy.size() && irrational_proxy[i - 1]) out << "~";
        out << " " << fmt(values[i]) << "\n";
    }
}

SampledDensity lookup_density(const std::string& name) {
    SampledDensity d;
    d.name = name;
    d.A = 1;
    d.monotone_increasing = true;
    if (name == "linear") {
        d.evaluator = [](const Real& t) { return t; };
        d.integrable_bound = Real(1) / 2;
    } else if (name == "quadratic") {
        d.evaluator = [](const Real& t) { return t * t; };
        d.integrable_bound = Real(1) / 3;
    } else if (name == "exp") {
        d.evaluator = [](const Real& t) { return mp::exp(t); };
        d.integrable_bound = mp::exp(Real(1)) - 1;
    } else if (name == "sqrt") {
        d.evaluator = [](const Real& t) { return mp::sqrt(t); };
        d.integrable_bound = Real(2) / 3;
    } else if (name == "log1p") {
        d.evaluator = [](const Real& t) { return mp::log(1 + t); };
        d.integrable_bound = Real(1);
    } else {
        raise(ErrorKind::UsageError, "lookup_density: unknown density '" + name + "'");
    }
    return d;
}

namespace {

Real density_A(const Density& phi) {
    if (std::holds_alternative<StepFunction>(phi)) return Real(std::get<StepFunction>(phi).A());
    return std::get<SampledDensity>(phi).A;
}

} // namespace

Cplx ft_eval(const Density& phi, const Cplx& z, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    if (mp::abs(z.im) > 8) raise(ErrorKind::UsageError, "ft_eval: |Im z| <= 8 envelope guard");
    if (std::holds_alternative<StepFunction>(phi)) {
        const StepFunction& sf = std::get<StepFunction>(phi);
        sf.validate();
        if (abs(z) == 0) {
            Real acc(0);
            for (size_t j = 0; j < sf.values.size(); ++j)
                acc += sf.values[j] * Real(sf.breakpoints[j + 1] - sf.breakpoints[j]);
            return Cplx(acc);
        }
        Cplx iz(-z.im, z.re); // i z
        Cplx acc;
        for (size_t j = 0; j < sf.values.size(); ++j) {
            Cplx hi = cexp(iz * Real(sf.breakpoints[j + 1]));
            Cplx lo = cexp(iz * Real(sf.breakpoints[j]));
            acc += sf.values[j] * ((hi - lo) / iz);
        }
        return acc;
    }
    const SampledDensity& sd = std::get<SampledDensity>(phi);
    auto re = [&](const Real& t) { return sd.evaluator(t) * mp::exp(-z.im * t) * mp::cos(z.re * t); };
    auto im = [&](const Real& t) { return sd.evaluator(t) * mp::exp(-z.im * t) * mp::sin(z.re * t); };
    numerics::QuadratureResult qr = numerics::integrate(re, Real(0), sd.A, ctx);
    numerics::QuadratureResult qi = numerics::integrate(im, Real(0), sd.A, ctx);
    return {qr.value, qi.value};
}

Real w_eval(const Density& phi, const Real& alpha, const Real& z, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    if (std::holds_alternative<StepFunction>(phi)) {
        const StepFunction& sf = std::get<StepFunction>(phi);
        if (z == 0) {
            Real acc(0);
            for (size_t j = 0; j < sf.values.size(); ++j)
                acc += sf.values[j] * mp::sin(alpha) * Real(sf.breakpoints[j + 1] - sf.breakpoints[j]);
            return acc;
        }
        Real acc(0);
        for (size_t j = 0; j < sf.values.size(); ++j) {
            Real hi = mp::cos(z * Real(sf.breakpoints[j + 1]) + alpha);
            Real lo = mp::cos(z * Real(sf.breakpoints[j]) + alpha);
            acc += sf.values[j] * (lo - hi) / z;
        }
        return acc;
    }
    const SampledDensity& sd = std::get<SampledDensity>(phi);
    auto f = [&](const Real& t) { return sd.evaluator(t) * mp::sin(z * t + alpha); };
    return numerics::integrate(f, Real(0), sd.A, ctx).value;
}

bool exceptional_test(const StepFunction& phi) {
    phi.validate();
    for (bool proxy : phi.irrational_proxy)
        if (proxy) return false;
    return true;
}

Integer exceptional_q(const StepFunction& phi) {
    if (!exceptional_test(phi))
        raise(ErrorKind::UsageError, "exceptional_q: density is flagged non-exceptional");
    Integer q(1);
    const Rational A = phi.A();
    for (size_t i = 1; i + 1 < phi.breakpoints.size(); ++i) {
        Rational scaled = phi.breakpoints[i] / A;
        q = lcm(q, Integer(denominator(scaled)));
    }
    return q;
}

AmbientReport ambient_report(const Density& phi, const Real& alpha, int K,
                             const PrecisionContext& ctx, bool strict) {
    PrecisionGuard guard(ctx);
    if (alpha < 0 || alpha >= real_pi())
        raise(ErrorKind::UsageError, "ambient_report: alpha in [0, pi) required");
    if (K < 1) raise(ErrorKind::UsageError, "ambient_report: K >= 1");
    if (std::holds_alternative<StepFunction>(phi)) {
        const StepFunction& sf = std::get<StepFunction>(phi);
        if (!sf.strictly_increasing())
            raise(ErrorKind::UsageError, "ambient_report: step density must be positive increasing");
        if (alpha == 0 && exceptional_test(sf))
            raise(ErrorKind::UsageError, "ambient_report: sine case requires non-exceptional density");
    }
    const Real A = density_A(phi);
    const Real pi = real_pi();

    auto W = [&](const Real& z) { return w_eval(phi, alpha, z, ctx); };

    AmbientReport rep;
    // endpoint alternation: (-1)^k W((k pi - alpha)/A) < 0 for k = 1..K+2
    rep.endpoint_signs_ok = true;
    for (int k = 1; k <= K + 2; ++k) {
        Real v = W((Real(k) * pi - alpha) / A);
        Real want = (k % 2 == 0) ? v : -v; // (-1)^k v < 0  <=>  want < 0 with want = (-1)^k v
        if (!(want < 0)) rep.endpoint_signs_ok = false;
    }

    // zero census over (0, ((K+2) pi - alpha)/A]
    Real lo = pi / (64 * A);
    Real hi = (Real(K + 2) * pi - alpha) / A;
    Real step = pi / (8 * A);
    auto zeros = numerics::isolate_zeros(W, lo, hi, step, ctx);

    for (int p = 2; p <= K + 1; ++p) {
        AmbientInterval iv;
        iv.p = p;
        iv.lo = (Real(p - 1) * pi - alpha) / A;
        iv.hi = (Real(p) * pi - alpha) / A;
        for (const auto& z : zeros)
            if (z.location > iv.lo && z.location <= iv.hi) {
                ++iv.zeros_found;
                iv.zero = z.location;
                iv.simple = iv.simple && z.simple;
            }
        rep.intervals.push_back(iv);
    }
    // no strays outside the union and inside the scanned range
    bool strays = false;
    for (const auto& z : zeros) {
        bool inside = false;
        for (const auto& iv : rep.intervals)
            if (z.location > iv.lo && z.location <= iv.hi) inside = true;
        Real first_lo = rep.intervals.front().lo;
        Real last_hi = rep.intervals.back().hi;
        if (!inside && z.location > first_lo && z.location <= last_hi) strays = true;
    }

    if (alpha == 0) {
        // 0 is a simple zero of the sine transform: W(0) = 0, W'(0) > 0
        Real h = mp::ldexp(Real(1), -static_cast<int>(ctx.bits) / 3);
        Real w0 = W(Real(0));
        Real d0 = (W(h) - W(-h)) / (2 * h);
        rep.zero_at_origin_ok = mp::abs(w0) <= Real(ctx.abs_tol) * 16 + mp::abs(d0) * h && d0 > 0;
    }

    rep.pass = rep.endpoint_signs_ok && rep.zero_at_origin_ok && !strays;
    for (const auto& iv : rep.intervals)
        rep.pass = rep.pass && iv.zeros_found == 1 && iv.simple;
    if (strict && !rep.pass) {
        std::string what = "ambient_report: structure violated";
        for (const auto& iv : rep.intervals)
            if (iv.zeros_found != 1)
                what += " [I_" + std::to_string(iv.p) + " holds " + std::to_string(iv.zeros_found) + " zeros]";
        if (!rep.endpoint_signs_ok) what += " [endpoint sign alternation broken]";
        raise(ErrorKind::StructureViolation, what);
    }
    return rep;
}

int half_plane_count(const Density& phi, const Rectangle& rect, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    if (!(rect.y_hi < 0))
        raise(ErrorKind::UsageError, "half_plane_count: rectangle must lie below the real axis");
    if (!(rect.x_lo < rect.x_hi) || !(rect.y_lo < rect.y_hi))
        raise(ErrorKind::UsageError, "half_plane_count: degenerate rectangle");

    // counterclockwise corner walk
    std::vector<Cplx> corners = {{rect.x_lo, rect.y_lo},
                                 {rect.x_hi, rect.y_lo},
                                 {rect.x_hi, rect.y_hi},
                                 {rect.x_lo, rect.y_hi},
                                 {rect.x_lo, rect.y_lo}};
    auto F = [&](const Cplx& z) { return ft_eval(phi, z, ctx); };

    const Real pi = real_pi();
    Real total(0);
    long evals = 0;
    for (size_t s = 0; s + 1 < corners.size(); ++s) {
        struct Seg { Cplx a, b; Cplx fa, fb; int depth; };
        Cplx fa0 = F(corners[s]), fb0 = F(corners[s + 1]);
        std::vector<Seg> work{{corners[s], corners[s + 1], fa0, fb0, 0}};
        while (!work.empty()) {
            Seg sg = work.back();
            work.pop_back();
            Real ma = abs(sg.fa), mb = abs(sg.fb);
            if (ma <= Real(ctx.abs_tol) || mb <= Real(ctx.abs_tol))
                raise(ErrorKind::BoundaryZeroSuspected,
                      "half_plane_count: |f| below abs_tol on the boundary near (" + fmt(sg.a.re) +
                          ", " + fmt(sg.a.im) + "); shrink the rectangle");
            Cplx w = sg.fb * conj(sg.fa);
            Real dtheta = mp::atan2(w.im, w.re);
            if (mp::abs(dtheta) < pi / 2) {
                total += dtheta;
                continue;
            }
            if (sg.depth > 48)
                raise(ErrorKind::NoConvergence, "half_plane_count: argument refinement stalled");
            Cplx m((sg.a.re + sg.b.re) / 2, (sg.a.im + sg.b.im) / 2);
            Cplx fm = F(m);
            ++evals;
            work.push_back({sg.a, m, sg.fa, fm, sg.depth + 1});
            work.push_back({m, sg.b, fm, sg.fb, sg.depth + 1});
        }
    }
    (void)evals;
    Real winding = total / (2 * pi);
    long n = std::lround(static_cast<double>(winding));
    if (mp::abs(winding - Real(n)) > Real(1) / 4)
        raise(ErrorKind::NoConvergence, "half_plane_count: winding " + fmt(winding) + " not near an integer");
    return static_cast<int>(n);
}

HermiteBiehlerResult hermite_biehler_check(const RatPoly& P, const RatPoly& Q) {
    if (P.degree() < 1 || Q.degree() < 1)
        raise(ErrorKind::UsageError, "hermite_biehler_check: P, Q nonconstant required");
    if (poly_gcd(P, Q).degree() > 0)
        raise(ErrorKind::CommonZero, "hermite_biehler_check: P and Q share a zero");

    HermiteBiehlerResult res;
    // real and simple
    auto real_simple = [](const RatPoly& p) {
        return poly_gcd(p, p.derivative()).degree() == 0 && all_roots_real(p);
    };
    if (!real_simple(P) || !real_simple(Q)) return res;

    // interlacing by merged isolated roots, refining until all intervals are
    // pairwise disjoint
    Rational width(1, 1024);
    std::vector<std::pair<Rational, Rational>> rp, rq;
    for (int tries = 0; tries < 64; ++tries) {
        rp = isolate_real_roots(P, width);
        rq = isolate_real_roots(Q, width);
        bool overlap = false;
        for (const auto& a : rp)
            for (const auto& b : rq)
                if (!(a.second < b.first || b.second < a.first)) overlap = true;
        if (!overlap) break;
        width /= 16;
        if (tries == 63)
            raise(ErrorKind::NoConvergence, "hermite_biehler_check: root separation failed");
    }
    struct Tagged { Rational mid; int who; };
    std::vector<Tagged> merged;
    for (const auto& a : rp) merged.push_back({(a.first + a.second) / 2, 0});
    for (const auto& b : rq) merged.push_back({(b.first + b.second) / 2, 1});
    std::sort(merged.begin(), merged.end(), [](const Tagged& x, const Tagged& y) { return x.mid < y.mid; });
    res.interlaced = merged.size() >= 2;
    for (size_t i = 0; i + 1 < merged.size(); ++i)
        if (merged[i].who == merged[i + 1].who) res.interlaced = false;

    // Wronskian Q P' - P Q' sampled between consecutive roots and outside;
    // a strict constant sign pins the half-plane of P + iQ.
    RatPoly wr = Q * P.derivative() - P * Q.derivative();
    std::vector<Rational> samples;
    if (merged.empty()) {
        samples.push_back(Rational(0));
    } else {
        samples.push_back(merged.front().mid - 1);
        for (size_t i = 0; i + 1 < merged.size(); ++i)
            samples.push_back((merged[i].mid + merged[i + 1].mid) / 2);
        samples.push_back(merged.back().mid + 1);
    }
    int pos = 0, neg = 0;
    for (const auto& x : samples) {
        Rational v = wr.eval(x);
        if (v > 0) ++pos;
        if (v < 0) ++neg;
    }
    res.wronskian_sign_ok = (pos == static_cast<int>(samples.size())) ||
                            (neg == static_cast<int>(samples.size()));
    if (res.interlaced && res.wronskian_sign_ok) res.half_plane = pos ? +1 : -1;
    return res;
}

numerics::QuadratureResult phi_alpha_eval(const Real& alpha, const Real& z,
                                          const PrecisionContext& ctx) {
    if (!(alpha > 1)) raise(ErrorKind::UsageError, "phi_alpha_eval: alpha > 1 required");
    PrecisionGuard guard(ctx);
    auto tail = [&](const Real& T) {
        // for t >= T >= 1 convexity gives t^alpha >= T^alpha + alpha T^{alpha-1}(t-T)
        if (T < 1) return Real("1e100000");
        return mp::exp(-mp::pow(T, alpha)) / (alpha * mp::pow(T, alpha - 1));
    };
    auto f = [&](const Real& t) { return mp::exp(-mp::pow(t, alpha)) * mp::cos(z * t); };
    return numerics::integrate_semi_infinite(f, Real(0), tail, ctx);
}

std::vector<Real> asymptotic_check(const Real& alpha, const std::vector<Real>& xs,
                                   const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    Real limit = mp::tgamma(alpha + 1) * mp::sin(real_pi() * alpha / 2);
    std::vector<Real> out;
    for (const Real& x : xs) {
        numerics::QuadratureResult q = phi_alpha_eval(alpha, x, ctx);
        out.push_back(mp::pow(x, alpha + 1) * q.value - limit);
    }
    return out;
}

BernsteinSums bernstein_zero_sum(const std::vector<Real>& R_list, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    const Real pi = real_pi();
    BernsteinSums out;
    for (const Real& R : R_list) {
        // family one: +-2 pi k, real, cos(theta) = +-1: cancels in pairs.
        // family two: pi/2, -3pi/2, 5pi/2, -7pi/2, ... with |z| = (2k+1)pi/2,
        // cos(theta_n) = sign of the zero.
        Real sum(0);
        for (long k = 0;; ++k) {
            Real r = Real(2 * k + 1) * pi / 2;
            if (r > R) break;
            Real contrib = 1 / r;
            sum += (k % 2 == 0) ? contrib : -contrib;
        }
        out.partials.emplace_back(R, sum);
    }
    // -Re f'(0)/f(0) for f = g h, g = (e^{iz}-1)/(iz), h = e^{-iz} + i:
    // g'(0)/g(0) = i/2 and h'(0)/h(0) = -i/(1+i), so the log-derivative at 0
    // is i/2 - i/(1+i) = -1/2 + 0i.
    Cplx i01(Real(0), Real(1));
    Cplx gp = i01 / Real(2);
    Cplx hp = (Cplx(Real(0)) - i01) / Cplx(Real(1), Real(1));
    Cplx logderiv = gp + hp;
    out.logderiv = -logderiv.re;
    return out;
}

} // namespace xizero::ftz
