// Series summation, quadrature, and zero isolation against closed forms and
// independent oracles.
#include "doctest.h"

#include "xizero/numerics.hpp"

#include <random>

using namespace xizero;
using namespace xizero::numerics;
namespace mp = boost::multiprecision;

namespace {

PrecisionContext ctx128() { return PrecisionContext(128, 1e-25, 1e-32, 3); }

double dbl(const Real& x) { return static_cast<double>(x); }

} // namespace

TEST_CASE("sum_with_tail: geometric series") {
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    auto q = sum_with_tail([](long n) { return mp::ldexp(Real(1), -static_cast<int>(n)); },
                           [](long n) { return mp::ldexp(Real(1), -static_cast<int>(n)); }, ctx);
    CHECK(mp::abs(q.value - 1) <= q.error_bound + Real(ctx.rel_tol) * 2);
}

TEST_CASE("sum_with_tail: zero series returns after one term") {
    auto ctx = ctx128();
    auto q = sum_with_tail([](long) { return Real(0); }, [](long) { return Real(0); }, ctx);
    CHECK(q.value == 0);
    CHECK(q.evaluations == 1);
}

TEST_CASE("sum_with_tail: non-decaying tail reports") {
    auto ctx = ctx128();
    CHECK_THROWS_AS(sum_with_tail([](long) { return Real(1); }, [](long) { return Real(1); }, ctx, 1000),
                    Error);
}

TEST_CASE("integrate: linear ramp") {
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    auto q = integrate([](const Real& t) { return t; }, Real(0), Real(1), ctx);
    CHECK(mp::abs(q.value - Real(1) / 2) <= q.error_bound);
    CHECK(q.error_bound <= ctx.tol_for(q.value));
}

TEST_CASE("integrate: sin^2 x / x^2 over the line equals pi") {
    // 2 * int_0^inf with the 1/x^2 tail bound; sanity vector, so the
    // tolerance here is modest: the truncation point scales like 1/abs_tol.
    PrecisionContext ctx(64, 1e-4, 4e-5, 1);
    PrecisionGuard g(ctx);
    auto f = [](const Real& x) {
        if (x == 0) return Real(1);
        Real s = mp::sin(x);
        return s * s / (x * x);
    };
    auto q = integrate_semi_infinite(f, Real(0), [](const Real& T) { return 1 / T; }, ctx);
    Real total = 2 * q.value;
    CHECK(dbl(mp::abs(total - real_pi())) < 1e-3);
}

TEST_CASE("integrate: recomputation at doubled precision stays within the bound") {
    auto ctx = ctx128();
    auto f = [](const Real& t) { return mp::exp(-t) * mp::cos(3 * t); };
    auto q1 = integrate(f, Real(0), Real(2), ctx);
    PrecisionContext ctx2 = ctx.escalated();
    auto q2 = integrate(f, Real(0), Real(2), ctx2);
    CHECK(mp::abs(q1.value - q2.value) <= q1.error_bound);
}

TEST_CASE("integrate: linearity within combined bounds on random smooth pairs") {
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        double a1 = U(rng), a2 = U(rng), w1 = U(rng), w2 = U(rng);
        auto f = [&](const Real& t) { return mp::exp(Real(a1) * t) * mp::cos(Real(w1) * t); };
        auto gfn = [&](const Real& t) { return mp::sin(Real(w2) * t + Real(a2)); };
        double al = U(rng), be = U(rng);
        auto combo = [&](const Real& t) { return Real(al) * f(t) + Real(be) * gfn(t); };
        auto qf = integrate(f, Real(0), Real(1), ctx);
        auto qg = integrate(gfn, Real(0), Real(1), ctx);
        auto qc = integrate(combo, Real(0), Real(1), ctx);
        Real lhs = mp::abs(qc.value - (Real(al) * qf.value + Real(be) * qg.value));
        Real rhs = qc.error_bound + mp::abs(Real(al)) * qf.error_bound +
                   mp::abs(Real(be)) * qg.error_bound + Real(ctx.abs_tol);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("isolate_zeros: x^2 - 1 on [0,2]") {
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    auto zs = isolate_zeros([](const Real& x) { return x * x - 1; }, Real(0), Real(2), Real(1) / 4, ctx);
    REQUIRE(zs.size() == 1);
    CHECK(mp::abs(zs[0].location - 1) <= zs[0].bracket_width + Real(ctx.abs_tol) * 2);
    CHECK(zs[0].simple);
}

TEST_CASE("isolate_zeros: sin on [1,7] finds pi and 2pi") {
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    auto zs = isolate_zeros([](const Real& x) { return mp::sin(x); }, Real(1), Real(7), Real(1) / 4, ctx);
    REQUIRE(zs.size() == 2);
    CHECK(dbl(mp::abs(zs[0].location - real_pi())) < 1e-25);
    CHECK(dbl(mp::abs(zs[1].location - 2 * real_pi())) < 1e-25);
    CHECK(zs[0].simple);
    CHECK(zs[1].simple);
}

TEST_CASE("isolate_zeros: tan x - x via its entire representative") {
    // sin x - x cos x has the same zeros and no poles; Newton oracle at 4x
    // precision freezes the expected root.
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    auto f = [](const Real& x) { return mp::sin(x) - x * mp::cos(x); };
    auto zs = isolate_zeros(f, Real(3), Real(5), Real(1) / 8, ctx);
    REQUIRE(zs.size() == 1);

    PrecisionContext oc = ctx.oracle();
    PrecisionGuard g2(oc);
    Real x = Real("4.49");
    for (int it = 0; it < 64; ++it) {
        Real fx = mp::sin(x) - x * mp::cos(x);
        Real dfx = x * mp::sin(x);
        x -= fx / dfx;
    }
    CHECK(dbl(mp::abs(zs[0].location - x)) < 1e-25);
    // literature anchor for the ballpark
    CHECK(dbl(mp::abs(zs[0].location - Real("4.493409457909064"))) < 1e-12);
}

TEST_CASE("isolate_zeros: flat tangency reports instead of guessing") {
    PrecisionContext ctx(64, 1e-10, 1e-12, 0);
    PrecisionGuard g(ctx);
    auto f = [&](const Real& x) { return (x - 1) * (x - 1); }; // touches zero, no crossing
    CHECK_THROWS_AS(isolate_zeros(f, Real(0), Real(2), Real(1) / 16, ctx), Error);
}

TEST_CASE("CosineTransformPlan agrees with direct integration") {
    auto ctx = ctx128();
    PrecisionGuard g(ctx);
    auto w = [](const Real& t) { return mp::exp(-t * t); };
    CosineTransformPlan plan(w, Real(12), Real(10), Real("1e-60"), ctx);
    for (double z : {0.0, 1.5, 7.25}) {
        auto lhs = plan.eval(Real(z));
        auto rhs = integrate([&](const Real& t) { return w(t) * mp::cos(Real(z) * t); }, Real(0),
                             Real(12), ctx);
        CHECK(mp::abs(lhs.value - rhs.value) <= lhs.error_bound + rhs.error_bound);
    }
}
