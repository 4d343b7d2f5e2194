#include "xizero/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace mp = boost::multiprecision;

namespace xizero::numerics {

namespace {

std::string fmt(const Real& x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// One tanh-sinh level on [a,b]: nodes x = c + s*tanh(pi/2 sinh(kh)).
// Returns the level sum; appends nodes/weights when collect != nullptr.
struct TsLevel {
    Real sum;
    long evals = 0;
};

struct TsNode {
    Real t, w;   // abscissa and weight (already scaled by half-width and h)
    bool coarse; // also present at the next-coarser level
};

TsLevel ts_level(const RealFn& f, const Real& c, const Real& s, double h, int level,
                 unsigned bits, std::vector<TsNode>* collect) {
    const Real pi_half = real_pi() / 2;
    const Real cutoff = mp::ldexp(Real(1), -static_cast<int>(bits) - 12);
    TsLevel out;
    out.sum = 0;
    // Only odd multiples of h are new relative to the coarser level, but for
    // the full sum we walk every node; callers difference successive levels.
    for (long k = 0;; ++k) {
        Real u = Real(h) * k;
        Real sh = pi_half * mp::sinh(u);
        Real ch = mp::cosh(sh);
        Real w = Real(h) * pi_half * mp::cosh(u) / (ch * ch);
        Real x = mp::tanh(sh); // in [0,1)
        if (w < cutoff && k > 4) break;
        Real wn = w * s;
        if (k == 0) {
            out.sum += wn * f(c);
            ++out.evals;
            if (collect) collect->push_back({c, wn, level > 0 && true});
        } else {
            Real dp = c + s * x, dm = c - s * x;
            out.sum += wn * (f(dp) + f(dm));
            out.evals += 2;
            if (collect) {
                bool shared = (k % 2 == 0);
                collect->push_back({dp, wn, shared});
                collect->push_back({dm, wn, shared});
            }
        }
    }
    return out;
}

struct PanelResult {
    Real value;
    Real err;
    long evals = 0;
    bool converged = false;
};

PanelResult integrate_panel(const RealFn& f, const Real& a, const Real& b,
                            const Real& budget, unsigned bits, int max_level,
                            std::vector<TsNode>* collect = nullptr) {
    Real c = (a + b) / 2, s = (b - a) / 2;
    PanelResult r;
    Real prev = 0;
    bool have_prev = false;
    for (int level = 0; level <= max_level; ++level) {
        double h = std::ldexp(1.0, -level);
        bool last_chance = (level == max_level);
        std::vector<TsNode>* sink = (collect && last_chance) ? collect : nullptr;
        TsLevel lv = ts_level(f, c, s, h, level, bits, sink);
        r.evals += lv.evals;
        if (have_prev) {
            Real est = mp::abs(lv.sum - prev);
            if (est <= budget || last_chance) {
                r.value = lv.sum;
                r.err = est;
                r.converged = (est <= budget);
                if (collect && !last_chance) {
                    // re-walk the converged level to record nodes
                    TsLevel again = ts_level(f, c, s, h, level, bits, collect);
                    (void)again;
                }
                return r;
            }
        }
        prev = lv.sum;
        have_prev = true;
    }
    r.value = prev;
    r.err = mp::abs(prev);
    return r;
}

} // namespace

QuadratureResult sum_with_tail(const IndexFn& term, const IndexFn& tail_bound,
                               const PrecisionContext& ctx, long hard_cap) {
    PrecisionGuard guard(ctx);
    Real partial = 0;
    Real abs_sum = 0; // drives the rounding floor; cancellation can leave
                      // |partial| far below the noise of the summation
    long n = 0;
    while (true) {
        ++n;
        Real t = term(n);
        partial += t;
        abs_sum += mp::abs(t);
        Real tb = tail_bound(n);
        if (tb <= ctx.tol_for(partial)) {
            QuadratureResult q;
            q.value = partial;
            q.error_bound = tb + Real(n) * mp::ldexp(abs_sum + Real(ctx.abs_tol), -static_cast<int>(ctx.bits));
            q.evaluations = n;
            return q;
        }
        if (n >= hard_cap)
            raise(ErrorKind::TailNotDecaying,
                  "sum_with_tail: tail bound still " + fmt(tb) + " after " + std::to_string(n) + " terms");
    }
}

QuadratureResult integrate(const RealFn& f, const Real& a, const Real& b,
                           const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    if (!(a < b)) {
        if (a == b) return {Real(0), Real(0), 0};
        raise(ErrorKind::UsageError, "integrate: a > b");
    }

    const int max_level = 9;
    const int max_depth = 24;
    QuadratureResult out;
    out.value = 0;
    out.error_bound = 0;

    // Rough pass to size the error budget, then one adaptive sweep; a second
    // sweep runs with a tighter budget when the first misses the tolerance.
    Real scale_guess = 0;
    {
        PanelResult rough = integrate_panel(f, a, b, Real(ctx.abs_tol), ctx.bits, 4);
        out.evaluations += rough.evals;
        scale_guess = mp::abs(rough.value);
    }

    for (int attempt = 0; attempt < 3; ++attempt) {
        Real budget_total = (Real(ctx.rel_tol) * scale_guess + Real(ctx.abs_tol)) / 2;
        budget_total = mp::ldexp(budget_total, -2 * attempt);
        struct Panel { Real a, b; int depth; };
        std::deque<Panel> work{{a, b, 0}};
        Real total = 0, err = 0;
        long evals = 0;
        while (!work.empty()) {
            Panel p = work.front();
            work.pop_front();
            Real frac = (p.b - p.a) / (b - a);
            PanelResult r = integrate_panel(f, p.a, p.b, budget_total * frac, ctx.bits, max_level);
            evals += r.evals;
            if (!r.converged && p.depth < max_depth) {
                Real m = (p.a + p.b) / 2;
                work.push_back({p.a, m, p.depth + 1});
                work.push_back({m, p.b, p.depth + 1});
            } else {
                if (!r.converged)
                    raise(ErrorKind::NoConvergence, "integrate: panel at depth limit near x=" + fmt(p.a));
                total += r.value;
                err += r.err;
            }
        }
        out.evaluations += evals;
        out.value = total;
        // rounding-noise floor
        err += Real(out.evaluations) * mp::ldexp(mp::abs(total) + Real(ctx.abs_tol), -static_cast<int>(ctx.bits));
        out.error_bound = err;
        if (err <= ctx.tol_for(total)) return out;
        scale_guess = mp::abs(total);
    }
    raise(ErrorKind::NoConvergence, "integrate: error bound " + fmt(out.error_bound) +
                                        " misses tolerance after refinement");
}

QuadratureResult integrate_semi_infinite(const RealFn& f, const Real& a,
                                         const RealFn& tail_bound,
                                         const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    if (!tail_bound)
        raise(ErrorKind::TailBoundMissing, "integrate: semi-infinite integral requires a tail bound");
    // Grow the truncation point until the analytic tail clears the tolerance.
    Real T = a + 1;
    Real tb = tail_bound(T);
    for (int i = 0; i < 200 && !(tb <= Real(ctx.abs_tol)); ++i) {
        T = a + (T - a) * 2;
        tb = tail_bound(T);
    }
    if (!(tb <= Real(ctx.abs_tol))) {
        // fall back to a relative criterion against a rough magnitude
        PanelResult rough = integrate_panel(f, a, a + 1, Real(ctx.abs_tol), ctx.bits, 4);
        if (!(tb <= ctx.tol_for(rough.value)))
            raise(ErrorKind::TailNotDecaying, "integrate: tail bound does not decay, still " + fmt(tb));
    }
    QuadratureResult q = integrate(f, a, T, ctx);
    q.error_bound += tb;
    return q;
}

namespace {

struct Bracket {
    Real a, b, fa, fb;
};

// Illinois regula falsi: keeps the bracket, converges superlinearly.
Bracket refine_bracket(const RealFn& f, Bracket br, const Real& width_goal, long& evals) {
    int side = 0;
    for (int it = 0; it < 4096 && (br.b - br.a) > width_goal; ++it) {
        Real fa = br.fa, fb = br.fb;
        Real x;
        if (fa != fb) {
            x = (br.a * fb - br.b * fa) / (fb - fa);
            Real lo = br.a + (br.b - br.a) / 64, hi = br.b - (br.b - br.a) / 64;
            if (!(x > lo && x < hi)) x = (br.a + br.b) / 2;
        } else {
            x = (br.a + br.b) / 2;
        }
        Real fx = f(x);
        ++evals;
        if (fx == 0) {
            Real eps = width_goal / 4;
            br = {x - eps, x + eps, f(x - eps), f(x + eps)};
            ++evals;
            ++evals;
            break;
        }
        if ((fx < 0) == (br.fa < 0)) {
            br.a = x;
            br.fa = fx;
            if (side == -1) br.fb /= 2; // Illinois trick
            side = -1;
        } else {
            br.b = x;
            br.fb = fx;
            if (side == +1) br.fa /= 2;
            side = +1;
        }
    }
    return br;
}

} // namespace

std::vector<ZeroRecord> isolate_zeros(const RealFn& f, const Real& lo, const Real& hi,
                                      const Real& scan_step, const PrecisionContext& ctx) {
    PrecisionGuard guard(ctx);
    if (!(lo < hi)) raise(ErrorKind::UsageError, "isolate_zeros: lo >= hi");
    if (!(scan_step > 0)) raise(ErrorKind::UsageError, "isolate_zeros: scan_step <= 0");

    const Real abs_tol(ctx.abs_tol);
    std::vector<ZeroRecord> out;
    long evals = 0;

    auto eval_nudged = [&](Real x) {
        Real fx = f(x);
        ++evals;
        return fx;
    };

    std::vector<Real> xs;
    std::vector<Real> fs;
    for (Real x = lo;; x += scan_step) {
        if (x > hi) x = hi;
        Real fx = eval_nudged(x);
        if (fx == 0) {
            // nudge exact grid hits off the zero
            x += scan_step / 1024;
            fx = eval_nudged(x);
        }
        xs.push_back(x);
        fs.push_back(fx);
        if (x >= hi) break;
    }

    auto fd_derivative = [&](const Real& x0) {
        Real h = mp::ldexp(Real(1) + mp::abs(x0), -static_cast<int>(ctx.bits) / 2);
        Real d = (f(x0 + h) - f(x0 - h)) / (2 * h);
        evals += 2;
        return mp::abs(d);
    };

    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        bool sign_change = (fs[i] < 0) != (fs[i + 1] < 0);
        if (sign_change) {
            Bracket br{xs[i], xs[i + 1], fs[i], fs[i + 1]};
            br = refine_bracket(f, br, abs_tol, evals);
            ZeroRecord z;
            z.location = (br.a + br.b) / 2;
            z.bracket_width = br.b - br.a;
            z.derivative_magnitude = fd_derivative(z.location);
            z.simple = z.derivative_magnitude > abs_tol;
            out.push_back(std::move(z));
            continue;
        }
        // Tangency suspicion: an interior dip of |f| below abs_tol without a
        // sign change. Escalate precision before reporting.
        bool interior = i > 0;
        if (interior && mp::abs(fs[i]) < abs_tol && mp::abs(fs[i - 1]) >= mp::abs(fs[i]) &&
            mp::abs(fs[i + 1]) >= mp::abs(fs[i])) {
            PrecisionContext up = ctx;
            bool resolved = false;
            while (up.max_escalations > 0) {
                up = up.escalated();
                PrecisionGuard g2(up);
                Real fa = f(xs[i] - scan_step / 2), fm = f(xs[i]), fb = f(xs[i] + scan_step / 2);
                evals += 3;
                bool chg = ((fa < 0) != (fm < 0)) || ((fm < 0) != (fb < 0));
                if (chg || mp::abs(fm) >= abs_tol) {
                    resolved = true; // either a genuine crossing (caught by the
                                     // neighbouring scan cells) or noise floor
                    break;
                }
            }
            if (!resolved)
                raise(ErrorKind::SuspectedTangency,
                      "isolate_zeros: |f| dips below abs_tol near x=" + fmt(xs[i]) +
                          " with no sign change at max escalation");
        }
    }
    return out;
}

// --- CosineTransformPlan ----------------------------------------------------

CosineTransformPlan::CosineTransformPlan(const RealFn& w, const Real& T, const Real& z_max,
                                         const Real& tail_bound_at_T, const PrecisionContext& ctx)
    : tail_(tail_bound_at_T), bits_(ctx.bits) {
    PrecisionGuard guard(ctx);
    // Panels short enough that the worst overlay cos(z_max t) stays smooth.
    Real pw = real_pi() / (2 * rmax(Real(1), z_max));
    if (pw > T / 8) pw = T / 8;
    long n_panels = static_cast<long>(static_cast<double>(mp::ceil(T / pw)));
    Real h = T / n_panels;

    const int max_level = 9;
    Real budget = (Real(ctx.rel_tol) + Real(ctx.abs_tol)) / (4 * n_panels);
    // Convergence is certified on the hardest overlay, then nodes are frozen.
    for (long p = 0; p < n_panels; ++p) {
        Real a = h * p, b = (p + 1 == n_panels) ? T : h * (p + 1);
        auto hard = [&](const Real& t) { return w(t) * mp::cos(z_max * t); };
        Real c = (a + b) / 2, s = (b - a) / 2;
        Real prev = 0;
        bool have = false;
        for (int level = 1; level <= max_level; ++level) {
            double hh = std::ldexp(1.0, -level);
            TsLevel lv = ts_level(hard, c, s, hh, level, bits_, nullptr);
            if (have && mp::abs(lv.sum - prev) <= budget) {
                // freeze this level + one extra halving for safety margin
                std::vector<TsNode> nodes;
                double hf = std::ldexp(1.0, -(level + 1));
                ts_level([&](const Real& t) { return Real(1); }, c, s, hf, level + 1, bits_, &nodes);
                for (auto& n : nodes) {
                    t_.push_back(n.t);
                    cw_.push_back(n.w * w(n.t));
                    coarse_.push_back(n.coarse ? 1 : 0);
                }
                break;
            }
            prev = lv.sum;
            have = true;
            if (level == max_level)
                raise(ErrorKind::NoConvergence, "CosineTransformPlan: panel did not converge");
        }
    }
}

QuadratureResult CosineTransformPlan::eval(const Real& z) const {
    Real fine = 0, coarse = 0;
    for (size_t i = 0; i < t_.size(); ++i) {
        Real c = mp::cos(z * t_[i]);
        Real term = cw_[i] * c;
        fine += term;
        if (coarse_[i]) coarse += 2 * term;
    }
    QuadratureResult q;
    q.value = fine;
    q.error_bound = mp::abs(fine - coarse) + tail_ +
                    Real(static_cast<long>(t_.size())) *
                        mp::ldexp(mp::abs(fine) + 1, -static_cast<int>(bits_));
    q.evaluations = static_cast<long>(t_.size());
    return q;
}

QuadratureResult CosineTransformPlan::eval_exp(const Real& z, const Real& y,
                                               bool imaginary_part) const {
    Real fine = 0, coarse = 0;
    for (size_t i = 0; i < t_.size(); ++i) {
        Real osc = imaginary_part ? mp::sin(z * t_[i]) : mp::cos(z * t_[i]);
        Real term = cw_[i] * mp::exp(y * t_[i]) * osc;
        fine += term;
        if (coarse_[i]) coarse += 2 * term;
    }
    QuadratureResult q;
    q.value = fine;
    q.error_bound = mp::abs(fine - coarse) + tail_ * mp::exp(mp::abs(y)) +
                    Real(static_cast<long>(t_.size())) *
                        mp::ldexp(mp::abs(fine) + 1, -static_cast<int>(bits_));
    q.evaluations = static_cast<long>(t_.size());
    return q;
}

} // namespace xizero::numerics
