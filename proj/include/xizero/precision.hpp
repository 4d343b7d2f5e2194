// Multiprecision scalar types, tolerance policy, and error taxonomy shared by
// every numeric routine in the library.
#ifndef XIZERO_PRECISION_HPP
#define XIZERO_PRECISION_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace xizero {

// Radix-2 multiprecision float. Precision is per-thread and managed through
// PrecisionGuard; expression templates are off so temporaries behave
// predictably when precision changes mid-computation.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 2;
}

// Working precision plus the tolerance policy threaded through every
// operation. Escalation doubles the mantissa, at most max_escalations times.
struct PrecisionContext {
    unsigned bits = 128;
    double rel_tol = 1e-25;
    double abs_tol = 1e-35;
    unsigned max_escalations = 3;

    PrecisionContext() = default;
    PrecisionContext(unsigned bits_, double rel, double abs, unsigned esc = 3)
        : bits(bits_), rel_tol(rel), abs_tol(abs), max_escalations(esc) {
        if (bits < 53 || rel_tol <= 0 || abs_tol <= 0)
            throw std::invalid_argument("PrecisionContext: bits >= 53 and positive tolerances required");
    }

    static PrecisionContext defaults(unsigned bits = 128) {
        double rel = std::pow(2.0, -std::min(400.0, bits * 0.62));
        double abs = std::pow(2.0, -std::min(800.0, bits * 0.81));
        return PrecisionContext(bits, rel, abs, 3);
    }

    PrecisionContext escalated() const {
        if (max_escalations == 0)
            throw std::runtime_error("PrecisionContext: escalation budget exhausted");
        PrecisionContext c = *this;
        c.bits *= 2;
        c.max_escalations -= 1;
        return c;
    }

    // Precision used by test oracles: 4x mantissa, same tolerances.
    PrecisionContext oracle() const {
        PrecisionContext c = *this;
        c.bits *= 4;
        return c;
    }

    Real tol_for(const Real& scale) const {
        return Real(rel_tol) * abs(scale) + Real(abs_tol);
    }
};

// RAII: set the thread-local working precision from a context, restore on exit.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits)
        : prev_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    explicit PrecisionGuard(const PrecisionContext& ctx) : PrecisionGuard(ctx.bits) {}
    ~PrecisionGuard() { Real::default_precision(prev_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned prev_;
};

enum class ErrorKind {
    TailNotDecaying,
    NoConvergence,
    TailBoundMissing,
    SuspectedTangency,
    RootFindingNoConvergence,
    IllConditioned,
    ZeroLeadingCoefficient,
    InsufficientData,
    NonRealMultiplier,
    ZeroInExclusionInterval,
    ZeroAtOrigin,
    MethodDisagreement,
    StripViolation,
    NegativeGap,
    InequalityViolated,
    StructureViolation,
    BoundaryZeroSuspected,
    CommonZero,
    IoError,
    UsageError,
};

// Exit-code classes used by the CLI: 2 = numeric non-convergence,
// 3 = violation of a proved structure/inequality (a bug signal), 1 = usage.
inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::TailNotDecaying:
        case ErrorKind::NoConvergence:
        case ErrorKind::TailBoundMissing:
        case ErrorKind::SuspectedTangency:
        case ErrorKind::RootFindingNoConvergence:
        case ErrorKind::IllConditioned:
            return 2;
        case ErrorKind::MethodDisagreement:
        case ErrorKind::NegativeGap:
        case ErrorKind::InequalityViolated:
        case ErrorKind::StructureViolation:
            return 3;
        case ErrorKind::IoError:
        case ErrorKind::UsageError:
            return 1;
        default:
            return 2;
    }
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

// Minimal complex arithmetic over Real (std::complex requires IEC 559).
struct Cplx {
    Real re, im;
    Cplx() : re(0), im(0) {}
    Cplx(Real r) : re(std::move(r)), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
    friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
};

// max/min accepting expression-template operands
template <class T, class U>
auto rmax(const T& a, const U& b) {
    using R = std::common_type_t<decltype(+a), decltype(+b)>;
    R ra(a), rb(b);
    return ra < rb ? rb : ra;
}
template <class T, class U>
auto rmin(const T& a, const U& b) {
    using R = std::common_type_t<decltype(+a), decltype(+b)>;
    R ra(a), rb(b);
    return ra < rb ? ra : rb;
}

inline Real abs(const Cplx& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }
inline Cplx conj(const Cplx& z) { return {z.re, -z.im}; }

// exp(i x)
inline Cplx cis(const Real& x) {
    Real s, c;
    mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
    return {c, s};
}

inline Cplx cexp(const Cplx& z) {
    using boost::multiprecision::exp;
    Real m = exp(z.re);
    Cplx u = cis(z.im);
    return {m * u.re, m * u.im};
}

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

} // namespace xizero

#endif
