// Dense univariate polynomials over an exact field (Rational) or over Real,
// with the classical machinery the zero-location criteria need: Sturm chains,
// square-free reduction, Newton power sums, exact determinants, and a
// simultaneous-iteration complex root finder.
#ifndef XIZERO_POLYNOMIAL_HPP
#define XIZERO_POLYNOMIAL_HPP

#include "xizero/precision.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace xizero {

template <class T>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }

    const std::vector<T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero poly
    const T& operator[](size_t i) const { return c_[i]; }
    T coeff(size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    template <class X>
    X eval(const X& x) const {
        X acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + X(c_[i]);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<T> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    Polynomial operator-() const {
        std::vector<T> d(c_);
        for (auto& v : d) v = -v;
        return Polynomial(std::move(d));
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> d(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
        return Polynomial(std::move(d));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> d(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(d));
    }
    friend Polynomial operator*(const T& s, const Polynomial& a) {
        std::vector<T> d(a.c_);
        for (auto& v : d) v = v * s;
        return Polynomial(std::move(d));
    }
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    // Euclidean division; T must be a field.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<T> r(c_), q;
        int dd = d.degree();
        if (degree() < dd) return {Polynomial(), *this};
        q.assign(c_.size() - d.c_.size() + 1, T(0));
        for (int i = degree(); i >= dd; --i) {
            T f = r[i] / d.c_.back();
            if (f == T(0)) continue;
            q[i - dd] = f;
            for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
            r[i] = T(0);
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = Polynomial<Rational>;
using RealPoly = Polynomial<Real>;

inline RealPoly to_real(const RatPoly& p) {
    std::vector<Real> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(q);
    return RealPoly(std::move(c));
}

// Monic gcd over the rationals (exact).
RatPoly poly_gcd(RatPoly a, RatPoly b);

// p / gcd(p, p'): same distinct roots, all simple.
RatPoly square_free(const RatPoly& p);

// Sturm chain on the square-free part; number of distinct real roots in (a,b].
int sturm_count(const RatPoly& p, const Rational& a, const Rational& b);
// Distinct real roots over the whole line.
int sturm_count_all(const RatPoly& p);

// True when every zero of p is real (counted with multiplicity via the
// square-free reduction).
bool all_roots_real(const RatPoly& p);

// Cauchy bound: all roots have |z| < bound.
Rational root_bound(const RatPoly& p);

// Number of real roots with multiplicity in (a,b]: the gcd chain distributes
// multiplicities over the square-free layers.
int real_root_count_with_multiplicity(const RatPoly& p, const Rational& a, const Rational& b);
int real_root_count_with_multiplicity(const RatPoly& p);

// Isolate every distinct real root into disjoint rational intervals,
// refined until each is narrower than `width`.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const RatPoly& p, const Rational& width);

// All complex roots by Durand-Kerner simultaneous iteration at the working
// precision; multiplicities appear as clustered copies.
std::vector<Cplx> complex_roots(const RealPoly& p, const PrecisionContext& ctx);

// Exact determinant of a rational matrix (row-major, n x n) by clearing
// denominators and running fraction-free Bareiss elimination over Z.
Rational det_exact(const std::vector<std::vector<Rational>>& m);

// Floating determinant with a crude growth-based relative error estimate.
std::pair<Real, Real> det_floating(std::vector<std::vector<Real>> m);

} // namespace xizero

#endif
