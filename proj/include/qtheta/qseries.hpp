#pragma once

#include <map>
#include <optional>
#include <string>

#include "qtheta/eisenstein.hpp"
#include "qtheta/errors.hpp"

namespace qtheta {

// First disagreement found by an exact comparison: the smallest exponent
// exp_num/exp_den at which the two series differ, with both coefficients.
struct Mismatch {
    long long exp_num = 0;
    long long exp_den = 1;
    Eisenstein lhs;
    Eisenstein rhs;
};

// Truncated Puiseux series in q with Eisenstein coefficients.
//
// Exponents are integers over an explicit per-series denominator `den`:
// the stored key e represents the coefficient of q^{e/den}. `order` is the
// guarantee: every exponent e/den with e <= order (in den-units) is exact.
// Keys may be negative (Laurent tails from inversion); nothing is stored
// beyond the order and no zero coefficient is stored.
//
// Operations that combine two series lift both to the lcm denominator
// first; the guarantee order contracts by the valuation-aware rule
// documented at mul(). All arithmetic is exact.
class QSeries {
public:
    using TermMap = std::map<long long, Eisenstein>;

    QSeries() = default;

    static QSeries zero(long long den, long long order);
    static QSeries one(long long order, long long den = 1);
    // c * q^{e/den}, certified through order (den-units). A monomial beyond
    // its own order degenerates to the zero series.
    static QSeries monomial(const Eisenstein& c, long long e, long long den, long long order);

    long long den() const { return den_; }
    long long order() const { return order_; }
    const TermMap& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Least stored exponent, in den-units. Empty for the (truncated) zero series.
    std::optional<long long> valuation() const;

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& f, const QSeries& g);
    friend QSeries operator-(const QSeries& f, const QSeries& g);
    friend QSeries operator*(const QSeries& f, const QSeries& g) { return mul(f, g); }

    QSeries scaled(const Eisenstein& c) const;

    // Exact product. Result order = min(O_f + val(g), O_g + val(f)) where
    // val is the effective valuation min(least stored exponent, order + 1):
    // terms of f beyond its order are unknown and pollute exponents from
    // O_f + val(g) + 1 on (and symmetrically), while unknown x unknown
    // pollution starts only above O_f + O_g + 1. Dispatches to the OpenMP
    // kernel for large inputs; mul_serial and mul_parallel are exposed so
    // tests and the benchmark can pin a path.
    static QSeries mul(const QSeries& f, const QSeries& g);
    static QSeries mul_serial(const QSeries& f, const QSeries& g);
    static QSeries mul_parallel(const QSeries& f, const QSeries& g);

    // f^n for n >= 0 (n = 0 gives 1 at f's order).
    QSeries pow(unsigned long long n) const;

    // Multiplicative inverse through the contracted order (q-adic long
    // division). Requires a unit leading coefficient (norm 1); the result
    // starts at -valuation and is certified through order - 2*valuation.
    QSeries inverted() const;

    // q -> q^k, k >= 1: exponents and order multiply by k.
    QSeries subst_power(long long k) const;

    // q -> w^j q^{1/3} on an integer-exponent series: c q^n becomes
    // c w^{jn} q^{n/3}. Result denominator 3. Throws NonIntegerExponents
    // if any stored exponent is fractional.
    QSeries twist(int j) const;

    // Multiply by q^{e/den} (den-units of *this): exactness shifts with it.
    QSeries shifted(long long e) const;
    // Multiply by q^{a/d} for an arbitrary d (lifts the denominator first).
    QSeries shifted_frac(long long a, long long d) const;

    // Apply w -> w^2 to every coefficient.
    QSeries conjugated() const;

    // Per-coefficient exact division by a ring element; throws NotDivisible.
    QSeries div_coeffs_exact(const Eisenstein& v) const;

    // Restrict the guarantee (and drop now-uncertified terms). new_order is
    // in den-units and must not exceed the current order.
    QSeries truncated(long long new_order) const;

    // Lift to a denominator L (a multiple of den()).
    QSeries lifted(long long L) const;
    // Divide den and exponents by their gcd.
    QSeries reduced() const;

    // Exact coefficient of q^{e/d}; zero if the exponent is certified absent.
    // Throws OrderExceeded when e/d lies beyond the guarantee.
    Eisenstein coeff(long long e, long long d = 1) const;

    // Compare through exponent order_num/order_den inclusive. Both series
    // must certify that far (OrderExceeded otherwise). Returns the first
    // mismatch, or nullopt if the series agree.
    static std::optional<Mismatch> equal_through(const QSeries& f, const QSeries& g,
                                                 long long order_num, long long order_den = 1);

    // One line per term: "e/D<TAB>a<TAB>b", sorted by exponent. With
    // display_den = 0 each exponent is printed in lowest terms; otherwise
    // every exponent is lifted to the requested denominator.
    std::string dump(long long display_den = 0) const;

    // Add c*q^{e/den} into the series, keeping invariants (silently ignored
    // beyond the order; zero results removed).
    void insert_term(long long e, const Eisenstein& c);

private:
    QSeries(long long den, long long order) : den_(den), order_(order) {}
    void prune();

    long long den_ = 1;
    long long order_ = 0;
    TermMap coeffs_;
};

// Common-denominator view used by binary operations.
long long lcm_ll(long long a, long long b);

}  // namespace qtheta
