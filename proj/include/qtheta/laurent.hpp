#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "qtheta/qseries.hpp"

namespace qtheta {

// First disagreement between two Laurent polynomials: the monomial and the
// smallest q-exponent at which the coefficient series differ.
struct XYMismatch {
    long long x = 0;
    long long y = 0;
    Mismatch at;
};

// Finite Laurent polynomial in x (and optionally y) with QSeries
// coefficients and explicit exactness certificates.
//
// Certification model. `window` W: every monomial with max(|xe|,|ye|) <= W
// carries its exact coefficient through that coefficient's own q-order
// (absent monomials inside the window are certified zero through `qorder`).
// `tail`, when present, certifies that every monomial *outside* the window
// of the true object is zero through that q-order. Theta-type constructors
// establish the tail bound from the quadratic growth of their exponents;
// it is what makes products of theta factors certifiable at all (without
// it, unknown monomials of the two factors could cancel into the window).
//
// Products certify window W_F + W_G and contract the q-order by the same
// valuation-aware rule as QSeries::mul, applied to the unknown regions.
// Substitutions that attach x-dependent powers of q destroy the uniform
// tail bound and mark it absent; such results can be compared but not
// multiplied further.
class XYPoly {
public:
    using Key = std::pair<long long, long long>;  // (x-exponent, y-exponent)
    using TermMap = std::map<Key, QSeries>;

    XYPoly() = default;

    // Constant-in-x polynomial (window 0; true zeros outside).
    static XYPoly scalar(const QSeries& c, int vars = 1);
    // c(q) * x^xe y^ye.
    static XYPoly monomial(const QSeries& c, long long xe, long long ye, int vars);
    // Empty polynomial certified zero inside `window` through `qorder`.
    static XYPoly zero(int vars, long long den, long long window, long long qorder);

    int vars() const { return vars_; }
    long long den() const { return den_; }
    long long window() const { return window_; }
    long long qorder() const { return qorder_; }
    std::optional<long long> tail() const { return tail_; }
    const TermMap& terms() const { return terms_; }

    // Largest max-norm of a stored monomial (0 when empty).
    long long support_radius() const;

    XYPoly lifted(long long L) const;

    void insert_term(long long xe, long long ye, const QSeries& c);

    friend XYPoly operator+(const XYPoly& F, const XYPoly& G);
    friend XYPoly operator-(const XYPoly& F, const XYPoly& G);
    XYPoly operator-() const;
    XYPoly scaled(const Eisenstein& c) const;

    // Exact product; requires tail certificates on both factors
    // (WindowUnderflow otherwise).
    static XYPoly mul(const XYPoly& F, const XYPoly& G);
    friend XYPoly operator*(const XYPoly& F, const XYPoly& G) { return mul(F, G); }
    XYPoly mul_scalar(const QSeries& c) const;

    // Multiply by x^xe y^ye q^{qnum/qden}. The window shrinks by the shift;
    // terms pushed outside are discarded with an honest tail update.
    XYPoly mul_monomial(long long xe, long long ye, long long qnum, long long qden) const;

    // Substitutions.
    XYPoly x_inv() const;  // x -> 1/x
    XYPoly y_inv() const;  // y -> 1/y
    // x -> x q^{a/d}: the coefficient of x^n gains q^{na/d}. Drops the tail
    // certificate (the shift is unbounded over the tail).
    XYPoly x_shift_q(long long a, long long d) const;
    XYPoly y_shift_q(long long a, long long d) const;
    // x -> xy. Window preserved for univariate input, halved for bivariate.
    XYPoly x_to_xy() const;
    // x -> -x: negate the coefficients of odd x-powers.
    XYPoly negate_odd_x() const;

    // Exact coefficient extraction; WindowExceeded outside the window.
    QSeries coefficient(long long xe, long long ye = 0) const;
    QSeries constant_term() const { return coefficient(0, 0); }

    // Compare all monomials with max-norm <= window, each through
    // order_num/order_den. Both sides must certify that window and order.
    static std::optional<XYMismatch> equal_through(const XYPoly& F, const XYPoly& G,
                                                   long long window, long long order_num,
                                                   long long order_den = 1);

    // "xe [ye] : " header followed by the coefficient dump, blocks sorted
    // lexicographically.
    std::string dump() const;

private:
    XYPoly(int vars, long long den, long long window, long long qorder,
           std::optional<long long> tail)
        : vars_(vars), den_(den), window_(window), qorder_(qorder), tail_(tail) {}

    // Smallest q-exponent at which anything nonzero or unknown can appear.
    long long effective_floor() const;
    long long min_coeff_valuation() const;  // saturated when empty

    int vars_ = 1;
    long long den_ = 1;
    long long window_ = 0;
    long long qorder_ = 0;
    std::optional<long long> tail_;
    TermMap terms_;
};

}  // namespace qtheta
