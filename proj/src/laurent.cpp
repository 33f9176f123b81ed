#include "qtheta/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace qtheta {

namespace {

constexpr long long kInfOrder = (1LL << 60);

long long sat_add(long long a, long long b) {
    if (a >= kInfOrder || b >= kInfOrder) return kInfOrder;
    if (a <= -kInfOrder || b <= -kInfOrder) return -kInfOrder;
    return a + b;
}

long long sat_min(long long a, long long b) { return std::min(a, b); }

}  // namespace

XYPoly XYPoly::scalar(const QSeries& c, int vars) {
    XYPoly p(vars, c.den(), 0, c.order(), kInfOrder);
    if (!c.is_zero()) p.terms_.emplace(Key{0, 0}, c);
    return p;
}

XYPoly XYPoly::monomial(const QSeries& c, long long xe, long long ye, int vars) {
    long long w = std::max(std::llabs(xe), std::llabs(ye));
    XYPoly p(vars, c.den(), w, c.order(), kInfOrder);
    if (!c.is_zero()) p.terms_.emplace(Key{xe, ye}, c);
    return p;
}

XYPoly XYPoly::zero(int vars, long long den, long long window, long long qorder) {
    return XYPoly(vars, den, window, qorder, qorder);
}

long long XYPoly::support_radius() const {
    long long r = 0;
    for (const auto& [k, c] : terms_) {
        (void)c;
        r = std::max({r, std::llabs(k.first), std::llabs(k.second)});
    }
    return r;
}

long long XYPoly::min_coeff_valuation() const {
    long long v = kInfOrder;
    for (const auto& [k, c] : terms_) {
        (void)k;
        if (auto val = c.valuation()) v = std::min(v, *val);
    }
    return v;
}

long long XYPoly::effective_floor() const {
    long long unknown_from = sat_add(std::min(qorder_, tail_.value_or(kInfOrder)), 1);
    return sat_min(min_coeff_valuation(), unknown_from);
}

XYPoly XYPoly::lifted(long long L) const {
    if (L == den_) return *this;
    if (L % den_ != 0) throw Error("lift target must be a multiple of the denominator");
    long long f = L / den_;
    XYPoly p(vars_, L, window_, qorder_ >= kInfOrder ? kInfOrder : qorder_ * f,
             tail_ ? std::optional<long long>(*tail_ >= kInfOrder ? kInfOrder : *tail_ * f)
                   : std::nullopt);
    for (const auto& [k, c] : terms_) p.terms_.emplace(k, c.lifted(L));
    return p;
}

void XYPoly::insert_term(long long xe, long long ye, const QSeries& c) {
    if (std::max(std::llabs(xe), std::llabs(ye)) > window_)
        throw WindowExceeded("monomial outside the certified window");
    QSeries lc = c.lifted(den_);
    Key k{xe, ye};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!lc.is_zero()) terms_.emplace(k, std::move(lc));
    } else {
        QSeries s = it->second + lc;
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = std::move(s);
    }
}

XYPoly operator+(const XYPoly& F, const XYPoly& G) {
    long long L = lcm_ll(F.den(), G.den());
    XYPoly lf = F.lifted(L), lg = G.lifted(L);
    // Sum certificates: the weaker of the two everywhere.
    XYPoly r(std::max(lf.vars_, lg.vars_), L, std::min(lf.window_, lg.window_),
             std::min(lf.qorder_, lg.qorder_),
             (lf.tail_ && lg.tail_) ? std::optional<long long>(std::min(*lf.tail_, *lg.tail_))
                                    : std::nullopt);
    auto add_all = [&](const XYPoly& src) {
        for (const auto& [k, c] : src.terms_) {
            if (std::max(std::llabs(k.first), std::llabs(k.second)) > r.window_) {
                // A stored term beyond the common window: the sum's tail
                // claim must not silently cover it.
                if (r.tail_) {
                    auto v = c.valuation();
                    r.tail_ = std::min(*r.tail_, v ? *v - 1 : *r.tail_);
                }
                continue;
            }
            r.insert_term(k.first, k.second, c.truncated(std::min(c.order(), r.qorder_)));
        }
    };
    add_all(lf);
    add_all(lg);
    return r;
}

XYPoly operator-(const XYPoly& F, const XYPoly& G) { return F + (-G); }

XYPoly XYPoly::operator-() const {
    XYPoly r(vars_, den_, window_, qorder_, tail_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

XYPoly XYPoly::scaled(const Eisenstein& c) const {
    XYPoly r(vars_, den_, window_, qorder_, tail_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) {
        QSeries s = v.scaled(c);
        if (!s.is_zero()) r.terms_.emplace(k, std::move(s));
    }
    return r;
}

XYPoly XYPoly::mul(const XYPoly& F, const XYPoly& G) {
    if (!F.tail_ || !G.tail_)
        throw WindowUnderflow("product of Laurent polynomials without a tail certificate");
    long long L = lcm_ll(F.den(), G.den());
    XYPoly lf = F.lifted(L), lg = G.lifted(L);

    const long long uf = std::min(lf.qorder_, *lf.tail_);
    const long long ug = std::min(lg.qorder_, *lg.tail_);
    const long long nuf = lf.effective_floor();
    const long long nug = lg.effective_floor();
    // Unknown-region pollution: anything of F hidden beyond uf pairs with
    // the earliest content of G (and symmetrically).
    const long long order = std::min(sat_add(uf, nug), sat_add(ug, nuf));
    const long long tail =
        std::min(sat_add(*lf.tail_, nug), sat_add(*lg.tail_, nuf));

    XYPoly r(std::max(lf.vars_, lg.vars_), L, lf.window_ + lg.window_, order,
             std::max(tail, order));
    for (const auto& [kf, cf] : lf.terms_) {
        for (const auto& [kg, cg] : lg.terms_) {
            QSeries prod = QSeries::mul(cf, cg);
            if (prod.order() > order) prod = prod.truncated(order);
            if (!prod.is_zero())
                r.insert_term(kf.first + kg.first, kf.second + kg.second, prod);
        }
    }
    return r;
}

XYPoly XYPoly::mul_scalar(const QSeries& c) const {
    return mul(*this, scalar(c, vars_));
}

XYPoly XYPoly::mul_monomial(long long xe, long long ye, long long qnum, long long qden) const {
    long long L = lcm_ll(den_, qden);
    XYPoly lf = lifted(L);
    const long long shift = qnum * (L / qden);
    const long long w = window_ - std::max(std::llabs(xe), std::llabs(ye));
    if (w < 0) throw WindowUnderflow("monomial shift exceeds the certified window");
    XYPoly r(vars_ == 1 && ye == 0 ? 1 : 2, L, w, sat_add(lf.qorder_, shift),
             lf.tail_ ? std::optional<long long>(sat_add(*lf.tail_, shift)) : std::nullopt);
    for (const auto& [k, c] : lf.terms_) {
        long long nx = k.first + xe, ny = k.second + ye;
        QSeries s = c.shifted(shift);
        if (std::max(std::llabs(nx), std::llabs(ny)) > w) {
            // Discarded real content: the tail claim must stop below it.
            if (r.tail_) {
                auto v = s.valuation();
                if (v) r.tail_ = std::min(*r.tail_, *v - 1);
            }
            continue;
        }
        r.terms_.emplace(Key{nx, ny}, std::move(s));
    }
    return r;
}

XYPoly XYPoly::x_inv() const {
    XYPoly r(vars_, den_, window_, qorder_, tail_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(Key{-k.first, k.second}, c);
    return r;
}

XYPoly XYPoly::y_inv() const {
    XYPoly r(vars_, den_, window_, qorder_, tail_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(Key{k.first, -k.second}, c);
    return r;
}

XYPoly XYPoly::x_shift_q(long long a, long long d) const {
    long long L = lcm_ll(den_, d);
    XYPoly lf = lifted(L);
    const long long step = a * (L / d);
    XYPoly r(vars_, L, window_,
             sat_add(lf.qorder_, -window_ * std::llabs(step)), std::nullopt);
    for (const auto& [k, c] : lf.terms_)
        r.terms_.emplace(k, c.shifted(k.first * step));
    return r;
}

XYPoly XYPoly::y_shift_q(long long a, long long d) const {
    long long L = lcm_ll(den_, d);
    XYPoly lf = lifted(L);
    const long long step = a * (L / d);
    XYPoly r(vars_, L, window_,
             sat_add(lf.qorder_, -window_ * std::llabs(step)), std::nullopt);
    for (const auto& [k, c] : lf.terms_)
        r.terms_.emplace(k, c.shifted(k.second * step));
    return r;
}

XYPoly XYPoly::x_to_xy() const {
    if (vars_ == 1) {
        XYPoly r(2, den_, window_, qorder_, tail_);
        for (const auto& [k, c] : terms_) r.terms_.emplace(Key{k.first, k.first}, c);
        return r;
    }
    // Bivariate: (a, b) -> (a, a + b); certify the largest box inside the
    // image of the old one.
    XYPoly r(2, den_, window_ / 2, qorder_, std::nullopt);
    for (const auto& [k, c] : terms_) {
        long long nx = k.first, ny = k.first + k.second;
        if (std::max(std::llabs(nx), std::llabs(ny)) <= r.window_)
            r.terms_.emplace(Key{nx, ny}, c);
    }
    return r;
}

XYPoly XYPoly::negate_odd_x() const {
    XYPoly r(vars_, den_, window_, qorder_, tail_);
    for (const auto& [k, c] : terms_)
        r.terms_.emplace(k, (k.first % 2 != 0) ? -c : c);
    return r;
}

QSeries XYPoly::coefficient(long long xe, long long ye) const {
    if (std::max(std::llabs(xe), std::llabs(ye)) > window_)
        throw WindowExceeded("coefficient of x^" + std::to_string(xe) + " y^" +
                             std::to_string(ye) + " is outside the certified window");
    auto it = terms_.find(Key{xe, ye});
    if (it != terms_.end()) return it->second;
    return QSeries::zero(den_, std::min(qorder_, kInfOrder));
}

std::optional<XYMismatch> XYPoly::equal_through(const XYPoly& F, const XYPoly& G,
                                                long long window, long long order_num,
                                                long long order_den) {
    if (F.window_ < window || G.window_ < window)
        throw WindowExceeded("comparison window exceeds a certified window");
    std::optional<XYMismatch> best;
    auto consider = [&](long long xe, long long ye) {
        QSeries a = F.coefficient(xe, ye);
        QSeries b = G.coefficient(xe, ye);
        auto m = QSeries::equal_through(a, b, order_num, order_den);
        if (!m) return;
        if (!best || m->exp_num * best->at.exp_den < best->at.exp_num * m->exp_den)
            best = XYMismatch{xe, ye, *m};
    };
    long long ymax = (F.vars_ == 2 || G.vars_ == 2) ? window : 0;
    for (long long xe = -window; xe <= window; ++xe)
        for (long long ye = -ymax; ye <= ymax; ++ye) consider(xe, ye);
    return best;
}

std::string XYPoly::dump() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        os << k.first;
        if (vars_ == 2) os << " " << k.second;
        os << " :\n" << c.dump();
    }
    return os.str();
}

}  // namespace qtheta
