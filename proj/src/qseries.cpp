#include "qtheta/qseries.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace qtheta {

namespace {

constexpr long long kInfOrder = (1LL << 60);

// Pair-product count above which mul() uses the OpenMP kernel.
constexpr std::size_t kParallelMulThreshold = 4096;

long long sat_add(long long a, long long b) {
    if (a >= kInfOrder || b >= kInfOrder) return kInfOrder;
    return a + b;
}

long long floor_div(long long a, long long b) {
    // b > 0
    long long q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

// Effective valuation for the order-contraction rule: the first exponent at
// which anything (stored or unknown) can live.
long long effective_val(const QSeries& f) {
    auto v = f.valuation();
    long long first_unknown = sat_add(f.order(), 1);
    return v ? std::min(*v, first_unknown) : first_unknown;
}

struct LiftedPair {
    QSeries f, g;
    long long den;
};

LiftedPair lift_common(const QSeries& f, const QSeries& g) {
    long long L = lcm_ll(f.den(), g.den());
    return {f.lifted(L), g.lifted(L), L};
}

}  // namespace

long long lcm_ll(long long a, long long b) {
    return a / std::gcd(a, b) * b;
}

QSeries QSeries::zero(long long den, long long order) {
    return QSeries(den, order);
}

QSeries QSeries::one(long long order, long long den) {
    return monomial(Eisenstein(1), 0, den, order);
}

QSeries QSeries::monomial(const Eisenstein& c, long long e, long long den, long long order) {
    QSeries r(den, order);
    if (!c.is_zero() && e <= order) r.coeffs_.emplace(e, c);
    return r;
}

std::optional<long long> QSeries::valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

void QSeries::insert_term(long long e, const Eisenstein& c) {
    if (c.is_zero() || e > order_) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
        coeffs_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

void QSeries::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second.is_zero() || it->first > order_)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

QSeries QSeries::operator-() const {
    QSeries r(den_, order_);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
    return r;
}

QSeries operator+(const QSeries& f, const QSeries& g) {
    auto [lf, lg, L] = lift_common(f, g);
    QSeries r = QSeries::zero(L, std::min(lf.order(), lg.order()));
    r.coeffs_ = lf.coeffs_;
    for (const auto& [e, c] : lg.coeffs_) {
        auto [it, inserted] = r.coeffs_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) r.coeffs_.erase(it);
        }
    }
    r.prune();
    return r;
}

QSeries operator-(const QSeries& f, const QSeries& g) {
    return f + (-g);
}

QSeries QSeries::scaled(const Eisenstein& c) const {
    QSeries r(den_, order_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : coeffs_) {
        Eisenstein p = v * c;
        if (!p.is_zero()) r.coeffs_.emplace(e, std::move(p));
    }
    return r;
}

namespace {

// Shared setup for the two mul kernels: lifted inputs, contracted order and
// the dense accumulation range [lo, hi].
struct MulPlan {
    long long den = 1;
    long long order = 0;
    long long lo = 0;
    bool empty = true;
    std::vector<std::pair<long long, Eisenstein>> fterms, gterms;
};

MulPlan plan_mul(const QSeries& f, const QSeries& g) {
    MulPlan p;
    auto [lf, lg, L] = lift_common(f, g);
    p.den = L;
    p.order = std::min(sat_add(lf.order(), effective_val(lg)),
                       sat_add(lg.order(), effective_val(lf)));
    if (p.order >= kInfOrder) p.order = sat_add(lf.order(), lg.order());
    if (lf.is_zero() || lg.is_zero()) return p;
    long long lo = *lf.valuation() + *lg.valuation();
    if (p.order < lo) return p;
    p.lo = lo;
    p.empty = false;
    p.fterms.assign(lf.terms().begin(), lf.terms().end());
    p.gterms.assign(lg.terms().begin(), lg.terms().end());
    return p;
}

void accumulate_range(const MulPlan& p, std::size_t fbegin, std::size_t fend,
                      std::vector<Eisenstein>& acc) {
    const long long hi = p.order;
    for (std::size_t i = fbegin; i < fend; ++i) {
        const auto& [e1, c1] = p.fterms[i];
        for (const auto& [e2, c2] : p.gterms) {
            long long e = e1 + e2;
            if (e > hi) break;  // gterms sorted ascending
            acc[static_cast<std::size_t>(e - p.lo)] += c1 * c2;
        }
    }
}

QSeries collect(const MulPlan& p, const std::vector<Eisenstein>& acc) {
    QSeries r = QSeries::zero(p.den, p.order);
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (!acc[i].is_zero()) r.insert_term(p.lo + static_cast<long long>(i), acc[i]);
    return r;
}

}  // namespace

QSeries QSeries::mul(const QSeries& f, const QSeries& g) {
    if (f.coeffs_.size() * g.coeffs_.size() >= kParallelMulThreshold &&
        omp_get_max_threads() > 1)
        return mul_parallel(f, g);
    return mul_serial(f, g);
}

QSeries QSeries::mul_serial(const QSeries& f, const QSeries& g) {
    MulPlan p = plan_mul(f, g);
    if (p.empty) return zero(p.den, p.order);
    std::vector<Eisenstein> acc(static_cast<std::size_t>(p.order - p.lo + 1));
    accumulate_range(p, 0, p.fterms.size(), acc);
    return collect(p, acc);
}

QSeries QSeries::mul_parallel(const QSeries& f, const QSeries& g) {
    MulPlan p = plan_mul(f, g);
    if (p.empty) return zero(p.den, p.order);
    const std::size_t n = p.fterms.size();
    const std::size_t width = static_cast<std::size_t>(p.order - p.lo + 1);
    const int nthreads = omp_get_max_threads();
    std::vector<std::vector<Eisenstein>> local(
        static_cast<std::size_t>(nthreads));

#pragma omp parallel num_threads(nthreads)
    {
        auto& acc = local[static_cast<std::size_t>(omp_get_thread_num())];
        acc.assign(width, Eisenstein());
#pragma omp for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            accumulate_range(p, static_cast<std::size_t>(i),
                             static_cast<std::size_t>(i) + 1, acc);
    }

    // Exact addition is associative and commutative, so merging the
    // per-thread buffers in index order is schedule-independent.
    std::vector<Eisenstein> acc(width);
    for (auto& buf : local) {
        if (buf.size() != width) continue;  // thread never entered the loop
        for (std::size_t i = 0; i < width; ++i) acc[i] += buf[i];
    }
    return collect(p, acc);
}

QSeries QSeries::pow(unsigned long long n) const {
    QSeries base = *this;
    QSeries result = one(order_, den_);
    while (n > 0) {
        if (n & 1ULL) result = mul(result, base);
        n >>= 1ULL;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

QSeries QSeries::inverted() const {
    if (coeffs_.empty()) throw ZeroSeries("cannot invert the zero series");
    const long long v = *valuation();
    const Eisenstein& lead = coeffs_.begin()->second;
    if (!lead.is_unit())
        throw NotInvertible("leading coefficient " + lead.str() + " is not a unit of Z[w]");
    // f = q^v h with h(0) a unit; 1/f = q^{-v} (1/h). h is exact through
    // order - v, so is 1/h, and the final shift costs another v.
    const long long m = order_ - v;
    if (m < 0) return zero(den_, order_ - 2 * v);
    std::vector<Eisenstein> h(static_cast<std::size_t>(m + 1));
    for (const auto& [e, c] : coeffs_) {
        long long k = e - v;
        if (k <= m) h[static_cast<std::size_t>(k)] = c;
    }
    const Eisenstein lead_inv = lead.conj();  // unit inverse
    std::vector<Eisenstein> b(static_cast<std::size_t>(m + 1));
    b[0] = lead_inv;
    for (long long e = 1; e <= m; ++e) {
        Eisenstein s;
        for (long long j = 1; j <= e; ++j) {
            if (!h[static_cast<std::size_t>(j)].is_zero())
                s += h[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(e - j)];
        }
        b[static_cast<std::size_t>(e)] = -(lead_inv * s);
    }
    QSeries r = zero(den_, order_ - 2 * v);
    for (long long e = 0; e <= m; ++e)
        r.insert_term(e - v, b[static_cast<std::size_t>(e)]);
    return r;
}

QSeries QSeries::subst_power(long long k) const {
    if (k < 1) throw Error("subst_power requires k >= 1");
    QSeries r(den_, order_ * k);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e * k, c);
    return r;
}

QSeries QSeries::twist(int j) const {
    QSeries r(3, floor_div(order_, den_));
    for (const auto& [e, c] : coeffs_) {
        if (e % den_ != 0)
            throw NonIntegerExponents("twist on fractional exponent " + std::to_string(e) +
                                      "/" + std::to_string(den_));
        long long n = e / den_;
        Eisenstein w = c * Eisenstein::omega_pow(static_cast<long long>(j) * n);
        if (!w.is_zero() && n <= r.order_) r.coeffs_.emplace(n, std::move(w));
    }
    return r;
}

QSeries QSeries::shifted(long long e) const {
    QSeries r(den_, order_ + e);
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k + e, c);
    return r;
}

QSeries QSeries::shifted_frac(long long a, long long d) const {
    if (d < 1) throw Error("shifted_frac requires a positive denominator");
    long long L = lcm_ll(den_, d);
    return lifted(L).shifted(a * (L / d));
}

QSeries QSeries::conjugated() const {
    QSeries r(den_, order_);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, c.conj());
    return r;
}

QSeries QSeries::div_coeffs_exact(const Eisenstein& v) const {
    QSeries r(den_, order_);
    for (const auto& [e, c] : coeffs_)
        r.coeffs_.emplace(e, Eisenstein::div_exact(c, v));
    return r;
}

QSeries QSeries::truncated(long long new_order) const {
    if (new_order > order_)
        throw OrderExceeded("cannot extend a guarantee by truncation");
    QSeries r(den_, new_order);
    for (const auto& [e, c] : coeffs_) {
        if (e > new_order) break;
        r.coeffs_.emplace(e, c);
    }
    return r;
}

QSeries QSeries::lifted(long long L) const {
    if (L == den_) return *this;
    if (L % den_ != 0) throw Error("lift target must be a multiple of the denominator");
    long long f = L / den_;
    QSeries r(L, order_ * f);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e * f, c);
    return r;
}

QSeries QSeries::reduced() const {
    long long g = den_;
    for (const auto& [e, c] : coeffs_) {
        (void)c;
        g = std::gcd(g, std::llabs(e));
        if (g == 1) return *this;
    }
    if (g <= 1) return *this;
    QSeries r(den_ / g, floor_div(order_, g));
    for (const auto& [e, c] : coeffs_) {
        if (e / g <= r.order_) r.coeffs_.emplace(e / g, c);
    }
    return r;
}

Eisenstein QSeries::coeff(long long e, long long d) const {
    if (d < 1) throw Error("coeff requires a positive denominator");
    // e/d <= order/den  <=>  e*den <= order*d  (both denominators positive)
    if (e * den_ > order_ * d)
        throw OrderExceeded("coefficient of q^" + std::to_string(e) + "/" + std::to_string(d) +
                            " is beyond the certified order");
    if ((e * den_) % d != 0) return Eisenstein();  // off-lattice: certified zero
    auto it = coeffs_.find(e * den_ / d);
    return it == coeffs_.end() ? Eisenstein() : it->second;
}

std::optional<Mismatch> QSeries::equal_through(const QSeries& f, const QSeries& g,
                                               long long order_num, long long order_den) {
    if (order_den < 1) throw Error("equal_through requires a positive denominator");
    if (order_num * f.den() > f.order() * order_den ||
        order_num * g.den() > g.order() * order_den)
        throw OrderExceeded("comparison order exceeds a certified guarantee");
    auto [lf, lg, L] = lift_common(f, g);
    auto itf = lf.coeffs_.begin(), itg = lg.coeffs_.begin();
    auto in_range = [&](long long e) { return e * order_den <= order_num * L; };
    while (itf != lf.coeffs_.end() || itg != lg.coeffs_.end()) {
        long long ef = itf != lf.coeffs_.end() ? itf->first : kInfOrder;
        long long eg = itg != lg.coeffs_.end() ? itg->first : kInfOrder;
        long long e = std::min(ef, eg);
        if (e >= kInfOrder || !in_range(e)) break;
        Eisenstein cf = ef == e ? itf->second : Eisenstein();
        Eisenstein cg = eg == e ? itg->second : Eisenstein();
        if (cf != cg) {
            long long gg = std::gcd(std::llabs(e), L);
            if (gg == 0) gg = 1;
            return Mismatch{e / gg, L / gg, cf, cg};
        }
        if (ef == e) ++itf;
        if (eg == e) ++itg;
    }
    return std::nullopt;
}

std::string QSeries::dump(long long display_den) const {
    std::ostringstream os;
    for (const auto& [e, c] : coeffs_) {
        if (display_den > 0) {
            if ((e * display_den) % den_ != 0)
                throw Error("exponent " + std::to_string(e) + "/" + std::to_string(den_) +
                            " is not representable over denominator " +
                            std::to_string(display_den));
            os << e * display_den / den_ << "/" << display_den;
        } else {
            long long g = std::gcd(std::llabs(e), den_);
            if (g == 0) g = den_;
            if (den_ / g == 1)
                os << e / g;
            else
                os << e / g << "/" << den_ / g;
        }
        os << "\t" << c.a() << "\t" << c.b() << "\n";
    }
    return os.str();
}

}  // namespace qtheta
