#include "qtheta/eisenstein.hpp"

#include <ostream>
#include <sstream>

namespace qtheta {

Eisenstein Eisenstein::omega_pow(long long n) {
    int m = static_cast<int>(n % 3);
    if (m < 0) m += 3;
    switch (m) {
        case 0: return Eisenstein(Int(1), Int(0));
        case 1: return Eisenstein(Int(0), Int(1));
        default: return Eisenstein(Int(-1), Int(-1));  // w^2 = -1 - w
    }
}

Eisenstein Eisenstein::div_exact(const Eisenstein& u, const Eisenstein& v) {
    if (v.is_zero()) throw NotDivisible("division by zero in Z[w]");
    // u/v = u * conj(v) / norm(v); the quotient is integral iff both
    // components of u * conj(v) are divisible by norm(v).
    const Eisenstein w = u * v.conj();
    const Int n = v.norm();
    if (!mpz_divisible_p(w.a().get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(w.b().get_mpz_t(), n.get_mpz_t())) {
        throw NotDivisible("no exact quotient: (" + u.str() + ") / (" + v.str() + ")");
    }
    return Eisenstein(w.a() / n, w.b() / n);
}

std::string Eisenstein::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Eisenstein& e) {
    if (e.b() == 0) return os << e.a();
    if (e.a() != 0) {
        os << e.a();
        if (e.b() > 0) os << "+";
    }
    if (e.b() == -1)
        os << "-";
    else if (e.b() != 1)
        os << e.b() << "*";
    return os << "w";
}

}  // namespace qtheta
