#include "hodgeft/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace hodgeft {

Rat Rat::parse(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return Rat(q);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero())
        throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat factorial(int n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return Rat(z);
}

Rat double_factorial_odd(int n) {
    if (n < 0)
        return Rat(1);
    mpz_class z;
    mpz_2fac_ui(z.get_mpz_t(), static_cast<unsigned long>(2 * n + 1));
    return Rat(z);
}

} // namespace hodgeft
