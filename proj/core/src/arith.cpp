#include "contractio/arith.hpp"

#include <cctype>

namespace contractio {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw DomainError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den)
{
    return make_rational(Integer(num), Integer(den));
}

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size()) throw DomainError("malformed rational '" + text + "'");
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw DomainError("malformed rational '" + text + "'");
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    check_int(num);
    check_int(den);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!den.empty() && den[0] == '+') den.erase(0, 1);
    return make_rational(Integer(num), Integer(den));
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_prime(long p)
{
    if (p < 2) return false;
    return mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) != 0;
}

std::string to_string(const Valuation& v)
{
    return v.infinite ? std::string("inf") : std::to_string(v.value);
}

long valuation(const Integer& z, long p)
{
    if (z == 0) throw DomainError("valuation of zero integer");
    Integer rest;
    Integer prime(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

Valuation valuation(const Rational& q, long p)
{
    if (q == 0) return Valuation::inf();
    return Valuation::of(valuation(q.get_num(), p) - valuation(q.get_den(), p));
}

Integer ipow(long p, unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
}

Rational rpow(long p, long e)
{
    if (e >= 0) return Rational(ipow(p, static_cast<unsigned long>(e)));
    return make_rational(Integer(1), ipow(p, static_cast<unsigned long>(-e)));
}

Rational padic_round(const Rational& q, long p, long precision)
{
    Valuation v = valuation(q, p);
    if (v.infinite || v.value >= precision) return Rational(0);
    // q = p^v * a / b with a, b prime to p.
    Integer a = q.get_num();
    Integer b = q.get_den();
    Integer prime(p);
    mpz_remove(a.get_mpz_t(), a.get_mpz_t(), prime.get_mpz_t());
    mpz_remove(b.get_mpz_t(), b.get_mpz_t(), prime.get_mpz_t());
    Integer modulus = ipow(p, static_cast<unsigned long>(precision - v.value));
    Integer binv;
    if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw DomainError("denominator not invertible modulo p");
    Integer c = nonneg_mod(a * binv, modulus);
    Rational r = Rational(c) * rpow(p, v.value);
    r.canonicalize();
    return r;
}

bool congruent(const Rational& a, const Rational& b, long p, long precision)
{
    Valuation v = valuation(Rational(a - b), p);
    return v.infinite || v.value >= precision;
}

Integer symmetric_mod(const Integer& z, const Integer& m)
{
    Integer r = nonneg_mod(z, m);
    if (2 * r > m) r -= m;
    return r;
}

Integer nonneg_mod(const Integer& z, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::map<long, long> factor_small(Integer n)
{
    if (n < 0) n = -n;
    std::map<long, long> out;
    if (n <= 1) return out;
    for (long d = 2; Integer(d) * d <= n; ++d) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(d))) {
            ++out[d];
            n /= d;
        }
    }
    if (n > 1) {
        if (!n.fits_slong_p()) throw TooLarge("cofactor too large for trial division");
        ++out[n.get_si()];
    }
    return out;
}

long big_omega(const std::map<long, long>& factored)
{
    long total = 0;
    for (const auto& [prime, e] : factored) total += e;
    return total;
}

Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace contractio
