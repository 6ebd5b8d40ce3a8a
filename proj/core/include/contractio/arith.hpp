#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace contractio {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an object exceeds the size budget of an exact algorithm.
class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds num/den in canonical form. Throws DomainError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);
Rational make_rational(long num, long den = 1);

/// Parses "a" or "a/b" (optional leading sign).
Rational parse_rational(const std::string& text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

bool is_prime(long p);

/// p-adic valuation; +inf is represented by the `infinite` flag.
struct Valuation {
    bool infinite = false;
    long value = 0;

    static Valuation inf() { return {true, 0}; }
    static Valuation of(long v) { return {false, v}; }

    friend bool operator==(const Valuation&, const Valuation&) = default;
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b)
    {
        if (a.infinite || b.infinite) {
            if (a.infinite == b.infinite) return std::strong_ordering::equal;
            return a.infinite ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return a.value <=> b.value;
    }
};

std::string to_string(const Valuation& v);

/// v_p(z); requires z != 0.
long valuation(const Integer& z, long p);
/// v_p(q) = v_p(num) - v_p(den), +inf for q = 0.
Valuation valuation(const Rational& q, long p);

/// Integer power p^e for e >= 0.
Integer ipow(long p, unsigned long e);
/// Rational power p^e for any integer e.
Rational rpow(long p, long e);

/// Canonical representative of q modulo p^N Z_p: either 0 (when v_p(q) >= N)
/// or p^v * c with c a residue in [0, p^(N - v)) coprime to p.
/// Requires q to have no factor of p in a reduced denominator beyond p^v.
Rational padic_round(const Rational& q, long p, long precision);

/// True when v_p(a - b) >= precision.
bool congruent(const Rational& a, const Rational& b, long p, long precision);

/// Symmetric residue of z modulo m, in (-m/2, m/2].
Integer symmetric_mod(const Integer& z, const Integer& m);
/// Non-negative residue of z modulo m.
Integer nonneg_mod(const Integer& z, const Integer& m);

/// Prime factorisation by trial division; intended for group orders and
/// other small integers.
std::map<long, long> factor_small(Integer n);

/// Number of prime factors counted with multiplicity.
long big_omega(const std::map<long, long>& factored);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace contractio
