#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contractio/arith.hpp"
#include "contractio/polynomial.hpp"

namespace contractio::padic {

inline constexpr long kDefaultPrecision = 32;
inline constexpr int kMaxFactorDegree = 8;

class NotCoprime : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSquarefree : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A prime together with a working precision N (arithmetic modulo p^N).
class PAdicContext {
public:
    /// Throws DomainError unless p is a prime below 2^31 and N >= 1.
    PAdicContext(long prime, long precision = kDefaultPrecision);

    long prime() const { return prime_; }
    long precision() const { return precision_; }

private:
    long prime_;
    long precision_;
};

/// Monic polynomial over Q, read in Q_p. When `precision` is set the
/// coefficients are only known modulo p^precision (Hensel or slope lift);
/// otherwise they are exact.
struct PAdicPoly {
    QPoly poly;
    std::optional<long> precision;

    bool exact() const { return !precision.has_value(); }
    int degree() const { return poly.degree(); }
    std::string to_string() const;
};

/// Throws DomainError unless f is monic of degree >= 1.
PAdicPoly make_padic_poly(QPoly f);

struct NewtonSegment {
    Rational root_valuation;  // negated slope
    int length = 0;
};

struct NewtonPolygon {
    std::vector<std::pair<int, long>> vertices;  // (index, valuation)
    std::vector<NewtonSegment> segments;          // ordered left to right
    int zero_roots = 0;                            // multiplicity of the root 0

    /// Expanded multiset of finite root valuations, ascending.
    std::vector<Rational> root_valuations() const;
    int total_multiplicity() const;
    bool is_pure() const { return segments.size() == 1 && zero_roots == 0; }
};

/// Lower convex hull of {(i, v_p(a_i))}.
NewtonPolygon newton_polygon(const QPoly& f, long p);

/// All roots have valuation > 0.
bool is_contractive_poly(const QPoly& f, long p);

/// Lifts f = g0 * h0 (mod p) to f = g * h (mod p^k). f must be monic with
/// integer coefficients. Outputs are monic with coefficients reduced to the
/// symmetric residue system modulo p^k. Throws NotCoprime when g0, h0 share a
/// factor modulo p and DomainError when f != g0 * h0 (mod p).
std::pair<QPoly, QPoly> hensel_lift(const QPoly& f, const QPoly& g0, const QPoly& h0, long p, long k);

enum class Certification { RationalExact, NewtonSlope, HenselCoprime, Uncertified };

std::string to_string(Certification c);

struct CertifiedFactor {
    PAdicPoly factor;
    Certification certification = Certification::Uncertified;
};

struct CertifiedFactorization {
    long prime = 0;
    long precision = 0;
    std::vector<CertifiedFactor> factors;

    bool fully_certified() const;
};

/// Factorisation over Q_p of a monic squarefree polynomial of degree <= 8.
/// Throws NotSquarefree when gcd(f, f') != 1 and TooLarge beyond degree 8.
CertifiedFactorization factor_over_qp(const QPoly& f, const PAdicContext& ctx);

/// Factorisation over Q of a monic polynomial of degree <= 8 into monic
/// factors (with repetition). Factors are found by grouping numerically
/// located roots and are kept only after exact division succeeds; anything
/// not split that way is returned as one piece.
std::vector<QPoly> rational_factors(const QPoly& f);

/// Squarefree decomposition over Q: f = prod s_i^i; entry i-1 holds s_i.
std::vector<QPoly> squarefree_decomposition(const QPoly& f);

/// Coefficientwise comparison of two p-adic polynomials at precision N.
enum class PolyMatch { Equal, Different, AgreeToPrecision };
PolyMatch compare_at_precision(const PAdicPoly& a, const PAdicPoly& b, long p, long precision);

/// Canonical text of f with coefficients rounded modulo p^N (used as a key).
std::string precision_key(const PAdicPoly& f, long p, long precision);

/// Polynomials over F_p, coefficients in [0, p), lowest degree first.
namespace fp {
using Poly = std::vector<std::uint64_t>;

Poly reduce(const QPoly& f, long p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly monic(const Poly& a, std::uint64_t p);
/// Full factorisation of f into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. f must be non-zero.
std::vector<std::pair<Poly, int>> factor(const Poly& f, std::uint64_t p);
}  // namespace fp

}  // namespace contractio::padic
