#pragma once

#include <string>
#include <utility>
#include <vector>

#include "contractio/arith.hpp"

namespace contractio {

/// Dense univariate polynomial over Q; coefficient i multiplies X^i.
/// Trailing zeros are stripped so the zero polynomial has no coefficients.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);

    static QPoly constant(const Rational& c);
    static QPoly monomial(const Rational& c, int degree);
    static QPoly x_minus(const Rational& root);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    /// Coefficient of X^i, zero beyond the degree.
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational eval(const Rational& x) const;
    QPoly derivative() const;
    QPoly monic() const;
    /// f(X + shift).
    QPoly translate(const Rational& shift) const;
    /// c^(-deg) * f(c X); monic stays monic.
    QPoly scale_variable(const Rational& c) const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const Rational& c, const QPoly& a);
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division; throws DomainError for a zero divisor.
    std::pair<QPoly, QPoly> divmod(const QPoly& divisor) const;

    /// "X^2 + 3*X + 3" style rendering.
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Monic gcd (zero if both are zero).
QPoly gcd(QPoly a, QPoly b);

/// Power of a polynomial.
QPoly pow(const QPoly& f, int e);

}  // namespace contractio
