#include "contractio/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace contractio {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

QPoly QPoly::monomial(const Rational& c, int degree)
{
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return QPoly(std::move(v));
}

QPoly QPoly::x_minus(const Rational& root) { return QPoly({Rational(-root), Rational(1)}); }

void QPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(int i) const
{
    if (i < 0 || i > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational QPoly::eval(const Rational& x) const
{
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::derivative() const
{
    if (degree() < 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return QPoly(std::move(d));
}

QPoly QPoly::monic() const
{
    if (is_zero()) return {};
    Rational inv = 1 / leading();
    return inv * *this;
}

QPoly QPoly::translate(const Rational& shift) const
{
    // Horner in the ring Q[X]: f(X + s).
    QPoly result;
    QPoly lin({shift, Rational(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) result = result * lin + constant(*it);
    return result;
}

QPoly QPoly::scale_variable(const Rational& c) const
{
    if (is_zero()) return {};
    std::vector<Rational> v(coeffs_.size());
    int d = degree();
    for (int i = 0; i <= d; ++i) {
        Rational factor(1);
        for (int k = i; k < d; ++k) factor /= c;
        v[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)] * factor;
    }
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const
{
    std::vector<Rational> v(coeffs_);
    for (auto& c : v) c = -c;
    return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b)
{
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return QPoly(std::move(v));
}

QPoly operator*(const Rational& c, const QPoly& a)
{
    std::vector<Rational> v(a.coeffs_);
    for (auto& x : v) x *= c;
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& divisor) const
{
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> rem(coeffs_);
    int dd = divisor.degree();
    int n = degree();
    if (n < dd) return {QPoly(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(n - dd) + 1, Rational(0));
    for (int k = n; k >= dd; --k) {
        Rational c = rem[static_cast<std::size_t>(k)] / divisor.leading();
        quot[static_cast<std::size_t>(k - dd)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(k - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

std::string QPoly::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first)
            out << (negative ? "-" : "");
        else
            out << (negative ? " - " : " + ");
        first = false;
        if (i == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1) out << mag.get_str() << "*";
        out << "X";
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

QPoly gcd(QPoly a, QPoly b)
{
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly pow(const QPoly& f, int e)
{
    QPoly r = QPoly::constant(Rational(1));
    for (int i = 0; i < e; ++i) r = r * f;
    return r;
}

}  // namespace contractio
