#include "contractio/padic.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <random>
#include <sstream>

#include "contractio/matrix.hpp"

namespace contractio::padic {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

}  // namespace

// ---------------------------------------------------------------------------
// Polynomials over F_p

namespace fp {

namespace {

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, u64 p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p)
{
    if (b.empty()) throw DomainError("F_p polynomial division by zero");
    Poly rem = a;
    trim(rem);
    if (deg(rem) < deg(b)) return {Poly{}, rem};
    Poly quot(static_cast<std::size_t>(deg(rem) - deg(b) + 1), 0);
    u64 inv = invmod(b.back(), p);
    for (int k = deg(rem); k >= deg(b); --k) {
        u64 c = mulmod(rem[static_cast<std::size_t>(k)], inv, p);
        quot[static_cast<std::size_t>(k - deg(b))] = c;
        if (c == 0) continue;
        for (int j = 0; j <= deg(b); ++j) {
            auto idx = static_cast<std::size_t>(k - deg(b) + j);
            rem[idx] = (rem[idx] + p - mulmod(c, b[static_cast<std::size_t>(j)], p)) % p;
        }
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

Poly mod(const Poly& a, const Poly& m, u64 p) { return divmod(a, m, p).second; }

Poly gcd(Poly a, Poly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly derivative(const Poly& a, u64 p)
{
    if (a.size() <= 1) return {};
    Poly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
    trim(d);
    return d;
}

Poly powmod_poly(Poly base, Integer e, const Poly& m, u64 p)
{
    Poly result{1};
    base = mod(base, m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mod(mul(result, base, p), m, p);
        e >>= 1;
        if (e > 0) base = mod(mul(base, base, p), m, p);
    }
    return result;
}

/// Extended Euclid: s*a + t*b = gcd(a, b) (monic).
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b, u64 p)
{
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    u64 inv = invmod(r0.back(), p);
    auto scale = [&](Poly v) {
        for (auto& c : v) c = mulmod(c, inv, p);
        trim(v);
        return v;
    };
    return {scale(r0), scale(s0), scale(t0)};
}

std::vector<std::pair<Poly, int>> squarefree_factor(const Poly& f, u64 p)
{
    std::vector<std::pair<Poly, int>> out;
    Poly c = gcd(f, derivative(f, p), p);
    Poly w = divmod(f, c, p).first;
    int i = 1;
    while (deg(w) > 0) {
        Poly y = gcd(w, c, p);
        Poly fac = divmod(w, y, p).first;
        if (deg(fac) > 0) out.emplace_back(monic(fac, p), i);
        w = y;
        c = divmod(c, y, p).first;
        ++i;
    }
    if (deg(c) > 0) {
        // c is a p-th power; a^p = a on F_p coefficients.
        Poly root;
        for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(p)) root.push_back(c[k]);
        trim(root);
        for (auto& [g, m] : squarefree_factor(root, p)) out.emplace_back(g, m * static_cast<int>(p));
    }
    return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly f, u64 p)
{
    std::vector<std::pair<Poly, int>> out;
    Poly x{0, 1};
    Poly h = mod(x, f, p);
    int i = 1;
    while (deg(f) >= 2 * i) {
        h = powmod_poly(h, Integer(static_cast<unsigned long>(p)), f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            out.emplace_back(g, i);
            f = divmod(f, g, p).first;
            h = mod(h, f, p);
        }
        ++i;
    }
    if (deg(f) > 0) out.emplace_back(monic(f, p), deg(f));
    return out;
}

void equal_degree(const Poly& f, int d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out)
{
    if (deg(f) == d) {
        out.push_back(monic(f, p));
        return;
    }
    std::uniform_int_distribution<u64> coin(0, p - 1);
    Integer exponent = (ipow(static_cast<long>(p), static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        Poly a(static_cast<std::size_t>(deg(f)));
        for (auto& c : a) c = coin(rng);
        trim(a);
        if (deg(a) < 1) continue;
        Poly b;
        if (p == 2) {
            Poly t = a;
            b = a;
            for (int j = 1; j < d; ++j) {
                t = mod(mul(t, t, p), f, p);
                b = add(b, t, p);
            }
        } else {
            b = sub(powmod_poly(a, exponent, f, p), Poly{1}, p);
        }
        Poly g = gcd(b, f, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            equal_degree(g, d, p, rng, out);
            equal_degree(divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

}  // namespace

Poly reduce(const QPoly& f, long p)
{
    Poly out;
    for (const auto& c : f.coeffs()) {
        Valuation v = valuation(c, p);
        if (!v.infinite && v.value < 0) throw DomainError("coefficient not p-integral");
        Rational r = padic_round(c, p, 1);
        out.push_back(r.get_num().get_ui());
    }
    trim(out);
    return out;
}

Poly mul(const Poly& a, const Poly& b, u64 p)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(r);
    return r;
}

Poly monic(const Poly& a, u64 p)
{
    Poly r = a;
    trim(r);
    if (r.empty()) return r;
    u64 inv = invmod(r.back(), p);
    for (auto& c : r) c = mulmod(c, inv, p);
    return r;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f, u64 p)
{
    Poly g = monic(f, p);
    if (g.empty()) throw DomainError("factorisation of the zero polynomial");
    std::mt19937_64 rng(0x5eedULL);
    std::vector<std::pair<Poly, int>> out;
    for (auto& [sq, mult] : squarefree_factor(g, p)) {
        for (auto& [part, d] : distinct_degree(sq, p)) {
            std::vector<Poly> irreducibles;
            equal_degree(part, d, p, rng, irreducibles);
            for (auto& q : irreducibles) out.emplace_back(q, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    // Merge equal irreducibles coming from different squarefree layers.
    std::vector<std::pair<Poly, int>> merged;
    for (auto& entry : out) {
        if (!merged.empty() && merged.back().first == entry.first)
            merged.back().second += entry.second;
        else
            merged.push_back(entry);
    }
    return merged;
}

}  // namespace fp

// ---------------------------------------------------------------------------
// Basic types

PAdicContext::PAdicContext(long prime, long precision) : prime_(prime), precision_(precision)
{
    if (prime >= (1L << 31) || !is_prime(prime)) throw DomainError("p = " + std::to_string(prime) + " is not a supported prime");
    if (precision < 1) throw DomainError("precision must be at least 1");
}

std::string PAdicPoly::to_string() const { return poly.to_string(); }

PAdicPoly make_padic_poly(QPoly f)
{
    if (f.degree() < 1 || !f.is_monic()) throw DomainError("expected a monic polynomial of degree >= 1, got " + f.to_string());
    return PAdicPoly{std::move(f), std::nullopt};
}

std::string to_string(Certification c)
{
    switch (c) {
    case Certification::RationalExact: return "RationalExact";
    case Certification::NewtonSlope: return "NewtonSlope";
    case Certification::HenselCoprime: return "HenselCoprime";
    case Certification::Uncertified: return "Uncertified";
    }
    return "Uncertified";
}

bool CertifiedFactorization::fully_certified() const
{
    return std::none_of(factors.begin(), factors.end(),
                        [](const CertifiedFactor& f) { return f.certification == Certification::Uncertified; });
}

// ---------------------------------------------------------------------------
// Newton polygons

std::vector<Rational> NewtonPolygon::root_valuations() const
{
    std::vector<Rational> out;
    for (const auto& seg : segments)
        for (int i = 0; i < seg.length; ++i) out.push_back(seg.root_valuation);
    std::sort(out.begin(), out.end());
    return out;
}

int NewtonPolygon::total_multiplicity() const
{
    int total = zero_roots;
    for (const auto& seg : segments) total += seg.length;
    return total;
}

NewtonPolygon newton_polygon(const QPoly& f, long p)
{
    if (f.degree() < 1) throw DomainError("Newton polygon needs degree >= 1");
    std::vector<std::pair<int, long>> pts;
    for (int i = 0; i <= f.degree(); ++i) {
        Valuation v = valuation(f.coeff(i), p);
        if (!v.infinite) pts.emplace_back(i, v.value);
    }
    NewtonPolygon np;
    np.zero_roots = pts.front().first;
    // Lower hull, monotone chain from left to right.
    std::vector<std::pair<int, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // Drop b when it lies on or above segment a -> pt.
            Integer cross = Integer(b.first - a.first) * (pt.second - a.second) -
                            Integer(b.second - a.second) * (pt.first - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    np.vertices = hull;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        int len = hull[i].first - hull[i - 1].first;
        np.segments.push_back({make_rational(hull[i - 1].second - hull[i].second, len), len});
    }
    return np;
}

bool is_contractive_poly(const QPoly& f, long p)
{
    NewtonPolygon np = newton_polygon(f, p);
    return std::all_of(np.segments.begin(), np.segments.end(),
                       [](const NewtonSegment& s) { return s.root_valuation > 0; });
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z / p^k

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmod(ZPoly a, const Integer& m)
{
    for (auto& c : a) c = nonneg_mod(c, m);
    ztrim(a);
    return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b)
{
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b)
{
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

/// Division by a monic polynomial, exact over Z.
std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& a, const ZPoly& b)
{
    ZPoly rem = a;
    ztrim(rem);
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(rem.size()) - 1;
    if (da < db) return {ZPoly{}, rem};
    ZPoly quot(static_cast<std::size_t>(da - db + 1), Integer(0));
    for (int k = da; k >= db; --k) {
        Integer c = rem[static_cast<std::size_t>(k)];
        quot[static_cast<std::size_t>(k - db)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
    }
    ztrim(rem);
    ztrim(quot);
    return {quot, rem};
}

ZPoly to_zpoly(const QPoly& f, const char* what)
{
    ZPoly out;
    for (const auto& c : f.coeffs()) {
        if (c.get_den() != 1) throw DomainError(std::string(what) + " must have integer coefficients");
        out.push_back(c.get_num());
    }
    return out;
}

ZPoly from_fp(const fp::Poly& a)
{
    ZPoly out;
    for (auto c : a) out.emplace_back(static_cast<unsigned long>(c));
    return out;
}

QPoly to_qpoly_symmetric(const ZPoly& a, const Integer& m)
{
    std::vector<Rational> c;
    for (const auto& x : a) c.emplace_back(symmetric_mod(x, m));
    return QPoly(std::move(c));
}

}  // namespace

std::pair<QPoly, QPoly> hensel_lift(const QPoly& f, const QPoly& g0, const QPoly& h0, long p, long k)
{
    if (!is_prime(p) || p >= (1L << 31)) throw DomainError("hensel_lift needs a prime below 2^31");
    if (k < 1) throw DomainError("hensel_lift target exponent must be >= 1");
    if (!f.is_monic()) throw DomainError("hensel_lift needs a monic f");
    ZPoly fz = to_zpoly(f, "f");
    auto up = static_cast<u64>(p);
    fp::Poly gbar = fp::reduce(g0, p);
    fp::Poly hbar = fp::reduce(h0, p);
    if (gbar.empty() || hbar.empty()) throw DomainError("hensel_lift factors vanish modulo p");
    // Normalise so that both factors are monic modulo p.
    u64 lg = gbar.back();
    gbar = fp::monic(gbar, up);
    for (auto& c : hbar) c = mulmod(c, lg, up);
    if (fp::mul(gbar, hbar, up) != fp::reduce(f, p)) throw DomainError("f is not congruent to g0*h0 modulo p");
    auto [gcd_, s_bar, t_bar] = fp::xgcd(gbar, hbar, up);
    if (gcd_.size() != 1) throw NotCoprime("factors are not coprime modulo " + std::to_string(p));

    Integer target = ipow(p, static_cast<unsigned long>(k));
    ZPoly g = from_fp(gbar), h = from_fp(hbar), s = from_fp(s_bar), t = from_fp(t_bar);
    Integer m = p;
    while (m < target) {
        Integer m2 = m * m;
        if (m2 > target) m2 = target;
        ZPoly e = zmod(zsub(fz, zmul(g, h)), m2);
        auto [q, r] = zdivmod_monic(zmod(zmul(s, e), m2), h);
        q = zmod(q, m2);
        r = zmod(r, m2);
        ZPoly gs = zmod(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
        ZPoly hs = zmod(zadd(h, r), m2);
        ZPoly b = zmod(zsub(zadd(zmul(s, gs), zmul(t, hs)), ZPoly{Integer(1)}), m2);
        auto [c, d] = zdivmod_monic(zmod(zmul(s, b), m2), hs);
        s = zmod(zsub(s, d), m2);
        t = zmod(zsub(zsub(t, zmul(t, b)), zmul(c, gs)), m2);
        g = std::move(gs);
        h = std::move(hs);
        m = m2;
    }
    QPoly gq = to_qpoly_symmetric(g, target);
    QPoly hq = to_qpoly_symmetric(h, target);
    QPoly residual = f - gq * hq;
    for (const auto& c : residual.coeffs())
        if (!mpz_divisible_p(c.get_num().get_mpz_t(), target.get_mpz_t()))
            throw std::logic_error("hensel_lift failed to reach the target precision");
    return {gq, hq};
}

// ---------------------------------------------------------------------------
// Rational factorisation

namespace {

using Complex = std::complex<long double>;

std::vector<Complex> numeric_roots(const QPoly& f)
{
    int n = f.degree();
    std::vector<long double> a;
    for (int i = 0; i <= n; ++i) a.push_back(f.coeff(i).get_d());
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(a[static_cast<std::size_t>(i)]));
    auto eval = [&](Complex z) {
        Complex acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * z + a[static_cast<std::size_t>(i)];
        return acc;
    };
    auto deriv = [&](Complex z) {
        Complex acc = 0;
        for (int i = n; i >= 1; --i) acc = acc * z + a[static_cast<std::size_t>(i)] * static_cast<long double>(i);
        return acc;
    };
    std::vector<Complex> z(static_cast<std::size_t>(n));
    Complex seed(0.4L, 0.9L);
    Complex w = 1;
    for (int i = 0; i < n; ++i) {
        w *= seed;
        z[static_cast<std::size_t>(i)] = w * (bound / std::abs(w) * 0.5L);
    }
    for (int iter = 0; iter < 2000; ++iter) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            Complex denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            if (std::abs(denom) == 0) denom = 1e-30L;
            Complex delta = eval(z[static_cast<std::size_t>(i)]) / denom;
            z[static_cast<std::size_t>(i)] -= delta;
            change = std::max(change, std::abs(delta) / (1 + std::abs(z[static_cast<std::size_t>(i)])));
        }
        if (change < 1e-18L) break;
    }
    for (auto& r : z)
        for (int k = 0; k < 4; ++k) {
            Complex d = deriv(r);
            if (std::abs(d) == 0) break;
            r -= eval(r) / d;
        }
    return z;
}

/// Monic integer candidate from a subset of roots, if its coefficients round
/// to integers of safe magnitude.
std::optional<QPoly> candidate_from_roots(const std::vector<Complex>& roots)
{
    std::vector<Complex> c{Complex(1)};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * r;
        }
        c = std::move(next);
    }
    std::vector<Rational> coeffs;
    for (const auto& x : c) {
        long double re = std::round(x.real());
        if (std::abs(re) > 1e15L) return std::nullopt;
        long double tol = 1e-6L * (1 + std::abs(x.real()));
        if (std::abs(x.imag()) > tol || std::abs(x.real() - re) > tol) return std::nullopt;
        coeffs.emplace_back(Integer(static_cast<long>(re)));
    }
    return QPoly(std::move(coeffs));
}

std::vector<QPoly> integer_factors(const QPoly& f)
{
    std::vector<QPoly> out;
    QPoly rest = f;
    std::vector<Complex> roots = numeric_roots(f);
    for (std::size_t size = 1; 2 * size <= roots.size();) {
        bool found = false;
        std::vector<bool> pick(roots.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
            std::vector<Complex> subset;
            for (std::size_t i = 0; i < roots.size(); ++i)
                if (pick[i]) subset.push_back(roots[i]);
            auto cand = candidate_from_roots(subset);
            if (!cand) continue;
            auto [q, r] = rest.divmod(*cand);
            if (!r.is_zero()) continue;
            out.push_back(*cand);
            rest = q;
            std::vector<Complex> remaining;
            for (std::size_t i = 0; i < roots.size(); ++i)
                if (!pick[i]) remaining.push_back(roots[i]);
            roots = std::move(remaining);
            found = true;
            break;
        } while (std::prev_permutation(pick.begin(), pick.end()));
        if (!found) ++size;
    }
    if (rest.degree() > 0) out.push_back(rest);
    return out;
}

}  // namespace

std::vector<QPoly> rational_factors(const QPoly& f)
{
    if (f.degree() < 1 || !f.is_monic()) throw DomainError("rational_factors needs a monic polynomial");
    if (f.degree() > kMaxFactorDegree) throw TooLarge("factorisation limited to degree " + std::to_string(kMaxFactorDegree));
    std::vector<QPoly> out;
    QPoly g = f;
    while (g.degree() >= 1 && g.coeff(0) == 0) {
        out.push_back(QPoly::x_minus(Rational(0)));
        g = g.divmod(out.back()).first;
    }
    if (g.degree() < 1) return out;
    Integer denom_lcm = 1;
    for (const auto& c : g.coeffs()) denom_lcm = lcm(denom_lcm, c.get_den());
    // F(Y) = D^d g(Y / D) is monic with integer coefficients.
    QPoly integral = g.scale_variable(make_rational(Integer(1), denom_lcm));
    for (const auto& piece : integer_factors(integral)) out.push_back(piece.scale_variable(Rational(denom_lcm)));
    std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.to_string() < b.to_string();
    });
    return out;
}

std::vector<QPoly> squarefree_decomposition(const QPoly& f)
{
    // Yun's algorithm over Q.
    QPoly g = f.monic();
    QPoly dg = g.derivative();
    QPoly b = gcd(g, dg);
    QPoly c = g.divmod(b).first;
    QPoly d = dg.divmod(b).first - c.derivative();
    std::vector<QPoly> out;
    while (c.degree() > 0) {
        QPoly a = gcd(c, d);
        out.push_back(a);
        c = c.divmod(a).first;
        d = d.divmod(a).first - c.derivative();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factorisation over Q_p

namespace {

struct Piece {
    QPoly poly;
    bool exact = true;
    Certification cert = Certification::Uncertified;
};

long min_valuation(const QPoly& f, long p)
{
    long best = std::numeric_limits<long>::max();
    for (const auto& c : f.coeffs()) {
        Valuation v = valuation(c, p);
        if (!v.infinite) best = std::min(best, v.value);
    }
    return best;
}

QPoly round_poly(const QPoly& f, long p, long precision)
{
    std::vector<Rational> c;
    for (int i = 0; i <= f.degree(); ++i)
        c.push_back(i == f.degree() ? f.coeff(i) : padic_round(f.coeff(i), p, precision));
    return QPoly(std::move(c));
}

/// Newton iteration for F = g * h where g, h are monic approximations whose
/// root sets are separated (distinct slopes). Coefficients are kept rounded
/// modulo p^(target + guard).
bool lift_split(const QPoly& F, QPoly& g, QPoly& h, long p, long target)
{
    int d = F.degree();
    int k = g.degree();
    auto sylvester = [&](const QPoly& gg, const QPoly& hh) {
        RatMatrix m(d, d);
        for (int j = 0; j < d - k; ++j)
            for (int i = 0; i <= k; ++i) m(i + j, j) = gg.coeff(i);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i <= d - k; ++i) m(i + j, d - k + j) = hh.coeff(i);
        return m;
    };
    Rational res = sylvester(g, h).determinant();
    if (res == 0) return false;
    long guard = std::max(0L, valuation(res, p).value) * 2 + 4;
    for (int iter = 0; iter < 120; ++iter) {
        QPoly e = F - g * h;
        if (e.is_zero() || min_valuation(e, p) >= target) return true;
        RatMatrix m = sylvester(g, h);
        if (m.determinant() == 0) return false;
        RatVector rhs(static_cast<std::size_t>(d), Rational(0));
        for (int i = 0; i < d; ++i) rhs[static_cast<std::size_t>(i)] = e.coeff(i);
        RatVector x = m.inverse() * rhs;
        std::vector<Rational> dh(x.begin(), x.begin() + (d - k));
        std::vector<Rational> dg(x.begin() + (d - k), x.end());
        g = round_poly(g + QPoly(dg), p, target + guard);
        h = round_poly(h + QPoly(dh), p, target + guard);
    }
    return false;
}

/// Factors a monic polynomial with p-integral coefficients and no zero root.
void factor_integral(const QPoly& R, bool exact, long p, long work, int depth, std::vector<Piece>& out)
{
    int d = R.degree();
    NewtonPolygon np = newton_polygon(R, p);
    if (np.segments.size() > 1) {
        int k = np.vertices[1].first;
        Rational ak = R.coeff(k);
        std::vector<Rational> gc, hc;
        for (int i = 0; i <= k; ++i) gc.push_back(R.coeff(i) / ak);
        for (int i = k; i <= d; ++i) hc.push_back(R.coeff(i));
        QPoly g(gc), h(hc);
        if (!lift_split(R, g, h, p, work)) {
            out.push_back({R, exact, Certification::Uncertified});
            return;
        }
        factor_integral(g, false, p, work, depth, out);
        factor_integral(h, false, p, work, depth, out);
        return;
    }
    const NewtonSegment& seg = np.segments.front();
    Integer den = seg.root_valuation.get_den();
    if (den == d) {
        out.push_back({R, exact, Certification::NewtonSlope});
        return;
    }
    if (den != 1 || depth > 16) {
        out.push_back({R, exact, Certification::Uncertified});
        return;
    }
    // Integral slope m: rescale so all roots are units.
    Rational c = rpow(p, seg.root_valuation.get_num().get_si());
    QPoly S = R.scale_variable(c);
    auto mod_p = fp::factor(fp::reduce(S, p), static_cast<u64>(p));
    if (mod_p.size() == 1 && mod_p.front().second == 1) {
        out.push_back({R, exact, Certification::HenselCoprime});
        return;
    }
    Rational inv_c = 1 / c;
    std::vector<Piece> sub;
    if (mod_p.size() > 1) {
        fp::Poly a{1};
        for (int i = 0; i < mod_p.front().second; ++i) a = fp::mul(a, mod_p.front().first, static_cast<u64>(p));
        fp::Poly b{1};
        for (std::size_t j = 1; j < mod_p.size(); ++j)
            for (int i = 0; i < mod_p[j].second; ++i) b = fp::mul(b, mod_p[j].first, static_cast<u64>(p));
        QPoly S_int = round_poly(S, p, work);
        auto to_q = [](const fp::Poly& x) {
            std::vector<Rational> v;
            for (auto coef : x) v.emplace_back(Integer(static_cast<unsigned long>(coef)));
            return QPoly(std::move(v));
        };
        auto [G, H] = hensel_lift(S_int, to_q(a), to_q(b), p, work);
        factor_integral(G.scale_variable(inv_c), false, p, work, depth, out);
        factor_integral(H.scale_variable(inv_c), false, p, work, depth, out);
        return;
    }
    // A single repeated irreducible modulo p.
    const fp::Poly& phi = mod_p.front().first;
    if (phi.size() != 2) {
        out.push_back({R, exact, Certification::Uncertified});
        return;
    }
    Rational root(Integer(static_cast<unsigned long>((static_cast<u64>(p) - phi[0]) % static_cast<u64>(p))));
    QPoly T = S.translate(root);
    factor_integral(T, exact, p, work, depth + 1, sub);
    for (auto& piece : sub) {
        piece.poly = piece.poly.translate(-root).scale_variable(inv_c);
        out.push_back(std::move(piece));
    }
}

}  // namespace

CertifiedFactorization factor_over_qp(const QPoly& f, const PAdicContext& ctx)
{
    if (f.degree() < 1 || !f.is_monic()) throw DomainError("factor_over_qp needs a monic polynomial, got " + f.to_string());
    if (f.degree() > kMaxFactorDegree) throw TooLarge("factorisation limited to degree " + std::to_string(kMaxFactorDegree));
    if (gcd(f, f.derivative()).degree() > 0) throw NotSquarefree(f.to_string() + " is not squarefree");
    long p = ctx.prime();
    long N = ctx.precision();
    CertifiedFactorization result;
    result.prime = p;
    result.precision = N;
    for (const QPoly& r : rational_factors(f)) {
        if (r.degree() == 1) {
            result.factors.push_back({PAdicPoly{r, std::nullopt}, Certification::RationalExact});
            continue;
        }
        // Make r p-integral: R(Y) = p^(e d) r(Y / p^e).
        long e = 0;
        int d = r.degree();
        for (int i = 0; i < d; ++i) {
            Valuation v = valuation(r.coeff(i), p);
            if (v.infinite || v.value >= 0) continue;
            e = std::max(e, (-v.value + (d - i) - 1) / (d - i));
        }
        QPoly R = r.scale_variable(rpow(p, -e));
        long work = N + e * d + 8;
        std::vector<Piece> pieces;
        factor_integral(R, true, p, work, 0, pieces);
        for (auto& piece : pieces) {
            QPoly back = piece.poly.scale_variable(rpow(p, e));
            if (piece.exact) {
                result.factors.push_back({PAdicPoly{back, std::nullopt}, piece.cert});
            } else {
                result.factors.push_back({PAdicPoly{round_poly(back, p, N + e * d), N}, piece.cert});
            }
        }
    }
    std::stable_sort(result.factors.begin(), result.factors.end(), [&](const CertifiedFactor& a, const CertifiedFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        if (a.factor.exact() != b.factor.exact()) return a.factor.exact();
        if (a.factor.exact()) return a.factor.poly.to_string() < b.factor.poly.to_string();
        return precision_key(a.factor, p, N) < precision_key(b.factor, p, N);
    });
    QPoly product = QPoly::constant(Rational(1));
    for (const auto& fac : result.factors) product = product * fac.factor.poly;
    for (int i = 0; i <= f.degree(); ++i)
        if (!congruent(product.coeff(i), f.coeff(i), p, N))
            throw std::logic_error("factor_over_qp: product of factors does not match input");
    return result;
}

PolyMatch compare_at_precision(const PAdicPoly& a, const PAdicPoly& b, long p, long precision)
{
    if (a.degree() != b.degree()) return PolyMatch::Different;
    if (a.exact() && b.exact()) return a.poly == b.poly ? PolyMatch::Equal : PolyMatch::Different;
    for (int i = 0; i <= a.degree(); ++i)
        if (!congruent(a.poly.coeff(i), b.poly.coeff(i), p, precision)) return PolyMatch::Different;
    return PolyMatch::AgreeToPrecision;
}

std::string precision_key(const PAdicPoly& f, long p, long precision)
{
    return round_poly(f.poly, p, precision).to_string();
}

}  // namespace contractio::padic
