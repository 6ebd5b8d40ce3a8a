#include "contractio/group_model.hpp"

#include <algorithm>
#include <sstream>

#include "contractio/padic.hpp"

namespace contractio::model {

namespace {

long min_entry_valuation(const RatMatrix& m, long p)
{
    long best = 0;
    bool any = false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Valuation v = valuation(m(i, j), p);
            if (v.infinite) continue;
            if (!any || v.value < best) best = v.value;
            any = true;
        }
    return any ? best : (1L << 40);
}

/// Lower-triangular basis of the Z_(p)-lattice spanned by the columns of
/// `gens` (which must have full row rank), with p-power diagonal entries.
/// Returns the basis and the sum of the diagonal exponents.
std::pair<RatMatrix, long> lattice_echelon(RatMatrix m, long p)
{
    int d = m.rows();
    int cols = m.cols();
    long exponent_sum = 0;
    for (int i = 0; i < d; ++i) {
        int pivot = -1;
        long best = 0;
        for (int j = i; j < cols; ++j) {
            Valuation v = valuation(m(i, j), p);
            if (v.infinite) continue;
            if (pivot < 0 || v.value < best) {
                pivot = j;
                best = v.value;
            }
        }
        if (pivot < 0) throw DomainError("lattice generators do not have full rank");
        if (pivot != i)
            for (int r = 0; r < d; ++r) std::swap(m(r, i), m(r, pivot));
        Rational unit = m(i, i) / rpow(p, best);
        for (int r = 0; r < d; ++r) m(r, i) /= unit;
        exponent_sum += best;
        for (int j = i + 1; j < cols; ++j) {
            if (m(i, j) == 0) continue;
            Rational f = m(i, j) / m(i, i);  // valuation >= 0
            for (int r = 0; r < d; ++r) m(r, j) -= f * m(r, i);
        }
    }
    RatMatrix basis(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) basis(r, c) = m(r, c);
    return {basis, exponent_sum};
}

Rational trace(const RatMatrix& m)
{
    Rational t(0);
    for (int i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

void require_prime(long p)
{
    if (p < 2 || p >= (1L << 31) || !is_prime(p)) throw InvalidBlock("p = " + std::to_string(p) + " is not a prime");
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const ShiftBlock& shift_of(const Block& b) { return std::get<ShiftBlock>(b); }
const LinearBlock& linear_of(const Block& b) { return std::get<LinearBlock>(b); }
const HeisenbergBlock& heis_of(const Block& b) { return std::get<HeisenbergBlock>(b); }

}  // namespace

std::string to_string(OracleVerdict v)
{
    switch (v) {
    case OracleVerdict::Contractive: return "contractive";
    case OracleVerdict::NotContractive: return "not_contractive";
    case OracleVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

long default_oracle_bound(const RatMatrix& a, long p)
{
    long worst = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            Valuation v = valuation(a(i, j), p);
            if (!v.infinite) worst = std::max(worst, std::labs(v.value));
        }
    return a.rows() * (1 + worst) + 8;
}

OracleResult contractivity_oracle(const RatMatrix& a, long p, std::optional<long> k_max)
{
    if (!a.is_square() || a.rows() == 0) throw DomainError("contractivity oracle needs a non-empty square matrix");
    Rational det = a.determinant();
    if (det == 0) throw DomainError("contractivity oracle needs an invertible matrix");
    if (valuation(det, p).value <= 0) return {OracleVerdict::NotContractive, 0};
    long bound = k_max.value_or(default_oracle_bound(a, p));
    int d = a.rows();
    RatMatrix power = RatMatrix::identity(d);
    RatMatrix lattice = RatMatrix::identity(d);
    bool lattice_stable = false;
    for (long k = 1; k <= bound; ++k) {
        power = power * a;
        if (min_entry_valuation(power, p) >= 1) return {OracleVerdict::Contractive, k};
        Valuation tr = valuation(trace(power), p);
        if (!tr.infinite && tr.value <= 0) return {OracleVerdict::NotContractive, k};
        if (!lattice_stable) {
            // In an A-stable lattice A is integral, and then it contracts iff
            // it is nilpotent modulo p.
            RatMatrix local = lattice.inverse() * a * lattice;
            if (min_entry_valuation(local, p) >= 0) {
                lattice_stable = true;
                bool nilpotent = min_entry_valuation(local.power(d), p) >= 1;
                return {nilpotent ? OracleVerdict::Contractive : OracleVerdict::NotContractive, k};
            }
            RatMatrix gens(d, 2 * d);
            RatMatrix image = a * lattice;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    gens(r, c) = lattice(r, c);
                    gens(r, d + c) = image(r, c);
                }
            lattice = lattice_echelon(gens, p).first;
        }
    }
    return {OracleVerdict::Inconclusive, bound};
}

RatMatrix companion_matrix(const QPoly& f)
{
    if (!f.is_monic() || f.degree() < 1) throw DomainError("companion matrix needs a monic polynomial of degree >= 1");
    int d = f.degree();
    RatMatrix c(d, d);
    for (int j = 0; j + 1 < d; ++j) c(j + 1, j) = 1;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -f.coeff(i);
    return c;
}

ShiftBlock make_shift(const finite::FiniteGroup& f, std::optional<finite::CatalogSpec> catalog)
{
    return ShiftBlock{std::make_shared<const finite::FiniteGroup>(f), catalog};
}

ShiftBlock make_shift(const finite::CatalogSpec& spec) { return make_shift(finite::make_catalog_group(spec), spec); }

LinearBlock make_linear(long p, const RatMatrix& a)
{
    require_prime(p);
    if (!a.is_square() || a.rows() < 1) throw InvalidBlock("linear block needs a non-empty square matrix");
    if (a.determinant() == 0) throw InvalidBlock("matrix is singular");
    LinearBlock block;
    block.p = p;
    block.matrix = a;
    block.charpoly = a.charpoly();
    auto roots = padic::newton_polygon(block.charpoly, p).root_valuations();
    if (!roots.empty() && roots.front() <= 0)
        throw InvalidBlock("char poly " + block.charpoly.to_string() + " has root of valuation " + contractio::to_string(roots.front()));
    block.oracle = contractivity_oracle(a, p);
    if (block.oracle.verdict == OracleVerdict::NotContractive)
        throw std::logic_error("contractivity oracle disagrees with the Newton polygon for " + a.to_string());
    return block;
}

LinearBlock make_companion(long p, const QPoly& f)
{
    if (!f.is_monic() || f.degree() < 1) throw InvalidBlock("companion polynomial must be monic of degree >= 1");
    LinearBlock block = make_linear(p, companion_matrix(f));
    block.companion_of = f;
    return block;
}

HeisenbergBlock make_heisenberg(long p, long a, long b)
{
    require_prime(p);
    if (a < 1) throw InvalidBlock("weight a = " + std::to_string(a) + " must be >= 1");
    if (b < 1) throw InvalidBlock("weight b = " + std::to_string(b) + " must be >= 1");
    HeisenbergBlock block{p, a, b};
    // alpha must respect the group law.
    ContractionGroup g{{block}};
    std::vector<HeisElem> probes{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {make_rational(2, 3), -5, 7}};
    for (const auto& u : probes)
        for (const auto& v : probes) {
            Element x{{u}}, y{{v}};
            if (apply_alpha(g, multiply(g, x, y)) != multiply(g, apply_alpha(g, x), apply_alpha(g, y)))
                throw InvalidBlock("weights do not define an automorphism");
        }
    return block;
}

std::string block_to_string(const Block& b)
{
    return std::visit(overloaded{
                          [](const ShiftBlock& s) {
                              if (s.catalog) return "shift(" + s.catalog->token() + ")";
                              std::string out = "shift(table{";
                              const auto& g = *s.group;
                              for (int i = 0; i < g.order(); ++i) {
                                  if (i) out += ";";
                                  for (int j = 0; j < g.order(); ++j) out += (j ? "," : "") + std::to_string(g.mul(i, j));
                              }
                              return out + "})";
                          },
                          [](const LinearBlock& l) {
                              if (l.companion_of)
                                  return "companion(p=" + std::to_string(l.p) + ", poly=" + l.companion_of->to_string() + ")";
                              std::string m = l.matrix.to_string();
                              m.erase(std::remove(m.begin(), m.end(), ' '), m.end());
                              return "linear(p=" + std::to_string(l.p) + ", matrix=" + m + ")";
                          },
                          [](const HeisenbergBlock& h) {
                              return "heisenberg(p=" + std::to_string(h.p) + ", a=" + std::to_string(h.a) +
                                     ", b=" + std::to_string(h.b) + ")";
                          },
                      },
                      b);
}

bool same_block(const Block& a, const Block& b)
{
    if (a.index() != b.index()) return false;
    if (const auto* s = std::get_if<ShiftBlock>(&a)) {
        const auto& t = shift_of(b);
        return *s->group == *t.group && s->catalog == t.catalog;
    }
    if (const auto* l = std::get_if<LinearBlock>(&a)) {
        const auto& m = linear_of(b);
        return l->p == m.p && l->matrix == m.matrix && l->companion_of == m.companion_of;
    }
    const auto& h = heis_of(a);
    const auto& k = heis_of(b);
    return h.p == k.p && h.a == k.a && h.b == k.b;
}

std::optional<long> block_prime(const Block& b)
{
    if (const auto* l = std::get_if<LinearBlock>(&b)) return l->p;
    if (const auto* h = std::get_if<HeisenbergBlock>(&b)) return h->p;
    return std::nullopt;
}

bool is_torsion_block(const Block& b) { return std::holds_alternative<ShiftBlock>(b); }

std::string ContractionGroup::to_string() const
{
    if (blocks.empty()) return "trivial";
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? " * " : "") + block_to_string(blocks[i]);
    return out;
}

bool same_group(const ContractionGroup& a, const ContractionGroup& b)
{
    if (a.blocks.size() != b.blocks.size()) return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        if (!same_block(a.blocks[i], b.blocks[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Elements

void check_element(const ContractionGroup& g, const Element& x)
{
    if (x.parts.size() != g.blocks.size()) throw DomainError("element has the wrong number of components");
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        const Component& c = x.parts[i];
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            const auto* e = std::get_if<ShiftElem>(&c);
            if (!e) throw DomainError("shift component expected");
            for (auto [k, v] : e->support)
                if (v <= 0 || v >= s->group->order()) throw DomainError("shift value out of range");
        } else if (const auto* l = std::get_if<LinearBlock>(&b)) {
            const auto* e = std::get_if<RatVector>(&c);
            if (!e || static_cast<int>(e->size()) != l->dim()) throw DomainError("linear component has the wrong shape");
        } else if (!std::holds_alternative<HeisElem>(c)) {
            throw DomainError("Heisenberg component expected");
        }
    }
}

Element identity(const ContractionGroup& g)
{
    Element e;
    for (const auto& b : g.blocks) {
        if (std::holds_alternative<ShiftBlock>(b))
            e.parts.emplace_back(ShiftElem{});
        else if (const auto* l = std::get_if<LinearBlock>(&b))
            e.parts.emplace_back(RatVector(static_cast<std::size_t>(l->dim()), Rational(0)));
        else
            e.parts.emplace_back(HeisElem{});
    }
    return e;
}

namespace {

ShiftElem shift_combine(const finite::FiniteGroup& f, const ShiftElem& x, const ShiftElem& y)
{
    ShiftElem out = x;
    for (auto [k, v] : y.support) {
        auto it = out.support.find(k);
        int prod = f.mul(it == out.support.end() ? 0 : it->second, v);
        if (prod == 0) {
            if (it != out.support.end()) out.support.erase(it);
        } else {
            out.support[k] = prod;
        }
    }
    return out;
}

Rational scale(long p, long e, const Rational& q) { return q * rpow(p, e); }

}  // namespace

Element multiply(const ContractionGroup& g, const Element& x, const Element& y)
{
    Element out;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            out.parts.emplace_back(shift_combine(*s->group, std::get<ShiftElem>(x.parts[i]), std::get<ShiftElem>(y.parts[i])));
        } else if (std::holds_alternative<LinearBlock>(b)) {
            RatVector v = std::get<RatVector>(x.parts[i]);
            const auto& w = std::get<RatVector>(y.parts[i]);
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += w[j];
            out.parts.emplace_back(std::move(v));
        } else {
            const auto& u = std::get<HeisElem>(x.parts[i]);
            const auto& v = std::get<HeisElem>(y.parts[i]);
            out.parts.emplace_back(HeisElem{u.x + v.x, u.y + v.y, u.z + v.z + u.x * v.y});
        }
    }
    return out;
}

Element inverse(const ContractionGroup& g, const Element& x)
{
    Element out;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            ShiftElem e = std::get<ShiftElem>(x.parts[i]);
            for (auto& [k, v] : e.support) v = s->group->inv(v);
            out.parts.emplace_back(std::move(e));
        } else if (std::holds_alternative<LinearBlock>(b)) {
            RatVector v = std::get<RatVector>(x.parts[i]);
            for (auto& c : v) c = -c;
            out.parts.emplace_back(std::move(v));
        } else {
            const auto& u = std::get<HeisElem>(x.parts[i]);
            out.parts.emplace_back(HeisElem{-u.x, -u.y, -u.z + u.x * u.y});
        }
    }
    return out;
}

Element power(const ContractionGroup& g, const Element& x, long n)
{
    // Componentwise: coordinates of a shift element commute, linear parts
    // are additive and Heisenberg parts have a closed form.
    Element out;
    Rational nn(n);
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            ShiftElem e;
            for (auto [k, v] : std::get<ShiftElem>(x.parts[i]).support) {
                int r = finite::power(*s->group, v, n);
                if (r != 0) e.support[k] = r;
            }
            out.parts.emplace_back(std::move(e));
        } else if (std::holds_alternative<LinearBlock>(b)) {
            RatVector v = std::get<RatVector>(x.parts[i]);
            for (auto& c : v) c *= nn;
            out.parts.emplace_back(std::move(v));
        } else {
            out.parts.emplace_back(heisenberg_power(std::get<HeisElem>(x.parts[i]), n));
        }
    }
    return out;
}

HeisElem heisenberg_power(const HeisElem& e, long n)
{
    Rational nn(n);
    Rational binom = make_rational(n, 1) * make_rational(n - 1, 2);
    return HeisElem{nn * e.x, nn * e.y, nn * e.z + binom * e.x * e.y};
}

namespace {

Element alpha_step(const ContractionGroup& g, const Element& x, bool forward)
{
    Element out;
    long sign = forward ? 1 : -1;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (std::holds_alternative<ShiftBlock>(b)) {
            ShiftElem e;
            for (auto [k, v] : std::get<ShiftElem>(x.parts[i]).support) e.support[k + sign] = v;
            out.parts.emplace_back(std::move(e));
        } else if (const auto* l = std::get_if<LinearBlock>(&b)) {
            const auto& v = std::get<RatVector>(x.parts[i]);
            out.parts.emplace_back(forward ? l->matrix * v : l->matrix.inverse() * v);
        } else {
            const auto& h = heis_of(b);
            const auto& u = std::get<HeisElem>(x.parts[i]);
            out.parts.emplace_back(
                HeisElem{scale(h.p, sign * h.a, u.x), scale(h.p, sign * h.b, u.y), scale(h.p, sign * (h.a + h.b), u.z)});
        }
    }
    return out;
}

bool component_is_identity(const Component& c)
{
    if (const auto* s = std::get_if<ShiftElem>(&c)) return s->support.empty();
    if (const auto* v = std::get_if<RatVector>(&c)) return std::all_of(v->begin(), v->end(), [](const Rational& q) { return q == 0; });
    const auto& h = std::get<HeisElem>(c);
    return h.x == 0 && h.y == 0 && h.z == 0;
}

}  // namespace

Element apply_alpha(const ContractionGroup& g, const Element& x) { return alpha_step(g, x, true); }
Element apply_alpha_inverse(const ContractionGroup& g, const Element& x) { return alpha_step(g, x, false); }

std::optional<Integer> element_order(const ContractionGroup& g, const Element& x)
{
    Integer order = 1;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        if (const auto* s = std::get_if<ShiftBlock>(&g.blocks[i])) {
            for (auto [k, v] : std::get<ShiftElem>(x.parts[i]).support) order = lcm(order, Integer(s->group->element_order(v)));
        } else if (!component_is_identity(x.parts[i])) {
            return std::nullopt;
        }
    }
    return order;
}

bool is_torsion(const ContractionGroup& g, const Element& x) { return element_order(g, x).has_value(); }

std::optional<Element> nth_root(const ContractionGroup& g, const Element& x, long n)
{
    if (n < 1) throw DomainError("root index must be >= 1");
    Element out;
    Rational nn(n);
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            ShiftElem e;
            for (auto [k, v] : std::get<ShiftElem>(x.parts[i]).support) {
                auto r = finite::finite_root(*s->group, v, n);
                if (!r) return std::nullopt;
                if (*r != 0) e.support[k] = *r;
            }
            out.parts.emplace_back(std::move(e));
        } else if (std::holds_alternative<LinearBlock>(b)) {
            RatVector v = std::get<RatVector>(x.parts[i]);
            for (auto& c : v) c /= nn;
            out.parts.emplace_back(std::move(v));
        } else {
            const auto& u = std::get<HeisElem>(x.parts[i]);
            Rational rx = u.x / nn, ry = u.y / nn;
            Rational binom = make_rational(n, 1) * make_rational(n - 1, 2);
            out.parts.emplace_back(HeisElem{rx, ry, (u.z - binom * rx * ry) / nn});
        }
    }
    return out;
}

bool in_lattice_level(const ContractionGroup& g, const Element& x, long k)
{
    auto at_least = [](const Rational& q, long p, long level) {
        Valuation v = valuation(q, p);
        return v.infinite || v.value >= level;
    };
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (std::holds_alternative<ShiftBlock>(b)) {
            const auto& s = std::get<ShiftElem>(x.parts[i]).support;
            if (!s.empty() && s.begin()->first < k) return false;
        } else if (const auto* l = std::get_if<LinearBlock>(&b)) {
            for (const auto& c : std::get<RatVector>(x.parts[i]))
                if (!at_least(c, l->p, k)) return false;
        } else {
            long p = heis_of(b).p;
            const auto& u = std::get<HeisElem>(x.parts[i]);
            if (!at_least(u.x, p, k) || !at_least(u.y, p, k) || !at_least(u.z, p, 2 * k)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Modules

Integer block_delta(const Block& b)
{
    if (const auto* s = std::get_if<ShiftBlock>(&b)) return Integer(s->group->order());
    if (const auto* l = std::get_if<LinearBlock>(&b))
        return ipow(l->p, static_cast<unsigned long>(valuation(l->matrix.determinant(), l->p).value));
    const auto& h = heis_of(b);
    return ipow(h.p, static_cast<unsigned long>(2 * (h.a + h.b)));
}

Integer lattice_index_oracle(const Block& b)
{
    if (const auto* s = std::get_if<ShiftBlock>(&b)) {
        // alpha^-1(level 0) = level -1; the levels differ in one coordinate.
        long lower = -1, upper = 0;
        Integer index = 1;
        for (long k = lower; k < upper; ++k) index *= s->group->order();
        return index;
    }
    if (const auto* l = std::get_if<LinearBlock>(&b)) {
        // alpha^-1(W) has basis A^-1; its index over W = Z_p^d is p^(-sum e_i)
        // for the diagonal exponents e_i of a triangular basis.
        long e = lattice_echelon(l->matrix.inverse(), l->p).second;
        if (e > 0) throw std::logic_error("alpha^-1(W) does not contain W");
        return ipow(l->p, static_cast<unsigned long>(-e));
    }
    const auto& h = heis_of(b);
    // Boxes p^ex x p^ey x p^ez; Haar measure is the product measure.
    long w_x = 0, w_y = 0, w_z = 0;
    long img_x = w_x - h.a, img_y = w_y - h.b, img_z = w_z - (h.a + h.b);
    return ipow(h.p, static_cast<unsigned long>((w_x - img_x) + (w_y - img_y) + (w_z - img_z)));
}

Integer module_delta(const ContractionGroup& g)
{
    Integer delta = 1;
    for (const auto& b : g.blocks) {
        Integer closed = block_delta(b);
        if (closed != lattice_index_oracle(b)) throw std::logic_error("module closed form disagrees with the lattice index");
        delta *= closed;
    }
    return delta;
}

std::map<long, long> module_delta_factored(const ContractionGroup& g)
{
    std::map<long, long> out;
    for (const auto& b : g.blocks) {
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            for (auto [q, e] : factor_small(Integer(s->group->order()))) out[q] += e;
        } else if (const auto* l = std::get_if<LinearBlock>(&b)) {
            out[l->p] += valuation(l->matrix.determinant(), l->p).value;
        } else {
            const auto& h = heis_of(b);
            out[h.p] += 2 * (h.a + h.b);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling and printing

Element random_element(const ContractionGroup& g, std::mt19937_64& rng, const SampleShape& shape)
{
    auto rand_range = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    auto rand_rational = [&](long p) {
        long num = rand_range(-shape.height, shape.height);
        long den;
        switch (rand_range(0, 2)) {
        case 0: den = 1; break;
        case 1: den = p; break;
        default: den = rand_range(1, shape.height); break;
        }
        return make_rational(num, den);
    };
    Element e;
    for (const auto& b : g.blocks) {
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            ShiftElem x;
            int n = s->group->order();
            if (n > 1)
                for (long k = -shape.support_radius; k <= shape.support_radius; ++k)
                    if (rand_range(0, 1)) x.support[k] = static_cast<int>(rand_range(1, n - 1));
            e.parts.emplace_back(std::move(x));
        } else if (const auto* l = std::get_if<LinearBlock>(&b)) {
            RatVector v;
            for (int i = 0; i < l->dim(); ++i) v.push_back(rand_rational(l->p));
            e.parts.emplace_back(std::move(v));
        } else {
            long p = heis_of(b).p;
            e.parts.emplace_back(HeisElem{rand_rational(p), rand_rational(p), rand_rational(p)});
        }
    }
    return e;
}

std::string to_string(const ContractionGroup& g, const Element& x)
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        out << (i ? ", " : " ") << i << ": ";
        const Component& c = x.parts[i];
        if (const auto* s = std::get_if<ShiftElem>(&c)) {
            out << "[";
            bool first = true;
            for (auto [k, v] : s->support) {
                out << (first ? "" : ", ") << k << ":" << v;
                first = false;
            }
            out << "]";
        } else if (const auto* v = std::get_if<RatVector>(&c)) {
            out << "(";
            for (std::size_t j = 0; j < v->size(); ++j) out << (j ? ", " : "") << (*v)[j].get_str();
            out << ")";
        } else {
            const auto& h = std::get<HeisElem>(c);
            out << "(" << h.x.get_str() << ", " << h.y.get_str() << ", " << h.z.get_str() << ")";
        }
    }
    out << (g.blocks.empty() ? "}" : " }");
    return out.str();
}

}  // namespace contractio::model
