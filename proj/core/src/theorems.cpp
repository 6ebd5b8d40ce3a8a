#include "contractio/theorems.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace contractio::theorems {

using model::ContractionGroup;
using model::Element;
using model::HeisenbergBlock;
using model::LinearBlock;
using model::ShiftBlock;

std::string ClassificationLabel::to_string() const
{
    if (const auto* t = std::get_if<series::TorsionFactor>(&kind)) return "TorsionSimple(" + t->label.display() + ")";
    const auto& l = std::get<PadicLabel>(kind);
    return "PadicSimple(" + std::to_string(l.p) + ", " + l.f.to_string() + ")";
}

namespace {

/// Factorisation of the char poly of a single linear block, or nullopt for
/// a repeated factor (then the block is not simple unless d = 1).
std::optional<padic::CertifiedFactorization> linear_factors(const LinearBlock& l, long precision)
{
    if (gcd(l.charpoly, l.charpoly.derivative()).degree() > 0) return std::nullopt;
    return padic::factor_over_qp(l.charpoly, padic::PAdicContext(l.p, precision));
}

}  // namespace

bool is_simple_contraction(const ContractionGroup& g, long precision)
{
    if (g.blocks.size() != 1) return false;
    const auto& b = g.blocks.front();
    if (const auto* s = std::get_if<ShiftBlock>(&b)) return finite::is_simple_finite(*s->group);
    if (const auto* l = std::get_if<LinearBlock>(&b)) {
        if (l->dim() == 1) return true;
        auto fac = linear_factors(*l, precision);
        if (!fac) return false;
        if (fac->factors.size() > 1) return false;
        if (fac->factors.front().certification == padic::Certification::Uncertified)
            throw UncertifiedError("irreducibility of " + l->charpoly.to_string() + " over Q_" + std::to_string(l->p) +
                                   " is not certified at precision " + std::to_string(precision));
        return true;
    }
    return false;
}

ClassificationLabel classify_simple(const ContractionGroup& g, long precision)
{
    if (!is_simple_contraction(g, precision)) throw NotSimple("group is not a simple contraction group: " + g.to_string());
    const auto& b = g.blocks.front();
    if (const auto* s = std::get_if<ShiftBlock>(&b)) return {series::TorsionFactor{finite::iso_label(*s->group), s->group}};
    const auto& l = std::get<LinearBlock>(b);
    PadicLabel label;
    label.p = l.p;
    label.f = padic::make_padic_poly(l.charpoly);
    label.certification = l.dim() == 1 ? padic::Certification::RationalExact
                                       : linear_factors(l, precision)->factors.front().certification;
    label.companion = rational_normal_form(label.f);
    return {label};
}

RatMatrix rational_normal_form(const padic::PAdicPoly& f) { return model::companion_matrix(f.poly); }

IsoResult iso_simple(const ContractionGroup& g, const ContractionGroup& h, long precision)
{
    ClassificationLabel a = classify_simple(g, precision);
    ClassificationLabel b = classify_simple(h, precision);
    if (a.kind.index() != b.kind.index()) return {false, true};
    if (const auto* ta = std::get_if<series::TorsionFactor>(&a.kind)) {
        const auto& tb = std::get<series::TorsionFactor>(b.kind);
        if (!(ta->label == tb.label)) return {false, true};
        if (ta->label.abelian || ta->label.order <= finite::kMaxExactIsoOrder)
            return {finite::iso_finite(*ta->group, *tb.group), true};
        // Same invariants beyond the exact-search budget: equal catalog names decide.
        return {ta->label.name == tb.label.name && !ta->label.name.empty(), false};
    }
    const auto& pa = std::get<PadicLabel>(a.kind);
    const auto& pb = std::get<PadicLabel>(b.kind);
    if (pa.p != pb.p) return {false, true};
    switch (padic::compare_at_precision(pa.f, pb.f, pa.p, precision)) {
    case padic::PolyMatch::Equal: return {true, true};
    case padic::PolyMatch::Different: return {false, true};
    case padic::PolyMatch::AgreeToPrecision:
        throw UncertifiedError("labels agree only modulo " + std::to_string(pa.p) + "^" + std::to_string(precision));
    }
    return {false, true};
}

ContractionGroup torsion_part(const ContractionGroup& g)
{
    ContractionGroup t;
    for (const auto& b : g.blocks)
        if (model::is_torsion_block(b)) t.blocks.push_back(b);
    return t;
}

std::vector<PrimePart> divisible_part(const ContractionGroup& g)
{
    std::map<long, PrimePart> by_prime;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        auto p = model::block_prime(g.blocks[i]);
        if (!p) continue;
        auto& part = by_prime[*p];
        part.p = *p;
        part.group.blocks.push_back(g.blocks[i]);
        part.blocks.push_back(i);
    }
    std::vector<PrimePart> out;
    for (auto& [p, part] : by_prime) out.push_back(std::move(part));
    return out;
}

Integer t_alpha(const ContractionGroup& g) { return model::module_delta(torsion_part(g)); }

Integer torsion_exponent(const ContractionGroup& g)
{
    Integer e = 1;
    for (const auto& b : g.blocks)
        if (const auto* s = std::get_if<ShiftBlock>(&b)) e = lcm(e, Integer(finite::exponent(*s->group)));
    return e;
}

namespace {

/// Keeps the components of x in the listed blocks, identity elsewhere.
Element restrict_to(const ContractionGroup& g, const Element& x, const std::vector<std::size_t>& keep)
{
    Element out = model::identity(g);
    for (std::size_t i : keep) out.parts[i] = x.parts[i];
    return out;
}

Element sub_element(const Element& x, const std::vector<std::size_t>& blocks)
{
    Element out;
    for (std::size_t i : blocks) out.parts.push_back(x.parts[i]);
    return out;
}

}  // namespace

StructureReport verify_structure(const ContractionGroup& g, long samples, std::uint64_t seed, long max_root)
{
    StructureReport rep;
    rep.samples = samples;
    rep.max_root = max_root;
    for (std::size_t i = 0; i < g.blocks.size(); ++i)
        if (model::is_torsion_block(g.blocks[i])) rep.torsion_blocks.push_back(i);
    rep.divisible = divisible_part(g);
    rep.t_alpha = t_alpha(g);
    rep.exponent = torsion_exponent(g);
    rep.exponent_divides_t_alpha = rep.t_alpha % rep.exponent == 0;

    // Reassemble T and the G_p by original block index.
    std::vector<const model::Block*> slots(g.blocks.size(), nullptr);
    ContractionGroup t = torsion_part(g);
    for (std::size_t k = 0; k < rep.torsion_blocks.size(); ++k) slots[rep.torsion_blocks[k]] = &t.blocks[k];
    std::vector<std::size_t> divisible_blocks;
    for (const auto& part : rep.divisible)
        for (std::size_t k = 0; k < part.blocks.size(); ++k) {
            if (slots[part.blocks[k]]) slots[part.blocks[k]] = nullptr;
            else slots[part.blocks[k]] = &part.group.blocks[k];
            divisible_blocks.push_back(part.blocks[k]);
        }
    ContractionGroup rebuilt;
    bool complete = true;
    for (const auto* b : slots) {
        if (!b) {
            complete = false;
            break;
        }
        rebuilt.blocks.push_back(*b);
    }
    rep.recombines = complete && model::same_group(rebuilt, g);

    std::mt19937_64 rng(seed);
    rep.torsion_killed = rep.roots_exist = rep.roots_unique = rep.dichotomy = true;
    long t_exp = rep.t_alpha.fits_slong_p() ? rep.t_alpha.get_si() : -1;
    for (long s = 0; s < samples; ++s) {
        Element x = model::random_element(g, rng);
        Element tx = restrict_to(g, x, rep.torsion_blocks);
        Element dx = restrict_to(g, x, divisible_blocks);
        if (model::multiply(g, tx, dx) != x || model::multiply(g, dx, tx) != x) rep.recombines = false;
        if (!model::is_torsion(g, tx)) rep.dichotomy = false;
        if (dx != model::identity(g) && model::is_torsion(g, dx)) rep.dichotomy = false;

        if (t_exp < 0) {
            rep.torsion_killed = false;
        } else {
            Element xt = model::power(g, x, t_exp);
            if (restrict_to(g, xt, rep.torsion_blocks) != model::identity(g)) rep.torsion_killed = false;
        }

        for (const auto& part : rep.divisible) {
            Element d = sub_element(x, part.blocks);
            Element z = model::random_element(part.group, rng);
            bool z_trivial = z == model::identity(part.group);
            for (long n = 1; n <= max_root; ++n) {
                auto root = model::nth_root(part.group, d, n);
                if (!root || model::power(part.group, *root, n) != d) {
                    rep.roots_exist = false;
                    continue;
                }
                if (!z_trivial && model::power(part.group, model::multiply(part.group, *root, z), n) == d) rep.roots_unique = false;
            }
        }
    }
    return rep;
}

}  // namespace contractio::theorems
