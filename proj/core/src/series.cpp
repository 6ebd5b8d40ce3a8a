#include "contractio/series.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace contractio::series {

using model::Block;
using model::HeisenbergBlock;
using model::LinearBlock;
using model::ShiftBlock;

std::string to_string(Mode m) { return m == Mode::Alpha ? "alpha" : "alpha_normal"; }

std::optional<Mode> parse_mode(const std::string& text)
{
    if (text == "alpha") return Mode::Alpha;
    if (text == "alpha-normal" || text == "alpha_normal") return Mode::AlphaNormal;
    return std::nullopt;
}

std::string to_string(HeisSub h)
{
    switch (h) {
    case HeisSub::Trivial: return "1";
    case HeisSub::Z: return "Z";
    case HeisSub::X: return "X";
    case HeisSub::Y: return "Y";
    case HeisSub::XZ: return "XZ";
    case HeisSub::YZ: return "YZ";
    case HeisSub::Whole: return "G";
    }
    return "?";
}

bool LinearAnalysis::certified() const
{
    return std::none_of(components.begin(), components.end(), [](const LinearComponent& c) {
        return c.factor.certification == padic::Certification::Uncertified;
    });
}

LinearAnalysis analyze_linear(const LinearBlock& block, long precision)
{
    LinearAnalysis out;
    out.p = block.p;
    out.precision = precision;
    auto parts = padic::squarefree_decomposition(block.charpoly);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const QPoly& s = parts[i];
        if (s.degree() < 1) continue;
        int mult = static_cast<int>(i) + 1;
        if (mult == 1) {
            auto fac = padic::factor_over_qp(s, padic::PAdicContext(block.p, precision));
            for (auto& f : fac.factors) out.components.push_back({std::move(f), 1});
            continue;
        }
        for (const QPoly& f : padic::rational_factors(s)) {
            if (f.degree() != 1)
                throw padic::NotSquarefree("char poly " + block.charpoly.to_string() + " has the repeated factor " +
                                           f.to_string() + " which is not linear over Q");
            out.components.push_back({{padic::make_padic_poly(f), padic::Certification::RationalExact}, mult});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Heisenberg coordinate subgroups

namespace {

unsigned axes(HeisSub h)
{
    // bit 0: x, bit 1: y, bit 2: z
    switch (h) {
    case HeisSub::Trivial: return 0;
    case HeisSub::Z: return 4;
    case HeisSub::X: return 1;
    case HeisSub::Y: return 2;
    case HeisSub::XZ: return 5;
    case HeisSub::YZ: return 6;
    case HeisSub::Whole: return 7;
    }
    return 0;
}

bool heis_contains(HeisSub big, HeisSub small) { return (axes(big) & axes(small)) == axes(small); }

bool heis_normal_in_whole(HeisSub h)
{
    return h == HeisSub::Trivial || h == HeisSub::Z || h == HeisSub::XZ || h == HeisSub::YZ || h == HeisSub::Whole;
}

bool heis_normal_in(HeisSub h, HeisSub k)
{
    if (!heis_contains(k, h)) return false;
    // Every proper coordinate subgroup is abelian.
    return k != HeisSub::Whole || heis_normal_in_whole(h);
}

constexpr HeisSub kHeisAll[] = {HeisSub::Trivial, HeisSub::Z, HeisSub::X, HeisSub::Y, HeisSub::XZ, HeisSub::YZ, HeisSub::Whole};

/// All longest chains h = c_0 < ... < c_n = k with the mode's normality.
std::vector<std::vector<HeisSub>> heis_chains(HeisSub h, HeisSub k, Mode mode)
{
    std::vector<std::vector<HeisSub>> all;
    std::vector<HeisSub> cur{h};
    std::function<void()> dfs = [&]() {
        HeisSub last = cur.back();
        if (last == k) {
            all.push_back(cur);
            return;
        }
        for (HeisSub next : kHeisAll) {
            if (next == last || !heis_contains(next, last) || !heis_contains(k, next)) continue;
            if (mode == Mode::Alpha ? !heis_normal_in(last, next) : !heis_normal_in_whole(next)) continue;
            cur.push_back(next);
            dfs();
            cur.pop_back();
        }
    };
    dfs();
    std::size_t best = 0;
    for (const auto& c : all) best = std::max(best, c.size());
    std::vector<std::vector<HeisSub>> longest;
    for (auto& c : all)
        if (c.size() == best) longest.push_back(std::move(c));
    return longest;
}

long heis_weight(const HeisenbergBlock& h, unsigned axis_bits)
{
    long w = 0;
    if (axis_bits & 1) w += h.a;
    if (axis_bits & 2) w += h.b;
    if (axis_bits & 4) w += h.a + h.b;
    return w;
}

long constant_valuation(const padic::PAdicPoly& f, long p) { return valuation(f.poly.coeff(0), p).value; }

}  // namespace

// ---------------------------------------------------------------------------
// GroupAnalysis

GroupAnalysis::GroupAnalysis(const model::ContractionGroup& g, long precision)
    : group_(g), precision_(precision), linear_(g.blocks.size())
{
    for (std::size_t i = 0; i < g.blocks.size(); ++i)
        if (const auto* l = std::get_if<LinearBlock>(&g.blocks[i])) linear_[i] = analyze_linear(*l, precision);
}

const LinearAnalysis& GroupAnalysis::linear(std::size_t block) const
{
    if (block >= linear_.size() || !linear_[block]) throw DomainError("block " + std::to_string(block) + " is not linear");
    return *linear_[block];
}

BlockSub GroupAnalysis::trivial_sub(std::size_t block) const
{
    const Block& b = group_.blocks.at(block);
    if (std::holds_alternative<ShiftBlock>(b)) return ShiftSub{finite::trivial_subgroup()};
    if (std::holds_alternative<LinearBlock>(b)) return LinearSub{std::vector<LinearSub::Part>(linear(block).components.size())};
    return HeisSub::Trivial;
}

BlockSub GroupAnalysis::whole_sub(std::size_t block) const
{
    const Block& b = group_.blocks.at(block);
    if (const auto* s = std::get_if<ShiftBlock>(&b)) return ShiftSub{finite::whole(*s->group)};
    if (const auto* l = std::get_if<LinearBlock>(&b)) {
        LinearSub sub;
        for (const auto& c : linear(block).components) {
            LinearSub::Part part;
            part.dim = c.dim();
            if (c.multiplicity > 1) {
                // ker (A - r)^m
                Rational r = -c.factor.factor.poly.coeff(0);
                RatMatrix n = (l->matrix - r * RatMatrix::identity(l->dim())).power(c.multiplicity);
                part.basis = span_basis(n.kernel(), l->dim());
            }
            sub.parts.push_back(std::move(part));
        }
        return sub;
    }
    return HeisSub::Whole;
}

SubgroupDesc GroupAnalysis::trivial() const
{
    SubgroupDesc d;
    for (std::size_t i = 0; i < group_.blocks.size(); ++i) d.blocks.push_back(trivial_sub(i));
    return d;
}

SubgroupDesc GroupAnalysis::whole() const
{
    SubgroupDesc d;
    for (std::size_t i = 0; i < group_.blocks.size(); ++i) d.blocks.push_back(whole_sub(i));
    return d;
}

SubgroupDesc GroupAnalysis::block_only(std::size_t block) const
{
    SubgroupDesc d = trivial();
    d.blocks.at(block) = whole_sub(block);
    return d;
}

// ---------------------------------------------------------------------------
// Factors and chains

std::string FactorClass::to_string(long precision) const
{
    if (const auto* t = std::get_if<TorsionFactor>(&kind)) return "TorsionSimple(" + t->label.display() + ")";
    const auto& f = std::get<PadicFactor>(kind);
    std::string poly = f.f.exact() ? f.f.to_string() : padic::precision_key(f.f, f.p, precision) + " mod " +
                                                           std::to_string(f.p) + "^" + std::to_string(precision);
    return "PadicSimple(" + std::to_string(f.p) + ", " + poly + ")";
}

bool SeriesChain::certified() const
{
    return std::none_of(factors.begin(), factors.end(), [](const FactorClass& f) {
        const auto* p = std::get_if<PadicFactor>(&f.kind);
        return p && p->certification == padic::Certification::Uncertified;
    });
}

std::string describe(const GroupAnalysis& ga, const SubgroupDesc& d)
{
    std::string out;
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        if (i) out += " x ";
        const Block& b = ga.group().blocks[i];
        if (const auto* s = std::get_if<ShiftSub>(&d.blocks[i])) {
            const auto& f = *std::get<ShiftBlock>(b).group;
            if (s->elements.size() == 1)
                out += "1";
            else if (static_cast<int>(s->elements.size()) == f.order())
                out += "F";
            else
                out += finite::iso_label(finite::subgroup_group(f, s->elements)).display();
        } else if (const auto* l = std::get_if<LinearSub>(&d.blocks[i])) {
            int dim = 0;
            for (const auto& part : l->parts) dim += part.dim;
            int full = std::get<LinearBlock>(b).dim();
            out += dim == 0 ? "0" : dim == full ? "V" : "dim " + std::to_string(dim);
        } else {
            out += to_string(std::get<HeisSub>(d.blocks[i]));
        }
    }
    return out.empty() ? "1" : out;
}

namespace {

const RatMatrix& block_matrix(const GroupAnalysis& ga, std::size_t i) { return std::get<LinearBlock>(ga.group().blocks[i]).matrix; }

bool part_contains(const LinearSub::Part& big, const LinearSub::Part& small, bool repeated, int dim)
{
    if (small.dim > big.dim) return false;
    if (!repeated) return true;
    for (const auto& v : small.basis)
        if (!in_span(big.basis, v, dim)) return false;
    return true;
}

bool block_contains(const GroupAnalysis& ga, std::size_t i, const BlockSub& big, const BlockSub& small)
{
    if (const auto* s = std::get_if<ShiftSub>(&small)) return finite::contains(std::get<ShiftSub>(big).elements, s->elements);
    if (const auto* l = std::get_if<LinearSub>(&small)) {
        const auto& comps = ga.linear(i).components;
        const auto& bl = std::get<LinearSub>(big);
        int dim = block_matrix(ga, i).rows();
        for (std::size_t c = 0; c < comps.size(); ++c)
            if (!part_contains(bl.parts[c], l->parts[c], comps[c].multiplicity > 1, dim)) return false;
        return true;
    }
    return heis_contains(std::get<HeisSub>(big), std::get<HeisSub>(small));
}

bool block_normal_in(const GroupAnalysis& ga, std::size_t i, const BlockSub& h, const BlockSub& k)
{
    if (!block_contains(ga, i, k, h)) return false;
    if (const auto* s = std::get_if<ShiftSub>(&h)) {
        const auto& f = *std::get<ShiftBlock>(ga.group().blocks[i]).group;
        return finite::is_normal_in(f, s->elements, std::get<ShiftSub>(k).elements);
    }
    if (std::holds_alternative<LinearSub>(h)) return true;
    return heis_normal_in(std::get<HeisSub>(h), std::get<HeisSub>(k));
}

}  // namespace

bool valid_desc(const GroupAnalysis& ga, const SubgroupDesc& d)
{
    const auto& g = ga.group();
    if (d.blocks.size() != g.blocks.size()) return false;
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const Block& b = g.blocks[i];
        if (const auto* s = std::get_if<ShiftBlock>(&b)) {
            const auto* sub = std::get_if<ShiftSub>(&d.blocks[i]);
            if (!sub || !finite::is_subgroup(*s->group, sub->elements)) return false;
        } else if (const auto* l = std::get_if<LinearBlock>(&b)) {
            const auto* sub = std::get_if<LinearSub>(&d.blocks[i]);
            const auto& comps = ga.linear(i).components;
            if (!sub || sub->parts.size() != comps.size()) return false;
            for (std::size_t c = 0; c < comps.size(); ++c) {
                const auto& part = sub->parts[c];
                if (comps[c].multiplicity == 1) {
                    if ((part.dim != 0 && part.dim != comps[c].dim()) || !part.basis.empty()) return false;
                    continue;
                }
                if (static_cast<int>(span_basis(part.basis, l->dim()).size()) != part.dim) return false;
                if (part.dim > comps[c].dim()) return false;
                auto whole = std::get<LinearSub>(ga.whole_sub(i)).parts[c].basis;
                for (const auto& v : part.basis) {
                    if (!in_span(whole, v, l->dim())) return false;
                    if (!in_span(part.basis, l->matrix * v, l->dim())) return false;
                }
            }
        } else if (!std::holds_alternative<HeisSub>(d.blocks[i])) {
            return false;
        }
    }
    return true;
}

bool contains(const GroupAnalysis& ga, const SubgroupDesc& big, const SubgroupDesc& small)
{
    for (std::size_t i = 0; i < big.blocks.size(); ++i)
        if (!block_contains(ga, i, big.blocks[i], small.blocks[i])) return false;
    return true;
}

bool is_normal_in(const GroupAnalysis& ga, const SubgroupDesc& h, const SubgroupDesc& k)
{
    for (std::size_t i = 0; i < h.blocks.size(); ++i)
        if (!block_normal_in(ga, i, h.blocks[i], k.blocks[i])) return false;
    return true;
}

bool validate_chain(const GroupAnalysis& ga, const std::vector<SubgroupDesc>& chain, Mode mode)
{
    if (chain.empty() || !(chain.front() == ga.trivial())) return false;
    SubgroupDesc whole = ga.whole();
    if (!(chain.back() == whole) && !(contains(ga, chain.back(), whole) && contains(ga, whole, chain.back()))) return false;
    for (const auto& d : chain)
        if (!valid_desc(ga, d)) return false;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (contains(ga, chain[i - 1], chain[i])) return false;  // not strict
        if (!is_normal_in(ga, chain[i - 1], chain[i])) return false;
        if (mode == Mode::AlphaNormal && !is_normal_in(ga, chain[i], whole)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Refinement

namespace {

struct Refiner {
    const GroupAnalysis& ga;
    Mode mode;
    std::optional<std::mt19937_64> rng;
    SeriesChain out;

    std::optional<std::uint64_t> sub_seed()
    {
        if (!rng) return std::nullopt;
        return (*rng)();
    }

    void push(SubgroupDesc next, FactorClass factor)
    {
        out.chain.push_back(std::move(next));
        out.factors.push_back(std::move(factor));
    }

    void shift_steps(std::size_t i, const ShiftSub& from, const ShiftSub& to, SubgroupDesc& cur)
    {
        const auto& f = std::get<ShiftBlock>(ga.group().blocks[i]).group;
        finite::FiniteSeries fs = mode == Mode::Alpha
                                      ? finite::composition_series_between(*f, from.elements, to.elements, sub_seed())
                                      : finite::chief_series_between(*f, from.elements, to.elements, sub_seed());
        for (std::size_t s = 1; s < fs.chain.size(); ++s) {
            cur.blocks[i] = ShiftSub{fs.chain[s]};
            auto q = std::make_shared<const finite::FiniteGroup>(fs.factors[s - 1]);
            push(cur, FactorClass{TorsionFactor{fs.labels[s - 1], q}, i, Integer(q->order())});
        }
    }

    void linear_steps(std::size_t i, const LinearSub& from, const LinearSub& to, SubgroupDesc& cur)
    {
        const auto& block = std::get<LinearBlock>(ga.group().blocks[i]);
        const auto& comps = ga.linear(i).components;
        std::vector<std::size_t> order(comps.size());
        for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
        if (rng) std::shuffle(order.begin(), order.end(), *rng);
        int d = block.dim();
        LinearSub state = from;
        for (std::size_t c : order) {
            const auto& comp = comps[c];
            if (state.parts[c].dim == to.parts[c].dim) continue;
            PadicFactor pf{block.p, comp.factor.factor, comp.factor.certification};
            if (comp.multiplicity == 1) {
                state.parts[c].dim = comp.dim();
                cur.blocks[i] = state;
                Integer module = ipow(block.p, static_cast<unsigned long>(constant_valuation(comp.factor.factor, block.p)));
                push(cur, FactorClass{pf, i, module});
                continue;
            }
            // Flag inside ker (A - r)^m from the current subspace up to the target.
            Rational r = -comp.factor.factor.poly.coeff(0);
            RatMatrix n = block.matrix - r * RatMatrix::identity(d);
            Integer module = ipow(block.p, static_cast<unsigned long>(valuation(r, block.p).value));
            while (state.parts[c].dim < to.parts[c].dim) {
                const auto& w = state.parts[c].basis;
                const auto& target = to.parts[c].basis;
                // Solve n (T x) in span(w) for x; T = target basis as columns.
                int t = static_cast<int>(target.size());
                int wsz = static_cast<int>(w.size());
                RatMatrix sys(d, t + wsz);
                for (int col = 0; col < t; ++col) {
                    RatVector img = n * target[static_cast<std::size_t>(col)];
                    for (int row = 0; row < d; ++row) sys(row, col) = img[static_cast<std::size_t>(row)];
                }
                for (int col = 0; col < wsz; ++col)
                    for (int row = 0; row < d; ++row) sys(row, t + col) = -w[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
                std::vector<RatVector> candidates;
                for (const auto& sol : sys.kernel()) {
                    RatVector v(static_cast<std::size_t>(d), Rational(0));
                    for (int col = 0; col < t; ++col)
                        for (int row = 0; row < d; ++row)
                            v[static_cast<std::size_t>(row)] += sol[static_cast<std::size_t>(col)] * target[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
                    if (!in_span(w, v, d)) candidates.push_back(std::move(v));
                }
                if (candidates.empty()) throw std::logic_error("no invariant extension inside a repeated component");
                RatVector pick = candidates.front();
                if (rng) {
                    for (int attempt = 0; attempt < 16; ++attempt) {
                        RatVector mix(static_cast<std::size_t>(d), Rational(0));
                        for (const auto& cand : candidates) {
                            long coef = static_cast<long>((*rng)() % 7) - 3;
                            for (int row = 0; row < d; ++row) mix[static_cast<std::size_t>(row)] += coef * cand[static_cast<std::size_t>(row)];
                        }
                        if (!in_span(w, mix, d)) {
                            pick = mix;
                            break;
                        }
                    }
                }
                auto grown = w;
                grown.push_back(pick);
                state.parts[c].basis = span_basis(grown, d);
                state.parts[c].dim += 1;
                cur.blocks[i] = state;
                push(cur, FactorClass{PadicFactor{block.p, comp.factor.factor, padic::Certification::RationalExact}, i, module});
            }
        }
    }

    void heis_steps(std::size_t i, HeisSub from, HeisSub to, SubgroupDesc& cur)
    {
        const auto& h = std::get<HeisenbergBlock>(ga.group().blocks[i]);
        auto chains = heis_chains(from, to, mode);
        if (chains.empty()) throw DomainError("no Heisenberg chain between " + to_string(from) + " and " + to_string(to));
        std::size_t pick = rng ? static_cast<std::size_t>((*rng)() % chains.size()) : 0;
        const auto& chain = chains[pick];
        for (std::size_t s = 1; s < chain.size(); ++s) {
            unsigned added = axes(chain[s]) & ~axes(chain[s - 1]);
            long w = heis_weight(h, added);
            cur.blocks[i] = chain[s];
            PadicFactor pf{h.p, padic::make_padic_poly(QPoly::x_minus(rpow(h.p, w))), padic::Certification::RationalExact};
            push(cur, FactorClass{pf, i, ipow(h.p, static_cast<unsigned long>(w))});
        }
    }
};

}  // namespace

SeriesChain refine(const GroupAnalysis& ga, const std::vector<SubgroupDesc>& chain, Mode mode, std::optional<std::uint64_t> seed)
{
    if (!validate_chain(ga, chain, mode)) throw DomainError("chain is not a valid " + to_string(mode) + " series");
    Refiner r{ga, mode, std::nullopt, {}};
    if (seed) r.rng.emplace(*seed);
    r.out.mode = mode;
    r.out.seed = seed;
    r.out.precision = ga.precision();
    std::size_t n = ga.group().blocks.size();
    r.out.block_order.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.out.block_order[i] = i;
    if (r.rng) std::shuffle(r.out.block_order.begin(), r.out.block_order.end(), *r.rng);
    r.out.chain.push_back(chain.front());
    for (std::size_t step = 1; step < chain.size(); ++step) {
        SubgroupDesc cur = chain[step - 1];
        const SubgroupDesc& target = chain[step];
        for (std::size_t i : r.out.block_order) {
            if (cur.blocks[i] == target.blocks[i]) continue;
            if (const auto* s = std::get_if<ShiftSub>(&cur.blocks[i]))
                r.shift_steps(i, *s, std::get<ShiftSub>(target.blocks[i]), cur);
            else if (const auto* l = std::get_if<LinearSub>(&cur.blocks[i]))
                r.linear_steps(i, LinearSub(*l), std::get<LinearSub>(target.blocks[i]), cur);
            else
                r.heis_steps(i, std::get<HeisSub>(cur.blocks[i]), std::get<HeisSub>(target.blocks[i]), cur);
        }
        // Land exactly on the given step (bases may differ in presentation).
        r.out.chain.back() = target;
    }
    return r.out;
}

SeriesChain composition_series(const GroupAnalysis& ga, Mode mode, std::optional<std::uint64_t> seed)
{
    std::vector<SubgroupDesc> chain{ga.trivial()};
    if (!ga.group().blocks.empty()) chain.push_back(ga.whole());
    return refine(ga, chain, mode, seed);
}

// ---------------------------------------------------------------------------
// Checks

namespace {

enum class Match { No, Exact, Approximate };

Match match_factors(const FactorClass& a, const FactorClass& b, long precision)
{
    if (a.kind.index() != b.kind.index()) return Match::No;
    if (const auto* ta = std::get_if<TorsionFactor>(&a.kind)) {
        const auto& tb = std::get<TorsionFactor>(b.kind);
        if (!(ta->label == tb.label) || ta->label.name != tb.label.name) return Match::No;
        if (ta->label.abelian) return Match::Exact;
        if (ta->label.order <= finite::kMaxExactIsoOrder) return finite::iso_finite(*ta->group, *tb.group) ? Match::Exact : Match::No;
        return Match::Approximate;
    }
    const auto& pa = std::get<PadicFactor>(a.kind);
    const auto& pb = std::get<PadicFactor>(b.kind);
    if (pa.p != pb.p) return Match::No;
    switch (padic::compare_at_precision(pa.f, pb.f, pa.p, precision)) {
    case padic::PolyMatch::Equal: return Match::Exact;
    case padic::PolyMatch::AgreeToPrecision: return Match::Approximate;
    case padic::PolyMatch::Different: return Match::No;
    }
    return Match::No;
}

}  // namespace

JordanHolderReport jordan_holder_verify(const SeriesChain& a, const SeriesChain& b)
{
    JordanHolderReport rep;
    if (a.mode != b.mode || a.factors.size() != b.factors.size()) return rep;
    long precision = std::min(a.precision, b.precision);
    std::vector<char> used(b.factors.size(), 0);
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < b.factors.size() && !found; ++j) {
            if (used[j]) continue;
            Match m = match_factors(a.factors[i], b.factors[j], precision);
            if (m == Match::No) continue;
            used[j] = 1;
            found = true;
            rep.matching.emplace_back(i, j);
            if (m == Match::Approximate) rep.exact = false;
        }
        if (!found) {
            rep.matching.clear();
            rep.exact = false;
            return rep;
        }
    }
    rep.equal = true;
    return rep;
}

Integer subgroup_module(const GroupAnalysis& ga, const SubgroupDesc& d)
{
    Integer module = 1;
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const Block& b = ga.group().blocks[i];
        if (const auto* s = std::get_if<ShiftSub>(&d.blocks[i])) {
            module *= static_cast<unsigned long>(s->elements.size());
        } else if (const auto* l = std::get_if<LinearSub>(&d.blocks[i])) {
            long p = std::get<LinearBlock>(b).p;
            const auto& comps = ga.linear(i).components;
            for (std::size_t c = 0; c < comps.size(); ++c) {
                const auto& part = l->parts[c];
                if (part.dim == 0) continue;
                long v = constant_valuation(comps[c].factor.factor, p);
                long e = comps[c].multiplicity == 1 ? v : v * part.dim;
                module *= ipow(p, static_cast<unsigned long>(e));
            }
        } else {
            const auto& h = std::get<HeisenbergBlock>(b);
            module *= ipow(h.p, static_cast<unsigned long>(heis_weight(h, axes(std::get<HeisSub>(d.blocks[i])))));
        }
    }
    return module;
}

bool check_length_bound(const GroupAnalysis& ga, const SeriesChain& s)
{
    for (std::size_t i = 1; i < s.chain.size(); ++i)
        if (s.chain[i] == s.chain[i - 1]) return false;
    return static_cast<long>(s.length()) <= big_omega(model::module_delta_factored(ga.group()));
}

bool check_module_multiplicativity(const GroupAnalysis& ga, const SeriesChain& s)
{
    Integer delta = model::module_delta(ga.group());
    if (subgroup_module(ga, ga.whole()) != delta) return false;
    if (s.factors.size() != s.length()) return false;
    Integer product = 1;
    for (std::size_t i = 0; i < s.factors.size(); ++i) {
        const Integer& m = s.factors[i].module;
        if (m < 2) return false;
        if (subgroup_module(ga, s.chain[i + 1]) != subgroup_module(ga, s.chain[i]) * m) return false;
        product *= m;
    }
    return product == delta;
}

SeriesChain canonical_series(const GroupAnalysis& ga)
{
    SeriesChain out;
    out.mode = Mode::AlphaNormal;
    out.precision = ga.precision();
    SubgroupDesc core = ga.whole();
    for (std::size_t i = 0; i < core.blocks.size(); ++i)
        if (std::holds_alternative<HeisenbergBlock>(ga.group().blocks[i])) core.blocks[i] = HeisSub::Z;
    out.chain.push_back(ga.trivial());
    SubgroupDesc whole = ga.whole();
    if (!(core == out.chain.back()) && !(core == whole)) out.chain.push_back(core);
    if (!(whole == out.chain.back())) out.chain.push_back(whole);
    for (std::size_t i = 0; i < ga.group().blocks.size(); ++i) out.block_order.push_back(i);
    return out;
}

bool check_special(const GroupAnalysis& ga, const std::vector<SubgroupDesc>& chain)
{
    for (std::size_t s = 1; s < chain.size(); ++s)
        for (std::size_t i = 0; i < ga.group().blocks.size(); ++i) {
            const auto* h = std::get_if<HeisSub>(&chain[s - 1].blocks[i]);
            const auto* k = std::get_if<HeisSub>(&chain[s].blocks[i]);
            if (!h || !k) continue;
            // A section reaching all of G without the centre below it is non-abelian
            // and its conjugation action moves every compact open subgroup.
            if (*k == HeisSub::Whole && !heis_contains(*h, HeisSub::Z)) return false;
        }
    return true;
}

std::vector<RatVector> stable_hull(const LinearBlock& block, const std::vector<RatVector>& v)
{
    int d = block.dim();
    RatMatrix inv = block.matrix.inverse();
    std::vector<RatVector> w = span_basis(v, d);
    for (;;) {
        std::vector<RatVector> grown = w;
        for (const auto& x : w) grown.push_back(inv * x);
        grown = span_basis(grown, d);
        if (grown.size() == w.size()) return w;
        w = std::move(grown);
    }
}

}  // namespace contractio::series
