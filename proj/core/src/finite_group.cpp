#include "contractio/finite_group.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "contractio/arith.hpp"

namespace contractio::finite {

FiniteGroup make_group_unchecked(int order, std::vector<std::uint16_t> table, std::string name)
{
    FiniteGroup g;
    g.order_ = order;
    g.table_ = std::move(table);
    g.name_ = std::move(name);
    g.inverse_.assign(static_cast<std::size_t>(order), 0);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (g.mul(a, b) == 0) {
                g.inverse_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(b);
                break;
            }
    return g;
}

namespace {

std::vector<char> mask_of(int n, const Subgroup& h)
{
    std::vector<char> m(static_cast<std::size_t>(n), 0);
    for (int x : h) m[static_cast<std::size_t>(x)] = 1;
    return m;
}

/// Closure under right multiplication by gens, starting from the given
/// elements (which must already be closed or empty).
Subgroup extend_closure(const FiniteGroup& g, Subgroup base, const std::vector<int>& gens)
{
    auto in = mask_of(g.order(), base);
    if (base.empty()) {
        base.push_back(0);
        in[0] = 1;
    }
    std::vector<int> all_gens = gens;
    std::vector<int> frontier = base;
    // Elements of the old subgroup also need the new generators applied.
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int s : all_gens) {
                int y = g.mul(x, s);
                if (!in[static_cast<std::size_t>(y)]) {
                    in[static_cast<std::size_t>(y)] = 1;
                    base.push_back(y);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    std::sort(base.begin(), base.end());
    return base;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& rows, std::string name)
{
    int n = static_cast<int>(rows.size());
    if (n == 0) throw InvalidTable("empty Cayley table");
    if (n > kMaxTableOrder) throw TooLarge("table order " + std::to_string(n) + " exceeds " + std::to_string(kMaxTableOrder));
    std::vector<std::uint16_t> table;
    table.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw InvalidTable("Cayley table is not square");
        for (int x : row) {
            if (x < 0 || x >= n) throw InvalidTable("Cayley table entry out of range");
            table.push_back(static_cast<std::uint16_t>(x));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (rows[0][static_cast<std::size_t>(i)] != i || rows[static_cast<std::size_t>(i)][0] != i)
            throw InvalidTable("element 0 is not the identity");
        std::vector<char> seen_row(static_cast<std::size_t>(n), 0), seen_col(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            int r = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            int c = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            if (seen_row[static_cast<std::size_t>(r)]++ || seen_col[static_cast<std::size_t>(c)]++)
                throw InvalidTable("Cayley table is not a Latin square");
        }
    }
    FiniteGroup g = make_group_unchecked(n, std::move(table), std::move(name));
    // Light's test: the set of elements a with (x a) y = x (a y) for all x, y
    // is closed under the operation, so checking a generating set suffices.
    for (int a : g.generators())
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (g.mul(g.mul(x, a), y) != g.mul(x, g.mul(a, y))) throw InvalidTable("Cayley table is not associative");
    return g;
}

int FiniteGroup::element_order(int a) const
{
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

bool FiniteGroup::is_abelian() const
{
    auto gens = generators();
    for (int a : gens)
        for (int b : gens)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<int> FiniteGroup::generators() const
{
    std::vector<int> gens;
    Subgroup span{0};
    std::vector<char> in = mask_of(order_, span);
    for (int x = 1; x < order_; ++x) {
        if (in[static_cast<std::size_t>(x)]) continue;
        gens.push_back(x);
        span = extend_closure(*this, span, gens);
        in = mask_of(order_, span);
        if (static_cast<int>(span.size()) == order_) break;
    }
    return gens;
}

std::vector<std::vector<int>> FiniteGroup::rows() const
{
    std::vector<std::vector<int>> out(static_cast<std::size_t>(order_));
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j) out[static_cast<std::size_t>(i)].push_back(mul(i, j));
    return out;
}

// ---------------------------------------------------------------------------
// Catalog

std::string CatalogSpec::token() const
{
    const char* prefix = "C";
    switch (kind) {
    case CatalogKind::Cyclic: prefix = "C"; break;
    case CatalogKind::Symmetric: prefix = "S"; break;
    case CatalogKind::Alternating: prefix = "A"; break;
    case CatalogKind::Dihedral: prefix = "D"; break;
    }
    return prefix + std::to_string(n);
}

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// Lehmer rank of a permutation of {0..n-1}.
int perm_rank(const std::vector<int>& perm)
{
    int n = static_cast<int>(perm.size());
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[static_cast<std::size_t>(j)] < perm[static_cast<std::size_t>(i)]) ++smaller;
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

bool is_even(const std::vector<int>& perm)
{
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[j] < perm[i]) ++inversions;
    return inversions % 2 == 0;
}

FiniteGroup permutation_group(int n, bool even_only, std::string name)
{
    std::vector<std::vector<int>> elems;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (!even_only || is_even(perm)) elems.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<int> index(static_cast<std::size_t>(factorial(n)), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) index[static_cast<std::size_t>(perm_rank(elems[i]))] = static_cast<int>(i);
    int order = static_cast<int>(elems.size());
    std::vector<std::uint16_t> table(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            // (a b)(i) = a(b(i))
            for (int i = 0; i < n; ++i)
                comp[static_cast<std::size_t>(i)] =
                    elems[static_cast<std::size_t>(a)][static_cast<std::size_t>(elems[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
            table[static_cast<std::size_t>(a) * static_cast<std::size_t>(order) + static_cast<std::size_t>(b)] =
                static_cast<std::uint16_t>(index[static_cast<std::size_t>(perm_rank(comp))]);
        }
    return make_group_unchecked(order, std::move(table), std::move(name));
}

}  // namespace

FiniteGroup make_catalog_group(const CatalogSpec& spec)
{
    if (spec.n < 1) throw DomainError("catalog parameter must be >= 1");
    long order = 0;
    switch (spec.kind) {
    case CatalogKind::Cyclic: order = spec.n; break;
    case CatalogKind::Symmetric: order = spec.n <= 8 ? factorial(spec.n) : kMaxTableOrder + 1L; break;
    case CatalogKind::Alternating:
        order = spec.n <= 8 ? std::max(1L, factorial(spec.n) / 2) : kMaxTableOrder + 1L;
        break;
    case CatalogKind::Dihedral: order = 2L * spec.n; break;
    }
    if (order > kMaxTableOrder) throw TooLarge(spec.token() + " has order " + std::to_string(order) + " beyond " + std::to_string(kMaxTableOrder));
    int n = static_cast<int>(order);
    switch (spec.kind) {
    case CatalogKind::Cyclic: {
        std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a * n + b)] = static_cast<std::uint16_t>((a + b) % n);
        return make_group_unchecked(n, std::move(table), spec.token());
    }
    case CatalogKind::Symmetric: return permutation_group(spec.n, false, spec.token());
    case CatalogKind::Alternating: return permutation_group(spec.n, true, spec.token());
    case CatalogKind::Dihedral: {
        // r^i s^j -> i + m j; (r^i s^a)(r^k s^b) = r^(i + (-1)^a k) s^(a + b).
        int m = spec.n;
        std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int i = x % m, a = x / m, k = y % m, b = y / m;
                int rot = ((a ? i - k : i + k) % m + m) % m;
                table[static_cast<std::size_t>(x * n + y)] = static_cast<std::uint16_t>(rot + m * ((a + b) % 2));
            }
        return make_group_unchecked(n, std::move(table), spec.token());
    }
    }
    throw DomainError("unknown catalog kind");
}

// ---------------------------------------------------------------------------
// Subgroups

Subgroup whole(const FiniteGroup& g)
{
    Subgroup all(static_cast<std::size_t>(g.order()));
    std::iota(all.begin(), all.end(), 0);
    return all;
}

Subgroup trivial_subgroup() { return Subgroup{0}; }

Subgroup closure(const FiniteGroup& g, const std::vector<int>& gens) { return extend_closure(g, Subgroup{0}, gens); }

Subgroup normal_closure(const FiniteGroup& g, const std::vector<int>& conjugators, const std::vector<int>& gens)
{
    std::vector<int> current_gens = gens;
    Subgroup n = closure(g, current_gens);
    for (std::size_t i = 0; i < current_gens.size(); ++i) {
        for (int c : conjugators) {
            int y = g.conj(c, current_gens[i]);
            if (!std::binary_search(n.begin(), n.end(), y)) {
                current_gens.push_back(y);
                n = extend_closure(g, n, current_gens);
            }
        }
    }
    return n;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h)
{
    if (h.empty() || h.front() != 0) return false;
    auto in = mask_of(g.order(), h);
    for (int a : h)
        for (int b : h)
            if (!in[static_cast<std::size_t>(g.mul(a, g.inv(b)))]) return false;
    return true;
}

bool contains(const Subgroup& k, const Subgroup& h) { return std::includes(k.begin(), k.end(), h.begin(), h.end()); }

bool is_normal_in(const FiniteGroup& g, const Subgroup& h, const Subgroup& k)
{
    if (!contains(k, h)) return false;
    auto in = mask_of(g.order(), h);
    for (int c : subgroup_generators(g, k))
        for (int x : subgroup_generators(g, h))
            if (!in[static_cast<std::size_t>(g.conj(c, x))]) return false;
    return true;
}

std::vector<int> subgroup_generators(const FiniteGroup& g, const Subgroup& h)
{
    std::vector<int> gens;
    Subgroup span{0};
    for (int x : h) {
        if (std::binary_search(span.begin(), span.end(), x)) continue;
        gens.push_back(x);
        span = extend_closure(g, span, gens);
        if (span.size() == h.size()) break;
    }
    return gens;
}

FiniteGroup quotient(const FiniteGroup& g, const Subgroup& k, const Subgroup& h)
{
    std::vector<int> coset(static_cast<std::size_t>(g.order()), -1);
    std::vector<int> reps;
    for (int x : k) {
        if (coset[static_cast<std::size_t>(x)] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int y : h) coset[static_cast<std::size_t>(g.mul(x, y))] = id;
    }
    int m = static_cast<int>(reps.size());
    std::vector<std::uint16_t> table(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            table[static_cast<std::size_t>(a * m + b)] =
                static_cast<std::uint16_t>(coset[static_cast<std::size_t>(g.mul(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))]);
    return make_group_unchecked(m, std::move(table), {});
}

FiniteGroup subgroup_group(const FiniteGroup& g, const Subgroup& h) { return quotient(g, h, trivial_subgroup()); }

namespace {

/// Representatives of the orbits of `elements` under conjugation by `conjugators`.
std::vector<int> class_representatives(const FiniteGroup& g, const std::vector<int>& conjugators, const std::vector<int>& elements)
{
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<int> reps;
    for (int x : elements) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        reps.push_back(x);
        std::vector<int> stack{x};
        seen[static_cast<std::size_t>(x)] = 1;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            for (int c : conjugators) {
                int z = g.conj(c, y);
                if (!seen[static_cast<std::size_t>(z)]) {
                    seen[static_cast<std::size_t>(z)] = 1;
                    stack.push_back(z);
                }
            }
        }
    }
    return reps;
}

/// Minimal normal subgroups (w.r.t. `conjugators`) strictly between h and k,
/// in enumeration order. Empty when k/h has no proper non-trivial one.
std::vector<Subgroup> minimal_normal_between(const FiniteGroup& g, const std::vector<int>& conjugators, const Subgroup& h,
                                             const Subgroup& k)
{
    std::vector<int> outside;
    for (int x : k)
        if (!std::binary_search(h.begin(), h.end(), x)) outside.push_back(x);
    std::vector<int> h_gens = subgroup_generators(g, h);
    std::vector<Subgroup> candidates;
    for (int x : class_representatives(g, conjugators, outside)) {
        std::vector<int> gens = h_gens;
        gens.push_back(x);
        Subgroup n = normal_closure(g, conjugators, gens);
        if (n.size() == k.size()) continue;
        if (std::find(candidates.begin(), candidates.end(), n) == candidates.end()) candidates.push_back(std::move(n));
    }
    std::vector<Subgroup> minimal;
    for (const auto& c : candidates) {
        bool is_min = std::none_of(candidates.begin(), candidates.end(),
                                   [&](const Subgroup& o) { return o.size() < c.size() && contains(c, o); });
        if (is_min) minimal.push_back(c);
    }
    return minimal;
}

void refine_recursive(const FiniteGroup& g, const std::vector<int>* fixed_conjugators, const Subgroup& h, const Subgroup& k,
                      std::mt19937_64* rng, std::vector<Subgroup>& chain)
{
    std::vector<int> conj = fixed_conjugators ? *fixed_conjugators : subgroup_generators(g, k);
    auto mins = minimal_normal_between(g, conj, h, k);
    if (mins.empty()) {
        chain.push_back(k);
        return;
    }
    std::size_t pick = 0;
    if (rng) pick = static_cast<std::size_t>((*rng)() % mins.size());
    const Subgroup l = mins[pick];
    refine_recursive(g, fixed_conjugators, h, l, rng, chain);
    refine_recursive(g, fixed_conjugators, l, k, rng, chain);
}

FiniteSeries finish(const FiniteGroup& g, std::vector<Subgroup> chain)
{
    FiniteSeries s;
    s.chain = std::move(chain);
    for (std::size_t i = 1; i < s.chain.size(); ++i) {
        s.factors.push_back(quotient(g, s.chain[i], s.chain[i - 1]));
        s.labels.push_back(iso_label(s.factors.back()));
    }
    return s;
}

}  // namespace

bool is_simple_finite(const FiniteGroup& g)
{
    if (g.order() < 2) return false;
    auto gens = g.generators();
    std::vector<int> nonidentity(static_cast<std::size_t>(g.order() - 1));
    std::iota(nonidentity.begin(), nonidentity.end(), 1);
    for (int x : class_representatives(g, gens, nonidentity))
        if (static_cast<int>(normal_closure(g, gens, {x}).size()) != g.order()) return false;
    return true;
}

FiniteSeries composition_series_between(const FiniteGroup& g, const Subgroup& h, const Subgroup& k,
                                        std::optional<std::uint64_t> seed)
{
    if (!is_normal_in(g, h, k)) throw DomainError("composition series needs h normal in k");
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);
    std::vector<Subgroup> chain{h};
    if (h.size() != k.size()) refine_recursive(g, nullptr, h, k, rng ? &*rng : nullptr, chain);
    return finish(g, std::move(chain));
}

FiniteSeries composition_series_finite(const FiniteGroup& g, std::optional<std::uint64_t> seed)
{
    return composition_series_between(g, trivial_subgroup(), whole(g), seed);
}

FiniteSeries chief_series_between(const FiniteGroup& g, const Subgroup& h, const Subgroup& k, std::optional<std::uint64_t> seed)
{
    Subgroup all = whole(g);
    if (!is_normal_in(g, h, all) || !is_normal_in(g, k, all) || !contains(k, h))
        throw DomainError("chief series needs nested normal subgroups");
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);
    auto gens = g.generators();
    std::vector<Subgroup> chain{h};
    if (h.size() != k.size()) refine_recursive(g, &gens, h, k, rng ? &*rng : nullptr, chain);
    return finish(g, std::move(chain));
}

// ---------------------------------------------------------------------------
// Labels and isomorphism

namespace {

/// Primary decomposition name of an abelian group from its element orders.
std::string abelian_name(const FiniteIsoLabel& label)
{
    auto count_dividing = [&](long m) {
        long total = 0;
        for (const auto& [ord, cnt] : label.element_orders)
            if (m % ord == 0) total += cnt;
        return total;
    };
    std::vector<long> parts;
    for (const auto& [q, e] : factor_small(Integer(label.order))) {
        // s_k = log_q #{x : x^(q^k) = 1} = sum_i min(k, e_i).
        std::vector<long> s{0};
        long qk = 1;
        for (long k = 1; k <= e; ++k) {
            qk *= q;
            long n = count_dividing(qk), logn = 0;
            while (n > 1) {
                n /= q;
                ++logn;
            }
            s.push_back(logn);
        }
        // Number of cyclic factors of order >= q^k is s_k - s_(k-1).
        for (long k = e; k >= 1; --k) {
            long at_least_k = s[static_cast<std::size_t>(k)] - s[static_cast<std::size_t>(k - 1)];
            long at_least_k1 = k < e ? s[static_cast<std::size_t>(k + 1)] - s[static_cast<std::size_t>(k)] : 0;
            long exactly = at_least_k - at_least_k1;
            long qpow = 1;
            for (long j = 0; j < k; ++j) qpow *= q;
            for (long j = 0; j < exactly; ++j) parts.push_back(qpow);
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (long part : parts) out += (out.empty() ? "C" : "xC") + std::to_string(part);
    return out;
}

const FiniteGroup* cached_catalog(const CatalogSpec& spec)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, FiniteGroup> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(spec.kind), spec.n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_catalog_group(spec)).first;
    return &it->second;
}

long factorial_l(int n) { return n <= 1 ? 1 : n * factorial_l(n - 1); }

std::string catalog_name(const FiniteGroup& g, const FiniteIsoLabel& label)
{
    if (label.abelian) {
        auto it = label.element_orders.find(label.order);
        if (it != label.element_orders.end()) return "C" + std::to_string(label.order);
        return abelian_name(label);
    }
    std::vector<CatalogSpec> candidates;
    for (int n = 3; n <= 7; ++n) {
        if (factorial_l(n) == label.order) candidates.push_back({CatalogKind::Symmetric, n});
        if (factorial_l(n) / 2 == label.order) candidates.push_back({CatalogKind::Alternating, n});
    }
    if (label.order % 2 == 0 && label.order >= 6) candidates.push_back({CatalogKind::Dihedral, label.order / 2});
    for (const auto& spec : candidates) {
        const FiniteGroup* ref = cached_catalog(spec);
        FiniteIsoLabel ref_label;
        ref_label.order = ref->order();
        ref_label.abelian = ref->is_abelian();
        for (int x = 0; x < ref->order(); ++x) ++ref_label.element_orders[ref->element_order(x)];
        if (!(ref_label == label)) continue;
        if (label.order <= kMaxExactIsoOrder && !iso_finite(g, *ref)) continue;
        return spec.token();
    }
    return {};
}

}  // namespace

std::string FiniteIsoLabel::to_string() const
{
    std::ostringstream out;
    out << "order=" << order << " abelian=" << (abelian ? "true" : "false") << " element_orders={";
    bool first = true;
    for (const auto& [ord, cnt] : element_orders) {
        out << (first ? "" : ",") << ord << ":" << cnt;
        first = false;
    }
    out << "}";
    if (!name.empty()) out << " name=" << name;
    return out.str();
}

std::string FiniteIsoLabel::display() const
{
    if (!name.empty()) return name;
    return "group(order=" + std::to_string(order) + (abelian ? ",abelian" : ",nonabelian") + ")";
}

FiniteIsoLabel iso_label(const FiniteGroup& g)
{
    FiniteIsoLabel label;
    label.order = g.order();
    label.abelian = g.is_abelian();
    for (int x = 0; x < g.order(); ++x) ++label.element_orders[g.element_order(x)];
    label.name = catalog_name(g, label);
    return label;
}

namespace {

FiniteIsoLabel label_without_name(const FiniteGroup& g)
{
    FiniteIsoLabel label;
    label.order = g.order();
    label.abelian = g.is_abelian();
    for (int x = 0; x < g.order(); ++x) ++label.element_orders[g.element_order(x)];
    return label;
}

}  // namespace

bool iso_finite(const FiniteGroup& a, const FiniteGroup& b)
{
    if (a.order() != b.order()) return false;
    FiniteIsoLabel la = label_without_name(a), lb = label_without_name(b);
    if (!(la == lb)) return false;
    // Finite abelian groups are determined by their element-order counts.
    if (la.abelian) return true;
    if (a.order() > kMaxExactIsoOrder) throw TooLarge("exact isomorphism search limited to order " + std::to_string(kMaxExactIsoOrder));
    int n = a.order();
    std::vector<int> gens = a.generators();
    std::vector<std::vector<int>> options;
    for (int x : gens) {
        std::vector<int> same;
        int ord = a.element_order(x);
        for (int y = 1; y < n; ++y)
            if (b.element_order(y) == ord) same.push_back(y);
        options.push_back(std::move(same));
    }
    std::vector<int> images(gens.size(), 0);
    // Tries to extend the partial assignment on gens[0..count) to a
    // homomorphism of the generated subgroup; returns the map or empty.
    auto extend = [&](std::size_t count) -> std::vector<int> {
        std::vector<int> map(static_cast<std::size_t>(n), -1);
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        map[0] = 0;
        used[0] = 1;
        std::vector<int> frontier{0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int x : frontier)
                for (std::size_t i = 0; i < count; ++i) {
                    int y = a.mul(x, gens[i]);
                    int img = b.mul(map[static_cast<std::size_t>(x)], images[i]);
                    if (map[static_cast<std::size_t>(y)] < 0) {
                        if (used[static_cast<std::size_t>(img)]) return {};
                        map[static_cast<std::size_t>(y)] = img;
                        used[static_cast<std::size_t>(img)] = 1;
                        next.push_back(y);
                    } else if (map[static_cast<std::size_t>(y)] != img) {
                        return {};
                    }
                }
            frontier = std::move(next);
        }
        return map;
    };
    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (depth == gens.size()) return !extend(depth).empty();
        for (int y : options[depth]) {
            images[depth] = y;
            if (!extend(depth + 1).empty() && search(depth + 1)) return true;
        }
        return false;
    };
    return search(0);
}

long exponent(const FiniteGroup& g)
{
    long e = 1;
    for (int x = 0; x < g.order(); ++x) e = std::lcm(e, static_cast<long>(g.element_order(x)));
    return e;
}

int power(const FiniteGroup& g, int x, long n)
{
    int result = 0;
    int base = x;
    if (n < 0) {
        base = g.inv(x);
        n = -n;
    }
    while (n > 0) {
        if (n & 1) result = g.mul(result, base);
        base = g.mul(base, base);
        n >>= 1;
    }
    return result;
}

std::optional<int> finite_root(const FiniteGroup& g, int x, long n)
{
    for (int y = 0; y < g.order(); ++y)
        if (power(g, y, n) == x) return y;
    return std::nullopt;
}

}  // namespace contractio::finite
