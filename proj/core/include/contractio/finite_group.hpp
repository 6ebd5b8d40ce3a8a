#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "contractio/arith.hpp"

namespace contractio::finite {

inline constexpr int kMaxTableOrder = 5040;
inline constexpr int kMaxExactIsoOrder = 256;

/// Raised for tables that are not groups.
class InvalidTable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Subgroup as a sorted list of element indices.
using Subgroup = std::vector<int>;

/// Finite group given by its Cayley table. Element 0 is the identity.
class FiniteGroup {
public:
    /// Validates identity, Latin-square property and associativity (Light's
    /// test over a generating set). Throws InvalidTable or TooLarge.
    static FiniteGroup from_table(const std::vector<std::vector<int>>& rows, std::string name = {});

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
    const std::string& name() const { return name_; }

    int element_order(int a) const;
    bool is_abelian() const;
    /// Greedy generating set (each element outside the span of its predecessors).
    std::vector<int> generators() const;
    std::vector<std::vector<int>> rows() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

private:
    friend FiniteGroup make_group_unchecked(int order, std::vector<std::uint16_t> table, std::string name);
    FiniteGroup() = default;

    int order_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<std::uint16_t> inverse_;
    std::string name_;
};

enum class CatalogKind { Cyclic, Symmetric, Alternating, Dihedral };

struct CatalogSpec {
    CatalogKind kind = CatalogKind::Cyclic;
    int n = 1;

    /// DSL token: C<n>, S<n>, A<n>, D<n> (D<n> is the symmetry group of the n-gon, order 2n).
    std::string token() const;
    friend bool operator==(const CatalogSpec&, const CatalogSpec&) = default;
};

/// Throws TooLarge beyond order 5040 and DomainError for n < 1.
FiniteGroup make_catalog_group(const CatalogSpec& spec);

/// Isomorphism invariants: order, abelian flag, element-order multiset and,
/// when recognised, a catalog name.
struct FiniteIsoLabel {
    int order = 1;
    bool abelian = true;
    std::map<int, int> element_orders;  // order -> count
    std::string name;

    std::string to_string() const;
    /// Name if known, otherwise a descriptive fallback.
    std::string display() const;
    friend bool operator==(const FiniteIsoLabel& a, const FiniteIsoLabel& b)
    {
        return a.order == b.order && a.abelian == b.abelian && a.element_orders == b.element_orders;
    }
};

FiniteIsoLabel iso_label(const FiniteGroup& g);

/// Exact isomorphism test. Label mismatch answers false at any size; equal
/// labels need an exhaustive search, which throws TooLarge beyond order 256
/// unless both groups are abelian.
bool iso_finite(const FiniteGroup& a, const FiniteGroup& b);

Subgroup whole(const FiniteGroup& g);
Subgroup trivial_subgroup();
Subgroup closure(const FiniteGroup& g, const std::vector<int>& gens);
/// Smallest subgroup containing `gens` and normalised by `conjugators`.
Subgroup normal_closure(const FiniteGroup& g, const std::vector<int>& conjugators, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& h);
bool contains(const Subgroup& k, const Subgroup& h);
/// True when h is normal in k (both subgroups of g).
bool is_normal_in(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);
/// Greedy generating set of a subgroup.
std::vector<int> subgroup_generators(const FiniteGroup& g, const Subgroup& h);

/// The quotient k/h as a table group (h normal in k).
FiniteGroup quotient(const FiniteGroup& g, const Subgroup& k, const Subgroup& h);
FiniteGroup subgroup_group(const FiniteGroup& g, const Subgroup& h);

bool is_simple_finite(const FiniteGroup& g);

/// Chain of subgroups with the quotient group and label of every step.
struct FiniteSeries {
    std::vector<Subgroup> chain;
    std::vector<FiniteGroup> factors;
    std::vector<FiniteIsoLabel> labels;
};

/// Composition series from h to k (h normal in k). With a seed, the choice
/// among minimal normal subgroups at each refinement is randomised;
/// without one, the first in enumeration order is taken.
FiniteSeries composition_series_between(const FiniteGroup& g, const Subgroup& h, const Subgroup& k,
                                        std::optional<std::uint64_t> seed = std::nullopt);
FiniteSeries composition_series_finite(const FiniteGroup& g, std::optional<std::uint64_t> seed = std::nullopt);

/// Chief series from h to k, both normal in g: every step is normal in g and
/// each factor is a minimal normal section.
FiniteSeries chief_series_between(const FiniteGroup& g, const Subgroup& h, const Subgroup& k,
                                  std::optional<std::uint64_t> seed = std::nullopt);

/// Exponent (lcm of element orders).
long exponent(const FiniteGroup& g);

/// Returns some y with y^n = x, if any.
std::optional<int> finite_root(const FiniteGroup& g, int x, long n);
int power(const FiniteGroup& g, int x, long n);

}  // namespace contractio::finite
