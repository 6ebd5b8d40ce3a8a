#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "contractio/finite_group.hpp"
#include "contractio/group_model.hpp"
#include "contractio/padic.hpp"

namespace contractio::series {

/// alpha: every step normal in the next; alpha_normal: every step normal in G.
enum class Mode { Alpha, AlphaNormal };
std::string to_string(Mode m);
/// Accepts "alpha", "alpha-normal" and "alpha_normal".
std::optional<Mode> parse_mode(const std::string& text);

/// Primary component of a linear block: ker f(A)^m for an irreducible
/// factor f over Q_p. Multiplicity above 1 only occurs for rational linear f.
struct LinearComponent {
    padic::CertifiedFactor factor;
    int multiplicity = 1;
    int dim() const { return factor.factor.degree() * multiplicity; }
};

struct LinearAnalysis {
    long p = 2;
    long precision = padic::kDefaultPrecision;
    std::vector<LinearComponent> components;
    bool certified() const;
};

/// Splits char A into primary components. Throws padic::NotSquarefree when a
/// repeated factor is not linear over Q.
LinearAnalysis analyze_linear(const model::LinearBlock& block, long precision = padic::kDefaultPrecision);

struct ShiftSub {
    finite::Subgroup elements;  // sorted subgroup of F
    friend bool operator==(const ShiftSub&, const ShiftSub&) = default;
};

/// Per component: dimension inside the component and, for repeated
/// components, a rational basis of the chosen A-invariant subspace.
struct LinearSub {
    struct Part {
        int dim = 0;
        std::vector<RatVector> basis;
        friend bool operator==(const Part&, const Part&) = default;
    };
    std::vector<Part> parts;
    friend bool operator==(const LinearSub&, const LinearSub&) = default;
};

/// Coordinate subgroups of the Heisenberg group.
enum class HeisSub { Trivial, Z, X, Y, XZ, YZ, Whole };
std::string to_string(HeisSub h);

using BlockSub = std::variant<ShiftSub, LinearSub, HeisSub>;

/// Block-structured subgroup: one sub-object per block.
struct SubgroupDesc {
    std::vector<BlockSub> blocks;
    friend bool operator==(const SubgroupDesc&, const SubgroupDesc&) = default;
};

/// Precomputed data shared by the series operations.
class GroupAnalysis {
public:
    explicit GroupAnalysis(const model::ContractionGroup& g, long precision = padic::kDefaultPrecision);

    const model::ContractionGroup& group() const { return group_; }
    long precision() const { return precision_; }
    /// Primary decomposition of linear block i (throws for other kinds).
    const LinearAnalysis& linear(std::size_t block) const;

    SubgroupDesc trivial() const;
    SubgroupDesc whole() const;
    /// Whole block i, trivial elsewhere.
    SubgroupDesc block_only(std::size_t block) const;
    BlockSub trivial_sub(std::size_t block) const;
    BlockSub whole_sub(std::size_t block) const;

private:
    model::ContractionGroup group_;
    long precision_;
    std::vector<std::optional<LinearAnalysis>> linear_;
};

struct TorsionFactor {
    finite::FiniteIsoLabel label;
    std::shared_ptr<const finite::FiniteGroup> group;
};

struct PadicFactor {
    long p = 2;
    padic::PAdicPoly f;
    padic::Certification certification = padic::Certification::RationalExact;
};

struct FactorClass {
    std::variant<TorsionFactor, PadicFactor> kind;
    std::size_t block = 0;
    Integer module = 1;  // Delta of alpha^-1 on the factor

    bool torsion() const { return std::holds_alternative<TorsionFactor>(kind); }
    /// TorsionSimple(C2) / PadicSimple(3, X - 3).
    std::string to_string(long precision) const;
};

struct SeriesChain {
    Mode mode = Mode::Alpha;
    std::vector<SubgroupDesc> chain;  // chain.front() trivial, chain.back() whole
    std::vector<FactorClass> factors;  // one per step
    std::vector<std::size_t> block_order;
    std::optional<std::uint64_t> seed;
    long precision = padic::kDefaultPrecision;

    std::size_t length() const { return chain.empty() ? 0 : chain.size() - 1; }
    bool certified() const;
};

std::string describe(const GroupAnalysis& ga, const SubgroupDesc& d);

/// Checks the sub-object invariants of every block.
bool valid_desc(const GroupAnalysis& ga, const SubgroupDesc& d);
bool contains(const GroupAnalysis& ga, const SubgroupDesc& big, const SubgroupDesc& small);
/// h normal in k (both block-structured).
bool is_normal_in(const GroupAnalysis& ga, const SubgroupDesc& h, const SubgroupDesc& k);
/// A chain from trivial to whole with strict inclusions, each step normal in
/// the next (Alpha) or in G (AlphaNormal).
bool validate_chain(const GroupAnalysis& ga, const std::vector<SubgroupDesc>& chain, Mode mode);

/// Composition series; blocks left to right without a seed, shuffled and
/// with randomised tie-breaking inside blocks with one.
SeriesChain composition_series(const GroupAnalysis& ga, Mode mode, std::optional<std::uint64_t> seed = std::nullopt);

/// Refines a valid chain to a composition series. Throws DomainError when
/// the chain is invalid for the mode.
SeriesChain refine(const GroupAnalysis& ga, const std::vector<SubgroupDesc>& chain, Mode mode,
                   std::optional<std::uint64_t> seed = std::nullopt);

struct JordanHolderReport {
    bool equal = false;
    bool exact = true;  // false when some match only agrees modulo p^N
    std::vector<std::pair<std::size_t, std::size_t>> matching;
};

JordanHolderReport jordan_holder_verify(const SeriesChain& a, const SeriesChain& b);

/// Delta of alpha^-1 restricted to a block-structured subgroup.
Integer subgroup_module(const GroupAnalysis& ga, const SubgroupDesc& d);
bool check_length_bound(const GroupAnalysis& ga, const SeriesChain& s);
/// Product of factor modules equals module_delta(G), each factor module
/// equals the module quotient of its step, and each is >= 2.
bool check_module_multiplicativity(const GroupAnalysis& ga, const SeriesChain& s);

/// 1 < product of per-block cores < G (duplicates collapsed).
SeriesChain canonical_series(const GroupAnalysis& ga);
/// Every step section has a compact open subgroup normal in the section.
bool check_special(const GroupAnalysis& ga, const std::vector<SubgroupDesc>& chain);

/// Smallest A-stable subspace containing span(v).
std::vector<RatVector> stable_hull(const model::LinearBlock& block, const std::vector<RatVector>& v);

}  // namespace contractio::series
