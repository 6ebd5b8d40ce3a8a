#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "contractio/arith.hpp"
#include "contractio/finite_group.hpp"
#include "contractio/matrix.hpp"
#include "contractio/polynomial.hpp"

namespace contractio::model {

/// A block that fails its validity invariant (non-contractive matrix,
/// bad weights, non-prime p, ...).
class InvalidBlock : public DomainError {
public:
    using DomainError::DomainError;
};

enum class OracleVerdict { Contractive, NotContractive, Inconclusive };
std::string to_string(OracleVerdict v);

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::Inconclusive;
    long steps = 0;  // power or lattice iteration at which the decision fell
};

/// Default K_max = d (1 + max |v_p(entry)|) + 8.
long default_oracle_bound(const RatMatrix& a, long p);
/// Decides contractivity of A over Q_p from matrix powers and A-stable
/// lattices, without using the characteristic polynomial. Throws
/// DomainError for singular A.
OracleResult contractivity_oracle(const RatMatrix& a, long p, std::optional<long> k_max = std::nullopt);

/// Companion matrix: e_j -> e_(j+1), last column -a_0, ..., -a_(d-1).
RatMatrix companion_matrix(const QPoly& f);

/// Restricted product of copies of F indexed by Z with the right shift.
struct ShiftBlock {
    std::shared_ptr<const finite::FiniteGroup> group;
    std::optional<finite::CatalogSpec> catalog;  // set when built from a catalog token
};

/// Q_p^d with v -> A v.
struct LinearBlock {
    long p = 2;
    RatMatrix matrix;
    QPoly charpoly;
    std::optional<QPoly> companion_of;  // set when built as companion(p, f)
    OracleResult oracle;

    int dim() const { return matrix.rows(); }
};

/// Heisenberg group over Q_p with (x,y,z) -> (p^a x, p^b y, p^(a+b) z).
struct HeisenbergBlock {
    long p = 2;
    long a = 1;
    long b = 1;
};

using Block = std::variant<ShiftBlock, LinearBlock, HeisenbergBlock>;

ShiftBlock make_shift(const finite::FiniteGroup& f, std::optional<finite::CatalogSpec> catalog = std::nullopt);
ShiftBlock make_shift(const finite::CatalogSpec& spec);
/// Validates det A != 0 and contractivity (Newton polygon of the char poly,
/// cross-checked against contractivity_oracle). Throws InvalidBlock.
LinearBlock make_linear(long p, const RatMatrix& a);
/// Companion matrix of f; f must be monic with root valuations > 0.
LinearBlock make_companion(long p, const QPoly& f);
HeisenbergBlock make_heisenberg(long p, long a, long b);

/// DSL text of a block: shift(C2), shift(table{0,1;1,0}),
/// linear(p=3, matrix=[[0,-3],[1,0]]), companion(p=3, poly=X^2 + 3),
/// heisenberg(p=5, a=1, b=2).
std::string block_to_string(const Block& b);
bool same_block(const Block& a, const Block& b);
/// The prime of a linear or Heisenberg block.
std::optional<long> block_prime(const Block& b);
bool is_torsion_block(const Block& b);

struct ContractionGroup {
    std::vector<Block> blocks;

    std::size_t size() const { return blocks.size(); }
    bool trivial() const { return blocks.empty(); }
    std::string to_string() const;
};

bool same_group(const ContractionGroup& a, const ContractionGroup& b);

/// Finitely supported map Z -> F; identity values are never stored.
struct ShiftElem {
    std::map<long, int> support;
    friend bool operator==(const ShiftElem&, const ShiftElem&) = default;
};

struct HeisElem {
    Rational x, y, z;
    friend bool operator==(const HeisElem&, const HeisElem&) = default;
};

using Component = std::variant<ShiftElem, RatVector, HeisElem>;

struct Element {
    std::vector<Component> parts;
    friend bool operator==(const Element&, const Element&) = default;
};

Element identity(const ContractionGroup& g);
Element multiply(const ContractionGroup& g, const Element& x, const Element& y);
Element inverse(const ContractionGroup& g, const Element& x);
/// x^n by repeated squaring (negative n uses the inverse).
Element power(const ContractionGroup& g, const Element& x, long n);
Element apply_alpha(const ContractionGroup& g, const Element& x);
Element apply_alpha_inverse(const ContractionGroup& g, const Element& x);
/// Throws DomainError when x does not have one component of the right shape per block.
void check_element(const ContractionGroup& g, const Element& x);

/// Closed form (x,y,z)^n = (n x, n y, n z + C(n,2) x y).
HeisElem heisenberg_power(const HeisElem& e, long n);

bool is_torsion(const ContractionGroup& g, const Element& x);
/// Order of x, or nullopt for infinite order.
std::optional<Integer> element_order(const ContractionGroup& g, const Element& x);
/// Some y with y^n = x, or nullopt when a shift coordinate has no n-th root.
std::optional<Element> nth_root(const ContractionGroup& g, const Element& x, long n);

/// Level-k compact open subgroup: shift F^{k,k+1,...}; linear (p^k Z_p)^d;
/// Heisenberg p^k Z_p x p^k Z_p x p^(2k) Z_p.
bool in_lattice_level(const ContractionGroup& g, const Element& x, long k);

/// Closed-form module Delta_G(alpha^-1) of a block or group.
Integer block_delta(const Block& b);
Integer module_delta(const ContractionGroup& g);
/// Prime factorisation of module_delta (assembled blockwise).
std::map<long, long> module_delta_factored(const ContractionGroup& g);
/// [alpha^-1(W) : W] for the level-0 lattice W, computed by comparing the
/// lattices directly (Smith form for linear blocks, coordinate boxes for
/// Heisenberg blocks, support levels for shift blocks).
Integer lattice_index_oracle(const Block& b);

/// Parameters for random sampling of elements.
struct SampleShape {
    long support_radius = 3;
    long height = 20;
};
Element random_element(const ContractionGroup& g, std::mt19937_64& rng, const SampleShape& shape = {});

std::string to_string(const ContractionGroup& g, const Element& x);

}  // namespace contractio::model
