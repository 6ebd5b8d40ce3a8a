#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "contractio/group_model.hpp"
#include "contractio/padic.hpp"
#include "contractio/series.hpp"

namespace contractio::theorems {

/// Simplicity or comparison could not be decided at the working precision.
class UncertifiedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSimple : public DomainError {
public:
    using DomainError::DomainError;
};

/// Label of a torsion-free simple group: f = char A with its companion matrix.
struct PadicLabel {
    long p = 2;
    padic::PAdicPoly f;
    padic::Certification certification = padic::Certification::RationalExact;
    RatMatrix companion;
};

struct ClassificationLabel {
    std::variant<series::TorsionFactor, PadicLabel> kind;

    bool torsion() const { return std::holds_alternative<series::TorsionFactor>(kind); }
    bool torsion_free() const { return std::holds_alternative<PadicLabel>(kind); }
    std::string to_string() const;
};

/// Single shift block over a simple F, or a single linear block whose char
/// poly is irreducible over Q_p. Throws UncertifiedError when the
/// factorisation leaves irreducibility open.
bool is_simple_contraction(const model::ContractionGroup& g, long precision = padic::kDefaultPrecision);

/// Throws NotSimple for non-simple groups.
ClassificationLabel classify_simple(const model::ContractionGroup& g, long precision = padic::kDefaultPrecision);

/// Companion matrix of f.
RatMatrix rational_normal_form(const padic::PAdicPoly& f);

struct IsoResult {
    bool isomorphic = false;
    bool certified = true;
};

IsoResult iso_simple(const model::ContractionGroup& g, const model::ContractionGroup& h, long precision = padic::kDefaultPrecision);

model::ContractionGroup torsion_part(const model::ContractionGroup& g);

struct PrimePart {
    long p = 2;
    model::ContractionGroup group;
    std::vector<std::size_t> blocks;  // indices in the original group
};

/// Non-shift blocks grouped by prime, primes ascending.
std::vector<PrimePart> divisible_part(const model::ContractionGroup& g);

/// Module of alpha^-1 on the torsion part.
Integer t_alpha(const model::ContractionGroup& g);
/// Exponent of the torsion part (lcm of the exponents of the finite groups).
Integer torsion_exponent(const model::ContractionGroup& g);

struct StructureReport {
    std::vector<std::size_t> torsion_blocks;
    std::vector<PrimePart> divisible;
    Integer t_alpha = 1;
    Integer exponent = 1;
    long samples = 0;
    long max_root = 0;

    bool exponent_divides_t_alpha = false;
    bool torsion_killed = false;     // x^t_alpha has trivial torsion components
    bool roots_exist = false;        // divisible components have n-th roots, n <= max_root
    bool roots_unique = false;       // perturbed roots never hit the same power
    bool recombines = false;         // T x prod G_p rebuilds G and every sample
    bool dichotomy = false;          // T-samples torsion, non-trivial D-samples torsion-free

    bool ok() const
    {
        return exponent_divides_t_alpha && torsion_killed && roots_exist && roots_unique && recombines && dichotomy;
    }
};

StructureReport verify_structure(const model::ContractionGroup& g, long samples, std::uint64_t seed, long max_root = 50);

}  // namespace contractio::theorems
