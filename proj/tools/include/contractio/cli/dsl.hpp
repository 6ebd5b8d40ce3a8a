#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "contractio/group_model.hpp"

namespace contractio::cli {

struct SourcePos {
    int line = 1;
    int column = 1;
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(SourcePos pos, std::vector<std::string> expected, std::string found);
    SourcePos pos;
    std::vector<std::string> expected;
    std::string found;
};

class ValidationError : public std::runtime_error {
public:
    ValidationError(SourcePos pos, const std::string& message);
    SourcePos pos;
    std::string detail;
};

struct GroupDef {
    std::string name;
    model::ContractionGroup group;
    SourcePos pos;
};

/// A parsed .grp file.
struct Document {
    std::optional<long> precision;
    std::optional<std::uint64_t> seed;
    std::vector<GroupDef> groups;

    const GroupDef* find(const std::string& name) const;
};

/// Grammar, one statement per line (newlines inside brackets and after `*`
/// are ignored):
///   group <ident> = <block> ("*" <block>)*
///   set precision = <int>
///   set seed = <int>
/// `#` starts a comment.
Document parse(std::string_view source);

/// Canonical text; parse(print(d)) is equal to d.
std::string print(const Document& doc);
bool same_document(const Document& a, const Document& b);

model::Block parse_block(std::string_view text);
/// Polynomial in X over Q, e.g. "X^2 + 3", "X^3 - 1/2*X + 6", "2X - 6".
QPoly parse_poly(std::string_view text);

}  // namespace contractio::cli
