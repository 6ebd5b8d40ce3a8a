#include "contractio/cli/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <variant>

namespace contractio::cli {

namespace {

std::string where(SourcePos pos) { return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column); }

std::string join(const std::vector<std::string>& items, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

}  // namespace

SyntaxError::SyntaxError(SourcePos p, std::vector<std::string> exp, std::string f)
    : std::runtime_error(where(p) + ": expected " + join(exp, " or ") + ", found " + f), pos(p), expected(std::move(exp)),
      found(std::move(f))
{
}

ValidationError::ValidationError(SourcePos p, const std::string& message)
    : std::runtime_error(where(p) + ": " + message), pos(p), detail(message)
{
}

const GroupDef* Document::find(const std::string& name) const
{
    for (const auto& g : groups)
        if (g.name == name) return &g;
    return nullptr;
}

namespace {

enum class Tok { Ident, Int, Punct, Newline, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

std::string describe(const Token& t)
{
    switch (t.kind) {
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
    }
}

std::vector<Token> lex(std::string_view src)
{
    std::vector<Token> out;
    SourcePos pos;
    int depth = 0;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '\n') {
            // Continuation after '*' or inside brackets.
            bool continues = depth > 0 || (!out.empty() && out.back().kind == Tok::Punct && out.back().text == "*");
            if (!continues && (out.empty() || out.back().kind != Tok::Newline)) out.push_back({Tok::Newline, "\n", pos});
            advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.pos = pos;
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(start, j - start));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(start, j - start));
            advance(j - i);
        } else if (std::string_view("()[]{},;=*+-/^").find(c) != std::string_view::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            if (c == '(' || c == '[' || c == '{') ++depth;
            if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
            advance(1);
        } else {
            throw SyntaxError(pos, {"a token"}, "'" + std::string(1, c) + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back({Tok::End, "", pos});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Document document()
    {
        Document doc;
        std::set<std::string> names;
        skip_newlines();
        while (peek().kind != Tok::End) {
            const Token& head = peek();
            if (head.kind == Tok::Ident && head.text == "group") {
                next();
                GroupDef def;
                def.pos = peek().pos;
                def.name = ident("group name");
                if (!names.insert(def.name).second) throw ValidationError(def.pos, "duplicate group name " + def.name);
                punct("=");
                def.group = product();
                doc.groups.push_back(std::move(def));
            } else if (head.kind == Tok::Ident && head.text == "set") {
                next();
                SourcePos key_pos = peek().pos;
                std::string key = ident("setting name");
                punct("=");
                SourcePos value_pos = peek().pos;
                Integer v = integer();
                if (key == "precision") {
                    if (v < 1 || v > 100000) throw ValidationError(value_pos, "precision must be between 1 and 100000");
                    doc.precision = v.get_si();
                } else if (key == "seed") {
                    if (v < 0 || v > Integer(std::to_string(std::numeric_limits<std::uint64_t>::max())))
                        throw ValidationError(value_pos, "seed must fit in 64 bits");
                    doc.seed = std::stoull(v.get_str());
                } else {
                    throw SyntaxError(key_pos, {"'precision'", "'seed'"}, "'" + key + "'");
                }
            } else {
                throw SyntaxError(head.pos, {"'group'", "'set'"}, describe(head));
            }
            end_statement();
        }
        return doc;
    }

    model::ContractionGroup product()
    {
        model::ContractionGroup g;
        g.blocks.push_back(block());
        while (peek().kind == Tok::Punct && peek().text == "*") {
            next();
            skip_newlines();
            g.blocks.push_back(block());
        }
        return g;
    }

    model::Block block()
    {
        const Token& head = peek();
        SourcePos pos = head.pos;
        std::string kind = ident("block kind");
        try {
            if (kind == "shift") return shift(pos);
            if (kind == "linear") {
                punct("(");
                auto args = keywords({"p", "matrix"});
                punct(")");
                return model::make_linear(std::get<long>(args.at("p")), std::get<RatMatrix>(args.at("matrix")));
            }
            if (kind == "companion") {
                punct("(");
                auto args = keywords({"p", "poly"});
                punct(")");
                return model::make_companion(std::get<long>(args.at("p")), std::get<QPoly>(args.at("poly")));
            }
            if (kind == "heisenberg") {
                punct("(");
                auto args = keywords({"p", "a", "b"});
                punct(")");
                return model::make_heisenberg(std::get<long>(args.at("p")), std::get<long>(args.at("a")),
                                              std::get<long>(args.at("b")));
            }
        } catch (const std::invalid_argument& e) {
            throw ValidationError(pos, e.what());
        } catch (const TooLarge& e) {
            throw ValidationError(pos, e.what());
        }
        throw SyntaxError(pos, {"'shift'", "'linear'", "'companion'", "'heisenberg'"}, "'" + kind + "'");
    }

    QPoly polynomial()
    {
        std::vector<Rational> coeffs;
        auto add = [&](int degree, const Rational& c) {
            if (coeffs.size() <= static_cast<std::size_t>(degree)) coeffs.resize(static_cast<std::size_t>(degree) + 1, Rational(0));
            coeffs[static_cast<std::size_t>(degree)] += c;
        };
        bool first = true;
        for (;;) {
            int sign = 1;
            if (is_punct("+") || is_punct("-")) {
                sign = next().text == "-" ? -1 : 1;
            } else if (!first) {
                break;
            }
            first = false;
            Rational c(sign);
            bool have_coeff = false;
            if (peek().kind == Tok::Int) {
                c *= rational();
                have_coeff = true;
                if (is_punct("*")) next();
            }
            if (peek().kind == Tok::Ident && (peek().text == "X" || peek().text == "x")) {
                next();
                int degree = 1;
                if (is_punct("^")) {
                    next();
                    SourcePos dpos = peek().pos;
                    Integer d = integer();
                    if (d < 1 || d > 64) throw ValidationError(dpos, "degree must be between 1 and 64");
                    degree = static_cast<int>(d.get_si());
                }
                add(degree, c);
            } else if (have_coeff) {
                add(0, c);
            } else {
                throw SyntaxError(peek().pos, {"a coefficient", "'X'"}, describe(peek()));
            }
        }
        return QPoly(std::move(coeffs));
    }

    const Token& peek() const { return toks_[pos_]; }
    bool at_end() const { return peek().kind == Tok::End; }

private:
    using Arg = std::variant<long, RatMatrix, QPoly>;

    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }

    void skip_newlines()
    {
        while (peek().kind == Tok::Newline) next();
    }

    void end_statement()
    {
        if (peek().kind == Tok::End) return;
        if (peek().kind != Tok::Newline) throw SyntaxError(peek().pos, {"end of line", "'*'"}, describe(peek()));
        skip_newlines();
    }

    std::string ident(const char* what)
    {
        if (peek().kind != Tok::Ident) throw SyntaxError(peek().pos, {what}, describe(peek()));
        return next().text;
    }

    void punct(const char* p)
    {
        if (!is_punct(p)) throw SyntaxError(peek().pos, {std::string("'") + p + "'"}, describe(peek()));
        next();
    }

    Integer integer()
    {
        bool negative = false;
        if (is_punct("-")) {
            next();
            negative = true;
        }
        if (peek().kind != Tok::Int) throw SyntaxError(peek().pos, {"an integer"}, describe(peek()));
        Integer v(next().text);
        return negative ? Integer(-v) : v;
    }

    Rational rational()
    {
        Integer num = integer();
        if (!is_punct("/")) return Rational(num);
        next();
        SourcePos dpos = peek().pos;
        Integer den = integer();
        if (den == 0) throw ValidationError(dpos, "zero denominator");
        return make_rational(num, den);
    }

    long small_int(const char* what)
    {
        SourcePos vpos = peek().pos;
        Integer v = integer();
        if (!v.fits_slong_p()) throw ValidationError(vpos, std::string(what) + " is out of range");
        return v.get_si();
    }

    RatMatrix matrix()
    {
        SourcePos mpos = peek().pos;
        punct("[");
        std::vector<std::vector<Rational>> rows;
        do {
            if (!rows.empty()) next();
            punct("[");
            std::vector<Rational> row;
            row.push_back(rational());
            while (is_punct(",")) {
                next();
                row.push_back(rational());
            }
            punct("]");
            rows.push_back(std::move(row));
        } while (is_punct(","));
        punct("]");
        for (const auto& r : rows)
            if (r.size() != rows.size()) throw ValidationError(mpos, "matrix must be square");
        return RatMatrix(rows);
    }

    std::map<std::string, Arg> keywords(const std::vector<std::string>& names)
    {
        std::map<std::string, Arg> out;
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (k) punct(",");
            SourcePos kpos = peek().pos;
            std::string key = ident("argument name");
            if (std::find(names.begin(), names.end(), key) == names.end()) {
                std::vector<std::string> exp;
                for (const auto& n : names) exp.push_back("'" + n + "'");
                throw SyntaxError(kpos, exp, "'" + key + "'");
            }
            if (out.count(key)) throw ValidationError(kpos, "argument " + key + " given twice");
            punct("=");
            if (key == "matrix") out[key] = matrix();
            else if (key == "poly") out[key] = polynomial();
            else out[key] = small_int(key.c_str());
        }
        return out;
    }

    model::Block shift(SourcePos pos)
    {
        punct("(");
        SourcePos fpos = peek().pos;
        std::string token = ident("finite group");
        model::Block out;
        if (token == "table") {
            punct("{");
            std::vector<std::vector<int>> rows(1);
            for (;;) {
                SourcePos epos = peek().pos;
                Integer v = integer();
                if (v < 0 || v > 65535) throw ValidationError(epos, "table entry out of range");
                rows.back().push_back(static_cast<int>(v.get_si()));
                if (is_punct(",")) {
                    next();
                } else if (is_punct(";")) {
                    next();
                    rows.emplace_back();
                } else {
                    break;
                }
            }
            punct("}");
            punct(")");
            try {
                out = model::make_shift(finite::FiniteGroup::from_table(rows));
            } catch (const std::invalid_argument& e) {
                throw ValidationError(pos, e.what());
            }
            return out;
        }
        finite::CatalogSpec spec;
        static const std::map<char, finite::CatalogKind> kinds{{'C', finite::CatalogKind::Cyclic},
                                                               {'S', finite::CatalogKind::Symmetric},
                                                               {'A', finite::CatalogKind::Alternating},
                                                               {'D', finite::CatalogKind::Dihedral}};
        auto it = kinds.find(token[0]);
        bool digits = token.size() > 1 && std::all_of(token.begin() + 1, token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        if (it == kinds.end() || !digits || token.size() > 6)
            throw SyntaxError(fpos, {"C<n>", "S<n>", "A<n>", "D<n>", "table{...}"}, "'" + token + "'");
        spec.kind = it->second;
        spec.n = std::stoi(token.substr(1));
        punct(")");
        return model::make_shift(spec);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Document parse(std::string_view source) { return Parser(lex(source)).document(); }

namespace {

template <class F>
auto parse_fragment(std::string_view text, F&& f)
{
    Parser p(lex(text));
    auto out = f(p);
    if (!p.at_end()) throw SyntaxError(p.peek().pos, {"end of input"}, describe(p.peek()));
    return out;
}

}  // namespace

model::Block parse_block(std::string_view text)
{
    return parse_fragment(text, [](Parser& p) { return p.block(); });
}

QPoly parse_poly(std::string_view text)
{
    return parse_fragment(text, [](Parser& p) { return p.polynomial(); });
}

std::string print(const Document& doc)
{
    std::string out;
    if (doc.precision) out += "set precision = " + std::to_string(*doc.precision) + "\n";
    if (doc.seed) out += "set seed = " + std::to_string(*doc.seed) + "\n";
    for (const auto& g : doc.groups) out += "group " + g.name + " = " + g.group.to_string() + "\n";
    return out;
}

bool same_document(const Document& a, const Document& b)
{
    if (a.precision != b.precision || a.seed != b.seed || a.groups.size() != b.groups.size()) return false;
    for (std::size_t i = 0; i < a.groups.size(); ++i)
        if (a.groups[i].name != b.groups[i].name || !model::same_group(a.groups[i].group, b.groups[i].group)) return false;
    return true;
}

}  // namespace contractio::cli
