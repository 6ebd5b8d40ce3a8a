#include "contractio/cli/commands.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "contractio/cli/dsl.hpp"
#include "contractio/theorems.hpp"

namespace contractio::cli {

using nlohmann::ordered_json;

std::optional<Command> parse_command(const std::string& name)
{
    if (name == "check") return Command::Check;
    if (name == "analyze") return Command::Analyze;
    if (name == "classify") return Command::Classify;
    if (name == "structure") return Command::Structure;
    if (name == "verify") return Command::Verify;
    return std::nullopt;
}

std::string to_string(Command c)
{
    switch (c) {
    case Command::Check: return "check";
    case Command::Analyze: return "analyze";
    case Command::Classify: return "classify";
    case Command::Structure: return "structure";
    case Command::Verify: return "verify";
    }
    return "?";
}

namespace {

struct Tally {
    int validation = 0;
    int failures = 0;
    int uncertified = 0;
    int checks = 0;

    void record(ordered_json& into, const std::string& key, bool ok)
    {
        ++checks;
        if (!ok) ++failures;
        into[key] = ok ? "pass" : "fail";
    }
};

struct Context {
    const Options& opts;
    long precision;
    std::uint64_t seed;
    Tally tally;
};

std::vector<series::Mode> modes(const Options& o)
{
    if (o.mode) return {*o.mode};
    return {series::Mode::Alpha, series::Mode::AlphaNormal};
}

/// Per-group seed: a splitmix step away from the run seed.
std::uint64_t group_seed(std::uint64_t seed, std::size_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::string factored(const std::map<long, long>& f)
{
    if (f.empty()) return "1";
    std::string out;
    for (const auto& [p, e] : f) {
        if (!out.empty()) out += " * ";
        out += std::to_string(p);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

series::SeriesChain build_series(Context& cx, const series::GroupAnalysis& ga, series::Mode mode,
                                 std::optional<std::uint64_t> seed)
{
    auto s = series::composition_series(ga, mode, seed);
    if (cx.opts.fault == Fault::TamperModule && !s.factors.empty()) s.factors.front().module += 1;
    return s;
}

ordered_json series_report(Context& cx, const series::GroupAnalysis& ga, series::Mode mode, std::uint64_t seed)
{
    ordered_json j;
    auto s = build_series(cx, ga, mode, std::nullopt);
    j["length"] = s.length();
    j["certified"] = s.certified();
    if (!s.certified()) ++cx.tally.uncertified;
    j["factors"] = ordered_json::array();
    for (const auto& f : s.factors) j["factors"].push_back(f.to_string(s.precision));
    j["chain"] = ordered_json::array();
    for (const auto& d : s.chain) j["chain"].push_back(series::describe(ga, d));
    cx.tally.record(j, "length_bound", series::check_length_bound(ga, s));
    cx.tally.record(j, "module_product", series::check_module_multiplicativity(ga, s));
    auto jh = series::jordan_holder_verify(s, build_series(cx, ga, mode, seed));
    cx.tally.record(j, "jordan_holder", jh.equal);
    if (jh.equal && !jh.exact) ++cx.tally.uncertified;
    return j;
}

std::string non_simple_reason(const model::ContractionGroup& g)
{
    if (g.blocks.empty()) return "trivial group";
    if (g.blocks.size() > 1) return "each block is a proper stable normal subgroup";
    return std::visit(
        [](const auto& b) -> std::string {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, model::ShiftBlock>) return "finite group " + finite::iso_label(*b.group).display() + " is not simple";
            else if constexpr (std::is_same_v<B, model::LinearBlock>) return "char poly " + b.charpoly.to_string() + " is not irreducible over Q_" + std::to_string(b.p);
            else return "centre Z is a proper stable normal subgroup";
        },
        g.blocks.front());
}

/// Fills the simplicity and label fields; returns the label when simple.
std::optional<theorems::ClassificationLabel> classification(Context& cx, const model::ContractionGroup& g, ordered_json& j)
{
    bool simple = true;
    if (cx.opts.fault != Fault::ClaimSimple) {
        try {
            simple = theorems::is_simple_contraction(g, cx.precision);
        } catch (const theorems::UncertifiedError& e) {
            j["simple"] = "uncertified";
            j["reason"] = e.what();
            ++cx.tally.uncertified;
            return std::nullopt;
        }
    }
    if (!simple) {
        j["simple"] = false;
        j["reason"] = non_simple_reason(g);
        return std::nullopt;
    }
    try {
        auto label = theorems::classify_simple(g, cx.precision);
        j["simple"] = true;
        j["label"] = label.to_string();
        if (const auto* t = std::get_if<series::TorsionFactor>(&label.kind)) {
            j["kind"] = "torsion";
            j["order"] = t->label.order;
            j["abelian"] = t->label.abelian;
        } else {
            const auto& l = std::get<theorems::PadicLabel>(label.kind);
            j["kind"] = "torsion_free";
            j["p"] = l.p;
            j["polynomial"] = l.f.to_string();
            j["certification"] = padic::to_string(l.certification);
            j["companion"] = l.companion.to_string();
        }
        return label;
    } catch (const theorems::NotSimple& e) {
        j["simple"] = "error";
        j["error"] = e.what();
        ++cx.tally.failures;
        return std::nullopt;
    }
}

ordered_json structure_report(Context& cx, const model::ContractionGroup& g, std::uint64_t seed)
{
    ordered_json j;
    auto rep = theorems::verify_structure(g, cx.opts.samples, seed, cx.opts.max_root);
    j["torsion_part"] = theorems::torsion_part(g).to_string();
    j["torsion_blocks"] = rep.torsion_blocks;
    j["divisible"] = ordered_json::array();
    for (const auto& part : rep.divisible) {
        ordered_json d;
        d["p"] = part.p;
        d["blocks"] = part.blocks;
        d["group"] = part.group.to_string();
        j["divisible"].push_back(d);
    }
    j["t_alpha"] = contractio::to_string(rep.t_alpha);
    j["exponent"] = contractio::to_string(rep.exponent);
    j["samples"] = rep.samples;
    j["max_root"] = rep.max_root;
    ordered_json checks;
    cx.tally.record(checks, "exponent_divides_t_alpha", rep.exponent_divides_t_alpha);
    cx.tally.record(checks, "torsion_killed", rep.torsion_killed);
    cx.tally.record(checks, "roots_exist", rep.roots_exist);
    cx.tally.record(checks, "roots_unique", rep.roots_unique);
    cx.tally.record(checks, "recombines", rep.recombines);
    cx.tally.record(checks, "dichotomy", rep.dichotomy);
    j["checks"] = checks;
    return j;
}

bool heisenberg_power_ok(const model::HeisenbergBlock& h, std::uint64_t seed)
{
    model::ContractionGroup g{{h}};
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 5; ++trial) {
        model::Element x = model::random_element(g, rng);
        model::Element acc = model::identity(g);
        for (long n = 0; n <= 20; ++n) {
            if (std::get<model::HeisElem>(acc.parts[0]) != model::heisenberg_power(std::get<model::HeisElem>(x.parts[0]), n))
                return false;
            acc = model::multiply(g, acc, x);
        }
    }
    return true;
}

ordered_json verify_report(Context& cx, const model::ContractionGroup& g, const series::GroupAnalysis& ga, std::uint64_t seed)
{
    ordered_json j;
    auto canonical = series::canonical_series(ga);
    for (auto mode : modes(cx.opts)) {
        ordered_json m;
        auto base = build_series(cx, ga, mode, std::nullopt);
        if (!base.certified()) ++cx.tally.uncertified;
        cx.tally.record(m, "chain_valid", series::validate_chain(ga, base.chain, mode));
        cx.tally.record(m, "length_bound", series::check_length_bound(ga, base));
        cx.tally.record(m, "module_product", series::check_module_multiplicativity(ga, base));
        bool jh = true;
        for (std::uint64_t k = 0; k < 3; ++k) {
            auto r = series::jordan_holder_verify(base, build_series(cx, ga, mode, seed + k));
            jh = jh && r.equal;
        }
        cx.tally.record(m, "jordan_holder", jh);
        auto refined = series::refine(ga, canonical.chain, mode, seed);
        cx.tally.record(m, "refine_canonical", series::validate_chain(ga, refined.chain, mode) &&
                                                   series::jordan_holder_verify(base, refined).equal);
        j[series::to_string(mode)] = m;
    }
    cx.tally.record(j, "canonical_special", series::check_special(ga, canonical.chain));
    bool modules = true;
    bool oracle = true;
    bool heis = true;
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        const auto& b = g.blocks[i];
        modules = modules && model::block_delta(b) == model::lattice_index_oracle(b);
        if (const auto* l = std::get_if<model::LinearBlock>(&b)) oracle = oracle && l->oracle.verdict == model::OracleVerdict::Contractive;
        if (const auto* h = std::get_if<model::HeisenbergBlock>(&b)) heis = heis && heisenberg_power_ok(*h, seed + i);
    }
    cx.tally.record(j, "block_modules", modules);
    cx.tally.record(j, "contractivity_oracle", oracle);
    cx.tally.record(j, "heisenberg_power", heis);

    ordered_json cls;
    auto label = classification(cx, g, cls);
    j["simple"] = cls["simple"];
    if (label) {
        bool torsion_block = std::holds_alternative<model::ShiftBlock>(g.blocks.front());
        cx.tally.record(j, "dichotomy", label->torsion() != label->torsion_free() && label->torsion() == torsion_block);
        if (const auto* l = std::get_if<theorems::PadicLabel>(&label->kind)) {
            auto again = theorems::classify_simple(model::ContractionGroup{{model::make_linear(l->p, l->companion)}}, cx.precision);
            cx.tally.record(j, "companion_round_trip", std::get<theorems::PadicLabel>(again.kind).f.poly == l->f.poly);
        }
    }
    j["structure"] = structure_report(cx, g, seed)["checks"];
    return j;
}

ordered_json group_report(Context& cx, const GroupDef& def, std::size_t index)
{
    ordered_json j;
    const auto& g = def.group;
    std::uint64_t seed = group_seed(cx.seed, index);
    j["definition"] = g.to_string();
    j["blocks"] = g.blocks.size();
    if (cx.opts.command == Command::Check) {
        j["valid"] = true;
        return j;
    }
    if (cx.opts.command == Command::Classify) {
        classification(cx, g, j);
        return j;
    }
    if (cx.opts.command == Command::Structure) {
        j.update(structure_report(cx, g, seed));
        return j;
    }

    std::optional<series::GroupAnalysis> ga;
    try {
        ga.emplace(g, cx.precision);
    } catch (const padic::NotSquarefree& e) {
        j["error"] = std::string("unsupported: ") + e.what();
        ++cx.tally.validation;
        return j;
    } catch (const TooLarge& e) {
        j["error"] = std::string("unsupported: ") + e.what();
        ++cx.tally.validation;
        return j;
    }

    if (cx.opts.command == Command::Verify) {
        j["properties"] = verify_report(cx, g, *ga, seed);
        return j;
    }

    j["delta"] = contractio::to_string(model::module_delta(g));
    j["delta_factored"] = factored(model::module_delta_factored(g));
    ordered_json s;
    for (auto mode : modes(cx.opts)) s[series::to_string(mode)] = series_report(cx, *ga, mode, seed);
    j["series"] = s;
    auto canonical = series::canonical_series(*ga);
    ordered_json c;
    c["chain"] = ordered_json::array();
    for (const auto& d : canonical.chain) c["chain"].push_back(series::describe(*ga, d));
    cx.tally.record(c, "special", series::check_special(*ga, canonical.chain));
    j["canonical"] = c;
    ordered_json cls;
    classification(cx, g, cls);
    j["classification"] = cls;
    j["structure"] = structure_report(cx, g, seed);
    return j;
}

int exit_code(const Options& opts, const Tally& t)
{
    if (t.validation > 0) return kValidation;
    if (t.failures > 0) return kPropertyFailure;
    if (opts.strict && t.uncertified > 0) return kUncertified;
    return kOk;
}

std::string result_name(int code)
{
    switch (code) {
    case kOk: return "ok";
    case kValidation: return "validation-error";
    case kPropertyFailure: return "property-failure";
    case kUncertified: return "uncertified";
    }
    return "?";
}

void render(const ordered_json& j, const std::string& key, std::ostringstream& out)
{
    if (j.is_object()) {
        if (j.empty()) out << key << " = {}\n";
        for (const auto& [k, v] : j.items()) render(v, key.empty() ? k : key + "." + k, out);
    } else if (j.is_array()) {
        bool scalars = std::all_of(j.begin(), j.end(), [](const ordered_json& v) { return v.is_primitive(); });
        if (scalars) {
            out << key << " = [";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << ", ";
                out << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
            }
            out << "]\n";
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) render(j[i], key + "." + std::to_string(i), out);
        }
    } else {
        out << key << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

std::string render_text(const ordered_json& report)
{
    std::ostringstream out;
    render(report, "", out);
    return out.str();
}

RunResult run_command(const Options& opts, std::string_view source)
{
    RunResult res;
    ordered_json& r = res.report;
    r["command"] = to_string(opts.command);
    r["source"] = opts.source_name;

    Document doc;
    try {
        doc = parse(source);
    } catch (const SyntaxError& e) {
        r["error"] = {{"kind", "syntax"}, {"line", e.pos.line}, {"column", e.pos.column}, {"expected", e.expected}, {"found", e.found},
                      {"message", e.what()}};
    } catch (const ValidationError& e) {
        r["error"] = {{"kind", "validation"}, {"line", e.pos.line}, {"column", e.pos.column}, {"message", e.what()}};
    }
    if (r.contains("error")) {
        res.exit_code = kValidation;
        r["summary"] = {{"result", result_name(res.exit_code)}, {"exit", res.exit_code}};
    } else {
        Context cx{opts, opts.precision.value_or(doc.precision.value_or(padic::kDefaultPrecision)),
                   opts.seed.value_or(doc.seed.value_or(kDefaultSeed)), {}};
        r["precision"] = cx.precision;
        if (opts.command != Command::Check && opts.command != Command::Classify) r["seed"] = cx.seed;
        if (opts.command == Command::Analyze || opts.command == Command::Verify)
            r["mode"] = opts.mode ? series::to_string(*opts.mode) : "alpha, alpha_normal";
        if (opts.command == Command::Structure || opts.command == Command::Verify) r["samples"] = opts.samples;
        ordered_json groups = ordered_json::object();
        for (std::size_t i = 0; i < doc.groups.size(); ++i) groups[doc.groups[i].name] = group_report(cx, doc.groups[i], i);
        r["groups"] = groups;
        res.exit_code = exit_code(opts, cx.tally);
        r["summary"] = {{"groups", doc.groups.size()},
                        {"checks", cx.tally.checks},
                        {"failures", cx.tally.failures},
                        {"unsupported", cx.tally.validation},
                        {"uncertified", cx.tally.uncertified},
                        {"result", result_name(res.exit_code)},
                        {"exit", res.exit_code}};
    }
    res.output = opts.format == Format::Structured ? r.dump(2) + "\n" : render_text(r);
    return res;
}

}  // namespace contractio::cli
