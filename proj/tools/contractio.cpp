// contractio: batch analysis of contraction groups described in .grp files.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "contractio/cli/commands.hpp"

int main(int argc, char** argv)
{
    using namespace contractio;

    CLI::App app{"Composition series, classification and structure of contraction groups"};
    std::string command;
    std::string file;
    std::string mode;
    std::string format = "text";
    std::optional<long> precision;
    std::optional<std::uint64_t> seed;
    cli::Options opts;

    app.add_option("command", command, "check | analyze | classify | structure | verify")
        ->required()
        ->check(CLI::IsMember({"check", "analyze", "classify", "structure", "verify"}));
    app.add_option("file", file, "group definition file (- for stdin)")->required();
    app.add_option("--mode", mode, "series mode; both when omitted")
        ->check(CLI::IsMember({"alpha", "alpha-normal", "alpha_normal"}));
    app.add_option("--precision", precision, "p-adic working precision N (default 32)")->check(CLI::Range(1L, 100000L));
    app.add_option("--seed", seed, "random seed (default 7)");
    app.add_option("--samples", opts.samples, "sampled elements per group for structure checks")
        ->check(CLI::Range(0L, 1000000L));
    app.add_option("--max-root", opts.max_root, "largest n for the n-th root checks")->check(CLI::Range(1L, 10000L));
    app.add_flag("--strict", opts.strict, "exit 3 when some result is uncertified");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "structured"}));

    CLI11_PARSE(app, argc, argv);

    opts.command = *cli::parse_command(command);
    if (!mode.empty()) opts.mode = series::parse_mode(mode);
    opts.precision = precision;
    opts.seed = seed;
    opts.format = format == "structured" ? cli::Format::Structured : cli::Format::Text;

    std::ostringstream text;
    if (file == "-") {
        text << std::cin.rdbuf();
        opts.source_name = "<stdin>";
    } else {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            std::cerr << "contractio: cannot read " << file << "\n";
            return cli::kValidation;
        }
        text << in.rdbuf();
        auto slash = file.find_last_of('/');
        opts.source_name = slash == std::string::npos ? file : file.substr(slash + 1);
    }

    try {
        auto res = cli::run_command(opts, text.str());
        std::cout << res.output;
        if (res.report.contains("error")) std::cerr << "contractio: " << opts.source_name << ": " << res.report["error"]["message"].get<std::string>() << "\n";
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "contractio: " << e.what() << "\n";
        return cli::kValidation;
    }
}
