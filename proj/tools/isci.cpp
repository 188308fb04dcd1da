#include <isci/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char ** argv)
{
    isci::RunConfig config;
    std::size_t max_nodes = config.limits.max_nodes;
    double timeout_seconds = static_cast<double>(config.limits.timeout.count()) / 1000.0;
    std::size_t oracle = 3;

    CLI::App app{"Decision procedure for intuitionistic sentential calculus with identity"};
    app.add_option("command", config.command, "prove | decide | countermodel | check-proof | check-model | exsub")
        ->required()
        ->check(CLI::IsMember({"prove", "decide", "countermodel", "check-proof", "check-model", "exsub"}));
    app.add_option("input", config.input, "formula text, document path, or - for stdin")->required();
    app.add_option("--format", config.format, "text | json | dot | latex")
        ->check(CLI::IsMember({"text", "json", "dot", "latex"}));
    app.add_option("--max-nodes", max_nodes, "search node cap");
    app.add_option("--timeout", timeout_seconds, "wall-clock cap in seconds");
    auto * oracle_opt = app.add_option("--oracle", oracle, "cross-check with the bounded model search (default 3 worlds)")
                            ->expected(0, 1)
                            ->default_str("3");
    app.add_flag("--quiet", config.quiet, "print the verdict line only");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : isci::exit_input_error;
    }

    config.limits.max_nodes = max_nodes;
    config.limits.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_seconds * 1000.0));
    if (oracle_opt->count() > 0)
        config.oracle_worlds = oracle;
    return isci::run(config, std::cin, std::cout, std::cerr);
}
