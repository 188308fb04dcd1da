#pragma once

#include <isci/prover.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace isci {

enum ExitCode : int {
    exit_proved = 0,
    exit_refuted = 1,
    exit_input_error = 2,
    exit_resources = 3,
    exit_internal = 4,
};

struct RunConfig {
    std::string command; // prove | decide | countermodel | check-proof | check-model | exsub
    std::string input;   // inline text, a file path (check-*), or "-" for stdin
    std::string format = "text"; // text | json | dot | latex
    Limits limits;
    std::optional<std::size_t> oracle_worlds;
    bool quiet = false;
};

int run(const RunConfig & config, std::istream & in, std::ostream & out, std::ostream & err);

} // namespace isci
