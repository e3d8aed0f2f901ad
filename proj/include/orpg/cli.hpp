#pragma once

#include <string>
#include <vector>

#include "orpg/config.hpp"
#include "orpg/resonator.hpp"

namespace orpg {

// Plot-ready table: comment lines, a header, and preformatted cells. Floats
// are rendered with 17 significant digits so reruns are byte-identical.
struct Table {
    std::string command;
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string format_double(double v);

struct RunOutcome {
    int exit_code = 0;       // 0 ok, 2 validation error, 3 solver failure
    std::string output;      // rendered artifact
    std::string error;       // diagnostic for nonzero exit codes
};

extern const std::vector<std::string> kCommands;

/// Executes one command against a parsed config. format is "csv" or "json";
/// workers bounds scan concurrency (0 = automatic).
RunOutcome run_command(const std::string& command, const KeyValueDocument& doc,
                       const std::string& format, int workers);

/// Shared config builders (also used by tests).
ResonatorConfig resonator_from(const KeyValueDocument& doc);
MirrorProfile profile_from(const KeyValueDocument& doc);

/// Full command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace orpg
