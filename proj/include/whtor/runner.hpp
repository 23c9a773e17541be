#ifndef WHTOR_RUNNER_HPP
#define WHTOR_RUNNER_HPP

#include "whtor/document.hpp"

namespace whtor {

enum class ExitStatus : int {
    Ok = 0,
    ParseFailure = 2,
    InvariantViolated = 3,
    StuckResult = 4,
    VerificationFailure = 5,
};

struct TaskReport {
    std::string op, subject;
    bool pass = true;
    bool stuck = false;
    std::vector<std::string> lines;
    // key/value payload in deterministic (insertion) order
    std::vector<std::pair<std::string, std::string>> fields;
};

struct VerdictReport {
    std::string command;
    unsigned long long seed = 0;
    std::vector<TaskReport> tasks;
    ExitStatus status = ExitStatus::Ok;

    std::string text() const;
    std::string json() const;
};

// Executes a subcommand against a parsed document.  `verify` runs the builtin
// identity suite followed by every task in the document; the other
// subcommands run the document tasks of the matching kind (an empty selection
// is a valid no-op run).
VerdictReport run_command(const ModelDocument& doc, const std::string& subcommand,
                          unsigned long long seed);

}  // namespace whtor

#endif
