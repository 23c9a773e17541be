#include <iostream>

#include "CLI11.hpp"
#include "whtor/runner.hpp"

namespace {

constexpr unsigned long long kDefaultSeed = 42;

int run(const std::string& subcommand, const std::string& path, unsigned long long seed,
        bool json) {
    using namespace whtor;
    try {
        ModelDocument doc = parse_document_file(path);
        VerdictReport report = run_command(doc, subcommand, seed);
        std::cout << (json ? report.json() : report.text());
        return static_cast<int>(report.status);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return static_cast<int>(ExitStatus::ParseFailure);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return static_cast<int>(ExitStatus::InvariantViolated);
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return static_cast<int>(ExitStatus::InvariantViolated);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Whitehead torsion calculator for fibering and duality obstructions"};
    app.require_subcommand(1);

    std::string path;
    unsigned long long seed = kDefaultSeed;
    bool json = false;

    std::vector<CLI::App*> subs;
    for (const char* name : {"torsion", "invariants", "rho", "glue", "s1", "transfer", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("file", path, "model document")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "RNG seed for randomized identity suites");
        sub->add_flag("--json", json, "machine-readable report");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 1;
    }
    return run(app.get_subcommands().front()->get_name(), path, seed, json);
}
