#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pipeline.hpp"
#include "trihopf/errors.hpp"

using namespace trihopf;
using namespace trihopf::cli;

namespace {

struct Flags {
    std::string config, preset, out;
    std::vector<std::string> lambdas;
    int max_degree = -1;
    bool json = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON family-datum config");
    sub->add_option("--preset", f.preset, "case1, case2 or case3");
    sub->add_option("--lambda", f.lambdas, "lifting parameters \"l1,l2,l3\" (repeatable)");
    sub->add_option("--out", f.out, "write the report to this path");
    sub->add_flag("--json", f.json, "machine-readable report");
}

RunConfig resolve(const std::string& command, const Flags& f) {
    RunConfig cfg;
    cfg.command = command;
    if (!f.preset.empty()) apply_preset(cfg, f.preset);
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw ParseError("cannot read config '" + f.config + "'", 0);
        std::stringstream buf;
        buf << in.rdbuf();
        merge_config_text(cfg, buf.str(), f.config);
    }
    for (const auto& l : f.lambdas) cfg.lambdas.push_back(parse_lambda(l));
    if (f.max_degree >= 0) cfg.max_degree = f.max_degree;
    if (!f.out.empty()) cfg.out = f.out;
    cfg.json = f.json;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangular Hopf algebras A(G,V,u,B): build, verify and compare"};
    app.require_subcommand(1);
    Flags flags;
    for (const char* name : {"build", "verify", "invariants", "moduli", "cohomology"}) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, flags);
        if (std::string(name) == "cohomology") sub->add_option("--max-degree", flags.max_degree, "highest degree");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParseError;
    }

    try {
        const RunConfig cfg = resolve(app.get_subcommands().front()->get_name(), flags);
        const Outcome o = run(cfg);
        const std::string body = cfg.json ? o.report.dump(2) + "\n" : o.text;
        if (cfg.out) {
            std::ofstream out(*cfg.out);
            if (!out) throw ParseError("cannot write '" + *cfg.out + "'", 0);
            out << body;
        } else {
            std::cout << body;
        }
        return o.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kParseError;
    } catch (const CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return kCapacityError;
    } catch (const InternalError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerificationFailure;
    }
}
