#include <iostream>

#include <CLI11.hpp>

#include "qfb/suites.hpp"

using namespace qfb;

namespace {

int emit(const Report& rep, bool as_json) {
    std::cout << (as_json ? rep.to_json() : rep.to_text());
    return std::min(rep.failures(), 125);
}

int fail_out(const std::string& msg, bool as_json) {
    Report rep;
    rep.add("load", "definition file", false, msg);
    return emit(rep, as_json);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of framed quantum principal bundle instances"};
    app.require_subcommand(1);

    std::string file, suite = "all", expr_text;
    bool as_json = false;
    uint64_t seed = 0;
    int samples = 0;
    size_t bound = 0;

    auto* validate = app.add_subcommand("validate", "schema and consistency checks");
    validate->add_option("file", file)->required();
    validate->add_flag("--json", as_json, "machine-readable report");

    auto* run = app.add_subcommand("run", "run a named verification suite");
    run->add_option("file", file)->required();
    run->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
    run->add_option("--bound", bound, "override the regularity/maximality bound");
    run->add_option("--samples", samples, "override the sample count");
    run->add_option("--seed", seed, "override the random seed");
    run->add_flag("--json", as_json, "machine-readable report");

    auto* nf = app.add_subcommand("nf", "normal-form a parsed expression");
    nf->add_option("file", file)->required();
    nf->add_option("expr", expr_text)->required();
    std::string algebra = "auto";
    nf->add_option("--algebra", algebra, "group | bundle | auto");

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<Instance> inst;
    try {
        inst = load_instance(file);
    } catch (const std::exception& e) {
        return fail_out(e.what(), as_json);
    }

    if (validate->parsed()) {
        try {
            return emit(run_suite(*inst, "validate"), as_json);
        } catch (const std::exception& e) {
            return fail_out(e.what(), as_json);
        }
    }

    if (run->parsed()) {
        if (seed) inst->checks.seed = seed;
        if (samples) inst->checks.samples = samples;
        if (bound) {
            inst->checks.regularity_bound = bound;
            inst->checks.maximality_bound = bound;
        }
        try {
            return emit(run_suite(*inst, suite), as_json);
        } catch (const std::exception& e) {
            return fail_out(e.what(), as_json);
        }
    }

    if (nf->parsed()) {
        try {
            const PresentedAlgebra* alg = nullptr;
            if (algebra == "group") {
                alg = inst->G->alg.get();
            } else if (algebra == "bundle") {
                alg = inst->bundle().B.get();
            } else {
                // resolve by trying the bundle first, then the group
                try {
                    NcPoly p = parse_element(*inst->bundle().B, expr_text, &inst->values);
                    std::cout << p.str() << "\n";
                    return 0;
                } catch (const ParseError&) {
                    alg = inst->G->alg.get();
                }
            }
            NcPoly p = parse_element(*alg, expr_text, &inst->values);
            std::cout << p.str() << "\n";
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}
