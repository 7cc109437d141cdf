// xmod command-line front end. Reads a spec file, runs one command through
// the C interface and prints the JSON report.

#include "xmod/xmod.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct Flags {
    std::string spec_path;
    std::optional<std::string> coeff;
    std::optional<int> max_degree;
    std::optional<std::uint64_t> budget;
    std::optional<std::string> normalized;
    unsigned threads = 1;
    std::string out;
    bool no_timings = false;
    bool compact = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("spec", f.spec_path, "Spec file ('-' reads standard input)")->required();
    sub->add_option("--coeff", f.coeff, "Coefficients: Z, Q or Fp (e.g. F2)");
    sub->add_option("--max-degree", f.max_degree, "Highest degree (or level) to compute")->check(CLI::Range(0, 4096));
    sub->add_option("--budget", f.budget, "Size cap for cochain groups and matrices")->check(CLI::PositiveNumber);
    sub->add_option("--normalized", f.normalized, "Use normalized cochains")->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--out", f.out, "Write the report here instead of standard output");
    sub->add_flag("--no-timings", f.no_timings, "Omit wall-clock timings from the report");
    sub->add_flag("--compact", f.compact, "Single-line JSON");
}

std::optional<std::string> read_all(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crossed modules, their classifying spaces and cohomology"};
    app.set_version_flag("--version", std::string("xmod ") + xmod_version());
    app.require_subcommand(1);

    Flags flags;
    const char* commands[][2] = {
        {"validate", "Check the declared objects and summarize each crossed module"},
        {"nerve", "Level sizes, simplicial identities and horn fillers of the nerve"},
        {"cohomology", "Cohomology of the classifying space of a crossed module"},
        {"group-cohomology", "Cohomology of a group with coefficients in a module"},
        {"e2-page", "E2 page for a crossed module with arithmetic cokernel"},
        {"structural", "Closed-form Poincare series for structured cases"},
    };
    for (auto& [name, help] : commands)
        add_common(app.add_subcommand(name, help), flags);

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    auto text = read_all(flags.spec_path);
    if (!text) {
        std::cerr << "xmod: cannot read " << flags.spec_path << "\n";
        return XMOD_ERR_INPUT;
    }

    xmod_options options;
    xmod_options_init(&options);
    if (flags.coeff)
        options.coeff = flags.coeff->c_str();
    if (flags.max_degree)
        options.max_degree = *flags.max_degree;
    if (flags.budget)
        options.budget = *flags.budget;
    if (flags.normalized)
        options.normalized = *flags.normalized == "on";
    options.threads = flags.threads;

    xmod_report* raw = nullptr;
    xmod_run_text(text->c_str(), command.c_str(), &options, &raw);
    if (!raw) {
        std::cerr << "xmod: " << xmod_last_error() << "\n";
        return XMOD_ERR_INVARIANT;
    }
    std::unique_ptr<xmod_report, void (*)(xmod_report*)> report(raw, xmod_report_free);
    const int code = xmod_report_exit_code(report.get());
    if (code != XMOD_OK)
        std::cerr << flags.spec_path << ": " << xmod_last_error() << "\n";
    if (flags.no_timings)
        xmod_report_drop_timings(report.get());
    const char* json = xmod_report_json(report.get(), flags.compact ? -1 : 2);

    if (flags.out.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream out(flags.out, std::ios::binary);
        out << json << "\n";
        if (!out) {
            std::cerr << "xmod: cannot write " << flags.out << "\n";
            return XMOD_ERR_INPUT;
        }
    }
    return code;
}
