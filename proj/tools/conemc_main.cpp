// Command-line front end. Usage:
//
//   conemc <verb> [--key=value ...] [--config <file>]
//
// Verbs: solve, radial, extract, check, export. Flags mirror the config keys
// documented in conemc/config.hpp; a --config file merges with flags, flags
// winning. Exit codes: 0 all checks pass, 1 config/solver failure, 2 check
// failure.

#include <iostream>
#include <string>
#include <vector>

#include "conemc/config.hpp"
#include "conemc/io.hpp"
#include "conemc/runner.hpp"

namespace {

void print_usage(std::ostream& out) {
    out << "usage: conemc <solve|radial|extract|check|export> [--key=value ...] [--config file]\n"
           "\n"
           "  solve    march the Cauchy problem for A(u), H and export the surface\n"
           "  radial   rotationally symmetric benchmark (A = -0.25 closed form, A = 0.25 ODE)\n"
           "  extract  recover the canonical height function A(u) from a surface csv\n"
           "  check    run the diagnostics battery on a surface csv\n"
           "  export   convert a surface csv to OBJ (and optionally graph csv)\n"
           "\n"
           "common keys: A, A_cos, A_sin, H, n, dv, v_max, filter_strength,\n"
           "residual_budget, p0, out, surface, obj, graph_csv, tol_*\n"
           "\n"
           "examples:\n"
           "  conemc solve --A=-0.25 --H=1 --out=run1 --obj=true\n"
           "  conemc solve --A_cos=0.25,0.1 --v_max=0.3 --out=run2\n"
           "  conemc extract --surface=run2/surface.csv --out=run2\n"
           "  conemc check --surface=run1/surface.csv --H=1 --out=run1_check\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        print_usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? 1 : 0;
    }

    const std::string verb = args[0];
    if (verb != "solve" && verb != "radial" && verb != "extract" && verb != "check" &&
        verb != "export") {
        std::cerr << "unknown verb '" << verb << "'\n\n";
        print_usage(std::cerr);
        return 1;
    }

    // compose: config-file text first, then the verb, then flags (last wins)
    std::string file_text;
    std::string flag_text;
    for (size_t i = 1; i < args.size(); ++i) {
        std::string arg = args[i];
        if (arg.rfind("--", 0) != 0) {
            std::cerr << "expected --key=value, got '" << arg << "'\n";
            return 1;
        }
        arg = arg.substr(2);
        std::string key = arg;
        std::string value;
        const size_t eq = arg.find('=');
        if (eq != std::string::npos) {
            key = arg.substr(0, eq);
            value = arg.substr(eq + 1);
        } else {
            if (i + 1 >= args.size()) {
                std::cerr << "flag --" << key << " needs a value\n";
                return 1;
            }
            value = args[++i];
        }
        if (key == "config") {
            try {
                file_text = conemc::read_text_file(value);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        } else {
            flag_text += key + "=" + value + "\n";
        }
    }
    const std::string text = file_text + "\nmode=" + verb + "\n" + flag_text;

    conemc::RunConfig cfg;
    try {
        cfg = conemc::parse_config(text);
    } catch (const conemc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const conemc::RunResult result = conemc::run(cfg);
    std::cout << result.report.render();
    for (const auto& f : result.files_written) std::cout << "wrote: " << f << "\n";
    return result.exit_code;
}
