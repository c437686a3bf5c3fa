#include "frac/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "frac/errors.hpp"
#include "frac/function_spec.hpp"
#include "frac/grid.hpp"
#include "frac/laws.hpp"
#include "frac/monomial.hpp"

namespace frac::cli {
namespace {

constexpr std::size_t kExactSamples = 256;  // intervals, i.e. 257 rows

struct EvalOptions {
    std::string op;
    double alpha = 0.0;
    double beta = 0.0;
    double a = 0.0;
    double b = 1.0;
    std::string func;
    std::string engine = "exact";
    std::size_t grid = 256;
    std::string out_path;
    bool skip_singular = false;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::size_t draws = 1000;
    std::string laws;
    std::string out_dir;
};

struct ConvergenceOptions {
    std::string op;
    double alpha = 0.0;
    double beta = 0.0;
    std::string func;
    std::string grids = "64,128,256,512";
};

// Bad flags or arguments; maps to kUsageError.
class ConfigError : public Error {
public:
    using Error::Error;
};

const std::map<std::string, OperatorKind> kOperators = {
    {"integral", OperatorKind::kIntegral},
    {"rl", OperatorKind::kRiemannLiouville},
    {"caputo", OperatorKind::kCaputo},
    {"hilfer", OperatorKind::kHilfer},
};

std::string number(double x) { return fmt::format("{:.17g}", x); }

OperatorParams operator_params(const std::string& op, double alpha, double beta) {
    OperatorParams params;
    params.kind = kOperators.at(op);
    params.alpha = alpha;
    params.beta = beta;
    switch (params.kind) {
        case OperatorKind::kIntegral:
            if (!(alpha > 0.0)) throw ConfigError("--alpha must be > 0 for integral");
            break;
        case OperatorKind::kRiemannLiouville:
        case OperatorKind::kHilfer:
            if (!(alpha > 0.0 && alpha <= 1.0)) {
                throw ConfigError("--alpha must lie in (0, 1] for derivatives");
            }
            break;
        case OperatorKind::kCaputo:
            if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("--alpha must lie in (0, 1) for caputo");
            break;
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw ConfigError("--beta must lie in [0, 1]");
    }
    return params;
}

// Writes to the named file, or to `out` when the path is empty or "-".
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file " + path);
    }
    file << text;
}

int run_eval(const EvalOptions& opt, std::ostream& out) {
    if (!(opt.b > opt.a)) {
        throw ConfigError("--b must be greater than --a");
    }
    const OperatorParams params = operator_params(opt.op, opt.alpha, opt.beta);
    const MonomialSeries y = parse_function_spec(opt.func, opt.a);

    std::string csv;
    if (opt.engine == "exact") {
        const MonomialSeries result = apply_exact(y, params);
        csv = "t,value\n";
        const double h = (opt.b - opt.a) / static_cast<double>(kExactSamples);
        for (std::size_t i = 0; i <= kExactSamples; ++i) {
            const double t = i == kExactSamples ? opt.b : opt.a + static_cast<double>(i) * h;
            double value = 0.0;
            try {
                value = evaluate(result, t);
            } catch (const SingularityError&) {
                if (opt.skip_singular) {
                    continue;
                }
                throw;
            }
            csv += number(t) + "," + number(value) + "\n";
        }
    } else {
        if (opt.grid < 8) {
            throw ConfigError("--grid must be >= 8");
        }
        const GridFunction result = apply_grid(sample(y, opt.b, opt.grid), params);
        csv = "t,value,reliable\n";
        for (std::size_t j = 0; j <= result.intervals(); ++j) {
            csv += number(result.node(j)) + "," + number(result[j]) + "," +
                   (result.reliable(j) ? "1" : "0") + "\n";
        }
    }
    emit(csv, opt.out_path, out);
    return kOk;
}

std::vector<LawId> selected_laws(const std::string& list) {
    if (list.empty()) {
        return all_laws();
    }
    std::vector<LawId> laws;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto law = parse_law(name);
        if (!law) {
            throw ConfigError("unknown law '" + name + "'");
        }
        laws.push_back(*law);
    }
    return laws;
}

int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    DrawConfig cfg;
    cfg.seed = opt.seed;
    cfg.draws = opt.draws;
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const std::vector<LawId> laws = selected_laws(opt.laws);
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
    }
    bool all_pass = true;
    for (LawId law : laws) {
        const LawReport report = run_law(law, cfg);
        all_pass = all_pass && report.pass;
        const std::string doc = report_to_json(report).dump(2) + "\n";
        if (opt.out_dir.empty()) {
            out << doc;
        } else {
            emit(doc, (std::filesystem::path(opt.out_dir) / (std::string(law_name(law)) + ".json")).string(),
                 out);
        }
        fmt::print(err, "{}: {} (max residual {:.3e}, tolerance {:.0e})\n", law_name(law),
                   report.pass ? "pass" : "FAIL", report.max_residual, report.tolerance);
    }
    return all_pass ? kOk : kLawFailed;
}

std::vector<std::size_t> parse_grid_list(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long value = std::stoul(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            sizes.push_back(value);
        } catch (const std::exception&) {
            throw ConfigError("--grids expects a comma separated list of integers, got '" + text + "'");
        }
    }
    return sizes;
}

int run_convergence(const ConvergenceOptions& opt, std::ostream& out) {
    const OperatorParams params = operator_params(opt.op, opt.alpha, opt.beta);
    const MonomialSeries y = parse_function_spec(opt.func);
    const std::vector<std::size_t> sizes = parse_grid_list(opt.grids);
    std::string csv = "N,max_error,relative_error,order\n";
    for (const ConvergenceRow& row : convergence_study(y, params, sizes)) {
        csv += fmt::format("{},{},{},{}\n", row.intervals, number(row.max_error),
                           number(row.relative_error),
                           std::isnan(row.order) ? std::string() : number(row.order));
    }
    out << csv;
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Riemann-Liouville, Caputo and Hilfer operators on power series"};
    app.require_subcommand(1);

    EvalOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Apply an operator and write CSV");
    eval_cmd->add_option("--op", eval.op, "integral | rl | caputo | hilfer")
        ->required()
        ->check(CLI::IsMember({"integral", "rl", "caputo", "hilfer"}));
    eval_cmd->add_option("--alpha", eval.alpha, "Order")->required();
    eval_cmd->add_option("--beta", eval.beta, "Hilfer type in [0, 1]");
    eval_cmd->add_option("--a", eval.a, "Left endpoint (base point)");
    eval_cmd->add_option("--b", eval.b, "Right endpoint");
    eval_cmd->add_option("--func", eval.func, "poly:<c1>@<m1>[,<c2>@<m2>...]")->required();
    eval_cmd->add_option("--engine", eval.engine, "exact | grid")
        ->check(CLI::IsMember({"exact", "grid"}));
    eval_cmd->add_option("--grid", eval.grid, "Grid intervals N (grid engine)");
    eval_cmd->add_option("--out", eval.out_path, "Output CSV path (default stdout)");
    eval_cmd->add_flag("--skip-singular", eval.skip_singular, "Drop rows where the result is unbounded");

    VerifyOptions verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the law checks and write JSON reports");
    verify_cmd->add_option("--seed", verify.seed, "Random seed");
    verify_cmd->add_option("--draws", verify.draws, "Draws per law");
    verify_cmd->add_option("--laws", verify.laws,
                           "Comma separated subset of com,com1,com2,proposition,proof-chain,"
                           "caputo-endpoint");
    verify_cmd->add_option("--out-dir", verify.out_dir, "Directory for <law>.json (default stdout)");

    ConvergenceOptions conv;
    CLI::App* conv_cmd = app.add_subcommand("convergence", "Grid error against the exact backend");
    conv_cmd->add_option("--op", conv.op, "integral | rl | caputo | hilfer")
        ->required()
        ->check(CLI::IsMember({"integral", "rl", "caputo", "hilfer"}));
    conv_cmd->add_option("--alpha", conv.alpha, "Order")->required();
    conv_cmd->add_option("--beta", conv.beta, "Hilfer type in [0, 1]");
    conv_cmd->add_option("--func", conv.func, "poly:<c1>@<m1>[,<c2>@<m2>...]")->required();
    conv_cmd->add_option("--grids", conv.grids, "Comma separated grid sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsageError;
    }

    try {
        if (*eval_cmd) return run_eval(eval, out);
        if (*verify_cmd) return run_verify(verify, out, err);
        return run_convergence(conv, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

}  // namespace frac::cli
