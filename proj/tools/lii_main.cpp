#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lii/cli.hpp"

namespace {

lii::Dims parse_dims(const std::string& text) {
    lii::Dims dims;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        std::size_t used = 0;
        const unsigned long d = std::stoul(item, &used);
        if (used != item.size() || d == 0) throw std::invalid_argument("bad --dims entry '" + item + "'");
        dims.push_back(d);
    }
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    using lii::cli::RunConfig;
    using lii::cli::Subcommand;

    CLI::App app{"Quantum correlation measures and locally inaccessible information"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string dims_text = "2,2,2";
    double tol = 0.0;

    auto add_optimizer = [&](CLI::App* sub) {
        sub->add_option("--grid-theta", cfg.optimizer.grid_theta, "Polar grid points")->check(CLI::PositiveNumber);
        sub->add_option("--grid-phi", cfg.optimizer.grid_phi, "Azimuthal grid points")->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.output_path, "Output file (default stdout)");
    };

    auto* verify = app.add_subcommand("verify", "Check every LII identity on random tripartite pure states");
    verify->add_option("--trials", cfg.trials, "Number of random states");
    verify->add_option("--seed", cfg.seed, "Random seed");
    verify->add_option("--dims", dims_text, "Subsystem dimensions, e.g. 2,2,2");
    auto* verify_tol = verify->add_option("--tol", tol, "Residual tolerance (default 2e-3)");
    verify->add_option("--state", cfg.input_path, "Use this state file instead of random states");
    add_optimizer(verify);

    auto* esd = app.add_subcommand("esd", "Amplitude-damping sudden-death sweep");
    esd->add_option("--alpha-sq", cfg.alpha_sq, "Initial weight of |00>");
    esd->add_option("--steps", cfg.steps, "Grid points in p over [0, 1]");
    auto* esd_tol = esd->add_option("--tol", tol, "Residual tolerance (default 5e-3)");
    add_optimizer(esd);

    auto* measure = app.add_subcommand("measure", "Correlation report for a state file");
    measure->add_option("--state", cfg.input_path, "State file")->required();
    measure->add_option("--measured", cfg.measured, "Index of the measured qubit (default 1)");
    add_optimizer(measure);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (verify->parsed()) cfg.subcommand = Subcommand::verify;
    if (esd->parsed()) cfg.subcommand = Subcommand::esd;
    if (measure->parsed()) cfg.subcommand = Subcommand::measure;
    if (verify_tol->count() + esd_tol->count() > 0) cfg.tolerance = tol;
    if (cfg.tolerance && !(*cfg.tolerance > 0.0)) {
        std::cerr << "error: --tol must be positive\n";
        return 2;
    }
    try {
        cfg.dims = parse_dims(dims_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (cfg.output_path.empty()) return lii::cli::run(cfg, std::cout, std::cerr);
    std::ofstream out(cfg.output_path);
    if (!out) {
        std::cerr << "error: cannot open output file '" << cfg.output_path << "'\n";
        return 2;
    }
    const int rc = lii::cli::run(cfg, out, std::cerr);
    out.close();
    if (!out) {
        std::cerr << "error: failed writing '" << cfg.output_path << "'\n";
        return 2;
    }
    return rc;
}
