// gurlab — a numerical laboratory for uncertainty relations of two or more
// observables in finite dimension. Subcommands:
//
//   verify     evaluate every relation on a stored instance file
//   scan       classify the normalized-correlation grid as allowed/forbidden
//   probe      search for a state realizing a target correlation triple
//   demo-spin  three-qubit spin demonstration (presets + random states)
//   sample     generate a random instance file
//
// Exit codes: 0 success, 1 mathematical violation or failed numerical
// cross-check, 2 bad input or usage.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gurlab/commands.hpp"

namespace {

gurlab::OutputFormat parse_format(const std::string& name) {
    if (name == "text") return gurlab::OutputFormat::Text;
    if (name == "json") return gurlab::OutputFormat::Json;
    if (name == "csv") return gurlab::OutputFormat::Csv;
    throw CLI::ValidationError("--format", "expected one of text, json, csv");
}

int parse_axis(const std::string& name) {
    if (name == "x") return 0;
    if (name == "y") return 1;
    if (name == "z") return 2;
    throw CLI::ValidationError("--axes", "expected axis letters x, y, or z");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uncertainty-relation laboratory for finite-dimensional "
                 "states and Hermitian observables"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "evaluate all relations on an instance file");
    gurlab::VerifyOptions vopt;
    std::string vformat = "text";
    verify->add_option("instance", vopt.instance_path, "instance JSON file")->required();
    verify->add_option("--tol", vopt.tol, "relative tolerance (default 1e-9)");
    verify->add_option("--format", vformat, "output format: text or json");
    verify->add_option("--output", vopt.output, "write the report to this file");

    // scan
    auto* scan = app.add_subcommand("scan", "classify the normalized-correlation grid");
    gurlab::ScanOptions sopt;
    std::string sformat = "csv";
    scan->add_option("--rho-steps", sopt.grid.rho_steps,
                     "grid points per rho axis (default 21)");
    scan->add_option("--sigma-steps", sopt.grid.sigma_steps,
                     "grid points for Sigma on [0, pi] (default 13)");
    scan->add_option("--tol", sopt.tol, "classification tolerance (default 1e-12)");
    scan->add_option("--format", sformat, "output format: csv");
    scan->add_option("--output", sopt.output, "write CSV here instead of stdout");
    scan->add_option("--threads", sopt.threads, "worker threads (0 = all cores)");

    // probe
    auto* probe = app.add_subcommand("probe", "search for a target correlation triple");
    gurlab::ProbeOptions popt;
    std::string pformat = "json";
    std::vector<double> target;
    probe->add_option("--target", target, "target rho12 rho23 rho31")
        ->expected(3)
        ->required();
    probe->add_option("--dims", popt.dims, "Hilbert-space dimensions to try");
    probe->add_option("--budget", popt.budget, "total candidate evaluations (default 100000)");
    probe->add_option("--seed", popt.seed, "RNG seed (default: from entropy)");
    probe->add_option("--tol", popt.tol, "relative tolerance (default 1e-9)");
    probe->add_option("--reach-tol", popt.reach_tol,
                      "distance at which the target counts as reached (default 1e-3)");
    probe->add_option("--format", pformat, "output format: json or text");
    probe->add_option("--output", popt.output, "write the JSON report to this file");
    probe->add_option("--threads", popt.threads, "worker threads (0 = all cores)");

    // demo-spin
    auto* demo = app.add_subcommand("demo-spin", "three-qubit spin demonstration");
    gurlab::DemoSpinOptions dopt;
    std::vector<std::string> axes = {"z", "z", "z"};
    demo->add_option("--trials", dopt.trials, "random states to sample (default 10000)");
    demo->add_option("--seed", dopt.seed, "RNG seed (default: from entropy)");
    demo->add_option("--axes", axes, "spin axes for the three sites (default z z z)")
        ->expected(3);
    demo->add_option("--tol", dopt.tol, "relative tolerance (default 1e-9)");
    demo->add_option("--output", dopt.output, "write sampled triples here as CSV");
    demo->add_option("--threads", dopt.threads, "worker threads (0 = all cores)");

    // sample
    auto* sample = app.add_subcommand("sample", "generate a random instance file");
    gurlab::SampleOptions mopt;
    std::string ensemble = "pure";
    sample->add_option("--dim", mopt.dim, "Hilbert-space dimension (default 2)");
    sample->add_option("--n", mopt.n_observables, "number of observables (default 3)");
    sample->add_option("--seed", mopt.seed, "RNG seed (default: from entropy)");
    sample->add_option("--ensemble", ensemble, "pure or density (default pure)");
    sample->add_option("--output", mopt.output, "write the instance here instead of stdout");

    try {
        app.parse(argc, argv);

        if (verify->parsed()) {
            vopt.format = parse_format(vformat);
            return gurlab::cmd_verify(vopt, std::cout, std::cerr);
        }
        if (scan->parsed()) {
            if (parse_format(sformat) != gurlab::OutputFormat::Csv)
                throw CLI::ValidationError("--format", "scan emits csv only");
            return gurlab::cmd_scan(sopt, std::cout, std::cerr);
        }
        if (probe->parsed()) {
            popt.format = parse_format(pformat);
            if (popt.format == gurlab::OutputFormat::Csv)
                throw CLI::ValidationError("--format", "probe emits json or text");
            popt.target = {target[0], target[1], target[2]};
            return gurlab::cmd_probe(popt, std::cout, std::cerr);
        }
        if (demo->parsed()) {
            dopt.axes.a1 = parse_axis(axes[0]);
            dopt.axes.a2 = parse_axis(axes[1]);
            dopt.axes.a3 = parse_axis(axes[2]);
            return gurlab::cmd_demo_spin(dopt, std::cout, std::cerr);
        }
        if (sample->parsed()) {
            if (ensemble == "pure") {
                mopt.density = false;
            } else if (ensemble == "density") {
                mopt.density = true;
            } else {
                throw CLI::ValidationError("--ensemble", "expected pure or density");
            }
            return gurlab::cmd_sample(mopt, std::cout, std::cerr);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help exits cleanly; bad usage is 2
    }
    return 2;
}
