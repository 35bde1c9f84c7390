#include "gurlab/commands.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "gurlab/rng.hpp"

namespace gurlab {

using nlohmann::ordered_json;

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

// Short human-readable number for text reports.
std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Map library exceptions onto exit codes; keeps each command a plain function.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const NumericalError& e) {
        err << "numerical check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) { // Precondition/Dimension errors
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

// Stream splitter: writes to a file when a path is given, otherwise to fallback.
class SinkStream {
public:
    SinkStream(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw PreconditionError("cannot open output file '" + path + "'");
            to_file_ = true;
        }
    }
    std::ostream& stream() { return to_file_ ? file_ : fallback_; }
    bool to_file() const { return to_file_; }
    void finish(const std::string& path) {
        if (!to_file_) return;
        file_.flush();
        if (!file_)
            throw PreconditionError("write to output file '" + path + "' failed");
    }

private:
    std::ofstream file_;
    std::ostream& fallback_;
    bool to_file_ = false;
};

ordered_json report_to_json(const RelationReport& r) {
    ordered_json j;
    j["relation"] = relation_name(r.relation);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["satisfied"] = r.satisfied;
    j["saturated"] = r.saturated;
    j["tol"] = r.tol;
    j["sat_tol"] = r.sat_tol;
    j["degenerate"] = r.degenerate;
    return j;
}

std::string status_word(const RelationReport& r) {
    std::string s = r.satisfied ? "ok" : "VIOLATED";
    if (r.saturated) s += " (saturated)";
    return s;
}

// ---- verify ----

struct VerifyComputation {
    MomentSet moments;
    NormalizedCorrelations nc;
    std::vector<std::array<int, 2>> pair_index;
    std::vector<RelationReport> heisenberg;
    std::vector<RelationReport> schroedinger;
    std::optional<RelationReport> raw;
    std::optional<RelationReport> normalized;
    bool normalized_skipped_degenerate = false;
    std::optional<GurNResult> psd;
    bool normalized_on_load = false;
    double load_norm_deviation = 0.0;
    bool all_satisfied = true;
};

VerifyComputation run_verify(InstanceFile& inst, double tol) {
    VerifyComputation vc;
    if (inst.state) {
        const double n = inst.state->norm();
        if (std::abs(n - 1.0) > tol) {
            vc.normalized_on_load = true;
            vc.load_norm_deviation = std::abs(n - 1.0);
            inst.state = Vec(*inst.state / n);
        }
    }

    vc.moments = inst.state
                     ? moments_from_state(inst.observables, *inst.state, inst.scales, tol)
                     : moments_from_density(inst.observables, *inst.density, tol);
    vc.nc = normalized_correlations(vc.moments);

    const int n = vc.moments.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            vc.pair_index.push_back({i, j});
            vc.heisenberg.push_back(heisenberg_pair(vc.moments, i, j, tol));
            vc.schroedinger.push_back(schroedinger_pair(vc.moments, i, j, tol));
        }
    }
    if (n == 3) {
        vc.raw = gur_raw(vc.moments, tol);
        if (vc.nc.any_degenerate())
            vc.normalized_skipped_degenerate = true;
        else
            vc.normalized = gur_normalized(rho_sigma_point(vc.nc), tol);
    }
    if (n >= 2) vc.psd = gur_n(vc.moments, tol);

    for (const RelationReport& r : vc.heisenberg) vc.all_satisfied &= r.satisfied;
    for (const RelationReport& r : vc.schroedinger) vc.all_satisfied &= r.satisfied;
    if (vc.raw) vc.all_satisfied &= vc.raw->satisfied;
    if (vc.normalized) vc.all_satisfied &= vc.normalized->satisfied;
    if (vc.psd) vc.all_satisfied &= vc.psd->report.satisfied;
    return vc;
}

void render_verify_text(const VerifyComputation& vc, const InstanceFile& inst,
                        const VerifyOptions& opt, std::ostream& os) {
    const int n = vc.moments.n();
    os << "verify: " << opt.instance_path << "\n";
    os << "  dim " << inst.dim << ", "
       << (inst.is_pure() ? "pure state" : "density matrix") << ", " << n
       << (n == 1 ? " observable" : " observables") << ", tol " << fmtg(opt.tol)
       << "\n";
    if (vc.normalized_on_load)
        os << "  note: state normalized on load (norm deviated by "
           << fmtg(vc.load_norm_deviation) << ")\n";
    if (inst.scales)
        os << "  dimensional scale factors verified to cancel\n";
    os << "\nmeans and dispersions:\n";
    for (int i = 0; i < n; ++i)
        os << "  A" << (i + 1) << "  mean " << fmtg(vc.moments.means[i])
           << "  sigma^2 " << fmtg(vc.moments.sigma2[i]) << "\n";

    if (!vc.pair_index.empty()) {
        os << "\npair relations:\n";
        for (std::size_t k = 0; k < vc.pair_index.size(); ++k) {
            const auto [i, j] = vc.pair_index[k];
            const RelationReport& h = vc.heisenberg[k];
            const RelationReport& s = vc.schroedinger[k];
            os << "  (" << (i + 1) << "," << (j + 1) << ") heisenberg    lhs "
               << fmtg(h.lhs) << "  rhs " << fmtg(h.rhs) << "  margin "
               << fmtg(h.margin) << "  " << status_word(h) << "\n";
            os << "  (" << (i + 1) << "," << (j + 1) << ") schroedinger  lhs "
               << fmtg(s.lhs) << "  rhs " << fmtg(s.rhs) << "  margin "
               << fmtg(s.margin) << "  " << status_word(s) << "\n";
        }
    }

    if (n >= 2) {
        os << "\nnormalized correlations:\n";
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                os << "  (" << (i + 1) << "," << (j + 1) << ")  ";
                if (vc.nc.degenerate(i, j))
                    os << "degenerate (vanishing dispersion)\n";
                else
                    os << "rho " << fmtg(vc.nc.rho(i, j)) << "  phi "
                       << fmtg(vc.nc.phi(i, j)) << "\n";
            }
        }
        if (vc.nc.has_sigma_sum && !vc.nc.any_degenerate())
            os << "  Sigma " << fmtg(vc.nc.sigma_sum) << " (wrapped "
               << fmtg(vc.nc.sigma_sum_wrapped) << "), cos Sigma "
               << fmtg(vc.nc.cos_sigma()) << "\n";
    }

    if (vc.raw || vc.normalized) {
        os << "\nthree-observable relation:\n";
        if (vc.raw)
            os << "  gur_raw         lhs " << fmtg(vc.raw->lhs) << "  rhs "
               << fmtg(vc.raw->rhs) << "  margin " << fmtg(vc.raw->margin) << "  "
               << status_word(*vc.raw) << "\n";
        if (vc.normalized)
            os << "  gur_normalized  lhs " << fmtg(vc.normalized->lhs) << "  rhs "
               << fmtg(vc.normalized->rhs) << "  margin "
               << fmtg(vc.normalized->margin) << "  " << status_word(*vc.normalized)
               << "\n";
        else if (vc.normalized_skipped_degenerate)
            os << "  gur_normalized  skipped: degenerate pair, raw form above is "
                  "authoritative\n";
    }

    if (vc.psd) {
        os << "\nmoment matrix (" << n << " observables): "
           << (vc.psd->report.satisfied ? "psd ok" : "NOT PSD")
           << "  min eigenvalue " << fmtg(vc.psd->verdict.min_eigenvalue);
        if (vc.psd->verdict.worst_minor)
            os << "  worst principal minor " << fmtg(*vc.psd->verdict.worst_minor);
        os << "  det " << fmtg(vc.psd->det) << "\n";
    }

    os << "\nresult: " << (vc.all_satisfied ? "PASS" : "FAIL") << " ("
       << (vc.all_satisfied ? "all relations satisfied" : "violation detected")
       << ")\n";
}

ordered_json render_verify_json(const VerifyComputation& vc, const InstanceFile& inst,
                                const VerifyOptions& opt) {
    const int n = vc.moments.n();
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify";
    j["instance"] = opt.instance_path;
    j["tol"] = opt.tol;
    j["dim"] = inst.dim;
    j["source"] = inst.is_pure() ? "pure_state" : "density_matrix";
    j["n_observables"] = n;
    j["normalized_on_load"] = vc.normalized_on_load;

    j["means"] = ordered_json::array();
    j["sigma2"] = ordered_json::array();
    for (int i = 0; i < n; ++i) {
        j["means"].push_back(vc.moments.means[i]);
        j["sigma2"].push_back(vc.moments.sigma2[i]);
    }
    j["correlators"] = mat_to_json(vc.moments.corr);

    j["pairs"] = ordered_json::array();
    for (std::size_t k = 0; k < vc.pair_index.size(); ++k) {
        ordered_json p;
        p["i"] = vc.pair_index[k][0] + 1;
        p["j"] = vc.pair_index[k][1] + 1;
        p["heisenberg"] = report_to_json(vc.heisenberg[k]);
        p["schroedinger"] = report_to_json(vc.schroedinger[k]);
        j["pairs"].push_back(p);
    }

    ordered_json nj;
    nj["rho"] = ordered_json::array();
    nj["phi"] = ordered_json::array();
    for (int i = 0; i < n; ++i) {
        ordered_json rrow = ordered_json::array(), prow = ordered_json::array();
        for (int k = 0; k < n; ++k) {
            rrow.push_back(vc.nc.rho(i, k));
            prow.push_back(vc.nc.phi(i, k));
        }
        nj["rho"].push_back(rrow);
        nj["phi"].push_back(prow);
    }
    nj["degenerate_pairs"] = ordered_json::array();
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            if (vc.nc.degenerate(i, k))
                nj["degenerate_pairs"].push_back(ordered_json::array({i + 1, k + 1}));
    if (vc.nc.has_sigma_sum && !vc.nc.any_degenerate()) {
        nj["sigma_sum"] = vc.nc.sigma_sum;
        nj["sigma_sum_wrapped"] = vc.nc.sigma_sum_wrapped;
        nj["cos_sigma"] = vc.nc.cos_sigma();
    }
    j["normalized"] = nj;

    j["gur_raw"] = vc.raw ? report_to_json(*vc.raw) : ordered_json(nullptr);
    j["gur_normalized"] =
        vc.normalized ? report_to_json(*vc.normalized) : ordered_json(nullptr);
    j["gur_normalized_skipped_degenerate"] = vc.normalized_skipped_degenerate;
    if (vc.psd) {
        ordered_json g;
        g["report"] = report_to_json(vc.psd->report);
        g["min_eigenvalue"] = vc.psd->verdict.min_eigenvalue;
        if (vc.psd->verdict.worst_minor)
            g["worst_minor"] = *vc.psd->verdict.worst_minor;
        g["det"] = vc.psd->det;
        j["gur_n"] = g;
    } else {
        j["gur_n"] = nullptr;
    }
    j["all_satisfied"] = vc.all_satisfied;
    return j;
}

} // namespace

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        if (opt.format == OutputFormat::Csv)
            throw PreconditionError("verify: csv output is not defined for this command");
        InstanceFile inst = load_instance(opt.instance_path, opt.tol);
        if (inst.scales && !inst.is_pure())
            throw PreconditionError(
                "instance: scale factors apply to pure-state instances only");

        VerifyComputation vc = run_verify(inst, opt.tol);

        SinkStream sink(opt.output, out);
        if (opt.format == OutputFormat::Json)
            sink.stream() << render_verify_json(vc, inst, opt).dump(2) << "\n";
        else
            render_verify_text(vc, inst, opt, sink.stream());
        sink.finish(opt.output);
        if (sink.to_file())
            out << "verify: " << (vc.all_satisfied ? "PASS" : "FAIL")
                << ", report written to " << opt.output << "\n";
        return vc.all_satisfied ? 0 : 1;
    });
}

int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const std::vector<ScanCell> cells = scan_grid(opt.grid, opt.tol, opt.threads);

        std::size_t allowed = 0, boundary = 0, forbidden = 0;
        for (const ScanCell& c : cells) {
            if (c.cls == CellClass::Allowed) ++allowed;
            else if (c.cls == CellClass::Boundary) ++boundary;
            else ++forbidden;
        }

        SinkStream sink(opt.output, out);
        std::ostream& os = sink.stream();
        os << "# gurlab scan\n";
        os << "# schema_version " << kSchemaVersion << "\n";
        os << "# rho_steps " << opt.grid.rho_steps << "\n";
        os << "# sigma_steps " << opt.grid.sigma_steps << "\n";
        os << "# tol " << fmt17(opt.tol) << "\n";
        os << "# cells " << cells.size() << "\n";
        os << "# order lexicographic (rho12, rho23, rho31, Sigma)\n";
        os << "rho12,rho23,rho31,cos_sigma,margin,class\n";
        for (const ScanCell& c : cells)
            os << fmt17(c.rho12) << ',' << fmt17(c.rho23) << ',' << fmt17(c.rho31)
               << ',' << fmt17(c.cos_sigma) << ',' << fmt17(c.margin) << ','
               << cell_class_name(c.cls) << "\n";
        sink.finish(opt.output);

        if (sink.to_file())
            out << "scan: " << cells.size() << " cells (allowed " << allowed
                << ", boundary " << boundary << ", forbidden " << forbidden
                << ") written to " << opt.output << "\n";
        return 0;
    });
}

int cmd_probe(const ProbeOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        if (opt.format == OutputFormat::Csv)
            throw PreconditionError("probe: csv output is not defined for this command");
        const std::uint64_t seed = opt.seed ? *opt.seed : entropy_seed();
        const ProbeResult res = probe_achievability(opt.target, opt.dims, opt.budget,
                                                    seed, opt.reach_tol, opt.tol,
                                                    opt.threads);

        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "probe";
        j["generator"] = kGeneratorId;
        j["seed"] = seed;
        j["tol"] = opt.tol;
        j["reach_tol"] = res.reach_tol;
        j["budget"] = res.budget;
        j["trials"] = res.trials;
        j["target"] = {{"rho12", res.target.rho12},
                       {"rho23", res.target.rho23},
                       {"rho31", res.target.rho31}};
        j["dims"] = opt.dims;
        j["reached"] = res.reached;
        j["best_distance"] = res.best_distance;
        {
            ordered_json r;
            r["rho12"] = res.realized.rho12;
            r["rho23"] = res.realized.rho23;
            r["rho31"] = res.realized.rho31;
            r["cos_sigma"] = res.realized.cos_sigma;
            r["degenerate"] = res.realized.degenerate;
            r["gur_raw_margin"] = res.realized.raw_margin;
            r["gur_normalized_margin"] = res.realized.normalized_margin
                                             ? ordered_json(*res.realized.normalized_margin)
                                             : ordered_json(nullptr);
            j["realized"] = r;
        }
        {
            // Written in the instance layout so it can be fed back to verify.
            InstanceFile witness;
            witness.dim = res.best_instance.dim;
            witness.state = res.best_instance.state;
            for (const Mat& m : res.best_instance.observables)
                witness.observables.emplace_back(m, opt.tol);
            witness.meta = {{"command", "probe"},
                            {"seed", seed},
                            {"generator", kGeneratorId}};
            j["best_instance"] = instance_to_json(witness);
        }

        SinkStream sink(opt.output, out);
        if (opt.format == OutputFormat::Text) {
            std::ostream& os = sink.stream();
            os << "probe: target (" << fmtg(res.target.rho12) << ", "
               << fmtg(res.target.rho23) << ", " << fmtg(res.target.rho31) << ")\n";
            os << "  trials " << res.trials << ", seed " << seed << ", dims";
            for (int d : opt.dims) os << " " << d;
            os << "\n";
            os << "  best distance " << fmtg(res.best_distance) << " (reach tol "
               << fmtg(res.reach_tol) << ") -> "
               << (res.reached ? "REACHED" : "not reached") << "\n";
            os << "  realized rho (" << fmtg(res.realized.rho12) << ", "
               << fmtg(res.realized.rho23) << ", " << fmtg(res.realized.rho31)
               << "), cos Sigma " << fmtg(res.realized.cos_sigma) << ", dim "
               << res.best_instance.dim << "\n";
        } else {
            sink.stream() << j.dump(2) << "\n";
        }
        sink.finish(opt.output);
        if (sink.to_file())
            out << "probe: " << (res.reached ? "REACHED" : "not reached")
                << " (best distance " << fmtg(res.best_distance)
                << "), report written to " << opt.output << "\n";
        return 0;
    });
}

int cmd_demo_spin(const DemoSpinOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const std::uint64_t seed = opt.seed ? *opt.seed : entropy_seed();
        const SpinDemoReport rep =
            spin_demo(seed, opt.trials, opt.axes, opt.tol, opt.threads);

        const auto axis_name = [](int a) { return a == 0 ? 'x' : a == 1 ? 'y' : 'z'; };
        out << "three-spin demo: axes " << axis_name(opt.axes.a1) << " "
            << axis_name(opt.axes.a2) << " " << axis_name(opt.axes.a3) << ", trials "
            << opt.trials << ", seed " << seed << ", tol " << fmtg(opt.tol) << "\n";
        out << "generator " << kGeneratorId << "\n";
        const auto preset_line = [&](const char* name, const SpinSample& s) {
            out << "  preset " << name << "  rho (" << fmtg(s.rho12) << ", "
                << fmtg(s.rho23) << ", " << fmtg(s.rho31) << ")  cos Sigma "
                << fmtg(s.cos_sigma) << "  margin " << fmtg(s.margin) << "\n";
        };
        preset_line("ghz    ", rep.ghz);
        preset_line("product", rep.product);
        out << "  samples " << rep.samples.size();
        if (rep.degenerate_skipped)
            out << " (degenerate skipped " << rep.degenerate_skipped << ")";
        out << "\n";
        out << "  min margin " << fmtg(rep.min_margin) << "\n";
        out << "  relation violations " << rep.gur_violations << "\n";
        out << "  forbidden-region hits " << rep.forbidden_hits << "\n";

        if (!opt.output.empty()) {
            SinkStream sink(opt.output, out);
            std::ostream& os = sink.stream();
            os << "# gurlab demo-spin samples\n";
            os << "# schema_version " << kSchemaVersion << "\n";
            os << "# generator " << kGeneratorId << "\n";
            os << "# seed " << seed << "\n";
            os << "# trials " << opt.trials << "\n";
            os << "# axes " << axis_name(opt.axes.a1) << axis_name(opt.axes.a2)
               << axis_name(opt.axes.a3) << "\n";
            os << "# tol " << fmt17(opt.tol) << "\n";
            os << "rho12,rho23,rho31,cos_sigma,margin\n";
            for (const SpinSample& s : rep.samples)
                os << fmt17(s.rho12) << ',' << fmt17(s.rho23) << ',' << fmt17(s.rho31)
                   << ',' << fmt17(s.cos_sigma) << ',' << fmt17(s.margin) << "\n";
            sink.finish(opt.output);
            out << "  samples written to " << opt.output << "\n";
        }
        return rep.gur_violations == 0 ? 0 : 1;
    });
}

int cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        if (opt.dim < 1)
            throw PreconditionError("sample: dimension must be at least 1");
        if (opt.n_observables < 1)
            throw PreconditionError("sample: at least one observable required");
        const std::uint64_t seed = opt.seed ? *opt.seed : entropy_seed();

        InstanceFile inst;
        inst.dim = opt.dim;
        {
            // Substream 0 is the state, substream 1 + k is observable k.
            Rng rng = Rng::substream(seed, 0);
            if (opt.density)
                inst.density = random_density(rng, opt.dim);
            else
                inst.state = haar_state(rng, opt.dim);
        }
        for (int k = 0; k < opt.n_observables; ++k) {
            Rng rng = Rng::substream(seed, 1 + static_cast<std::uint64_t>(k));
            inst.observables.push_back(random_hermitian(rng, opt.dim));
        }
        inst.meta = {{"command", "sample"},
                     {"seed", seed},
                     {"generator", kGeneratorId},
                     {"ensemble", opt.density ? "density" : "pure"}};

        SinkStream sink(opt.output, out);
        sink.stream() << instance_to_json(inst).dump(2) << "\n";
        sink.finish(opt.output);
        if (sink.to_file())
            out << "sample: dim " << opt.dim << ", " << opt.n_observables
                << (opt.density ? " observables, density matrix"
                                : " observables, pure state")
                << ", seed " << seed << ", written to " << opt.output << "\n";
        return 0;
    });
}

} // namespace gurlab
