#include "gurlab/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "gurlab/pauli.hpp"

namespace gurlab {

void parallel_for_index(std::size_t count, int threads,
                        const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t want = threads > 0 ? static_cast<std::size_t>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    want = std::min(want, count);
    if (want <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    // Static block partition; each index is touched by exactly one thread.
    std::vector<std::thread> pool;
    pool.reserve(want);
    const std::size_t chunk = (count + want - 1) / want;
    for (std::size_t t = 0; t < want; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

// ---- random ensembles ----

namespace {

void check_dim(int dim, const char* who) {
    if (dim < 1)
        throw PreconditionError(std::string(who) + ": dimension must be at least 1");
}

void check_ensemble(const RandomSpec& spec, Ensemble expected, const char* who) {
    if (spec.ensemble != expected)
        throw PreconditionError(std::string(who) + ": spec requests a different ensemble");
}

} // namespace

Vec haar_state(Rng& rng, int dim) {
    check_dim(dim, "haar_state");
    Vec v = rng.gaussian_vector(dim);
    while (v.norm() == 0.0) v = rng.gaussian_vector(dim); // probability-zero guard
    return v / v.norm();
}

Vec sample_state(const RandomSpec& spec) {
    check_ensemble(spec, Ensemble::HaarState, "sample_state");
    Rng rng(spec.seed);
    return haar_state(rng, spec.dim);
}

Observable random_hermitian(Rng& rng, int dim) {
    check_dim(dim, "random_hermitian");
    const Mat g = rng.gaussian_matrix(dim, dim);
    return Observable(0.5 * (g + g.adjoint()));
}

Observable sample_observable(const RandomSpec& spec) {
    check_ensemble(spec, Ensemble::RandomHermitian, "sample_observable");
    Rng rng(spec.seed);
    return random_hermitian(rng, spec.dim);
}

DensityMatrix random_density(Rng& rng, int dim) {
    check_dim(dim, "random_density");
    while (true) {
        const Mat g = rng.gaussian_matrix(dim, dim);
        Mat w = g * g.adjoint();
        const double tr = w.trace().real();
        if (!(tr > 0.0)) continue; // probability-zero guard
        w /= tr;
        w = 0.5 * (w + w.adjoint()); // scrub rounding asymmetry
        return DensityMatrix(std::move(w));
    }
}

DensityMatrix sample_density(const RandomSpec& spec) {
    check_ensemble(spec, Ensemble::RandomDensity, "sample_density");
    Rng rng(spec.seed);
    return random_density(rng, spec.dim);
}

// ---- grid scan ----

const char* cell_class_name(CellClass c) {
    switch (c) {
        case CellClass::Allowed: return "allowed";
        case CellClass::Boundary: return "boundary";
        case CellClass::Forbidden: return "forbidden";
    }
    return "unknown";
}

std::vector<ScanCell> scan_grid(const GridSpec& grid, double tol, int threads) {
    if (grid.rho_steps < 2)
        throw PreconditionError("scan_grid: rho_steps must be at least 2");
    if (grid.sigma_steps < 1)
        throw PreconditionError("scan_grid: sigma_steps must be at least 1");
    if (!(tol >= 0.0))
        throw PreconditionError("scan_grid: tolerance must be nonnegative");

    const int R = grid.rho_steps;
    const int S = grid.sigma_steps;

    std::vector<double> rho(static_cast<std::size_t>(R));
    for (int k = 0; k < R; ++k)
        rho[static_cast<std::size_t>(k)] = static_cast<double>(k) / (R - 1);
    std::vector<double> cosv(static_cast<std::size_t>(S));
    for (int k = 0; k < S; ++k)
        cosv[static_cast<std::size_t>(k)] =
            S == 1 ? 1.0 : std::cos(static_cast<double>(k) * std::numbers::pi / (S - 1));

    const std::size_t total = static_cast<std::size_t>(R) * R * R * S;
    std::vector<ScanCell> cells(total);

    parallel_for_index(total, threads, [&](std::size_t flat) {
        std::size_t rest = flat;
        const int js = static_cast<int>(rest % static_cast<std::size_t>(S));
        rest /= static_cast<std::size_t>(S);
        const int i31 = static_cast<int>(rest % static_cast<std::size_t>(R));
        rest /= static_cast<std::size_t>(R);
        const int i23 = static_cast<int>(rest % static_cast<std::size_t>(R));
        rest /= static_cast<std::size_t>(R);
        const int i12 = static_cast<int>(rest);

        ScanCell& c = cells[flat];
        c.rho12 = rho[static_cast<std::size_t>(i12)];
        c.rho23 = rho[static_cast<std::size_t>(i23)];
        c.rho31 = rho[static_cast<std::size_t>(i31)];
        c.cos_sigma = cosv[static_cast<std::size_t>(js)];

        const double r2 = c.rho12 * c.rho12 + c.rho23 * c.rho23 + c.rho31 * c.rho31;
        c.margin = 1.0 + 2.0 * c.rho12 * c.rho23 * c.rho31 * c.cos_sigma - r2;
        if (c.margin < -tol)
            c.cls = CellClass::Forbidden;
        else if (c.margin <= tol)
            c.cls = CellClass::Boundary;
        else
            c.cls = CellClass::Allowed;
    });
    return cells;
}

// ---- stochastic target search ----

namespace {

// Evaluations per independent search leg. Each leg restarts; within a leg
// trial t extends trial t-1, so any budget cut at a leg boundary or inside
// the final leg keeps earlier results bit-identical.
constexpr std::uint64_t kLegLength = 500;

struct EvalOut {
    ProbeRealized realized;
    double distance = 0.0;
};

EvalOut evaluate_candidate(const ProbeInstance& inst, const ProbeTarget& target,
                           double tol) {
    std::vector<Observable> obs;
    obs.reserve(inst.observables.size());
    for (const Mat& m : inst.observables) obs.emplace_back(m, tol);

    const MomentSet ms = moments_from_state(obs, inst.state, std::nullopt, tol);
    const NormalizedCorrelations nc = normalized_correlations(ms);

    EvalOut out;
    out.realized.rho12 = nc.rho(0, 1);
    out.realized.rho23 = nc.rho(1, 2);
    out.realized.rho31 = nc.rho(2, 0);
    out.realized.cos_sigma = std::cos(nc.sigma_sum);
    out.realized.degenerate = nc.any_degenerate();
    out.realized.raw_margin = gur_raw(ms, tol).margin;
    if (!out.realized.degenerate)
        out.realized.normalized_margin =
            gur_normalized(rho_sigma_point(nc), tol).margin;

    const double d12 = out.realized.rho12 - target.rho12;
    const double d23 = out.realized.rho23 - target.rho23;
    const double d31 = out.realized.rho31 - target.rho31;
    out.distance = std::sqrt(d12 * d12 + d23 * d23 + d31 * d31);
    return out;
}

Mat hermitized(const Mat& m) { return 0.5 * (m + m.adjoint()); }

ProbeInstance generic_candidate(Rng& rng, int dim) {
    ProbeInstance inst;
    inst.dim = dim;
    inst.state = haar_state(rng, dim);
    inst.observables.reserve(3);
    for (int k = 0; k < 3; ++k)
        inst.observables.push_back(hermitized(rng.gaussian_matrix(dim, dim)));
    return inst;
}

// Product state of three qubits with one spin projection per site: all cross
// correlators vanish exactly, so these candidates start at rho = (0, 0, 0)
// and perturbation walks them outward.
ProbeInstance structured_three_qubit(Rng& rng) {
    ProbeInstance inst;
    inst.dim = 8;
    inst.observables.reserve(3);
    for (int site = 0; site < 3; ++site) {
        const double z = 2.0 * rng.uniform() - 1.0;
        const double az = 2.0 * std::numbers::pi * rng.uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        inst.observables.push_back(
            pauli::embed3(pauli::direction(s * std::cos(az), s * std::sin(az), z), site));
    }
    const Vec chi0 = haar_state(rng, 2);
    const Vec chi1 = haar_state(rng, 2);
    const Vec chi2 = haar_state(rng, 2);
    inst.state = pauli::product3(chi0, chi1, chi2);
    return inst;
}

ProbeInstance perturb(const ProbeInstance& cur, double step, Rng& rng) {
    ProbeInstance next;
    next.dim = cur.dim;
    Vec v = cur.state + step * rng.gaussian_vector(cur.dim);
    next.state = v.norm() > 0.0 ? Vec(v / v.norm()) : cur.state;
    next.observables.reserve(cur.observables.size());
    for (const Mat& m : cur.observables)
        next.observables.push_back(hermitized(m + step * rng.gaussian_matrix(cur.dim, cur.dim)));
    return next;
}

struct LegBest {
    double distance = std::numeric_limits<double>::infinity();
    ProbeRealized realized;
    ProbeInstance instance;
};

LegBest run_leg(const ProbeTarget& target, const std::vector<int>& dims,
                std::uint64_t seed, std::uint64_t leg, std::uint64_t count,
                bool structured_ok, double tol) {
    LegBest best;

    ProbeInstance cur;
    double cur_distance = std::numeric_limits<double>::infinity();
    double step = 0.5;
    int stale = 0;

    for (std::uint64_t t = 0; t < count; ++t) {
        Rng rng = Rng::substream(seed, leg * kLegLength + t);
        ProbeInstance cand;
        if (t == 0) {
            if (structured_ok && leg % 4 == 0)
                cand = structured_three_qubit(rng);
            else
                cand = generic_candidate(
                    rng, dims[static_cast<std::size_t>(leg % dims.size())]);
        } else {
            cand = perturb(cur, step, rng);
        }

        const EvalOut out = evaluate_candidate(cand, target, tol);
        if (t == 0 || out.distance < cur_distance) {
            cur = std::move(cand);
            cur_distance = out.distance;
            stale = 0;
            if (out.distance < best.distance) {
                best.distance = out.distance;
                best.realized = out.realized;
                best.instance = cur;
            }
        } else if (++stale >= 20) {
            step = std::max(step * 0.5, 1e-6); // narrow the search around the incumbent
            stale = 0;
        }
    }
    return best;
}

} // namespace

ProbeResult probe_achievability(const ProbeTarget& target,
                                const std::vector<int>& dims,
                                std::uint64_t budget, std::uint64_t seed,
                                double reach_tol, double tol, int threads) {
    for (double v : {target.rho12, target.rho23, target.rho31})
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw PreconditionError("probe_achievability: target components must lie in [0, 1]");
    if (dims.empty())
        throw PreconditionError("probe_achievability: at least one dimension required");
    for (int d : dims)
        if (d < 2)
            throw PreconditionError("probe_achievability: dimensions must be at least 2");
    if (budget == 0)
        throw PreconditionError("probe_achievability: budget must be positive");
    if (!(reach_tol > 0.0))
        throw PreconditionError("probe_achievability: reach tolerance must be positive");

    const bool structured_ok = std::find(dims.begin(), dims.end(), 8) != dims.end();
    const std::uint64_t legs = (budget + kLegLength - 1) / kLegLength;

    std::vector<LegBest> per_leg(legs);
    parallel_for_index(static_cast<std::size_t>(legs), threads, [&](std::size_t leg) {
        const std::uint64_t lo = static_cast<std::uint64_t>(leg) * kLegLength;
        const std::uint64_t count = std::min(kLegLength, budget - lo);
        per_leg[leg] = run_leg(target, dims, seed, static_cast<std::uint64_t>(leg),
                               count, structured_ok, tol);
    });

    ProbeResult res;
    res.target = target;
    res.budget = budget;
    res.trials = budget;
    res.seed = seed;
    res.reach_tol = reach_tol;
    res.best_distance = std::numeric_limits<double>::infinity();
    for (const LegBest& lb : per_leg) {
        if (lb.distance < res.best_distance) { // strict: ties keep the earliest leg
            res.best_distance = lb.distance;
            res.realized = lb.realized;
            res.best_instance = lb.instance;
        }
    }
    res.reached = res.best_distance <= reach_tol;
    return res;
}

// ---- three-spin demonstration ----

namespace {

SpinSample spin_sample_of(const NormalizedCorrelations& nc, double tol) {
    SpinSample s;
    s.rho12 = nc.rho(0, 1);
    s.rho23 = nc.rho(1, 2);
    s.rho31 = nc.rho(2, 0);
    s.cos_sigma = std::cos(nc.sigma_sum);
    s.margin = gur_normalized(rho_sigma_point(nc), tol).margin;
    return s;
}

} // namespace

SpinDemoReport spin_demo(std::uint64_t seed, std::uint64_t trials, SpinAxes axes,
                         double tol, int threads) {
    for (int a : {axes.a1, axes.a2, axes.a3})
        if (a < 0 || a > 2)
            throw PreconditionError("spin_demo: axes must be 0 (x), 1 (y), or 2 (z)");

    SpinDemoReport rep;

    // Pinned presets: maximal correlation and zero correlation.
    {
        std::vector<Observable> zz;
        for (int site = 0; site < 3; ++site)
            zz.emplace_back(pauli::embed3(pauli::z(), site));
        const MomentSet ms = moments_from_state(zz, pauli::ghz3(), std::nullopt, tol);
        rep.ghz = spin_sample_of(normalized_correlations(ms), tol);
    }
    {
        std::vector<Observable> xx;
        for (int site = 0; site < 3; ++site)
            xx.emplace_back(pauli::embed3(pauli::x(), site));
        const MomentSet ms = moments_from_state(xx, pauli::ket000(), std::nullopt, tol);
        rep.product = spin_sample_of(normalized_correlations(ms), tol);
    }

    std::vector<Observable> obs;
    obs.emplace_back(pauli::embed3(pauli::axis(axes.a1), 0));
    obs.emplace_back(pauli::embed3(pauli::axis(axes.a2), 1));
    obs.emplace_back(pauli::embed3(pauli::axis(axes.a3), 2));

    std::vector<std::optional<SpinSample>> slots(trials);
    parallel_for_index(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
        const Vec psi = haar_state(rng, 8);
        const MomentSet ms = moments_from_state(obs, psi, std::nullopt, tol);
        const NormalizedCorrelations nc = normalized_correlations(ms);
        if (nc.any_degenerate()) return; // slot stays empty, counted below
        slots[t] = spin_sample_of(nc, tol);
    });

    rep.samples.reserve(trials);
    for (const std::optional<SpinSample>& s : slots) {
        if (!s) {
            ++rep.degenerate_skipped;
            continue;
        }
        rep.samples.push_back(*s);
    }

    rep.min_margin = std::min(rep.ghz.margin, rep.product.margin);
    for (const SpinSample& s : {rep.ghz, rep.product}) {
        if (s.margin < -tol) ++rep.gur_violations;
        if (forbidden_region_check(s.rho12, s.rho23, s.rho31)) ++rep.forbidden_hits;
    }
    for (const SpinSample& s : rep.samples) {
        rep.min_margin = std::min(rep.min_margin, s.margin);
        if (s.margin < -tol) ++rep.gur_violations;
        if (forbidden_region_check(s.rho12, s.rho23, s.rho31)) ++rep.forbidden_hits;
    }
    return rep;
}

} // namespace gurlab
