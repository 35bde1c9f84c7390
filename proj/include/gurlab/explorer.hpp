// Exploration drivers built on the moment and relation layers: random
// sampling of states and observables, an exhaustive grid scan of normalized
// correlation space, stochastic search for target correlation triples, and a
// pinned three-spin demonstration.
//
// Determinism contract: every randomized routine derives one RNG substream
// per work item from (seed, item index), so results are identical for a given
// seed under any thread count or work partitioning.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gurlab/moments.hpp"
#include "gurlab/relations.hpp"
#include "gurlab/rng.hpp"

namespace gurlab {

// Run fn(i) for i in [0, count) across up to `threads` threads (0 = one per
// hardware core). fn must write only to its own index's slot.
void parallel_for_index(std::size_t count, int threads,
                        const std::function<void(std::size_t)>& fn);

// ---- random ensembles ----

enum class Ensemble { HaarState, RandomHermitian, RandomDensity };

struct RandomSpec {
    int dim = 2;
    std::uint64_t seed = 0;
    Ensemble ensemble = Ensemble::HaarState;
};

// Haar-distributed unit vector (normalized complex Gaussian).
Vec sample_state(const RandomSpec& spec);
Vec haar_state(Rng& rng, int dim);

// (G + G^dagger)/2 for complex Gaussian G.
Observable sample_observable(const RandomSpec& spec);
Observable random_hermitian(Rng& rng, int dim);

// G G^dagger normalized to unit trace (full-rank with probability 1).
DensityMatrix sample_density(const RandomSpec& spec);
DensityMatrix random_density(Rng& rng, int dim);

// ---- grid scan of normalized correlation space ----

// Classification tolerance for grid cells; the margin is a degree-3
// polynomial of exact grid coordinates, so rounding noise is tiny.
inline constexpr double kScanTol = 1e-12;

struct GridSpec {
    int rho_steps = 21;   // per rho axis, uniform on [0, 1]
    int sigma_steps = 13; // Sigma uniform on [0, pi]; the cell carries cos Sigma
};

enum class CellClass { Allowed, Boundary, Forbidden };

const char* cell_class_name(CellClass c);

struct ScanCell {
    double rho12 = 0.0;
    double rho23 = 0.0;
    double rho31 = 0.0;
    double cos_sigma = 1.0;
    double margin = 0.0;
    CellClass cls = CellClass::Allowed;
};

// All rho_steps^3 * sigma_steps cells in lexicographic order
// (rho12, rho23, rho31, Sigma). margin < -tol is forbidden, |margin| <= tol
// is boundary, the rest allowed.
std::vector<ScanCell> scan_grid(const GridSpec& grid, double tol = kScanTol,
                                int threads = 0);

// ---- stochastic search for a target correlation triple ----

struct ProbeTarget {
    double rho12 = 0.0;
    double rho23 = 0.0;
    double rho31 = 0.0;
};

// A concrete witness: state plus three Hermitian observables.
struct ProbeInstance {
    int dim = 0;
    Vec state;
    std::vector<Mat> observables;
};

struct ProbeRealized {
    double rho12 = 0.0;
    double rho23 = 0.0;
    double rho31 = 0.0;
    double cos_sigma = 1.0;
    bool degenerate = false; // some pair had vanishing dispersion (rho = 0 there)
    double raw_margin = 0.0;
    std::optional<double> normalized_margin; // absent for degenerate triples
};

struct ProbeResult {
    ProbeTarget target;
    std::uint64_t budget = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double reach_tol = 0.0;
    bool reached = false;
    double best_distance = 0.0; // Euclidean distance in (rho12, rho23, rho31)
    ProbeRealized realized;     // at the best candidate
    ProbeInstance best_instance;
};

// Default distance at which a target counts as reached.
inline constexpr double kDefaultReachTol = 1e-3;

// Search evaluations are organized in fixed-length independent legs; each leg
// restarts from a fresh candidate (cycling through `dims`, with structured
// three-qubit product candidates mixed in when 8 is among the dims) and
// hill-climbs by Gaussian perturbation with an adaptive step. Trial k always
// uses RNG substream (seed, k), so results depend only on (target, dims,
// budget, seed) and a larger budget never yields a worse best_distance.
ProbeResult probe_achievability(const ProbeTarget& target,
                                const std::vector<int>& dims,
                                std::uint64_t budget, std::uint64_t seed,
                                double reach_tol = kDefaultReachTol,
                                double tol = kDefaultTol, int threads = 0);

// ---- pinned three-spin demonstration ----

struct SpinAxes {
    int a1 = 2; // 0 = x, 1 = y, 2 = z
    int a2 = 2;
    int a3 = 2;
};

struct SpinSample {
    double rho12 = 0.0;
    double rho23 = 0.0;
    double rho31 = 0.0;
    double cos_sigma = 1.0;
    double margin = 0.0; // normalized-relation margin
};

struct SpinDemoReport {
    SpinSample ghz;     // (|000>+|111>)/sqrt2 with spin-z projections
    SpinSample product; // |000> with spin-x projections
    std::vector<SpinSample> samples; // Haar 8-dim states with the axis observables
    std::uint64_t degenerate_skipped = 0; // samples without normalized coordinates
    std::uint64_t gur_violations = 0;     // margin < -tol anywhere
    std::uint64_t forbidden_hits = 0;     // realized triples inside the forbidden box
    double min_margin = 0.0;
};

SpinDemoReport spin_demo(std::uint64_t seed, std::uint64_t trials,
                         SpinAxes axes = {}, double tol = kDefaultTol,
                         int threads = 0);

} // namespace gurlab
