// Instance files: a self-describing JSON format carrying one state (pure or
// mixed) and a list of Hermitian observables, plus optional per-observable
// dimensional scale factors. Complex numbers are stored as [re, im] pairs;
// doubles round-trip exactly (shortest-representation printing on write).
//
// Layout:
//   {
//     "schema_version": "1",
//     "dim": 2,
//     "state": [[re, im], ...],            // exactly one of state / density
//     "density": [[[re, im], ...], ...],
//     "observables": [ [[[re, im], ...], ...], ... ],
//     "scales": [d1, d2, ...],             // optional, positive reals
//     "meta": { ... }                      // optional, preserved verbatim
//   }

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gurlab/hilbert.hpp"

namespace gurlab {

inline constexpr const char* kSchemaVersion = "1";

struct InstanceFile {
    int dim = 0;
    std::optional<Vec> state;             // unit-normalized pure state
    std::optional<DensityMatrix> density; // validated mixed state
    std::vector<Observable> observables;  // nonempty, all dim x dim
    std::optional<std::vector<double>> scales;
    nlohmann::ordered_json meta;          // free-form, written back as-is

    bool is_pure() const { return state.has_value(); }
};

// Parse and validate; every violation raises PreconditionError with a
// message naming the offending field.
InstanceFile load_instance(const std::string& path, double tol = kDefaultTol);
InstanceFile instance_from_json(const nlohmann::ordered_json& j, double tol = kDefaultTol);

nlohmann::ordered_json instance_to_json(const InstanceFile& inst);
void save_instance(const InstanceFile& inst, const std::string& path);

// Shared encoding helpers (also used for report serialization).
nlohmann::ordered_json complex_to_json(const Complex& c);
nlohmann::ordered_json vec_to_json(const Vec& v);
nlohmann::ordered_json mat_to_json(const Mat& m);

} // namespace gurlab
