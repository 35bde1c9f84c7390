// Subcommand drivers behind the CLI. Each takes an options struct and the two
// output streams and returns a process exit code:
//   0  every check passed
//   1  a relation was violated or a numerical cross-check failed
//   2  malformed input, unusable options, or unwritable output
// Keeping these independent of the argument parser makes them scriptable from
// tests.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gurlab/explorer.hpp"
#include "gurlab/instance.hpp"

namespace gurlab {

enum class OutputFormat { Text, Json, Csv };

struct VerifyOptions {
    std::string instance_path;
    double tol = kDefaultTol;
    OutputFormat format = OutputFormat::Text;
    std::string output; // empty = stdout
};

struct ScanOptions {
    GridSpec grid;
    double tol = kScanTol;
    std::string output; // empty = CSV to stdout
    int threads = 0;
};

struct ProbeOptions {
    ProbeTarget target;
    std::vector<int> dims = {2, 3, 4, 6, 8};
    std::uint64_t budget = 100000;
    std::optional<std::uint64_t> seed; // drawn from entropy when absent
    double tol = kDefaultTol;
    double reach_tol = kDefaultReachTol;
    OutputFormat format = OutputFormat::Json;
    std::string output;
    int threads = 0;
};

struct DemoSpinOptions {
    std::uint64_t trials = 10000;
    std::optional<std::uint64_t> seed;
    SpinAxes axes;
    double tol = kDefaultTol;
    std::string output; // when set, samples are written there as CSV
    int threads = 0;
};

struct SampleOptions {
    int dim = 2;
    int n_observables = 3;
    std::optional<std::uint64_t> seed;
    bool density = false; // pure state by default
    std::string output;   // empty = instance JSON to stdout
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err);
int cmd_probe(const ProbeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_demo_spin(const DemoSpinOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream& err);

// Seed used when the caller does not pin one; drawn from std::random_device.
std::uint64_t entropy_seed();

// "%.17g" — round-trip-exact formatting used for CSV payloads and metadata.
std::string fmt17(double v);

} // namespace gurlab
