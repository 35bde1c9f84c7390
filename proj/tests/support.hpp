// Shared helpers for the unit and acceptance suites: independent low-tech
// oracles (cofactor determinants), deterministic random-instance factories,
// and small parsing utilities for the CSV outputs.

#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gurlab/explorer.hpp"
#include "gurlab/moments.hpp"
#include "gurlab/relations.hpp"
#include "gurlab/rng.hpp"

namespace support {

using gurlab::Complex;
using gurlab::Mat;
using gurlab::Observable;
using gurlab::Rng;
using gurlab::Vec;

// |a - b| <= tol * max(1, |a|, |b|).
inline bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool close(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Cofactor-expansion determinants; deliberately naive so they share nothing
// with the LU route used by the library.
inline Complex det2_cofactor(const Mat& m) {
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

inline Complex det3_cofactor(const Mat& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

// One reproducible random instance: Haar state plus Gaussian Hermitian
// observables, dimension drawn uniformly from [min_dim, max_dim].
struct RandomInstance {
    int dim = 0;
    Vec psi;
    std::vector<Observable> obs;
};

inline RandomInstance random_instance(std::uint64_t seed, std::uint64_t index,
                                      int n_obs, int min_dim = 2, int max_dim = 8) {
    Rng rng = Rng::substream(seed, index);
    int dim = min_dim +
              static_cast<int>(rng.uniform() * static_cast<double>(max_dim - min_dim + 1));
    if (dim > max_dim) dim = max_dim;
    RandomInstance ri;
    ri.dim = dim;
    ri.psi = gurlab::haar_state(rng, dim);
    ri.obs.reserve(static_cast<std::size_t>(n_obs));
    for (int k = 0; k < n_obs; ++k) ri.obs.push_back(gurlab::random_hermitian(rng, dim));
    return ri;
}

// Random family of plain vectors (no normalization).
inline gurlab::VectorSet random_vector_set(std::uint64_t seed, std::uint64_t index,
                                           int count, int min_dim = 2, int max_dim = 8) {
    Rng rng = Rng::substream(seed, index);
    int dim = min_dim +
              static_cast<int>(rng.uniform() * static_cast<double>(max_dim - min_dim + 1));
    if (dim > max_dim) dim = max_dim;
    gurlab::VectorSet vs;
    vs.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) vs.push_back(rng.gaussian_vector(dim));
    return vs;
}

// Unitary matrix from the QR factorization of a Gaussian matrix.
inline Mat random_unitary(Rng& rng, int dim) {
    const Mat g = rng.gaussian_matrix(dim, dim);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        const Complex rkk = r(k, k);
        if (std::abs(rkk) > 0.0) q.col(k) *= rkk / std::abs(rkk);
    }
    return q;
}

// ---- CSV utilities ----

struct CsvTable {
    std::vector<std::string> comments; // leading '#' lines, in order
    std::string header;                // first non-comment line
    std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    return out;
}

inline CsvTable parse_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!header_seen && line.front() == '#') {
            t.comments.push_back(line);
            continue;
        }
        if (!header_seen) {
            t.header = line;
            header_seen = true;
            continue;
        }
        t.rows.push_back(split_csv_line(line));
    }
    return t;
}

inline CsvTable parse_csv_file(const std::string& path) {
    std::ifstream in(path);
    return parse_csv(in);
}

inline CsvTable parse_csv_string(const std::string& text) {
    std::istringstream in(text);
    return parse_csv(in);
}

} // namespace support
