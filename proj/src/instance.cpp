#include "gurlab/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace gurlab {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw PreconditionError("instance: " + what);
}

Complex parse_complex(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where + ": complex entries must be [re, im] number pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Vec parse_vec(const ordered_json& j, int dim, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        fail(where + ": expected an array of length " + std::to_string(dim));
    Vec v(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = parse_complex(j[static_cast<std::size_t>(i)],
                             where + "[" + std::to_string(i) + "]");
    return v;
}

Mat parse_mat(const ordered_json& j, int dim, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        fail(where + ": expected " + std::to_string(dim) + " rows");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const ordered_json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            fail(where + ": row " + std::to_string(i) + " must have " +
                 std::to_string(dim) + " entries");
        for (int k = 0; k < dim; ++k)
            m(i, k) = parse_complex(row[static_cast<std::size_t>(k)],
                                    where + "[" + std::to_string(i) + "][" +
                                        std::to_string(k) + "]");
    }
    return m;
}

} // namespace

InstanceFile instance_from_json(const ordered_json& j, double tol) {
    if (!j.is_object()) fail("top level must be a JSON object");

    static const std::set<std::string> known = {
        "schema_version", "dim", "state", "density", "observables", "scales", "meta"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (known.find(key) == known.end()) fail("unknown field '" + key + "'");
    }

    if (j.contains("schema_version")) {
        if (!j["schema_version"].is_string() ||
            j["schema_version"].get<std::string>() != kSchemaVersion)
            fail("unsupported schema_version (expected \"" +
                 std::string(kSchemaVersion) + "\")");
    }

    if (!j.contains("dim") || !j["dim"].is_number_integer())
        fail("field 'dim' must be a positive integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1) fail("field 'dim' must be a positive integer");

    const bool has_state = j.contains("state");
    const bool has_density = j.contains("density");
    if (has_state == has_density)
        fail("exactly one of 'state' and 'density' must be present");

    InstanceFile inst;
    inst.dim = dim;

    if (has_state) {
        Vec psi = parse_vec(j["state"], dim, "state");
        if (!is_finite(psi)) fail("state entries must be finite");
        if (!(psi.norm() > 0.0)) fail("state must be a nonzero vector");
        inst.state = std::move(psi);
    } else {
        Mat w = parse_mat(j["density"], dim, "density");
        try {
            inst.density = DensityMatrix(std::move(w), tol);
        } catch (const std::exception& e) {
            fail(std::string("density: ") + e.what());
        }
    }

    if (!j.contains("observables") || !j["observables"].is_array() ||
        j["observables"].empty())
        fail("field 'observables' must be a nonempty array");
    int idx = 0;
    for (const ordered_json& jo : j["observables"]) {
        const std::string where = "observables[" + std::to_string(idx) + "]";
        Mat m = parse_mat(jo, dim, where);
        try {
            inst.observables.emplace_back(std::move(m), tol);
        } catch (const std::exception& e) {
            fail(where + ": " + e.what());
        }
        ++idx;
    }

    if (j.contains("scales")) {
        if (!j["scales"].is_array() ||
            j["scales"].size() != inst.observables.size())
            fail("field 'scales' must list one factor per observable");
        std::vector<double> scales;
        for (const ordered_json& js : j["scales"]) {
            if (!js.is_number()) fail("scale factors must be numbers");
            const double d = js.get<double>();
            if (!std::isfinite(d) || !(d > 0.0))
                fail("scale factors must be positive and finite");
            scales.push_back(d);
        }
        inst.scales = std::move(scales);
    }

    if (j.contains("meta")) inst.meta = j["meta"];
    return inst;
}

InstanceFile load_instance(const std::string& path, double tol) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        fail("invalid JSON in '" + path + "': " + e.what());
    }
    return instance_from_json(j, tol);
}

ordered_json complex_to_json(const Complex& c) {
    return ordered_json::array({c.real(), c.imag()});
}

ordered_json vec_to_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v[i]));
    return a;
}

ordered_json mat_to_json(const Mat& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

ordered_json instance_to_json(const InstanceFile& inst) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = inst.dim;
    if (inst.state)
        j["state"] = vec_to_json(*inst.state);
    else if (inst.density)
        j["density"] = mat_to_json(inst.density->matrix());
    ordered_json obs = ordered_json::array();
    for (const Observable& a : inst.observables) obs.push_back(mat_to_json(a.matrix()));
    j["observables"] = obs;
    if (inst.scales) j["scales"] = *inst.scales;
    if (!inst.meta.is_null()) j["meta"] = inst.meta;
    return j;
}

void save_instance(const InstanceFile& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw PreconditionError("instance: cannot write '" + path + "'");
    out << instance_to_json(inst).dump(2) << "\n";
    if (!out)
        throw PreconditionError("instance: write to '" + path + "' failed");
}

} // namespace gurlab
