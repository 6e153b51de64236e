#include "rcsim/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "json.hpp"

namespace rcsim {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json int_matrix_to_json(const Eigen::MatrixXi& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

const json& require(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error(std::string("model: missing key '") + key + "' in " + where);
    return *it;
}

template <typename Mat>
Mat matrix_from_json(const json& j, const char* what) {
    if (!j.is_array())
        throw std::runtime_error(std::string("model: ") + what + " must be an array of rows");
    const long rows = static_cast<long>(j.size());
    long cols = -1;
    for (const json& row : j) {
        if (!row.is_array())
            throw std::runtime_error(std::string("model: ") + what + " row is not an array");
        if (cols < 0)
            cols = static_cast<long>(row.size());
        else if (static_cast<long>(row.size()) != cols)
            throw std::runtime_error(std::string("model: ") + what + " has ragged rows");
    }
    if (cols < 0) cols = 0;
    Mat m(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c) {
            const json& cell = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if constexpr (std::is_integral_v<typename Mat::Scalar>) {
                if (!cell.is_number_integer() && !cell.is_number_unsigned())
                    throw std::runtime_error(std::string("model: ") + what +
                                             " holds a non-integer");
            } else {
                if (!cell.is_number())
                    throw std::runtime_error(std::string("model: ") + what +
                                             " holds a non-number");
            }
            m(r, c) = cell.get<typename Mat::Scalar>();
        }
    return m;
}

}  // namespace

void ModelFile::validate() const {
    if (format_version != kFormatVersion)
        throw std::invalid_argument("model: unsupported format_version " +
                                    std::to_string(format_version));
    device.validate();
    reservoir.validate();
    topology.validate();
    if (readout) {
        if (readout->w_out.rows() != topology.outputs || readout->w_out.cols() != topology.n)
            throw std::invalid_argument("model: readout shape does not match topology");
        if (!readout->w_out.allFinite()) throw std::invalid_argument("model: non-finite readout");
    }
}

std::string model_json(const ModelFile& model) {
    model.validate();
    json j;
    j["format_version"] = model.format_version;
    j["device"] = {
        {"v_dd", model.device.v_dd},
        {"slope_beta", model.device.slope_beta},
        {"noise_amp_alpha", model.device.noise_amp_alpha},
    };
    j["reservoir"] = {
        {"activation_gain", model.reservoir.activation_gain},
        {"noise_gain", model.reservoir.noise_gain},
        {"decay", model.reservoir.decay},
        {"step", model.reservoir.step},
        {"washout", model.reservoir.washout},
        {"backend", to_string(model.reservoir.backend)},
        {"voltage_scale", model.reservoir.voltage_scale},
    };
    j["topology"] = {
        {"n", model.topology.n},
        {"inputs", model.topology.inputs},
        {"outputs", model.topology.outputs},
        {"d_max", model.topology.d_max},
        {"spectral_radius", model.topology.spectral_radius},
        {"seed", model.topology.seed},
        {"w_in", matrix_to_json(model.topology.w_in)},
        {"w_self", matrix_to_json(model.topology.w_self)},
        {"w_fb", matrix_to_json(model.topology.w_fb)},
        {"delays", int_matrix_to_json(model.topology.delays)},
    };
    if (model.readout) {
        j["readout"] = {
            {"w_out", matrix_to_json(model.readout->w_out)},
            {"samples", model.readout->trained_on.samples},
            {"ridge", model.readout->trained_on.ridge},
            {"seed", model.readout->trained_on.seed},
        };
    }
    return j.dump(2) + "\n";
}

void save_model(const ModelFile& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("model: cannot write '" + path + "'");
    out << model_json(model);
    if (!out) throw std::runtime_error("model: write to '" + path + "' failed");
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("model: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw std::runtime_error("model: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("model: '" + path + "' is not a JSON object");

    ModelFile model;
    const json& version = require(j, "format_version", "model");
    if (!version.is_number_integer() && !version.is_number_unsigned())
        throw std::runtime_error("model: format_version must be an integer");
    model.format_version = version.get<int>();
    if (model.format_version != ModelFile::kFormatVersion)
        throw std::runtime_error("model: unsupported format_version " +
                                 std::to_string(model.format_version));

    const json& dev = require(j, "device", "model");
    model.device.v_dd = require(dev, "v_dd", "device").get<double>();
    model.device.slope_beta = require(dev, "slope_beta", "device").get<double>();
    model.device.noise_amp_alpha = require(dev, "noise_amp_alpha", "device").get<double>();

    const json& res = require(j, "reservoir", "model");
    model.reservoir.activation_gain = require(res, "activation_gain", "reservoir").get<double>();
    model.reservoir.noise_gain = require(res, "noise_gain", "reservoir").get<double>();
    model.reservoir.decay = require(res, "decay", "reservoir").get<double>();
    model.reservoir.step = require(res, "step", "reservoir").get<double>();
    model.reservoir.washout = require(res, "washout", "reservoir").get<int>();
    model.reservoir.backend =
        backend_from_string(require(res, "backend", "reservoir").get<std::string>());
    model.reservoir.voltage_scale = require(res, "voltage_scale", "reservoir").get<double>();

    const json& topo = require(j, "topology", "model");
    model.topology.n = require(topo, "n", "topology").get<int>();
    model.topology.inputs = require(topo, "inputs", "topology").get<int>();
    model.topology.outputs = require(topo, "outputs", "topology").get<int>();
    model.topology.d_max = require(topo, "d_max", "topology").get<int>();
    model.topology.spectral_radius =
        require(topo, "spectral_radius", "topology").get<double>();
    model.topology.seed = require(topo, "seed", "topology").get<std::uint64_t>();
    model.topology.w_in =
        matrix_from_json<Eigen::MatrixXd>(require(topo, "w_in", "topology"), "w_in");
    model.topology.w_self =
        matrix_from_json<Eigen::MatrixXd>(require(topo, "w_self", "topology"), "w_self");
    model.topology.w_fb =
        matrix_from_json<Eigen::MatrixXd>(require(topo, "w_fb", "topology"), "w_fb");
    model.topology.delays =
        matrix_from_json<Eigen::MatrixXi>(require(topo, "delays", "topology"), "delays");

    if (auto it = j.find("readout"); it != j.end()) {
        ReadoutWeights w;
        w.w_out = matrix_from_json<Eigen::MatrixXd>(require(*it, "w_out", "readout"), "w_out");
        w.trained_on.samples = require(*it, "samples", "readout").get<long>();
        w.trained_on.ridge = require(*it, "ridge", "readout").get<double>();
        w.trained_on.seed = require(*it, "seed", "readout").get<std::uint64_t>();
        model.readout = std::move(w);
    }

    try {
        model.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error("model: '" + path + "' failed validation: " + e.what());
    }
    return model;
}

}  // namespace rcsim
