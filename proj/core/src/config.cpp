#include "rcsim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rcsim/signals.hpp"

namespace rcsim {

namespace {

using nlohmann::json;

json to_json(const DeviceParams& d) {
    return {
        {"v_dd", d.v_dd},
        {"slope_beta", d.slope_beta},
        {"noise_amp_alpha", d.noise_amp_alpha},
    };
}

json to_json(const ReservoirParams& r) {
    return {
        {"activation_gain", r.activation_gain},
        {"noise_gain", r.noise_gain},
        {"decay", r.decay},
        {"step", r.step},
        {"washout", r.washout},
        {"backend", to_string(r.backend)},
        {"voltage_scale", r.voltage_scale},
    };
}

json to_json(const TopologyGen& t) {
    return {
        {"n", t.n},
        {"inputs", t.inputs},
        {"outputs", t.outputs},
        {"connectivity", t.connectivity},
        {"spectral_radius", t.spectral_radius},
        {"input_scale", t.input_scale},
        {"fb_scale", t.fb_scale},
        {"tau0", t.tau0},
        {"d_max", t.d_max},
    };
}

json to_json(const SignalSpec& s) {
    return {
        {"kind", to_string(s.kind)},
        {"amplitude", s.amplitude},
        {"length", s.length},
        {"seed", s.seed},
        {"period", s.period},
        {"freq", s.freq},
        {"f1", s.f1},
        {"f2", s.f2},
        {"mg_a", s.mg_a},
        {"mg_b", s.mg_b},
        {"mg_p", s.mg_p},
        {"mg_tau", s.mg_tau},
    };
}

json to_json(const DistortionParams& d) {
    return {
        {"gain_jitter", d.gain_jitter},
        {"offset_jitter", d.offset_jitter},
        {"pixel_noise", d.pixel_noise},
        {"nonlinearity_gain", d.nonlinearity_gain},
    };
}

json to_json(const RunConfig& cfg) {
    json j;
    j["task"] = cfg.task;
    j["seed"] = cfg.seed;
    j["model"] = {
        {"device", to_json(cfg.model.device)},
        {"reservoir", to_json(cfg.model.reservoir)},
        {"topology", to_json(cfg.model.topology)},
    };
    j["inverter"] = {
        {"topology", to_json(cfg.inverter.topology)},
        {"reservoir", to_json(cfg.inverter.reservoir)},
        {"device", to_json(cfg.inverter.device)},
        {"signal", to_json(cfg.inverter.signal)},
        {"train_len", cfg.inverter.train_len},
        {"test_len", cfg.inverter.test_len},
        {"ridge", cfg.inverter.ridge},
        {"target_sign", cfg.inverter.target_sign},
        {"trace_neurons", cfg.inverter.trace_neurons},
    };
    j["video"] = {
        {"topology", to_json(cfg.video.topology)},
        {"reservoir", to_json(cfg.video.reservoir)},
        {"device", to_json(cfg.video.device)},
        {"glyphs", cfg.video.glyphs},
        {"glyph_dir", cfg.video.glyph_dir},
        {"frames_per_glyph", cfg.video.frames_per_glyph},
        {"train_frames", cfg.video.train_frames},
        {"test_frames", cfg.video.test_frames},
        {"distortion", to_json(cfg.video.distortion)},
        {"ridge", cfg.video.ridge},
        {"pixel_thresh", cfg.video.pixel_thresh},
    };
    j["autoencoder"] = {
        {"topology", to_json(cfg.autoencoder.topology)},
        {"reservoir", to_json(cfg.autoencoder.reservoir)},
        {"device", to_json(cfg.autoencoder.device)},
        {"signal", to_json(cfg.autoencoder.signal)},
        {"teach_len", cfg.autoencoder.teach_len},
        {"free_len", cfg.autoencoder.free_len},
        {"ridge", cfg.autoencoder.ridge},
        {"nrmse_window", cfg.autoencoder.nrmse_window},
        {"epsilon", cfg.autoencoder.epsilon},
        {"hold", cfg.autoencoder.hold},
        {"inject_len", cfg.autoencoder.inject_len},
        {"post_window", cfg.autoencoder.post_window},
    };
    return j;
}

/// Reject keys the schema does not know and values of a different JSON type;
/// recurse into objects. Arrays are checked against the schema's element
/// type when the schema array is non-empty.
void check_against_schema(const json& user, const json& schema, const std::string& path) {
    if (schema.is_object()) {
        if (!user.is_object())
            throw std::runtime_error("config: '" + path + "' must be an object");
        for (const auto& [key, value] : user.items()) {
            auto it = schema.find(key);
            if (it == schema.end())
                throw std::runtime_error("config: unknown key '" +
                                         (path.empty() ? key : path + "." + key) + "'");
            check_against_schema(value, *it, path.empty() ? key : path + "." + key);
        }
        return;
    }
    if (schema.is_array()) {
        if (!user.is_array())
            throw std::runtime_error("config: '" + path + "' must be an array");
        if (!schema.empty())
            for (std::size_t i = 0; i < user.size(); ++i)
                check_against_schema(user[i], schema[0], path + "[" + std::to_string(i) + "]");
        return;
    }
    if (schema.is_string()) {
        if (!user.is_string())
            throw std::runtime_error("config: '" + path + "' must be a string");
        return;
    }
    if (schema.is_boolean()) {
        if (!user.is_boolean())
            throw std::runtime_error("config: '" + path + "' must be a boolean");
        return;
    }
    if (schema.is_number_float()) {
        if (!user.is_number())
            throw std::runtime_error("config: '" + path + "' must be a number");
        return;
    }
    if (schema.is_number_integer() || schema.is_number_unsigned()) {
        if (!user.is_number_integer() && !user.is_number_unsigned())
            throw std::runtime_error("config: '" + path + "' must be an integer");
        return;
    }
    throw std::logic_error("config: schema holds an unexpected type at '" + path + "'");
}

void merge_into(json& base, const json& user) {
    if (!user.is_object()) {
        base = user;
        return;
    }
    for (const auto& [key, value] : user.items()) {
        if (base.contains(key) && base[key].is_object() && value.is_object())
            merge_into(base[key], value);
        else
            base[key] = value;
    }
}

void read_device(const json& j, DeviceParams& d) {
    d.v_dd = j.at("v_dd").get<double>();
    d.slope_beta = j.at("slope_beta").get<double>();
    d.noise_amp_alpha = j.at("noise_amp_alpha").get<double>();
}

void read_reservoir(const json& j, ReservoirParams& r) {
    r.activation_gain = j.at("activation_gain").get<double>();
    r.noise_gain = j.at("noise_gain").get<double>();
    r.decay = j.at("decay").get<double>();
    r.step = j.at("step").get<double>();
    r.washout = j.at("washout").get<int>();
    r.backend = backend_from_string(j.at("backend").get<std::string>());
    r.voltage_scale = j.at("voltage_scale").get<double>();
}

void read_topology(const json& j, TopologyGen& t) {
    t.n = j.at("n").get<int>();
    t.inputs = j.at("inputs").get<int>();
    t.outputs = j.at("outputs").get<int>();
    t.connectivity = j.at("connectivity").get<double>();
    t.spectral_radius = j.at("spectral_radius").get<double>();
    t.input_scale = j.at("input_scale").get<double>();
    t.fb_scale = j.at("fb_scale").get<double>();
    t.tau0 = j.at("tau0").get<double>();
    t.d_max = j.at("d_max").get<int>();
}

void read_signal(const json& j, SignalSpec& s) {
    s.kind = signal_kind_from_string(j.at("kind").get<std::string>());
    s.amplitude = j.at("amplitude").get<double>();
    s.length = j.at("length").get<long>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.period = j.at("period").get<long>();
    s.freq = j.at("freq").get<double>();
    s.f1 = j.at("f1").get<double>();
    s.f2 = j.at("f2").get<double>();
    s.mg_a = j.at("mg_a").get<double>();
    s.mg_b = j.at("mg_b").get<double>();
    s.mg_p = j.at("mg_p").get<double>();
    s.mg_tau = j.at("mg_tau").get<long>();
}

void read_distortion(const json& j, DistortionParams& d) {
    d.gain_jitter = j.at("gain_jitter").get<double>();
    d.offset_jitter = j.at("offset_jitter").get<double>();
    d.pixel_noise = j.at("pixel_noise").get<double>();
    d.nonlinearity_gain = j.at("nonlinearity_gain").get<double>();
}

RunConfig from_json(const json& j) {
    RunConfig cfg;
    cfg.task = j.at("task").get<std::string>();
    if (cfg.task != "inverter" && cfg.task != "video" && cfg.task != "autoencoder")
        throw std::runtime_error("config: task must be inverter, video, or autoencoder");
    cfg.seed = j.at("seed").get<std::uint64_t>();

    const json& model = j.at("model");
    read_device(model.at("device"), cfg.model.device);
    read_reservoir(model.at("reservoir"), cfg.model.reservoir);
    read_topology(model.at("topology"), cfg.model.topology);

    const json& inv = j.at("inverter");
    read_topology(inv.at("topology"), cfg.inverter.topology);
    read_reservoir(inv.at("reservoir"), cfg.inverter.reservoir);
    read_device(inv.at("device"), cfg.inverter.device);
    read_signal(inv.at("signal"), cfg.inverter.signal);
    cfg.inverter.train_len = inv.at("train_len").get<long>();
    cfg.inverter.test_len = inv.at("test_len").get<long>();
    cfg.inverter.ridge = inv.at("ridge").get<double>();
    cfg.inverter.target_sign = inv.at("target_sign").get<double>();
    cfg.inverter.trace_neurons = inv.at("trace_neurons").get<int>();

    const json& vid = j.at("video");
    read_topology(vid.at("topology"), cfg.video.topology);
    read_reservoir(vid.at("reservoir"), cfg.video.reservoir);
    read_device(vid.at("device"), cfg.video.device);
    cfg.video.glyphs = vid.at("glyphs").get<std::vector<std::string>>();
    cfg.video.glyph_dir = vid.at("glyph_dir").get<std::string>();
    cfg.video.frames_per_glyph = vid.at("frames_per_glyph").get<long>();
    cfg.video.train_frames = vid.at("train_frames").get<long>();
    cfg.video.test_frames = vid.at("test_frames").get<long>();
    read_distortion(vid.at("distortion"), cfg.video.distortion);
    cfg.video.ridge = vid.at("ridge").get<double>();
    cfg.video.pixel_thresh = vid.at("pixel_thresh").get<double>();

    const json& ae = j.at("autoencoder");
    read_topology(ae.at("topology"), cfg.autoencoder.topology);
    read_reservoir(ae.at("reservoir"), cfg.autoencoder.reservoir);
    read_device(ae.at("device"), cfg.autoencoder.device);
    read_signal(ae.at("signal"), cfg.autoencoder.signal);
    cfg.autoencoder.teach_len = ae.at("teach_len").get<long>();
    cfg.autoencoder.free_len = ae.at("free_len").get<long>();
    cfg.autoencoder.ridge = ae.at("ridge").get<double>();
    cfg.autoencoder.nrmse_window = ae.at("nrmse_window").get<long>();
    cfg.autoencoder.epsilon = ae.at("epsilon").get<double>();
    cfg.autoencoder.hold = ae.at("hold").get<long>();
    cfg.autoencoder.inject_len = ae.at("inject_len").get<long>();
    cfg.autoencoder.post_window = ae.at("post_window").get<long>();
    return cfg;
}

}  // namespace

std::string config_json(const RunConfig& cfg) {
    return to_json(cfg).dump(2) + "\n";
}

RunConfig parse_config(const std::string& text) {
    json user;
    try {
        user = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config: not valid JSON: ") + e.what());
    }
    json merged = to_json(RunConfig{});
    check_against_schema(user, merged, "");
    merge_into(merged, user);
    return from_json(merged);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(e.what()) + " (in '" + path + "')");
    }
}

}  // namespace rcsim
