#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipeline.hpp"
#include "rcsim/config.hpp"
#include "rcsim/csv.hpp"
#include "rcsim/model_io.hpp"
#include "rcsim/netlist.hpp"
#include "rcsim/random.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")
            ->check(CLI::ExistingFile);
        seed_opt = sub->add_option("--seed", seed, "master random seed (overrides the config)");
    }

    rcsim::RunConfig resolve() const {
        rcsim::RunConfig cfg =
            config_path.empty() ? rcsim::RunConfig{} : rcsim::load_config(config_path);
        if (seed_opt != nullptr && seed_opt->count() > 0) cfg.seed = seed;
        return cfg;
    }
};

void ensure_parent(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

rcsim::ModelFile load_model_checked(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("model not found: '" + path + "' (run the gen step first)");
    return rcsim::load_model(path);
}

void write_text(const std::string& path, const std::string& text) {
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time simulator of reservoir computers with analog "
                 "stochastic neurons and delay-line interconnects"};
    app.require_subcommand(1);

    // --- gen: build an untrained model ------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a reservoir topology and write a model file");
    CommonOpts gen_c;
    gen_c.attach(gen);
    std::string gen_out = "model.json";
    gen->add_option("-o,--out", gen_out, "output model path");
    gen->callback([&] {
        const rcsim::RunConfig cfg = gen_c.resolve();
        const rcsim::ModelFile model = rcsim::cli::gen_model(cfg, cfg.seed);
        ensure_parent(gen_out);
        rcsim::save_model(model, gen_out);
        std::cout << "wrote " << gen_out << "\n";
    });

    // --- train: fit the readout -------------------------------------------
    auto* train = app.add_subcommand("train", "harvest task states and train the readout");
    CommonOpts train_c;
    train_c.attach(train);
    std::string train_in = "model.json";
    std::string train_out = "trained.json";
    train->add_option("--model", train_in, "input model path");
    train->add_option("-o,--out", train_out, "output model path");
    train->callback([&] {
        const rcsim::RunConfig cfg = train_c.resolve();
        rcsim::ModelFile model = load_model_checked(train_in);
        rcsim::cli::train_model(model, cfg, cfg.seed);
        ensure_parent(train_out);
        rcsim::save_model(model, train_out);
        std::cout << "wrote " << train_out << "\n";
    });

    // --- run: drive the model, dump CSV ------------------------------------
    auto* run = app.add_subcommand("run", "drive a model and write its output series as CSV");
    CommonOpts run_c;
    run_c.attach(run);
    std::string run_in = "trained.json";
    std::string run_out = "run.csv";
    long run_steps = 0;
    run->add_option("--model", run_in, "model path");
    run->add_option("--steps", run_steps, "steps to emit (default: the task's test length)");
    run->add_option("-o,--out", run_out, "output CSV path");
    run->callback([&] {
        const rcsim::RunConfig cfg = run_c.resolve();
        const rcsim::ModelFile model = load_model_checked(run_in);
        const rcsim::Table table = rcsim::cli::run_model(model, cfg, cfg.seed, run_steps);
        ensure_parent(run_out);
        rcsim::emit_csv(table, run_out);
        std::cout << "wrote " << run_out << "\n";
    });

    // --- eval: score a trained model ----------------------------------------
    auto* eval = app.add_subcommand("eval", "score a trained model on held-out task data");
    CommonOpts eval_c;
    eval_c.attach(eval);
    std::string eval_in = "trained.json";
    std::string eval_out = "summary.json";
    eval->add_option("--model", eval_in, "model path");
    eval->add_option("-o,--out", eval_out, "output summary path");
    eval->callback([&] {
        const rcsim::RunConfig cfg = eval_c.resolve();
        const rcsim::ModelFile model = load_model_checked(eval_in);
        const rcsim::TaskReport rep = rcsim::cli::eval_model(model, cfg, cfg.seed);
        write_text(eval_out, rcsim::summary_json(rep));
        std::cout << rcsim::cli::report_line(rep) << "\n";
    });

    // --- demo: full benchmark pipelines -------------------------------------
    auto* demo = app.add_subcommand("demo", "run a complete benchmark pipeline");
    CommonOpts demo_c;
    demo_c.attach(demo);
    std::string demo_task;
    std::string demo_outdir = "demo_out";
    int demo_trials = 1;
    demo->add_option("task", demo_task, "inverter | video | autoencoder")
        ->required()
        ->check(CLI::IsMember({"inverter", "video", "autoencoder"}));
    demo->add_option("--outdir", demo_outdir, "directory for CSV traces and summary.json");
    demo->add_option("--trials", demo_trials, "independent repetitions with derived seeds")
        ->check(CLI::PositiveNumber);
    demo->callback([&] {
        const rcsim::RunConfig cfg = demo_c.resolve();
        if (demo_trials == 1) {
            const rcsim::TaskReport rep = rcsim::cli::run_demo(cfg, demo_task, cfg.seed);
            rcsim::cli::write_report(rep, demo_outdir);
            std::cout << rcsim::cli::report_line(rep) << "\n";
            return;
        }
        std::vector<std::future<rcsim::TaskReport>> futures;
        futures.reserve(static_cast<std::size_t>(demo_trials));
        for (int k = 0; k < demo_trials; ++k) {
            const std::uint64_t trial_seed =
                rcsim::derive_seed(cfg.seed, "trial", static_cast<std::uint64_t>(k));
            futures.push_back(std::async(std::launch::async, [&cfg, &demo_task, trial_seed] {
                return rcsim::cli::run_demo(cfg, demo_task, trial_seed);
            }));
        }
        for (int k = 0; k < demo_trials; ++k) {
            const rcsim::TaskReport rep = futures[static_cast<std::size_t>(k)].get();
            rcsim::cli::write_report(rep, demo_outdir + "/trial_" + std::to_string(k));
            std::cout << rcsim::cli::report_line(rep) << "\n";
        }
    });

    // --- export-netlist ------------------------------------------------------
    auto* netlist = app.add_subcommand("export-netlist",
                                       "write the model's wiring as an RC-line circuit listing");
    std::string netlist_in = "model.json";
    std::string netlist_out = "netlist.txt";
    double r0 = 1.0e3;
    double step_seconds = 1.0e-9;
    netlist->add_option("--model", netlist_in, "model path");
    netlist->add_option("-o,--out", netlist_out, "output netlist path");
    netlist->add_option("--r0", r0, "resistance of the strongest coupling, ohms")
        ->check(CLI::PositiveNumber);
    netlist->add_option("--step-seconds", step_seconds, "wall-clock duration of one step")
        ->check(CLI::PositiveNumber);
    netlist->callback([&] {
        const rcsim::ModelFile model = load_model_checked(netlist_in);
        ensure_parent(netlist_out);
        rcsim::export_netlist(model.topology, netlist_out, r0, step_seconds);
        std::cout << "wrote " << netlist_out << "\n";
    });

    // --- config: print the full default configuration -------------------------
    auto* config = app.add_subcommand("config", "print the default configuration document");
    config->callback([&] { std::cout << rcsim::config_json(rcsim::RunConfig{}); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
