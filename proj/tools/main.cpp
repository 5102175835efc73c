// Copyright 2026 The nqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nqst/harness.hpp"
#include "nqst/rbm.hpp"
#include "nqst/rnn.hpp"
#include "nqst/shadows.hpp"

namespace {

using namespace nqst;

void cmd_ham_info(const std::string &path) {
    const PauliHamiltonian h = load_hamiltonian(path);
    const auto bases = group_bases(h);
    std::cout << "name:               " << (h.name.empty() ? "(unnamed)" : h.name) << "\n";
    std::cout << "qubits:             " << h.n_qubits << "\n";
    std::cout << "pauli terms:        " << h.terms.size() << "\n";
    std::cout << "identity offset:    " << h.identity_offset << "\n";
    std::cout << "measurement bases:  " << bases.size() << "\n\n";
    std::cout << "basis    setting" << std::string(h.n_qubits > 7 ? h.n_qubits - 7 : 1, ' ')
              << " covered terms\n";
    for (std::size_t k = 0; k < bases.size(); ++k) {
        std::cout << k << "\t " << bases[k].ops_string() << "  ";
        for (std::size_t t : bases[k].covered_terms) {
            std::cout << h.terms[t].ops_string() << " ";
        }
        std::cout << "\n";
    }
}

void cmd_ground(const std::string &ham_path, const std::string &out_path) {
    const PauliHamiltonian h = load_hamiltonian(ham_path);
    const GroundstateResult result = groundstate(h);
    std::cout << "energy:        " << result.energy << " Ha\n";
    std::cout << "residual norm: " << result.residual_norm << "\n";
    if (!out_path.empty()) {
        save_statevector(result.state, out_path);
        std::cout << "state written to " << out_path << "\n";
    }
}

void cmd_sample(const std::string &ham_path, uint64_t shots, uint64_t seed,
                const std::string &out_path) {
    const PauliHamiltonian h = load_hamiltonian(ham_path);
    const GroundstateResult gs = groundstate(h);
    const auto bases = group_bases(h);
    const Dataset data = sample_dataset(gs.state, bases, shots, seed);
    save_dataset(data, out_path);
    std::size_t unique = 0;
    for (const auto &hist : data.histograms) {
        unique += hist.size();
    }
    std::cout << shots << " shots over " << bases.size() << " bases -> " << unique
              << " unique (basis, outcome) entries in " << out_path << "\n";
}

void cmd_train(const std::string &model_kind, const std::string &ham_path,
               const std::string &data_path, int n_hidden, double lr, int epochs, uint64_t seed,
               int checkpoint_every, const std::string &out_path,
               const std::string &history_path) {
    const PauliHamiltonian h = load_hamiltonian(ham_path);
    const GroundstateResult gs = groundstate(h);
    const Dataset data = load_dataset(data_path);

    std::unique_ptr<WavefunctionModel> model;
    if (model_kind == "rbm") {
        model = std::make_unique<RbmModel>(RbmModel::random_init(h.n_qubits, n_hidden, seed));
    } else {
        model = std::make_unique<RnnModel>(RnnModel::random_init(h.n_qubits, n_hidden, seed));
    }

    TrainConfig cfg;
    cfg.learning_rate = lr;
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.checkpoint_every = checkpoint_every;
    if (!history_path.empty() && cfg.checkpoint_every <= 0) {
        cfg.checkpoint_every = std::max(1, epochs / 200);
    }

    std::ofstream history;
    if (!history_path.empty()) {
        history.open(history_path);
        history << "epoch,loss,epsilon,delta\n";
        history.precision(17);
    }
    FitObserver observer = nullptr;
    if (history.is_open()) {
        observer = [&](int epoch, double loss_value, const WavefunctionModel &m) {
            const StateVector state = m.to_statevector();
            history << epoch << ',' << loss_value << ',' << epsilon(state, h, gs) << ','
                    << delta(state, gs.state) << '\n';
        };
    }

    const FitResult result = fit(*model, data, cfg, observer);
    if (result.aborted) {
        std::cerr << "warning: training aborted at epoch " << result.completed_epochs
                  << " (non-finite loss); keeping the last good parameters\n";
    }
    save_model(*model, out_path);

    const StateVector state = model->to_statevector();
    std::cout << "final loss: "
              << (result.loss_history.empty() ? 0.0 : result.loss_history.back()) << "\n";
    std::cout << "epsilon:    " << epsilon(state, h, gs) << " Ha\n";
    std::cout << "delta:      " << delta(state, gs.state) << "\n";
    std::cout << "model written to " << out_path << "\n";
}

void cmd_mle(const std::string &ham_path, const std::string &data_path, const std::string &start,
             int max_iterations, double tol, const std::string &out_path,
             const std::string &traj_path) {
    const PauliHamiltonian h = load_hamiltonian(ham_path);
    const GroundstateResult gs = groundstate(h);
    const Dataset data = load_dataset(data_path);

    StateVector start_state;
    if (start == "exact") {
        start_state = gs.state;
    } else {
        start_state = load_model(start)->to_statevector();
    }

    FixedPointConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.convergence_tol = tol;
    MleContext ctx;
    ctx.hamiltonian = &h;
    ctx.exact = &gs;
    const IterateResult result = iterate(start_state, data, cfg, ctx);

    if (!result.converged) {
        std::cerr << "warning: fixed-point iteration did not converge within " << max_iterations
                  << " iterations\n";
    }
    std::cout << "iterations: " << result.trajectory.points.back().iteration << "\n";
    std::cout << "final loss: " << result.final_loss << "\n";
    std::cout << "epsilon:    " << epsilon(result.state, h, gs) << " Ha\n";
    std::cout << "delta:      " << delta(result.state, gs.state) << "\n";
    if (!out_path.empty()) {
        save_statevector(result.state, out_path);
    }
    if (!traj_path.empty()) {
        std::ofstream traj(traj_path);
        traj << "iter,loss,epsilon,delta,step_norm\n";
        traj.precision(17);
        for (const auto &pt : result.trajectory.points) {
            traj << pt.iteration << ',' << pt.loss << ',' << pt.epsilon << ',' << pt.delta << ','
                 << pt.step_norm << '\n';
        }
    }
}

void cmd_shadows(const std::string &ham_path, uint64_t shots, uint64_t seed,
                 const std::string &out_path) {
    const PauliHamiltonian h = load_hamiltonian(ham_path);
    const GroundstateResult gs = groundstate(h);
    const ShadowEstimate est = shadow_energy(h, gs.state, shots, seed);
    std::cout << "estimated energy: " << est.energy << " Ha\n";
    std::cout << "exact energy:     " << gs.energy << " Ha\n";
    std::cout << "energy error:     " << shadow_epsilon(est.energy, gs) << " Ha\n";
    if (!out_path.empty()) {
        nlohmann::json j;
        j["energy"] = est.energy;
        j["shots"] = est.shots;
        j["seed"] = seed;
        j["exact_energy"] = gs.energy;
        j["epsilon"] = shadow_epsilon(est.energy, gs);
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

void cmd_fit(const std::string &records_path, const std::string &quality,
             const std::string &out_path) {
    const auto records = load_records_csv(records_path);
    const bool use_delta = quality == "delta";
    nlohmann::json j;
    for (Method method : {Method::rbm, Method::rnn, Method::wavefunction, Method::shadows}) {
        const auto points = aggregate_by_shots(records, method, use_delta);
        std::vector<std::pair<double, double>> fit_points;
        for (const auto &pt : points) {
            if (pt.mean > 0.0) {
                fit_points.emplace_back(static_cast<double>(pt.shots), pt.mean);
            }
        }
        if (fit_points.size() < 3) {
            continue;
        }
        const PowerLawFit fit = fit_power_law(fit_points);
        nlohmann::json f;
        f["slope"] = fit.slope;
        f["intercept"] = fit.intercept;
        f["r_squared"] = fit.r_squared;
        for (const auto &pt : points) {
            f["points"].push_back(
                {{"shots", pt.shots}, {"mean", pt.mean}, {"sem", pt.sem}, {"count", pt.count}});
        }
        j[method_name(method)] = std::move(f);
        std::cout << method_name(method) << " " << quality << " slope " << fit.slope
                  << " (R^2 " << fit.r_squared << ")\n";
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
}

void cmd_sweep(const std::string &plan_path, const std::string &manifest_path,
               const std::string &records_path, const std::string &hist_path, int workers) {
    SweepPlan plan = load_plan(plan_path);
    if (workers > 0) {
        plan.workers = workers;
    } else if (const char *env = std::getenv("NQST_WORKERS")) {
        plan.workers = std::max(1, std::atoi(env));
    }
    const RunManifest manifest = run_sweep(plan);
    for (const auto &err : manifest.errors) {
        std::cerr << "run failed: " << err << "\n";
    }
    for (const auto &mf : manifest.fits) {
        std::cout << method_name(mf.method) << ": epsilon slope " << mf.epsilon_fit.slope
                  << " (R^2 " << mf.epsilon_fit.r_squared << ")";
        if (mf.delta_fit.has_value()) {
            std::cout << ", delta slope " << mf.delta_fit->slope << " (R^2 "
                      << mf.delta_fit->r_squared << ")";
        }
        std::cout << "\n";
    }
    std::cout << manifest.records.size() << " records in " << manifest.wall_time_seconds
              << " s\n";
    if (!manifest_path.empty()) {
        save_manifest(manifest, manifest_path);
    }
    if (!records_path.empty()) {
        save_records_csv(manifest.records, records_path);
    }
    if (!hist_path.empty()) {
        emit_histograms(manifest, 40, hist_path);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Groundstate reconstruction from projective measurement data: "
                 "generative models, fixed-point tomography, classical shadows, "
                 "and sample-complexity scaling."};
    app.require_subcommand(1);

    std::string ham_path, data_path, out_path, traj_path, history_path, start = "exact";
    std::string records_path, quality = "epsilon", plan_path, manifest_path, hist_path;
    std::string model_path;
    uint64_t shots = 1000, seed = 0;
    int n_hidden = 4, epochs = 10000, max_iterations = 10000, checkpoint_every = 0, workers = 0;
    double lr = 1e-3, tol = 1e-10;

    auto *info = app.add_subcommand("ham-info", "Summarize a Hamiltonian file");
    info->add_option("hamiltonian", ham_path)->required();

    auto *ground = app.add_subcommand("ground", "Exact groundstate by diagonalization");
    ground->add_option("hamiltonian", ham_path)->required();
    ground->add_option("--out", out_path, "Binary state output");

    auto *sample = app.add_subcommand("sample", "Generate a synthetic measurement dataset");
    sample->add_option("hamiltonian", ham_path)->required();
    sample->add_option("--shots", shots)->required();
    sample->add_option("--seed", seed);
    sample->add_option("--out", out_path)->required();

    auto add_train = [&](const char *name, const char *desc) {
        auto *cmd = app.add_subcommand(name, desc);
        cmd->add_option("hamiltonian", ham_path)->required();
        cmd->add_option("dataset", data_path)->required();
        cmd->add_option("--nh", n_hidden, "Hidden units");
        cmd->add_option("--lr", lr, "Learning rate");
        cmd->add_option("--epochs", epochs);
        cmd->add_option("--seed", seed);
        cmd->add_option("--checkpoint-every", checkpoint_every,
                        "History row interval (0 = final only)");
        cmd->add_option("--out", out_path)->required();
        cmd->add_option("--history", history_path, "Loss/epsilon/delta history CSV");
        return cmd;
    };
    auto *train_rbm = add_train("train-rbm", "Train a complex RBM on a dataset");
    auto *train_rnn = add_train("train-rnn", "Train a complex RNN on a dataset");

    auto *mle = app.add_subcommand("mle", "Fixed-point wavefunction tomography");
    mle->add_option("hamiltonian", ham_path)->required();
    mle->add_option("dataset", data_path)->required();
    mle->add_option("--start", start, "exact | model checkpoint path");
    mle->add_option("--max-iterations", max_iterations);
    mle->add_option("--tol", tol);
    mle->add_option("--out", out_path, "Binary state output");
    mle->add_option("--traj", traj_path, "Trajectory CSV");

    auto *shadows_cmd = app.add_subcommand("shadows", "Uniform classical-shadow energy estimate");
    shadows_cmd->add_option("hamiltonian", ham_path)->required();
    shadows_cmd->add_option("--shots", shots)->required();
    shadows_cmd->add_option("--seed", seed);
    shadows_cmd->add_option("--out", out_path, "Estimate JSON output");

    auto *fit_cmd = app.add_subcommand("fit", "Power-law fit over a records CSV");
    fit_cmd->add_option("records", records_path)->required();
    fit_cmd->add_option("--quality", quality)->check(CLI::IsMember({"epsilon", "delta"}));
    fit_cmd->add_option("--out", out_path, "Fit JSON output");

    auto *sweep = app.add_subcommand("sweep", "Run a scaling sweep plan");
    sweep->add_option("plan", plan_path)->required();
    sweep->add_option("--out", manifest_path, "Manifest JSON output");
    sweep->add_option("--records", records_path, "Records CSV output");
    sweep->add_option("--hist", hist_path, "Quality histogram CSV output");
    sweep->add_option("--workers", workers, "Worker threads (default: NQST_WORKERS or 1)");

    auto *traj = app.add_subcommand("traj", "Fixed-point trajectory from a trained model");
    traj->add_option("hamiltonian", ham_path)->required();
    traj->add_option("model", model_path)->required();
    traj->add_option("dataset", data_path)->required();
    traj->add_option("--out", out_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) {
            cmd_ham_info(ham_path);
        } else if (ground->parsed()) {
            cmd_ground(ham_path, out_path);
        } else if (sample->parsed()) {
            cmd_sample(ham_path, shots, seed, out_path);
        } else if (train_rbm->parsed() || train_rnn->parsed()) {
            cmd_train(train_rbm->parsed() ? "rbm" : "rnn", ham_path, data_path, n_hidden, lr,
                      epochs, seed, checkpoint_every, out_path, history_path);
        } else if (mle->parsed()) {
            cmd_mle(ham_path, data_path, start, max_iterations, tol, out_path, traj_path);
        } else if (shadows_cmd->parsed()) {
            cmd_shadows(ham_path, shots, seed, out_path);
        } else if (fit_cmd->parsed()) {
            cmd_fit(records_path, quality, out_path);
        } else if (sweep->parsed()) {
            cmd_sweep(plan_path, manifest_path, records_path, hist_path, workers);
        } else if (traj->parsed()) {
            emit_trajectory_comparison(ham_path, model_path, data_path, out_path);
            std::cout << "trajectory written to " << out_path << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
