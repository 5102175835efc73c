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

#include "nqst/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "nqst/rbm.hpp"
#include "nqst/rng.hpp"
#include "nqst/rnn.hpp"
#include "nqst/shadows.hpp"

namespace nqst {

namespace {

uint64_t run_seed(const SweepPlan &plan, Method method, uint64_t shots, int rep) {
    return derive_seed(plan.base_seed, {static_cast<uint64_t>(method), shots,
                                        static_cast<uint64_t>(rep)});
}

struct SweepFixture {
    PauliHamiltonian h;
    GroundstateResult exact;
    std::vector<MeasurementBasis> bases;
};

ScalingRecord execute_run(const SweepFixture &fx, const SweepPlan &plan, Method method,
                          uint64_t shots, int rep) {
    const uint64_t seed = run_seed(plan, method, shots, rep);
    ScalingRecord record;
    record.method = method;
    record.shots = shots;
    record.seed = seed;

    if (method == Method::shadows) {
        const ShadowEstimate est = shadow_energy(fx.h, fx.exact.state, shots, seed);
        record.epsilon = shadow_epsilon(est.energy, fx.exact);
        return record;
    }

    const Dataset data = sample_dataset(fx.exact.state, fx.bases, shots, seed);
    StateVector reconstructed;
    switch (method) {
        case Method::wavefunction: {
            reconstructed = iterate(fx.exact.state, data, plan.mle).state;
            break;
        }
        case Method::rbm: {
            RbmModel model = RbmModel::random_init(fx.h.n_qubits, plan.rbm.n_hidden, seed);
            TrainConfig cfg;
            cfg.learning_rate = plan.rbm.learning_rate;
            cfg.epochs = plan.rbm.epochs;
            cfg.seed = seed;
            fit(model, data, cfg);
            reconstructed = model.to_statevector();
            break;
        }
        case Method::rnn: {
            RnnModel model = RnnModel::random_init(fx.h.n_qubits, plan.rnn.n_hidden, seed);
            TrainConfig cfg;
            cfg.learning_rate = plan.rnn.learning_rate;
            cfg.epochs = plan.rnn.epochs;
            cfg.seed = seed;
            fit(model, data, cfg);
            reconstructed = model.to_statevector();
            break;
        }
        default:
            throw std::logic_error("unreachable");
    }
    record.epsilon = epsilon(reconstructed, fx.h, fx.exact);
    record.delta = delta(reconstructed, fx.exact.state);
    record.g_error = generalization_error(reconstructed, fx.exact.state, fx.bases);
    return record;
}

}  // namespace

void SweepPlan::validate() const {
    if (methods.empty()) {
        throw std::invalid_argument("sweep plan has no methods");
    }
    if (shot_grid.empty()) {
        throw std::invalid_argument("sweep plan has an empty shot grid");
    }
    for (std::size_t i = 0; i < shot_grid.size(); ++i) {
        if (shot_grid[i] == 0 || (i > 0 && shot_grid[i] <= shot_grid[i - 1])) {
            throw std::invalid_argument("shot grid must be strictly increasing and positive");
        }
    }
    if (repetitions < 1) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("worker count must be at least 1");
    }
}

SweepPlan parse_plan(const std::string &json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("malformed plan JSON: ") + e.what());
    }
    SweepPlan plan;
    plan.hamiltonian_path = j.at("hamiltonian").get<std::string>();
    for (const auto &name : j.at("methods")) {
        plan.methods.push_back(method_from_name(name.get<std::string>()));
    }
    for (const auto &s : j.at("shot_grid")) {
        plan.shot_grid.push_back(s.get<uint64_t>());
    }
    plan.repetitions = j.value("repetitions", 20);
    plan.base_seed = j.value("base_seed", uint64_t{1});
    plan.workers = j.value("workers", 1);
    auto read_model = [&](const char *key, ModelSweepOptions &opts) {
        if (j.contains(key)) {
            const auto &m = j.at(key);
            opts.n_hidden = m.value("n_hidden", opts.n_hidden);
            opts.learning_rate = m.value("learning_rate", opts.learning_rate);
            opts.epochs = m.value("epochs", opts.epochs);
        }
    };
    read_model("rbm", plan.rbm);
    read_model("rnn", plan.rnn);
    if (j.contains("mle")) {
        const auto &m = j.at("mle");
        plan.mle.max_iterations = m.value("max_iterations", plan.mle.max_iterations);
        plan.mle.convergence_tol = m.value("tol", plan.mle.convergence_tol);
    }
    plan.validate();
    return plan;
}

SweepPlan load_plan(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open plan file: " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_plan(text);
}

RunManifest run_sweep(const SweepPlan &plan) {
    plan.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SweepFixture fx;
    fx.h = load_hamiltonian(plan.hamiltonian_path);
    fx.exact = groundstate(fx.h);
    fx.bases = group_bases(fx.h);

    struct RunSpec {
        Method method;
        uint64_t shots;
        int rep;
    };
    std::vector<RunSpec> specs;
    for (Method method : plan.methods) {
        for (uint64_t shots : plan.shot_grid) {
            for (int rep = 0; rep < plan.repetitions; ++rep) {
                specs.push_back({method, shots, rep});
            }
        }
    }

    std::vector<std::optional<ScalingRecord>> slots(specs.size());
    std::vector<std::string> errors;
    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) {
                return;
            }
            const RunSpec &spec = specs[i];
            try {
                slots[i] = execute_run(fx, plan, spec.method, spec.shots, spec.rep);
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                errors.push_back(method_name(spec.method) + " S=" + std::to_string(spec.shots) +
                                 " rep=" + std::to_string(spec.rep) + ": " + e.what());
            }
        }
    };
    const int thread_count = std::min<int>(plan.workers, static_cast<int>(specs.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < thread_count; ++t) {
            threads.emplace_back(worker);
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    RunManifest manifest;
    manifest.plan = plan;
    manifest.errors = std::move(errors);
    for (auto &slot : slots) {
        if (slot.has_value()) {
            manifest.records.push_back(std::move(*slot));
        }
    }

    for (Method method : plan.methods) {
        MethodFit mf;
        mf.method = method;
        mf.epsilon_points = aggregate_by_shots(manifest.records, method, false);
        std::vector<std::pair<double, double>> eps_points;
        for (const auto &pt : mf.epsilon_points) {
            if (pt.mean > 0.0) {
                eps_points.emplace_back(static_cast<double>(pt.shots), pt.mean);
            }
        }
        if (eps_points.size() >= 3) {
            mf.epsilon_fit = fit_power_law(eps_points);
        }
        if (method != Method::shadows) {
            mf.delta_points = aggregate_by_shots(manifest.records, method, true);
            std::vector<std::pair<double, double>> delta_points;
            for (const auto &pt : mf.delta_points) {
                if (pt.mean > 0.0) {
                    delta_points.emplace_back(static_cast<double>(pt.shots), pt.mean);
                }
            }
            if (delta_points.size() >= 3) {
                mf.delta_fit = fit_power_law(delta_points);
            }
        }
        manifest.fits.push_back(std::move(mf));
    }

    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return manifest;
}

void save_manifest(const RunManifest &manifest, const std::string &path) {
    nlohmann::json j;
    j["version"] = manifest.version;
    j["rng_scheme"] = manifest.rng_scheme;
    j["wall_time_seconds"] = manifest.wall_time_seconds;

    nlohmann::json plan;
    plan["hamiltonian"] = manifest.plan.hamiltonian_path;
    for (Method m : manifest.plan.methods) {
        plan["methods"].push_back(method_name(m));
    }
    plan["shot_grid"] = manifest.plan.shot_grid;
    plan["repetitions"] = manifest.plan.repetitions;
    plan["base_seed"] = manifest.plan.base_seed;
    plan["workers"] = manifest.plan.workers;
    plan["rbm"] = {{"n_hidden", manifest.plan.rbm.n_hidden},
                   {"learning_rate", manifest.plan.rbm.learning_rate},
                   {"epochs", manifest.plan.rbm.epochs}};
    plan["rnn"] = {{"n_hidden", manifest.plan.rnn.n_hidden},
                   {"learning_rate", manifest.plan.rnn.learning_rate},
                   {"epochs", manifest.plan.rnn.epochs}};
    plan["mle"] = {{"max_iterations", manifest.plan.mle.max_iterations},
                   {"tol", manifest.plan.mle.convergence_tol}};
    j["plan"] = std::move(plan);

    nlohmann::json records = nlohmann::json::array();
    for (const auto &r : manifest.records) {
        nlohmann::json rec;
        rec["method"] = method_name(r.method);
        rec["shots"] = r.shots;
        rec["seed"] = r.seed;
        rec["epsilon"] = r.epsilon;
        if (r.delta.has_value()) {
            rec["delta"] = *r.delta;
        }
        if (r.g_error.has_value() && std::isfinite(*r.g_error)) {
            rec["g_error"] = *r.g_error;
        }
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    j["errors"] = manifest.errors;

    nlohmann::json fits = nlohmann::json::array();
    for (const auto &mf : manifest.fits) {
        nlohmann::json f;
        f["method"] = method_name(mf.method);
        f["epsilon"] = {{"slope", mf.epsilon_fit.slope},
                        {"intercept", mf.epsilon_fit.intercept},
                        {"r_squared", mf.epsilon_fit.r_squared}};
        if (mf.delta_fit.has_value()) {
            f["delta"] = {{"slope", mf.delta_fit->slope},
                          {"intercept", mf.delta_fit->intercept},
                          {"r_squared", mf.delta_fit->r_squared}};
        }
        nlohmann::json points = nlohmann::json::array();
        for (const auto &pt : mf.epsilon_points) {
            points.push_back(
                {{"shots", pt.shots}, {"mean", pt.mean}, {"sem", pt.sem}, {"count", pt.count}});
        }
        f["epsilon_points"] = std::move(points);
        fits.push_back(std::move(f));
    }
    j["fits"] = std::move(fits);

    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open manifest file for writing: " + path);
    }
    out << j.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("failed writing manifest file: " + path);
    }
}

void emit_histograms(const RunManifest &manifest, int bins, const std::string &path) {
    if (bins < 1) {
        throw std::invalid_argument("bin count must be positive");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open histogram file for writing: " + path);
    }
    out << "method,quality,shots,bin_low,bin_high,count\n";
    out.precision(17);

    for (Method method :
         {Method::rbm, Method::rnn, Method::wavefunction, Method::shadows}) {
        for (const bool use_delta : {false, true}) {
            std::vector<std::pair<uint64_t, double>> values;
            for (const auto &r : manifest.records) {
                if (r.method != method) {
                    continue;
                }
                if (use_delta) {
                    if (r.delta.has_value() && *r.delta > 0.0) {
                        values.emplace_back(r.shots, *r.delta);
                    }
                } else if (r.epsilon > 0.0) {
                    values.emplace_back(r.shots, r.epsilon);
                }
            }
            if (values.empty()) {
                continue;
            }
            double lo = values.front().second, hi = lo;
            for (const auto &[shots, v] : values) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double log_lo = std::log10(lo);
            const double log_hi = std::log10(hi) + 1e-12;
            const double width = (log_hi - log_lo) / bins;

            std::map<std::pair<uint64_t, int>, uint64_t> counts;
            for (const auto &[shots, v] : values) {
                int bin = width > 0.0 ? static_cast<int>((std::log10(v) - log_lo) / width) : 0;
                bin = std::clamp(bin, 0, bins - 1);
                ++counts[{shots, bin}];
            }
            const char *quality = use_delta ? "delta" : "epsilon";
            for (const auto &[key, count] : counts) {
                const auto &[shots, bin] = key;
                out << method_name(method) << ',' << quality << ',' << shots << ','
                    << std::pow(10.0, log_lo + bin * width) << ','
                    << std::pow(10.0, log_lo + (bin + 1) * width) << ',' << count << '\n';
            }
        }
    }
}

void emit_trajectory_comparison(const std::string &hamiltonian_path,
                                const std::string &model_path, const std::string &data_path,
                                const std::string &out_path) {
    const PauliHamiltonian h = load_hamiltonian(hamiltonian_path);
    const GroundstateResult exact = groundstate(h);
    const Dataset data = load_dataset(data_path);
    const auto model = load_model(model_path);
    if (model->n_qubits() != h.n_qubits) {
        throw std::invalid_argument("model and Hamiltonian qubit counts differ");
    }

    FixedPointConfig cfg;
    const double loss_floor = loss_minimum_estimate(exact.state, data, cfg);

    MleContext ctx;
    ctx.hamiltonian = &h;
    ctx.exact = &exact;
    const IterateResult result = iterate(model->to_statevector(), data, cfg, ctx);

    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot open trajectory file for writing: " + out_path);
    }
    out << "iter,loss,epsilon,delta,step_norm,loss_floor\n";
    out.precision(17);
    for (const auto &pt : result.trajectory.points) {
        out << pt.iteration << ',' << pt.loss << ',' << pt.epsilon << ',' << pt.delta << ','
            << pt.step_norm << ',' << loss_floor << '\n';
    }
}

}  // namespace nqst
