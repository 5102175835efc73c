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

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "nqst/harness.hpp"
#include "nqst/rnn.hpp"
#include "test_util.hpp"

using namespace nqst;

namespace {

std::string write_tfim_file() {
    const std::string path = "test_harness_tfim.json";
    std::ofstream out(path);
    out << serialize_hamiltonian(nqst::testing::tfim(3));
    return path;
}

SweepPlan tiny_plan(const std::string &ham_path) {
    SweepPlan plan;
    plan.hamiltonian_path = ham_path;
    plan.methods = {Method::shadows, Method::wavefunction};
    plan.shot_grid = {200, 800, 3200};
    plan.repetitions = 3;
    plan.base_seed = 5;
    plan.workers = 1;
    plan.mle.max_iterations = 2000;
    return plan;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("plan json parsing and validation") {
    const auto plan = parse_plan(R"({
        "hamiltonian": "ham.json",
        "methods": ["shadows", "rbm"],
        "shot_grid": [1000, 10000],
        "repetitions": 7,
        "base_seed": 99,
        "workers": 2,
        "rbm": {"n_hidden": 6, "learning_rate": 0.01, "epochs": 500},
        "mle": {"max_iterations": 123, "tol": 1e-8}
    })");
    CHECK(plan.hamiltonian_path == "ham.json");
    REQUIRE(plan.methods.size() == 2);
    CHECK(plan.methods[0] == Method::shadows);
    CHECK(plan.methods[1] == Method::rbm);
    CHECK(plan.shot_grid == std::vector<uint64_t>{1000, 10000});
    CHECK(plan.repetitions == 7);
    CHECK(plan.base_seed == 99);
    CHECK(plan.workers == 2);
    CHECK(plan.rbm.n_hidden == 6);
    CHECK(plan.rbm.epochs == 500);
    CHECK(plan.mle.max_iterations == 123);
    plan.validate();

    SweepPlan bad = plan;
    bad.methods.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = plan;
    bad.shot_grid = {1000, 1000};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = plan;
    bad.shot_grid = {1000, 100};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = plan;
    bad.repetitions = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sweep results are independent of the worker count") {
    const std::string ham = write_tfim_file();
    auto plan = tiny_plan(ham);
    const auto serial = run_sweep(plan);
    plan.workers = 4;
    const auto parallel = run_sweep(plan);
    std::remove(ham.c_str());
    REQUIRE(serial.records.size() == parallel.records.size());
    CHECK(serial.errors.empty());
    CHECK(parallel.errors.empty());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        const auto &a = serial.records[i];
        const auto &b = parallel.records[i];
        CHECK(a.method == b.method);
        CHECK(a.shots == b.shots);
        CHECK(a.seed == b.seed);
        CHECK(a.epsilon == b.epsilon);  // bit-identical
        CHECK(a.delta == b.delta);
    }
}

TEST_CASE("sweep records cover the full grid with distinct seeds") {
    const std::string ham = write_tfim_file();
    const auto plan = tiny_plan(ham);
    const auto manifest = run_sweep(plan);
    std::remove(ham.c_str());
    CHECK(manifest.records.size() ==
          plan.methods.size() * plan.shot_grid.size() *
              static_cast<std::size_t>(plan.repetitions));
    std::set<uint64_t> seeds;
    for (const auto &r : manifest.records) {
        seeds.insert(r.seed);
        CHECK(std::isfinite(r.epsilon));
        if (r.method == Method::wavefunction) {
            CHECK(r.delta.has_value());
            CHECK(r.epsilon >= -1e-9);
        }
    }
    CHECK(seeds.size() == manifest.records.size());  // disjoint streams
    CHECK(manifest.fits.size() == plan.methods.size());
    CHECK(manifest.version == kVersion);
}

TEST_CASE("manifest and histogram files are written") {
    const std::string ham = write_tfim_file();
    auto plan = tiny_plan(ham);
    plan.repetitions = 2;
    const auto manifest = run_sweep(plan);
    const std::string manifest_path = "test_harness_manifest.json";
    const std::string hist_path = "test_harness_hist.csv";
    save_manifest(manifest, manifest_path);
    emit_histograms(manifest, 8, hist_path);
    {
        std::ifstream in(manifest_path);
        REQUIRE(in.good());
        nlohmann::json j;
        in >> j;  // must be valid json
        CHECK(j.contains("records"));
        CHECK(j.contains("fits"));
        CHECK(j["plan"]["repetitions"] == 2);
    }
    {
        std::ifstream in(hist_path);
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "method,quality,shots,bin_low,bin_high,count");
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            rows += line.empty() ? 0 : 1;
        }
        CHECK(rows > 0);
    }
    std::remove(ham.c_str());
    std::remove(manifest_path.c_str());
    std::remove(hist_path.c_str());
}

TEST_CASE("trajectory comparison emits the expected columns") {
    const std::string ham = write_tfim_file();
    const auto h = load_hamiltonian(ham);
    const auto gs = groundstate(h);
    const auto bases = group_bases(h);
    const auto data = sample_dataset(gs.state, bases, 400, 77);
    const std::string data_path = "test_harness_data.jsonl";
    save_dataset(data, data_path);
    RnnModel model = RnnModel::random_init(3, 4, 3);
    TrainConfig cfg;
    cfg.learning_rate = 5e-2;
    cfg.epochs = 300;
    fit(model, data, cfg);
    const std::string model_path = "test_harness_model.json";
    save_model(model, model_path);
    const std::string out_path = "test_harness_traj.csv";
    emit_trajectory_comparison(ham, model_path, data_path, out_path);
    std::ifstream in(out_path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "iter,loss,epsilon,delta,step_norm,loss_floor");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        rows += line.empty() ? 0 : 1;
    }
    CHECK(rows >= 2);
    std::remove(ham.c_str());
    std::remove(data_path.c_str());
    std::remove(model_path.c_str());
    std::remove(out_path.c_str());
}

}  // TEST_SUITE
