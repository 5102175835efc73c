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

#include "nqst/model.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nqst/rbm.hpp"
#include "nqst/rnn.hpp"

namespace nqst {

void save_model(const WavefunctionModel &model, const std::string &path) {
    nlohmann::json j;
    j["type"] = model.type_name();
    j["n"] = model.n_qubits();
    if (const auto *rbm = dynamic_cast<const RbmModel *>(&model)) {
        j["n_hidden"] = rbm->n_hidden();
    } else if (const auto *rnn = dynamic_cast<const RnnModel *>(&model)) {
        j["n_hidden"] = rnn->n_hidden();
    } else {
        throw std::invalid_argument("unknown model type: " + model.type_name());
    }
    const Eigen::VectorXd flat = model.parameters();
    j["parameters"] = std::vector<double>(flat.data(), flat.data() + flat.size());
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open model file for writing: " + path);
    }
    out << j.dump() << "\n";
    if (!out) {
        throw std::runtime_error("failed writing model file: " + path);
    }
}

std::unique_ptr<WavefunctionModel> load_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error(std::string("corrupt model file: ") + e.what());
    }
    const std::string type = j.at("type").get<std::string>();
    const int n = j.at("n").get<int>();
    const int n_hidden = j.at("n_hidden").get<int>();
    std::unique_ptr<WavefunctionModel> model;
    if (type == "rbm") {
        model = std::make_unique<RbmModel>(n, n_hidden);
    } else if (type == "rnn") {
        model = std::make_unique<RnnModel>(n, n_hidden);
    } else {
        throw std::runtime_error("unknown model type in " + path + ": " + type);
    }
    const auto values = j.at("parameters").get<std::vector<double>>();
    if (static_cast<int>(values.size()) != model->parameter_count()) {
        throw std::runtime_error("parameter array has wrong length in " + path);
    }
    Eigen::VectorXd flat =
        Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<int64_t>(values.size()));
    model->set_parameters(flat);
    return model;
}

}  // namespace nqst
