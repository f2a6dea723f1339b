// Copyright (c) 2026 The invnet authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "invnet/tensor/params.hpp"

namespace invnet::tensor {

/// Checkpoint document: {"params": {name: {"shape": [rows, cols],
/// "values": [row-major numbers], "trainable": bool}}}.
template <class Real>
nlohmann::json save_params(const ParamStore<Real>& store) {
  nlohmann::json params = nlohmann::json::object();
  for (const std::string& name : store.names()) {
    const ParamEntry<Real>& e = store.entry(name);
    nlohmann::json values = nlohmann::json::array();
    for (Real v : e.value.data) values.push_back(static_cast<double>(v));
    params[name] = {{"shape", {e.value.rows, e.value.cols}},
                    {"values", std::move(values)},
                    {"trainable", e.trainable}};
  }
  return nlohmann::json{{"params", std::move(params)}};
}

/// Restores values into an already-shaped store; the name sets must match
/// exactly and every shape must agree.
template <class Real>
void load_params(const nlohmann::json& doc, ParamStore<Real>& store) {
  const auto& params = doc.at("params");
  if (params.size() != store.size())
    throw ConfigError("checkpoint has " + std::to_string(params.size()) + " parameters, model has " +
                      std::to_string(store.size()));
  for (const std::string& name : store.names()) {
    if (!params.contains(name)) throw ConfigError("checkpoint missing parameter '" + name + "'");
    const auto& p = params.at(name);
    ParamEntry<Real>& e = store.entry(name);
    int rows = p.at("shape").at(0).get<int>();
    int cols = p.at("shape").at(1).get<int>();
    if (rows != e.value.rows || cols != e.value.cols)
      throw ConfigError("checkpoint shape mismatch for '" + name + "'");
    const auto& values = p.at("values");
    if (values.size() != e.value.size())
      throw ConfigError("checkpoint value count mismatch for '" + name + "'");
    for (size_t i = 0; i < e.value.size(); ++i)
      e.value.data[i] = static_cast<Real>(values.at(i).get<double>());
    e.trainable = p.value("trainable", true);
  }
}

}  // namespace invnet::tensor
