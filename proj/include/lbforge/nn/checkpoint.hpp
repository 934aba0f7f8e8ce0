/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>

#include <json.hpp>

#include "lbforge/nn/gnn.hpp"
#include "lbforge/nn/policy.hpp"

namespace lbforge::nn {

/// Checkpoints use the LBTC tensor container (see util/tensor_file.hpp):
/// the JSON header records the architecture dimensions plus arbitrary
/// metadata (seed, epoch, training provenance), the payload holds each
/// parameter tensor as row-major little-endian binary64.
void save_gnn(const GnnModel& model, const std::string& path,
              const nlohmann::json& meta = nlohmann::json::object());
GnnModel load_gnn(const std::string& path, nlohmann::json* meta = nullptr);

void save_policy(const PolicyModel& model, const std::string& path,
                 const nlohmann::json& meta = nlohmann::json::object());
PolicyModel load_policy(const std::string& path, nlohmann::json* meta = nullptr);

/// Header metadata of any checkpoint/feature container.
nlohmann::json inspect_container(const std::string& path);

}  // namespace lbforge::nn
