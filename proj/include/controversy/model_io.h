// Copyright 2026 The Controversy Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Self-describing JSON for learner configs and trained models.

#ifndef CONTROVERSY_MODEL_IO_H_
#define CONTROVERSY_MODEL_IO_H_

#include <string>

#include <nlohmann/json.hpp>

#include "controversy/learners.h"

namespace controversy {

nlohmann::json to_json(const GbdtConfig &config);
nlohmann::json to_json(const LearnerConfig &config);

// Missing keys keep their defaults; unknown keys raise ConfigError.
GbdtConfig gbdt_config_from_json(const nlohmann::json &j);
LearnerConfig learner_config_from_json(const nlohmann::json &j);

nlohmann::json model_to_json(const Model &model);
// Throws DataError on a malformed document.
Model model_from_json(const nlohmann::json &j);

void save_model(const Model &model, const std::string &path);
Model load_model(const std::string &path);

}  // namespace controversy

#endif  // CONTROVERSY_MODEL_IO_H_
