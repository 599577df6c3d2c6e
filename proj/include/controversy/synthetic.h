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

// Seeded generator of labelled comment threads.
//
// Each thread grows one comment at a time. Reply intervals are exponential,
// so a thread keeps growing for many hours. A new comment answers the post
// with probability `root_reply_prob`; otherwise it answers an earlier
// comment picked with weight (likes + 1)^hot_exponent, so hot comments draw
// more replies.
// A reply to a comment out-likes its parent with the class's like-ascension
// probability (parent + 1 + geometric) and otherwise gets a uniform count in
// [0, parent likes]. The expected share of ascending links is therefore the
// class probability itself.

#ifndef CONTROVERSY_SYNTHETIC_H_
#define CONTROVERSY_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "controversy/thread.h"

namespace controversy {

struct SyntheticParams {
  int posts_per_class = 200;
  double mean_size = 100.0;  // mean comments per thread
  int min_size = 20;        // sizes are min_size + geometric
  double root_reply_prob = 0.2;
  double like_ascension_controversial = 0.6;      // pi_c
  double like_ascension_noncontroversial = 0.3;   // pi_n
  // Chance that a comment reply is steered to a reply that has no more
  // replies than its own parent, per class.
  double reply_ascension_controversial = 0.5;
  double reply_ascension_noncontroversial = 0.1;
  // Reply targets are drawn with weight (likes + 1)^hot_exponent.
  double hot_exponent = 2.0;
  double mean_top_likes = 8.0;  // likes of comments answering the post
  double mean_like_step = 3.0;  // extra likes on an ascending reply
  double mean_interval_s = 1800.0;
  bool chain = false;  // every comment answers the previous one
  Timestamp start_time = 1600000000;
  std::uint64_t seed = 7;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

// Controversial and non-controversial threads alternate, starting with a
// controversial one.
std::vector<Thread> generate_synthetic(const SyntheticParams &params);

nlohmann::json to_json(const SyntheticParams &params);
// Missing keys keep defaults; unknown keys raise ConfigError.
SyntheticParams synthetic_params_from_json(const nlohmann::json &j);

}  // namespace controversy

#endif  // CONTROVERSY_SYNTHETIC_H_
