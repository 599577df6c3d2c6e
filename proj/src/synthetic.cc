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

#include "controversy/synthetic.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "controversy/errors.h"
#include "controversy/random.h"

namespace controversy {

namespace {

constexpr std::array<std::string_view, 3> kControversialTopics = {
    "gun", "war", "religion"};
constexpr std::array<std::string_view, 3> kCalmTopics = {"shopping", "scenery",
                                                         "music"};
constexpr std::array<std::string_view, 24> kWords = {
    "the",   "this",  "i",     "think", "people", "really", "just",  "about",
    "good",  "bad",   "great", "awful", "love",   "hate",   "agree", "wrong",
    "right", "maybe", "never", "always", "nice",  "terrible", "ok",  "well"};

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

std::string random_text(Rng &rng, std::string_view lead) {
  std::string text(lead);
  const int words = 3 + static_cast<int>(uniform_index(rng, 6));
  for (int i = 0; i < words; ++i) {
    if (!text.empty()) text += ' ';
    text += kWords[uniform_index(rng, kWords.size())];
  }
  return text;
}

// Index into `pool` with weight (likes + 1)^exponent.
int weighted_pick(Rng &rng, const std::vector<int> &pool,
                  const std::vector<std::int64_t> &likes, double exponent) {
  std::vector<double> weights;
  weights.reserve(pool.size());
  double total = 0.0;
  for (int c : pool) {
    weights.push_back(std::pow(static_cast<double>(likes[c] + 1), exponent));
    total += weights.back();
  }
  double r = uniform01(rng) * total;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    r -= weights[i];
    if (r < 0) return pool[i];
  }
  return pool.back();
}

Thread generate_thread(const SyntheticParams &p, int index) {
  Rng rng(derive_seed(p.seed, {static_cast<std::uint64_t>(index)}));
  const bool controversial = index % 2 == 0;
  const double like_up = controversial ? p.like_ascension_controversial
                                       : p.like_ascension_noncontroversial;
  const double reply_up = controversial
                              ? p.reply_ascension_controversial
                              : p.reply_ascension_noncontroversial;

  Thread thread;
  Post &post = thread.post;
  const auto &topics = controversial ? kControversialTopics : kCalmTopics;
  post.topic = std::string(topics[uniform_index(rng, topics.size())]);
  post.post_id = fmt::format("s{}-p{:05d}", p.seed, index);
  post.post_time = p.start_time + static_cast<Timestamp>(index) * 3600;
  post.text = random_text(rng, post.topic);
  post.label = controversial;

  const int n = p.min_size +
                static_cast<int>(geometric(rng, p.mean_size - p.min_size));
  std::vector<std::int64_t> likes;
  std::vector<int> parent;  // -1 = the post
  std::vector<int> replies;
  std::vector<int> comments_all;
  std::vector<int> comment_replies;
  Timestamp now = post.post_time;
  for (int i = 0; i < n; ++i) {
    now += std::max<Timestamp>(
        1, static_cast<Timestamp>(std::llround(exponential(rng, p.mean_interval_s))));
    int par = -1;
    if (i == 0) {
      par = -1;
    } else if (p.chain || i == 1) {
      par = i - 1;
    } else if (!bernoulli(rng, p.root_reply_prob)) {
      // Replies that do not yet out-reply their parent can be singled out;
      // answering one of them pushes the link towards reply ascension.
      std::vector<int> flat;
      if (bernoulli(rng, reply_up)) {
        for (int c : comment_replies) {
          if (replies[c] <= replies[parent[c]]) flat.push_back(c);
        }
      }
      par = weighted_pick(rng, flat.empty() ? comments_all : flat, likes,
                          p.hot_exponent);
    }
    std::int64_t l;
    if (par < 0) {
      l = geometric(rng, p.mean_top_likes);
    } else if (bernoulli(rng, like_up)) {
      l = likes[par] + 1 + geometric(rng, p.mean_like_step);
    } else {
      l = static_cast<std::int64_t>(
          uniform_index(rng, static_cast<std::uint64_t>(likes[par] + 1)));
    }
    likes.push_back(l);
    parent.push_back(par);
    replies.push_back(0);
    if (par >= 0) ++replies[par];
    comments_all.push_back(i);
    if (par >= 0) comment_replies.push_back(i);

    Comment c;
    c.post_id = post.post_id;
    c.comment_id = fmt::format("{}-c{:05d}", post.post_id, i);
    c.comment_time = now;
    c.likes = l;
    c.text = random_text(rng, "");
    c.parent_id = par < 0 ? post.post_id
                          : thread.comments[par].comment_id;
    thread.comments.push_back(std::move(c));
  }
  return thread;
}

}  // namespace

void SyntheticParams::validate() const {
  if (posts_per_class < 1) {
    throw std::invalid_argument("posts_per_class must be >= 1");
  }
  if (min_size < 2) throw std::invalid_argument("min_size must be >= 2");
  if (!(mean_size >= min_size)) {
    throw std::invalid_argument("mean_size must be >= min_size");
  }
  for (double prob : {root_reply_prob, like_ascension_controversial,
                      like_ascension_noncontroversial,
                      reply_ascension_controversial,
                      reply_ascension_noncontroversial}) {
    if (!in_unit(prob)) {
      throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
  }
  if (!(hot_exponent >= 0.0)) {
    throw std::invalid_argument("hot_exponent must be >= 0");
  }
  if (!(mean_top_likes >= 0.0) || !(mean_like_step >= 0.0)) {
    throw std::invalid_argument("like means must be >= 0");
  }
  if (!(mean_interval_s > 0.0)) {
    throw std::invalid_argument("mean_interval_s must be > 0");
  }
  if (start_time < 0) throw std::invalid_argument("start_time must be >= 0");
}

std::vector<Thread> generate_synthetic(const SyntheticParams &params) {
  params.validate();
  std::vector<Thread> threads;
  threads.reserve(2 * params.posts_per_class);
  for (int i = 0; i < 2 * params.posts_per_class; ++i) {
    threads.push_back(generate_thread(params, i));
  }
  return threads;
}

nlohmann::json to_json(const SyntheticParams &p) {
  return {{"posts_per_class", p.posts_per_class},
          {"mean_size", p.mean_size},
          {"min_size", p.min_size},
          {"root_reply_prob", p.root_reply_prob},
          {"like_ascension_controversial", p.like_ascension_controversial},
          {"like_ascension_noncontroversial",
           p.like_ascension_noncontroversial},
          {"reply_ascension_controversial", p.reply_ascension_controversial},
          {"reply_ascension_noncontroversial",
           p.reply_ascension_noncontroversial},
          {"hot_exponent", p.hot_exponent},
          {"mean_top_likes", p.mean_top_likes},
          {"mean_like_step", p.mean_like_step},
          {"mean_interval_s", p.mean_interval_s},
          {"chain", p.chain},
          {"start_time", p.start_time},
          {"seed", p.seed}};
}

SyntheticParams synthetic_params_from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw ConfigError("synthetic must be a table");
  SyntheticParams p;
  const nlohmann::json defaults = to_json(p);
  for (const auto &[key, value] : j.items()) {
    if (!defaults.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in synthetic");
    }
  }
  nlohmann::json merged = defaults;
  merged.update(j);
  try {
    p.posts_per_class = merged.at("posts_per_class").get<int>();
    p.mean_size = merged.at("mean_size").get<double>();
    p.min_size = merged.at("min_size").get<int>();
    p.root_reply_prob = merged.at("root_reply_prob").get<double>();
    p.like_ascension_controversial =
        merged.at("like_ascension_controversial").get<double>();
    p.like_ascension_noncontroversial =
        merged.at("like_ascension_noncontroversial").get<double>();
    p.reply_ascension_controversial =
        merged.at("reply_ascension_controversial").get<double>();
    p.reply_ascension_noncontroversial =
        merged.at("reply_ascension_noncontroversial").get<double>();
    p.hot_exponent = merged.at("hot_exponent").get<double>();
    p.mean_top_likes = merged.at("mean_top_likes").get<double>();
    p.mean_like_step = merged.at("mean_like_step").get<double>();
    p.mean_interval_s = merged.at("mean_interval_s").get<double>();
    p.chain = merged.at("chain").get<bool>();
    p.start_time = merged.at("start_time").get<Timestamp>();
    p.seed = merged.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("synthetic: ") + e.what());
  }
  try {
    p.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("synthetic: ") + e.what());
  }
  return p;
}

}  // namespace controversy
