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

// Minimal static SVG charts for report output.

#ifndef CONTROVERSY_SVG_PLOT_H_
#define CONTROVERSY_SVG_PLOT_H_

#include <string>
#include <vector>

namespace controversy {

// values[series][group]; one colour per series.
std::string grouped_bar_chart(const std::string &title,
                              const std::vector<std::string> &groups,
                              const std::vector<std::string> &series,
                              const std::vector<std::vector<double>> &values,
                              const std::string &y_label);

std::string bar_chart(const std::string &title,
                      const std::vector<std::string> &labels,
                      const std::vector<double> &values,
                      const std::string &y_label);

// Box (quartiles), whiskers (min and max) and median per sample.
std::string box_plot(const std::string &title,
                     const std::vector<std::string> &labels,
                     const std::vector<std::vector<double>> &samples,
                     const std::string &y_label);

}  // namespace controversy

#endif  // CONTROVERSY_SVG_PLOT_H_
