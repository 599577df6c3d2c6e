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

#include "controversy/svg_plot.h"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

namespace controversy {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 400;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 70;

constexpr std::array<const char *, 8> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
    "#59a14f", "#edc948", "#b07aa1", "#9c755f"};

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double lo = 0.0;
  double hi = 1.0;

  double y(double v) const {
    const double plot_h = kHeight - kTop - kBottom;
    return kTop + plot_h * (1.0 - (v - lo) / (hi - lo));
  }
};

Frame make_frame(double lo, double hi) {
  lo = std::min(lo, 0.0);
  if (!(hi > lo)) hi = lo + 1.0;
  const double pad = (hi - lo) * 0.05;
  return {lo, hi + pad};
}

std::string header(const std::string &title, const std::string &y_label,
                   const Frame &frame) {
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">{}"
      "</text>\n",
      kWidth, kHeight, (kWidth - kRight + kLeft) / 2, escape(title));
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  for (int i = 0; i <= 5; ++i) {
    const double v = frame.lo + (frame.hi - frame.lo) * i / 5.0;
    const double y = frame.y(v);
    out += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
        "stroke=\"#ddd\"/>\n<text x=\"{:.1f}\" y=\"{:.1f}\" "
        "text-anchor=\"end\">{:.3g}</text>\n",
        x0, y, x1, y, x0 - 6, y + 4, v);
  }
  out += fmt::format(
      "<text transform=\"translate(16,{:.1f}) rotate(-90)\" "
      "text-anchor=\"middle\">{}</text>\n",
      (kTop + kHeight - kBottom) / 2, escape(y_label));
  out += fmt::format(
      "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
      "stroke=\"black\"/>\n",
      x0, frame.y(std::max(frame.lo, 0.0)), x1);
  return out;
}

std::string group_label(double x, const std::string &label) {
  return fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" "
      "transform=\"rotate(-30 {:.1f} {:.1f})\">{}</text>\n",
      x, kHeight - kBottom + 16, x, kHeight - kBottom + 16, escape(label));
}

}  // namespace

std::string grouped_bar_chart(const std::string &title,
                              const std::vector<std::string> &groups,
                              const std::vector<std::string> &series,
                              const std::vector<std::vector<double>> &values,
                              const std::string &y_label) {
  double lo = 0.0, hi = 0.0;
  for (const auto &row : values) {
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const Frame frame = make_frame(lo, hi);
  std::string out = header(title, y_label, frame);
  const double plot_w = kWidth - kLeft - kRight;
  const double group_w = groups.empty() ? plot_w : plot_w / groups.size();
  const double bar_w =
      series.empty() ? 0 : group_w * 0.8 / static_cast<double>(series.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double gx = kLeft + g * group_w + group_w * 0.1;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = values[s][g];
      const double y0 = frame.y(0.0);
      const double y1 = frame.y(v);
      out += fmt::format(
          "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
          "fill=\"{}\"><title>{} / {}: {:.4f}</title></rect>\n",
          gx + s * bar_w, std::min(y0, y1), bar_w, std::abs(y0 - y1),
          kPalette[s % kPalette.size()], escape(groups[g]),
          escape(series[s]), v);
    }
    out += group_label(gx + group_w * 0.4, groups[g]);
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = kTop + 10 + 18 * s;
    out += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"12\" "
        "fill=\"{}\"/><text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
        kWidth - kRight + 14, y - 10, kPalette[s % kPalette.size()],
        kWidth - kRight + 32, y, escape(series[s]));
  }
  return out + "</svg>\n";
}

std::string bar_chart(const std::string &title,
                      const std::vector<std::string> &labels,
                      const std::vector<double> &values,
                      const std::string &y_label) {
  return grouped_bar_chart(title, labels, {y_label}, {values}, y_label);
}

std::string box_plot(const std::string &title,
                     const std::vector<std::string> &labels,
                     const std::vector<std::vector<double>> &samples,
                     const std::string &y_label) {
  double lo = 0.0, hi = 0.0;
  for (const auto &s : samples) {
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const Frame frame = make_frame(lo, hi);
  std::string out = header(title, y_label, frame);
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = labels.empty() ? plot_w : plot_w / labels.size();
  auto quantile = [](const std::vector<double> &sorted, double q) {
    const double pos = q * (sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(std::floor(pos));
    const std::size_t j = std::min(i + 1, sorted.size() - 1);
    return sorted[i] + (sorted[j] - sorted[i]) * (pos - i);
  };
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const double cx = kLeft + slot * (k + 0.5);
    out += group_label(cx, labels[k]);
    if (samples[k].empty()) continue;
    std::vector<double> s = samples[k];
    std::sort(s.begin(), s.end());
    const double q1 = quantile(s, 0.25), med = quantile(s, 0.5),
                 q3 = quantile(s, 0.75);
    const double w = slot * 0.5;
    const char *colour = kPalette[k % kPalette.size()];
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" "
        "stroke=\"black\"/>\n",
        cx, frame.y(s.front()), frame.y(s.back()));
    out += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
        "fill=\"{}\" stroke=\"black\"/>\n",
        cx - w / 2, frame.y(q3), w, frame.y(q1) - frame.y(q3), colour);
    out += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" "
        "stroke=\"black\" stroke-width=\"2\"/>\n",
        cx - w / 2, frame.y(med), cx + w / 2, frame.y(med));
  }
  return out + "</svg>\n";
}

}  // namespace controversy
