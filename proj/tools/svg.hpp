// Copyright 2026 The holoq authors
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

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace holoq_cli {

/// Minimal SVG canvas. Coordinates are raw pixels; callers map data to the
/// plot rectangle themselves via Axis below.
class Svg {
 public:
  Svg(double width, double height) : width_(width), height_(height) {
    body_ += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width_) + "\" height=\"" +
             fmt(height_) + "\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width = 1.0) {
    body_ += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
             "\" y2=\"" + fmt(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
             fmt(stroke_width) + "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            double opacity = 1.0) {
    body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
             "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\" fill-opacity=\"" +
             fmt(opacity) + "\"/>\n";
  }

  void circle(double cx, double cy, double r, const std::string& fill) {
    body_ += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
             "\" fill=\"" + fill + "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& points,
                const std::string& stroke, double stroke_width = 1.0) {
    if (points.empty()) {
      return;
    }
    std::string attr;
    for (const auto& [x, y] : points) {
      attr += fmt(x) + "," + fmt(y) + " ";
    }
    body_ += "<polyline points=\"" + attr + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt(stroke_width) + "\"/>\n";
  }

  void text(double x, double y, const std::string& content, double size = 12.0,
            const std::string& anchor = "start") {
    body_ += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" + fmt(size) +
             "\" font-family=\"monospace\" text-anchor=\"" + anchor + "\">" +
             escape(content) + "</text>\n";
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot write svg: " + path);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_)
        << "\" height=\"" << fmt(height_) << "\" viewBox=\"0 0 " << fmt(width_) << " "
        << fmt(height_) << "\">\n"
        << body_ << "</svg>\n";
  }

 private:
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
      }
    }
    return out;
  }

  double width_;
  double height_;
  std::string body_;
};

/// Linear data-to-pixel map for one axis.
class Axis {
 public:
  Axis(double data_min, double data_max, double pix_min, double pix_max)
      : data_min_(data_min), data_max_(data_max), pix_min_(pix_min), pix_max_(pix_max) {
    if (data_max_ <= data_min_) {
      data_max_ = data_min_ + 1.0;  // degenerate range, avoid divide by zero
    }
  }

  double operator()(double v) const {
    const double t = (v - data_min_) / (data_max_ - data_min_);
    return pix_min_ + t * (pix_max_ - pix_min_);
  }

  static Axis from_data(const std::vector<double>& data, double pix_min, double pix_max,
                        double pad_fraction = 0.05) {
    double lo = data.empty() ? 0.0 : *std::min_element(data.begin(), data.end());
    double hi = data.empty() ? 1.0 : *std::max_element(data.begin(), data.end());
    const double pad = (hi - lo) * pad_fraction;
    return Axis(lo - pad, hi + pad, pix_min, pix_max);
  }

 private:
  double data_min_;
  double data_max_;
  double pix_min_;
  double pix_max_;
};

}  // namespace holoq_cli
