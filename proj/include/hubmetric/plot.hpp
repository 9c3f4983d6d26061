// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file plot.hpp
 * @brief Static figures of series and profiles: self-contained SVG, or a
 * data file plus a matplotlib script for external tooling.
 *
 * Output is a pure function of the inputs (fixed formatting, no
 * timestamps), so figures can be diffed between runs.
 */

#pragma once

#include "hubmetric/density.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/io.hpp"
#include "hubmetric/metric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace hubmetric {

enum class PlotKind { kDistanceVsP, kAsymmetryVsP, kDistanceVsFilling, kDensityProfile };
enum class PlotFormat { kSvg, kScript };

[[nodiscard]] inline PlotKind plot_kind_from_string(std::string_view s) {
    if (s == "D_vs_P") return PlotKind::kDistanceVsP;
    if (s == "dD_vs_P") return PlotKind::kAsymmetryVsP;
    if (s == "D_vs_n") return PlotKind::kDistanceVsFilling;
    if (s == "density_profile") return PlotKind::kDensityProfile;
    throw ValidationError("unknown plot kind '" + std::string(s) + "'");
}

struct PlotSpec {
    PlotKind kind = PlotKind::kDistanceVsP;
    std::vector<std::filesystem::path> inputs;
    std::vector<std::string> labels;  ///< one per input; defaults to the panel directory name
    std::vector<double> p_c;          ///< user-supplied critical polarizations (D_vs_P), one per input or one for all
    PlotFormat format = PlotFormat::kSvg;
    std::filesystem::path output;
};

struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

struct Figure {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Curve> curves;
    std::vector<std::pair<double, double>> markers;  ///< solid squares
    bool y_from_zero = true;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

inline std::string escape(std::string_view s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

inline double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    return (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0) * mag;
}

}  // namespace detail

[[nodiscard]] inline std::string render_svg(const Figure& fig) {
    constexpr double W = 640, H = 420, ml = 70, mr = 150, mt = 40, mb = 55;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    auto extend = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& c : fig.curves)
        for (const auto& [x, y] : c.points) extend(x, y);
    for (const auto& [x, y] : fig.markers) extend(x, y);
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (fig.y_from_zero) ymin = std::min(ymin, 0.0);
    if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymax += ypad;
    if (!fig.y_from_zero || ymin < 0.0) ymin -= ypad;

    const double pw = W - ml - mr, ph = H - mt - mb;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" viewBox=\"0 0 640 420\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
    s += "<text x=\"" + detail::fmt(ml + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         detail::escape(fig.title) + "</text>\n";
    s += "<rect x=\"" + detail::fmt(ml) + "\" y=\"" + detail::fmt(mt) + "\" width=\"" + detail::fmt(pw) +
         "\" height=\"" + detail::fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = detail::nice_step(xmax - xmin), ys = detail::nice_step(ymax - ymin);
    for (double v = std::ceil(xmin / xs - 1e-9) * xs; v <= xmax + 1e-9 * xs; v += xs) {
        s += "<line x1=\"" + detail::fmt(X(v)) + "\" y1=\"" + detail::fmt(mt + ph) + "\" x2=\"" + detail::fmt(X(v)) +
             "\" y2=\"" + detail::fmt(mt + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + detail::fmt(X(v)) + "\" y=\"" + detail::fmt(mt + ph + 18) + "\" text-anchor=\"middle\">" +
             detail::tick_label(v) + "</text>\n";
    }
    for (double v = std::ceil(ymin / ys - 1e-9) * ys; v <= ymax + 1e-9 * ys; v += ys) {
        s += "<line x1=\"" + detail::fmt(ml - 5) + "\" y1=\"" + detail::fmt(Y(v)) + "\" x2=\"" + detail::fmt(ml) +
             "\" y2=\"" + detail::fmt(Y(v)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + detail::fmt(ml - 8) + "\" y=\"" + detail::fmt(Y(v) + 4) + "\" text-anchor=\"end\">" +
             detail::tick_label(v) + "</text>\n";
    }
    s += "<text x=\"" + detail::fmt(ml + pw / 2) + "\" y=\"" + detail::fmt(H - 12) + "\" text-anchor=\"middle\">" +
         detail::escape(fig.xlabel) + "</text>\n";
    s += "<text x=\"16\" y=\"" + detail::fmt(mt + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         detail::fmt(mt + ph / 2) + ")\">" + detail::escape(fig.ylabel) + "</text>\n";

    for (std::size_t ci = 0; ci < fig.curves.size(); ++ci) {
        const auto& c = fig.curves[ci];
        const std::string color = palette[ci % std::size(palette)];
        if (c.points.size() > 1) {
            s += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
            if (c.dashed) s += " stroke-dasharray=\"5,3\"";
            s += " points=\"";
            for (std::size_t k = 0; k < c.points.size(); ++k) {
                if (k) s += ' ';
                s += detail::fmt(X(c.points[k].first)) + ',' + detail::fmt(Y(c.points[k].second));
            }
            s += "\"/>\n";
        }
        for (const auto& [x, y] : c.points)
            s += "<circle cx=\"" + detail::fmt(X(x)) + "\" cy=\"" + detail::fmt(Y(y)) + "\" r=\"3\" fill=\"" + color +
                 "\"/>\n";
        const double ly = mt + 14 + 18.0 * static_cast<double>(ci);
        s += "<line x1=\"" + detail::fmt(W - mr + 10) + "\" y1=\"" + detail::fmt(ly - 4) + "\" x2=\"" +
             detail::fmt(W - mr + 30) + "\" y2=\"" + detail::fmt(ly - 4) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + detail::fmt(W - mr + 35) + "\" y=\"" + detail::fmt(ly) + "\">" + detail::escape(c.label) +
             "</text>\n";
    }
    for (const auto& [x, y] : fig.markers)
        s += "<rect x=\"" + detail::fmt(X(x) - 5) + "\" y=\"" + detail::fmt(Y(y) - 5) +
             "\" width=\"10\" height=\"10\" fill=\"black\"/>\n";
    s += "</svg>\n";
    return s;
}

/// Figure data as CSV (curve,x,y) plus a matplotlib script reading it.
[[nodiscard]] inline std::pair<std::string, std::string> render_script(const Figure& fig, const std::string& data_name) {
    std::string data = "curve,x,y\n";
    for (const auto& c : fig.curves)
        for (const auto& [x, y] : c.points)
            data += '"' + c.label + "\"," + io::format_double(x) + ',' + io::format_double(y) + '\n';
    for (const auto& [x, y] : fig.markers) data += "\"P_C\"," + io::format_double(x) + ',' + io::format_double(y) + '\n';
    std::string py =
        "import csv\nimport collections\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n"
        "curves = collections.OrderedDict()\n"
        "with open('" + data_name + "') as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        curves.setdefault(row['curve'], []).append((float(row['x']), float(row['y'])))\n"
        "for label, pts in curves.items():\n"
        "    xs, ys = zip(*pts)\n"
        "    if label == 'P_C':\n"
        "        plt.plot(xs, ys, 'ks', label=label)\n"
        "    else:\n"
        "        plt.plot(xs, ys, 'o-', label=label)\n"
        "plt.xlabel(" + nlohmann::json(fig.xlabel).dump() + ")\n"
        "plt.ylabel(" + nlohmann::json(fig.ylabel).dump() + ")\n"
        "plt.title(" + nlohmann::json(fig.title).dump() + ")\n"
        "plt.legend()\n"
        "plt.savefig('" + data_name.substr(0, data_name.rfind('.')) + ".png', dpi=150)\n";
    return {data, py};
}

namespace detail {

/// (U, n) parsed from a panel directory name "L<L>_U<U>_n<n>".
inline std::optional<std::pair<double, double>> panel_context(const std::filesystem::path& file) {
    static const std::regex re(R"(L\d+_U(-?[0-9.eE+-]+)_n([0-9.eE+-]+))");
    std::smatch m;
    const std::string dir = file.parent_path().filename().string();
    if (!std::regex_match(dir, m, re)) return std::nullopt;
    return std::pair{io::parse_double(m[1].str()), io::parse_double(m[2].str())};
}

inline std::string default_label(const std::filesystem::path& file) {
    const auto dir = file.parent_path().filename().string();
    return dir.empty() ? file.stem().string() : dir;
}

inline double interpolate(const std::vector<std::pair<double, double>>& pts, double x) {
    if (pts.empty()) throw ValidationError("cannot place a marker on an empty curve");
    if (x <= pts.front().first) return pts.front().second;
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (x <= pts[k].first) {
            const auto [x0, y0] = pts[k - 1];
            const auto [x1, y1] = pts[k];
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    return pts.back().second;
}

}  // namespace detail

/// Reads the inputs of `spec` and assembles the figure.
[[nodiscard]] inline Figure build_figure(const PlotSpec& spec) {
    if (spec.inputs.empty()) throw ValidationError("plot needs at least one input");
    for (const auto& in : spec.inputs)
        if (!std::filesystem::exists(in)) throw IoError("missing plot input '" + in.string() + "'");
    if (!spec.labels.empty() && spec.labels.size() != spec.inputs.size())
        throw ValidationError("give one label per input");
    auto label = [&](std::size_t i) { return spec.labels.empty() ? detail::default_label(spec.inputs[i]) : spec.labels[i]; };

    Figure fig;
    switch (spec.kind) {
        case PlotKind::kDistanceVsP:
        case PlotKind::kAsymmetryVsP: {
            const bool dist = spec.kind == PlotKind::kDistanceVsP;
            fig.title = dist ? "Density distance to the P = 0.5 reference" : "Asymmetry |D(1-P) - D(P)|";
            fig.xlabel = "P";
            fig.ylabel = dist ? "D(P)" : "dD(P)";
            if (!spec.p_c.empty() && !dist) throw ValidationError("P_C markers apply to D_vs_P only");
            if (spec.p_c.size() > 1 && spec.p_c.size() != spec.inputs.size())
                throw ValidationError("give one P_C value, or one per input");
            for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
                const std::string text = io::read_file(spec.inputs[i]);
                Curve c{label(i), {}, false};
                if (dist) {
                    for (const auto& p : distance_series_from_csv(text).points)
                        if (std::isfinite(p.D)) c.points.emplace_back(p.P, p.D);
                } else {
                    for (const auto& p : asymmetry_series_from_csv(text).points)
                        if (std::isfinite(p.dD)) c.points.emplace_back(p.P, p.dD);
                }
                if (!spec.p_c.empty()) {
                    const double pc = spec.p_c.size() == 1 ? spec.p_c[0] : spec.p_c[i];
                    fig.markers.emplace_back(pc, detail::interpolate(c.points, pc));
                }
                fig.curves.push_back(std::move(c));
            }
            break;
        }
        case PlotKind::kDistanceVsFilling: {
            fig.title = "Distance of the P = 0 and P = 1 systems";
            fig.xlabel = "n";
            fig.ylabel = "D";
            std::map<double, std::pair<Curve, Curve>> by_u;
            for (const auto& in : spec.inputs) {
                const auto ctx = detail::panel_context(in);
                if (!ctx) throw ValidationError("cannot read (U, n) from directory of '" + in.string() + "'");
                const auto [U, n] = *ctx;
                auto& [bcs, fp] = by_u[U];
                bcs.label = "P=0, U=" + io::format_short(U);
                fp.label = "P=1, U=" + io::format_short(U);
                fp.dashed = true;
                for (const auto& p : distance_series_from_csv(io::read_file(in)).points) {
                    if (!std::isfinite(p.D)) continue;
                    if (p.P <= kPolarizationTol) bcs.points.emplace_back(n, p.D);
                    if (p.P >= 1.0 - kPolarizationTol) fp.points.emplace_back(n, p.D);
                }
            }
            for (auto& [U, pair] : by_u) {
                std::sort(pair.first.points.begin(), pair.first.points.end());
                std::sort(pair.second.points.begin(), pair.second.points.end());
                fig.curves.push_back(std::move(pair.first));
                fig.curves.push_back(std::move(pair.second));
            }
            break;
        }
        case PlotKind::kDensityProfile: {
            fig.title = "Site densities";
            fig.xlabel = "site";
            fig.ylabel = "density";
            for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
                const auto p = profile_from_csv(io::read_file(spec.inputs[i]));
                Curve total{label(i) + " total", {}, false}, up{label(i) + " up", {}, true}, dn{label(i) + " down", {}, true};
                for (int s = 0; s < p.sites(); ++s) {
                    total.points.emplace_back(s + 1, p.total[s]);
                    up.points.emplace_back(s + 1, p.up[s]);
                    dn.points.emplace_back(s + 1, p.down[s]);
                }
                fig.curves.push_back(std::move(total));
                fig.curves.push_back(std::move(up));
                fig.curves.push_back(std::move(dn));
            }
            break;
        }
    }
    return fig;
}

/// Writes the figure; returns the files produced.
inline std::vector<std::filesystem::path> emit_plot(const PlotSpec& spec) {
    const Figure fig = build_figure(spec);
    if (spec.format == PlotFormat::kSvg) {
        io::write_file_atomic(spec.output, render_svg(fig));
        return {spec.output};
    }
    auto data_path = spec.output;
    data_path.replace_extension(".csv");
    auto script_path = spec.output;
    script_path.replace_extension(".py");
    const auto [data, py] = render_script(fig, data_path.filename().string());
    io::write_file_atomic(data_path, data);
    io::write_file_atomic(script_path, py);
    return {data_path, script_path};
}

}  // namespace hubmetric
