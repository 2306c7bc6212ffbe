#include "cvqkd/figures.hpp"

#include <functional>
#include <map>

#include "cvqkd/analysis.hpp"
#include "cvqkd/spectrum.hpp"

namespace cvqkd {

namespace {

struct Series {
    std::string label;
    ProtocolId protocol;
    double v_0;
    double w;
};

std::string series_label(ProtocolId protocol, double v_0, double w) {
    return to_string(protocol) + " v0=" + format_number(v_0) + " w=" + format_number(w);
}

OutputRecord rate_curves(const std::string& name, const std::vector<Series>& series, double v_s,
                         AxisRange t_range) {
    OutputRecord record;
    record.command = "figure " + name;
    record.columns = {"series", "axis", "value", "mi_ab", "holevo", "rate"};
    record.add_param("v_s", v_s);
    record.add_param("t_lo", t_range.lo);
    record.add_param("t_hi", t_range.hi);
    record.add_param("t_steps", format_number(static_cast<double>(t_range.steps)));
    for (const auto& s : series) {
        record.add_param("series", s.label);
        SweepSpec spec;
        spec.protocol = s.protocol;
        spec.axis = SweepAxis::t;
        spec.range = t_range;
        spec.src = {v_s, s.v_0};
        spec.ch = {1.0, s.w};
        for (const auto& row : run_sweep(spec)) {
            record.rows.push_back({s.label, std::string("t"), row.value, row.result.mi_ab,
                                   row.result.holevo, row.result.rate});
        }
    }
    return record;
}

std::vector<Series> v0_family(ProtocolId protocol, std::initializer_list<double> v0s, double w,
                              const std::string& prefix = "") {
    std::vector<Series> out;
    for (double v0 : v0s) {
        out.push_back({prefix + series_label(protocol, v0, w), protocol, v0, w});
    }
    return out;
}

std::vector<Series> concat(std::vector<Series> a, const std::vector<Series>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Cell threshold_cell(const ThresholdResult& r) {
    if (r.found()) {
        return r.transmission;
    }
    return std::string(r.status == ThresholdStatus::secure_everywhere ? "none-secure"
                                                                      : "none-insecure");
}

constexpr AxisRange kFullT{0.0, 1.0, 101, Spacing::linear};
constexpr double kMicrowaveVariance = 41.66;

OutputRecord fig7() {
    SecurityMapSpec spec;
    spec.v_s = 1e8;
    spec.frequencies = {1e9, 4.3e14, 60, Spacing::log};
    OutputRecord record;
    record.command = "figure fig7";
    record.columns = {"frequency", "v_0", "w", "threshold", "eb_bound"};
    record.add_param("protocol", to_string(spec.protocol));
    record.add_param("temperature", spec.temperature.value);
    record.add_param("v_s", spec.v_s);
    record.add_param("w", "v_0(f)");
    for (const auto& p : security_boundary(spec)) {
        record.rows.push_back({p.frequency, p.v_0, p.w, threshold_cell(p.threshold), p.eb_bound});
    }
    return record;
}

OutputRecord fig8() {
    const std::vector<Series> s{{series_label(kDirectHomodyne, kMicrowaveVariance,
                                              kMicrowaveVariance),
                                 kDirectHomodyne, kMicrowaveVariance, kMicrowaveVariance}};
    OutputRecord record = rate_curves("fig8", s, 1e8, {0.95, 1.0, 201, Spacing::linear});
    record.add_param("eb_bound", eb_transmission_bound(kMicrowaveVariance));
    const auto thr = threshold_find(kDirectHomodyne, {1e8, kMicrowaveVariance}, kMicrowaveVariance);
    if (thr.found()) {
        record.add_param("threshold", thr.transmission);
    } else {
        record.add_param("threshold", to_string(thr.status));
    }
    return record;
}

OutputRecord fig9() {
    std::vector<Series> s;
    for (double w : {5.0, 10.0, 20.0, 50.0, 100.0}) {
        s.push_back({series_label(kDirectHomodyne, kMicrowaveVariance, w), kDirectHomodyne,
                     kMicrowaveVariance, w});
    }
    return rate_curves("fig9", s, 1e3, {0.8, 1.0, 201, Spacing::linear});
}

OutputRecord dr_thresholds() {
    OutputRecord record;
    record.command = "figure dr-thresholds";
    record.columns = {"series", "axis", "value", "threshold"};
    record.add_param("v_s", 1e3);
    record.add_param("w", 1.0);
    const AxisRange v0s{1.0, 1e4, 41, Spacing::log};
    for (ProtocolId p : {kDirectHomodyne, kDirectHeterodyne}) {
        for (double v0 : v0s.values()) {
            record.rows.push_back({to_string(p), std::string("v0"), v0,
                                   threshold_cell(threshold_find(p, {1e3, v0}, 1.0))});
        }
    }
    return record;
}

using Builder = std::function<OutputRecord()>;

const std::map<std::string, Builder, std::less<>>& registry() {
    static const std::map<std::string, Builder, std::less<>> figures{
        {"fig2a", [] { return rate_curves("fig2a", v0_family(kReverseHomodyne, {1, 2, 3, 5}, 1), 1e3, kFullT); }},
        {"fig2b", [] { return rate_curves("fig2b", v0_family(kReverseHeterodyne, {1, 2, 3, 5}, 1), 1e3, kFullT); }},
        {"fig3", [] {
             return rate_curves("fig3",
                                concat(v0_family(kReverseHomodyne, {1, 1.5}, 1),
                                       v0_family(kReverseHeterodyne, {1, 1.5}, 1)),
                                1e3, kFullT);
         }},
        {"fig4", [] {
             return rate_curves("fig4",
                                concat(v0_family(kDirectHomodyne, {1, 2, 3, 5}, 1),
                                       v0_family(kDirectHeterodyne, {1, 2, 3, 5}, 1)),
                                1e3, kFullT);
         }},
        {"fig4a", [] { return rate_curves("fig4a", v0_family(kDirectHomodyne, {1, 2, 3, 5}, 1), 1e3, kFullT); }},
        {"fig4b", [] { return rate_curves("fig4b", v0_family(kDirectHeterodyne, {1, 2, 3, 5}, 1), 1e3, kFullT); }},
        {"fig5", [] {
             auto s = concat(v0_family(kDirectHomodyne, {1, 3}, 1, "a: "),
                             v0_family(kDirectHeterodyne, {1, 3}, 1, "a: "));
             s = concat(s, v0_family(kDirectHomodyne, {3, 5}, 1, "b: "));
             s = concat(s, v0_family(kReverseHomodyne, {3, 5}, 1, "b: "));
             s = concat(s, v0_family(kDirectHeterodyne, {3, 5}, 1, "c: "));
             s = concat(s, v0_family(kReverseHeterodyne, {3, 5}, 1, "c: "));
             return rate_curves("fig5", s, 1e3, kFullT);
         }},
        {"fig6a", [] { return rate_curves("fig6a", v0_family(kDirectHomodyne, {1, 10, 100, 1e3, 1e4}, 1.01), 1e5, kFullT); }},
        {"fig6b", [] { return rate_curves("fig6b", v0_family(kDirectHomodyne, {1, 10, 100, 1e3, 1e4}, 3), 1e5, kFullT); }},
        {"fig7", fig7},
        {"fig8", fig8},
        {"fig9", fig9},
        {"dr-thresholds", dr_thresholds},
    };
    return figures;
}

}  // namespace

std::vector<std::string> figure_names() {
    std::vector<std::string> names;
    for (const auto& [name, builder] : registry()) {
        names.push_back(name);
    }
    return names;
}

std::optional<OutputRecord> figure_dataset(std::string_view name) {
    const auto& figures = registry();
    const auto it = figures.find(name);
    if (it == figures.end()) {
        return std::nullopt;
    }
    return it->second();
}

}  // namespace cvqkd
