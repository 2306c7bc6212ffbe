#include "cvqkd/cli.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cvqkd/analysis.hpp"
#include "cvqkd/error.hpp"
#include "cvqkd/figures.hpp"
#include "cvqkd/mc_oracle.hpp"
#include "cvqkd/output.hpp"
#include "cvqkd/rates.hpp"
#include "cvqkd/selftest.hpp"
#include "cvqkd/spectrum.hpp"

namespace cvqkd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

struct PointOptions {
    std::string protocol = "dr-hom";
    double t = 0.5;
    double w = 1.0;
    double v0 = 1.0;
    double vs = 1e3;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output encoding")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.path, "Write to this file instead of stdout");
}

CLI::Option* add_protocol_flag(CLI::App* cmd, std::string& target, const std::string& name = "--protocol") {
    return cmd->add_option(name, target, "Protocol: dr-hom, dr-het, rr-hom or rr-het")
        ->check(CLI::IsMember({"dr-hom", "dr-het", "rr-hom", "rr-het"}))
        ->capture_default_str();
}

void add_channel_flags(CLI::App* cmd, PointOptions& p, bool with_t) {
    if (with_t) {
        cmd->add_option("--t", p.t, "Channel transmission")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    }
    cmd->add_option("--w", p.w, "EPR (channel) noise variance, >= 1")
        ->check(CLI::Range(1.0, kInf))
        ->capture_default_str();
    cmd->add_option("--v0", p.v0, "Preparation variance V0, >= 1")
        ->check(CLI::Range(1.0, kInf))
        ->capture_default_str();
    cmd->add_option("--vs", p.vs, "Signal variance V_S, >= 0")
        ->check(CLI::Range(0.0, kInf))
        ->capture_default_str();
}

ProtocolId protocol_of(const std::string& name) {
    if (auto p = parse_protocol(name)) {
        return *p;
    }
    throw InvalidArgument("--protocol: unknown protocol " + name);
}

void emit(const OutputRecord& record, const OutputOptions& opts, std::ostream& out) {
    const OutputFormat format = opts.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (opts.path.empty()) {
        write_record(record, format, out);
        return;
    }
    std::ofstream file(opts.path);
    if (!file) {
        throw std::runtime_error("cannot open output file " + opts.path);
    }
    write_record(record, format, file);
}

void add_point_params(OutputRecord& record, const PointOptions& p, bool with_t) {
    record.add_param("protocol", p.protocol);
    if (with_t) {
        record.add_param("t", p.t);
    }
    record.add_param("w", p.w);
    record.add_param("v0", p.v0);
    record.add_param("vs", p.vs);
}

Cell threshold_cell(const ThresholdResult& r) {
    if (r.found()) {
        return r.transmission;
    }
    return std::string("none");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secret key rates and security thresholds for thermal-state CV-QKD", "cvqkd"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::function<int()> action;

    // rate
    PointOptions rate_p;
    OutputOptions rate_o;
    auto* rate_cmd = app.add_subcommand("rate", "Key rate for one parameter point");
    add_protocol_flag(rate_cmd, rate_p.protocol);
    add_channel_flags(rate_cmd, rate_p, true);
    add_output_flags(rate_cmd, rate_o);
    rate_cmd->callback([&] {
        action = [&] {
            const auto r = key_rate(protocol_of(rate_p.protocol), {rate_p.vs, rate_p.v0},
                                    {rate_p.t, rate_p.w});
            OutputRecord record;
            record.command = "rate";
            add_point_params(record, rate_p, true);
            record.columns = {"axis", "value", "mi_ab", "holevo", "rate"};
            record.rows.push_back({std::string("t"), rate_p.t, r.mi_ab, r.holevo, r.rate});
            emit(record, rate_o, out);
            return 0;
        };
    });

    // threshold
    PointOptions thr_p;
    OutputOptions thr_o;
    RootSearchOptions thr_search;
    auto* thr_cmd = app.add_subcommand("threshold", "Minimum secure transmission T*");
    add_protocol_flag(thr_cmd, thr_p.protocol);
    add_channel_flags(thr_cmd, thr_p, false);
    thr_cmd->add_option("--grid", thr_search.grid_points, "Coarse grid points")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    thr_cmd->add_option("--tol", thr_search.tolerance, "Bisection tolerance in T")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(thr_cmd, thr_o);
    thr_cmd->callback([&] {
        action = [&] {
            const auto r = threshold_find(protocol_of(thr_p.protocol), {thr_p.vs, thr_p.v0},
                                          thr_p.w, thr_search);
            OutputRecord record;
            record.command = "threshold";
            add_point_params(record, thr_p, false);
            record.add_param("grid", format_number(static_cast<double>(thr_search.grid_points)));
            record.add_param("tol", thr_search.tolerance);
            record.columns = {"threshold", "status"};
            record.rows.push_back({threshold_cell(r), to_string(r.status)});
            emit(record, thr_o, out);
            return 0;
        };
    });

    // crossover
    PointOptions cross_a;
    PointOptions cross_b;
    OutputOptions cross_o;
    auto* cross_cmd = app.add_subcommand("crossover", "Transmission where two rate curves cross");
    add_protocol_flag(cross_cmd, cross_a.protocol, "--protocol-a");
    add_protocol_flag(cross_cmd, cross_b.protocol, "--protocol-b");
    cross_cmd->add_option("--v0-a", cross_a.v0, "V0 of the first curve")->check(CLI::Range(1.0, kInf));
    cross_cmd->add_option("--v0-b", cross_b.v0, "V0 of the second curve")->check(CLI::Range(1.0, kInf));
    cross_cmd->add_option("--w", cross_a.w, "Channel noise, both curves")->check(CLI::Range(1.0, kInf));
    cross_cmd->add_option("--vs", cross_a.vs, "Signal variance, both curves")->check(CLI::Range(0.0, kInf));
    add_output_flags(cross_cmd, cross_o);
    cross_cmd->callback([&] {
        action = [&] {
            cross_b.w = cross_a.w;
            cross_b.vs = cross_a.vs;
            const RateCurve a{protocol_of(cross_a.protocol), {cross_a.vs, cross_a.v0}, cross_a.w};
            const RateCurve b{protocol_of(cross_b.protocol), {cross_b.vs, cross_b.v0}, cross_b.w};
            const auto r = crossover_find(a, b);
            OutputRecord record;
            record.command = "crossover";
            record.add_param("protocol_a", cross_a.protocol);
            record.add_param("v0_a", cross_a.v0);
            record.add_param("protocol_b", cross_b.protocol);
            record.add_param("v0_b", cross_b.v0);
            record.add_param("w", cross_a.w);
            record.add_param("vs", cross_a.vs);
            record.columns = {"crossover", "leader_above"};
            if (r) {
                record.rows.push_back({r->transmission, std::string(r->first_leads_above ? "a" : "b")});
            } else {
                record.rows.push_back({std::string("none"), std::string("")});
            }
            emit(record, cross_o, out);
            return 0;
        };
    });

    // sweep
    PointOptions sw_p;
    OutputOptions sw_o;
    std::string sw_axis = "t";
    AxisRange sw_range{0.0, 1.0, 101, Spacing::linear};
    bool sw_log = false;
    double sw_temperature = 300.0;
    auto* sw_cmd = app.add_subcommand("sweep", "Key rate along one parameter axis");
    add_protocol_flag(sw_cmd, sw_p.protocol);
    add_channel_flags(sw_cmd, sw_p, true);
    sw_cmd->add_option("--axis", sw_axis, "Varied parameter: t, w, v0, vs or f")
        ->check(CLI::IsMember({"t", "w", "v0", "vs", "f"}))
        ->capture_default_str();
    sw_cmd->add_option("--lo", sw_range.lo, "Axis start")->capture_default_str();
    sw_cmd->add_option("--hi", sw_range.hi, "Axis end")->capture_default_str();
    sw_cmd->add_option("--steps", sw_range.steps, "Number of points, >= 2")
        ->check(CLI::Range(2, 10000000))
        ->capture_default_str();
    sw_cmd->add_flag("--log", sw_log, "Logarithmic spacing");
    sw_cmd->add_option("--temperature", sw_temperature, "Kelvin, for the f axis")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(sw_cmd, sw_o);
    sw_cmd->callback([&] {
        action = [&] {
            SweepSpec spec;
            spec.protocol = protocol_of(sw_p.protocol);
            spec.axis = *parse_axis(sw_axis);
            sw_range.spacing = sw_log ? Spacing::log : Spacing::linear;
            spec.range = sw_range;
            spec.src = {sw_p.vs, sw_p.v0};
            spec.ch = {sw_p.t, sw_p.w};
            spec.temperature = sw_temperature;
            const auto rows = run_sweep(spec);
            OutputRecord record;
            record.command = "sweep";
            add_point_params(record, sw_p, true);
            record.add_param("axis", sw_axis);
            record.add_param("lo", sw_range.lo);
            record.add_param("hi", sw_range.hi);
            record.add_param("steps", format_number(static_cast<double>(sw_range.steps)));
            record.add_param("spacing", sw_log ? "log" : "linear");
            record.add_param("temperature", sw_temperature);
            record.columns = {"axis", "value", "mi_ab", "holevo", "rate"};
            for (const auto& row : rows) {
                record.rows.push_back({sw_axis, row.value, row.result.mi_ab, row.result.holevo,
                                       row.result.rate});
            }
            emit(record, sw_o, out);
            return 0;
        };
    });

    // map
    SecurityMapSpec map_spec;
    std::string map_protocol = "dr-hom";
    std::optional<double> map_w;
    OutputOptions map_o;
    auto* map_cmd = app.add_subcommand("map", "Security classification over (frequency, T)");
    map_cmd->add_option("--protocol", map_protocol, "dr-hom or rr-hom")
        ->check(CLI::IsMember({"dr-hom", "rr-hom"}))
        ->capture_default_str();
    map_cmd->add_option("--temperature", map_spec.temperature.value, "Kelvin")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    map_cmd->add_option("--vs", map_spec.v_s, "Signal variance")->check(CLI::Range(0.0, kInf))->capture_default_str();
    map_cmd->add_option("--f-lo", map_spec.frequencies.lo, "Lowest frequency, Hz")->check(CLI::PositiveNumber)->capture_default_str();
    map_cmd->add_option("--f-hi", map_spec.frequencies.hi, "Highest frequency, Hz")->check(CLI::PositiveNumber)->capture_default_str();
    map_cmd->add_option("--f-steps", map_spec.frequencies.steps, "Frequency points (log spaced)")->check(CLI::Range(2, 100000))->capture_default_str();
    map_cmd->add_option("--t-lo", map_spec.transmissions.lo, "Lowest transmission")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    map_cmd->add_option("--t-hi", map_spec.transmissions.hi, "Highest transmission")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    map_cmd->add_option("--t-steps", map_spec.transmissions.steps, "Transmission points")->check(CLI::Range(2, 100000))->capture_default_str();
    map_cmd->add_option("--w", map_w, "Override channel noise (default: thermal variance)")->check(CLI::Range(1.0, kInf));
    add_output_flags(map_cmd, map_o);
    map_cmd->callback([&] {
        action = [&] {
            map_spec.protocol = protocol_of(map_protocol);
            map_spec.w_override = map_w;
            const SecurityMap map = security_map(map_spec);
            OutputRecord record;
            record.command = "map";
            record.add_param("protocol", map_protocol);
            record.add_param("temperature", map_spec.temperature.value);
            record.add_param("vs", map_spec.v_s);
            record.add_param("f_lo", map_spec.frequencies.lo);
            record.add_param("f_hi", map_spec.frequencies.hi);
            record.add_param("f_steps", format_number(static_cast<double>(map_spec.frequencies.steps)));
            record.add_param("t_lo", map_spec.transmissions.lo);
            record.add_param("t_hi", map_spec.transmissions.hi);
            record.add_param("t_steps", format_number(static_cast<double>(map_spec.transmissions.steps)));
            record.add_param("w", map_w ? format_number(*map_w) : std::string("v_0(f)"));
            record.columns = {"frequency", "transmission", "v_0", "w", "rate", "class"};
            for (const auto& c : map.cells) {
                record.rows.push_back({c.frequency, c.transmission, c.v_0, c.w, c.rate,
                                       to_string(c.classification)});
            }
            emit(record, map_o, out);
            return 0;
        };
    });

    // classical
    ClassicalLimitParams cl;
    OutputOptions cl_o;
    auto* cl_cmd = app.add_subcommand("classical", "DR-homodyne rate in the V0 -> infinity limit");
    cl_cmd->add_option("--phi", cl.phi_ratio, "V_S / V0")->check(CLI::PositiveNumber)->capture_default_str();
    cl_cmd->add_option("--t", cl.t, "Channel transmission, in (0, 1)")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cl_cmd->add_option("--w", cl.w, "Channel noise")->check(CLI::Range(1.0, kInf))->capture_default_str();
    cl_cmd->add_option("--v0-probe", cl.v_0_probe, "Finite V0 used for the expansion")->check(CLI::Range(1.0, kInf))->capture_default_str();
    add_output_flags(cl_cmd, cl_o);
    cl_cmd->callback([&] {
        action = [&] {
            OutputRecord record;
            record.command = "classical";
            record.add_param("phi", cl.phi_ratio);
            record.add_param("t", cl.t);
            record.add_param("w", cl.w);
            record.add_param("v0_probe", cl.v_0_probe);
            record.columns = {"limit_rate", "margin", "finite_rate"};
            record.rows.push_back({classical_limit_rate(cl), classical_limit_margin(cl),
                                   classical_limit_finite_rate(cl)});
            emit(record, cl_o, out);
            return 0;
        };
    });

    // figure
    std::string fig_name;
    OutputOptions fig_o;
    auto* fig_cmd = app.add_subcommand("figure", "Reference dataset for a named figure");
    fig_cmd->add_option("name", fig_name, "Figure name")->required();
    add_output_flags(fig_cmd, fig_o);
    fig_cmd->callback([&] {
        action = [&] {
            auto record = figure_dataset(fig_name);
            if (!record) {
                std::string names;
                for (const auto& n : figure_names()) {
                    names += (names.empty() ? "" : ", ") + n;
                }
                err << "figure: unknown name '" << fig_name << "'; valid names: " << names << '\n';
                return 2;
            }
            emit(*record, fig_o, out);
            return 0;
        };
    });

    // sample
    PointOptions smp_p;
    std::size_t smp_n = 1000;
    std::uint64_t smp_seed = 0;
    std::string smp_out;
    auto* smp_cmd = app.add_subcommand("sample", "Dump a Monte-Carlo quadrature batch as CSV");
    add_channel_flags(smp_cmd, smp_p, true);
    smp_cmd->add_option("--n", smp_n, "Number of samples")->check(CLI::Range(1, 100000000))->capture_default_str();
    smp_cmd->add_option("--seed", smp_seed, "Generator seed")->required();
    smp_cmd->add_option("--out", smp_out, "Write to this file instead of stdout");
    smp_cmd->callback([&] {
        action = [&] {
            const auto batch = sample_protocol({smp_p.vs, smp_p.v0}, {smp_p.t, smp_p.w}, smp_n, smp_seed);
            if (smp_out.empty()) {
                write_csv(batch, out);
            } else {
                std::ofstream file(smp_out);
                if (!file) {
                    throw std::runtime_error("cannot open output file " + smp_out);
                }
                write_csv(batch, file);
            }
            return 0;
        };
    });

    // selftest
    SelfTestOptions st;
    std::string fault;
    auto* st_cmd = app.add_subcommand("selftest", "Dual-path, Monte-Carlo and anchor checks");
    st_cmd->add_option("--mc-samples", st.mc_samples, "Monte-Carlo sample count")
        ->check(CLI::Range(10000, 1000000000))
        ->capture_default_str();
    st_cmd->add_option("--seed", st.seed, "Seed for randomized checks")->capture_default_str();
    st_cmd->add_option("--inject-fault", fault, "Perturb a constant to exercise failure reporting")
        ->check(CLI::IsMember({"planck"}));
    st_cmd->callback([&] {
        action = [&] {
            if (fault == "planck") {
                st.constants.planck *= 1.01;
            }
            bool all = true;
            for (const auto& check : run_selftest(st)) {
                out << (check.passed ? "PASS " : "FAIL ") << check.name << " (" << check.detail << ")\n";
                all = all && check.passed;
            }
            out << (all ? "selftest: all checks passed\n" : "selftest: FAILED\n");
            return all ? 0 : 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"cvqkd"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cvqkd
