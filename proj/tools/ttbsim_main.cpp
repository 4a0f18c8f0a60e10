#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttb/config.hpp"
#include "ttb/errors.hpp"
#include "ttb/reference.hpp"
#include "ttb/sim.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string output_path;
    std::vector<std::string> overrides;
    double dt = -1.0;
    double beta = -1.0;
    int elements = -1;

    std::vector<std::string> merged_overrides() const {
        std::vector<std::string> all = overrides;
        if (dt > 0.0) all.push_back("integrator.dt=" + ttb::format_double(dt));
        if (beta > 0.0) all.push_back("integrator.beta=" + ttb::format_double(beta));
        if (elements > 0) all.push_back("mesh.elements=" + std::to_string(elements));
        return all;
    }

    void apply_direct(ttb::SimConfig& cfg) const {
        if (dt > 0.0) cfg.newmark.dt = dt;
        if (beta > 0.0) cfg.newmark.beta = beta;
        if (elements > 0) {
            const double span = cfg.mesh.span();
            cfg.mesh.n = elements;
            cfg.mesh.l = span / elements;
        }
    }
};

void add_tuning_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--dt", opts.dt, "Override the integration time step [s]");
    cmd->add_option("--beta", opts.beta, "Override the Newmark beta parameter");
    cmd->add_option("--elements", opts.elements, "Override the element count (span kept)");
}

void write_table(const std::string& path, const ttb::SimConfig& cfg,
                 const ttb::TimeHistory& hist) {
    if (path.empty() || path == "-") {
        ttb::write_output_table(std::cout, cfg, hist);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ttb::ConfigError("cannot open output file: " + path);
    ttb::write_output_table(out, cfg, hist);
}

int cmd_run(const CommonOpts& opts) {
    const ttb::SimConfig cfg = ttb::load_config(opts.config_path, opts.merged_overrides());
    const ttb::TimeHistory hist = ttb::run_simulation(cfg);
    write_table(opts.output_path, cfg, hist);
    return 0;
}

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

void print_checks(const std::vector<Check>& checks) {
    for (const auto& c : checks) {
        std::printf("%s  %-14s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
    }
}

std::string describe(double measured, double expected, double rel) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "measured=%.9g expected=%.9g rel=%.3g", measured, expected,
                  rel);
    return buf;
}

/// Peak |deviation| of a column against the oracle, as a fraction of
/// the oracle's peak magnitude.
double peak_deviation(const std::vector<double>& column, const std::vector<double>& oracle) {
    double dev = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < column.size(); ++i) {
        dev = std::max(dev, std::abs(column[i] - oracle[i]));
        peak = std::max(peak, std::abs(oracle[i]));
    }
    return dev / peak;
}

ttb::reference::BeamModel bridge_model(const ttb::SimConfig& cfg) {
    return {cfg.mesh.span(), cfg.mesh.bridge.rigidity, cfg.mesh.bridge.mass_per_length,
            cfg.mesh.bridge.damping_per_length};
}

Check check_static() {
    Check c{"static", false, ""};
    ttb::SimConfig cfg = ttb::benchmark_config();
    cfg.mesh.k_bed = 0.0;
    const auto sys = ttb::apply_constraints(ttb::assemble_rail_bridge(cfg.mesh), cfg.mesh.n);
    const int mid = sys.index_of(2 * (cfg.mesh.n + 1) + cfg.mesh.n);  // bridge midspan vertical
    Eigen::VectorXd f = Eigen::VectorXd::Zero(sys.size());
    f(mid) = 1.0;
    const Eigen::VectorXd u = Eigen::FullPivLU<Eigen::MatrixXd>(sys.k).solve(f);
    const double expected = ttb::reference::static_midspan_deflection(bridge_model(cfg), 1.0);
    const double rel = std::abs(u(mid) / expected - 1.0);
    c.pass = rel < 1e-9;
    c.detail = describe(u(mid), expected, rel);
    return c;
}

Check check_symmetry() {
    Check c{"symmetry", false, ""};
    const ttb::SimConfig cfg = ttb::benchmark_config();
    const auto sys = ttb::apply_constraints(ttb::assemble_rail_bridge(cfg.mesh), cfg.mesh.n);
    const double asym = std::max((sys.k - sys.k.transpose()).cwiseAbs().maxCoeff(),
                                 (sys.m - sys.m.transpose()).cwiseAbs().maxCoeff());
    c.pass = asym == 0.0;
    char buf[80];
    std::snprintf(buf, sizeof buf, "max asymmetry=%.3g", asym);
    c.detail = buf;
    return c;
}

Check check_modal() {
    Check c{"modal", false, ""};
    ttb::SimConfig cfg = ttb::benchmark_config();
    cfg.mesh.k_bed = 0.0;
    const auto sys = ttb::apply_constraints(ttb::assemble_rail_bridge(cfg.mesh), cfg.mesh.n);
    const auto freqs = ttb::beam_block_frequencies_hz(sys, true, 1);
    const double expected = ttb::reference::natural_frequency_hz(bridge_model(cfg), 1);
    const double rel = std::abs(freqs[0] / expected - 1.0);
    c.pass = rel < 1e-3;
    c.detail = describe(freqs[0], expected, rel);
    return c;
}

Check check_moving_force() {
    Check c{"moving-force", false, ""};
    ttb::SimConfig cfg = ttb::benchmark_config();
    cfg.vehicle.k_susp = 0.0;
    cfg.vehicle.c_susp = 0.0;
    const ttb::TimeHistory hist = ttb::run_simulation(cfg);
    const ttb::reference::MovingForceModel oracle{bridge_model(cfg),
                                                  cfg.vehicle.m_body * cfg.gravity,
                                                  cfg.vehicle.v, 50};
    const double mid = 0.5 * cfg.mesh.span();
    std::vector<double> expected;
    expected.reserve(hist.times.size());
    for (double t : hist.times) {
        expected.push_back(ttb::reference::moving_force_displacement(oracle, mid, t));
    }
    const int col = hist.column_index("bridge_disp@15");
    const double dev = peak_deviation(hist.columns[static_cast<std::size_t>(col)], expected);
    c.pass = dev <= 0.01;
    char buf[80];
    std::snprintf(buf, sizeof buf, "peak deviation=%.3g%% of peak", 100.0 * dev);
    c.detail = buf;
    return c;
}

Check check_newmark_sdof() {
    Check c{"newmark-sdof", false, ""};
    const double omega = 2.0 * M_PI;
    Eigen::MatrixXd m(1, 1), cm(1, 1), k(1, 1);
    m << 1.0;
    cm << 0.0;
    k << omega * omega;
    ttb::NewmarkParams p{0.25, 0.5, 0.005};
    ttb::State s;
    s.u = Eigen::VectorXd::Constant(1, 1.0);
    s.v = Eigen::VectorXd::Zero(1);
    s.acc = ttb::initial_acceleration(m, cm, k, Eigen::VectorXd::Zero(1), s.u, s.v);
    const Eigen::VectorXd df = Eigen::VectorXd::Zero(1);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        s = ttb::newmark_step(m, cm, k, df, s, p);
        const double amp = std::sqrt(s.u(0) * s.u(0) + s.v(0) * s.v(0) / (omega * omega));
        worst = std::max(worst, std::abs(amp - 1.0));
    }
    c.pass = worst < 1e-9;
    char buf[80];
    std::snprintf(buf, sizeof buf, "amplitude drift=%.3g over 10000 steps", worst);
    c.detail = buf;
    return c;
}

int cmd_verify() {
    std::vector<Check> checks;
    checks.push_back(check_static());
    checks.push_back(check_modal());
    checks.push_back(check_moving_force());
    checks.push_back(check_newmark_sdof());
    checks.push_back(check_symmetry());
    print_checks(checks);
    for (const auto& c : checks) {
        if (!c.pass) return 1;
    }
    return 0;
}

int cmd_benchmark(const CommonOpts& opts) {
    ttb::SimConfig cfg = ttb::benchmark_config();
    opts.apply_direct(cfg);
    cfg.validate();

    const double crossing = cfg.crossing_time();
    const double weight = cfg.vehicle.m_body * cfg.gravity;
    const auto bridge = bridge_model(cfg);

    std::printf("benchmark crossing: span=%g m, speed=%g m/s, %d elements, dt=%g s\n",
                cfg.mesh.span(), cfg.vehicle.v, cfg.mesh.n, cfg.newmark.dt);
    std::printf("crossing time           %.4f s\n", crossing);
    std::printf("static midspan scale    %.6g m under %.6g N\n",
                ttb::reference::static_midspan_deflection(bridge, weight), weight);

    ttb::SimConfig modal_cfg = ttb::benchmark_config();
    modal_cfg.mesh.k_bed = 0.0;
    const auto bare = ttb::apply_constraints(ttb::assemble_rail_bridge(modal_cfg.mesh),
                                             modal_cfg.mesh.n);
    const auto freqs = ttb::beam_block_frequencies_hz(bare, true, 2);
    std::printf("bridge frequency (fem)  %.4f Hz (analytic %.4f Hz)\n", freqs[0],
                ttb::reference::natural_frequency_hz(bridge, 1));

    const ttb::TimeHistory hist = ttb::run_simulation(cfg);

    ttb::reference::ModalCrossingConfig oracle;
    oracle.beam = bridge;
    oracle.vehicle = cfg.vehicle;
    oracle.gravity = cfg.gravity;
    oracle.modes = 10;
    oracle.substeps = 50;
    const auto modal = ttb::reference::modal_crossing_history(oracle, hist.times,
                                                              0.5 * cfg.mesh.span());

    const struct {
        const char* column;
        const std::vector<double>* oracle_series;
    } rows[] = {
        {"bridge_disp@15", &modal.bridge_disp},
        {"bridge_acc@15", &modal.bridge_acc},
        {"body_acc", &modal.body_acc},
    };
    for (const auto& row : rows) {
        const int col = hist.column_index(row.column);
        const auto& series = hist.columns[static_cast<std::size_t>(col)];
        double peak = 0.0, t_peak = 0.0;
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (std::abs(series[i]) > std::abs(peak)) {
                peak = series[i];
                t_peak = hist.times[i];
            }
        }
        std::printf("%-16s peak %.6g at t=%.3f s, deviation vs modal oracle %.3g%%\n",
                    row.column, peak, t_peak,
                    100.0 * peak_deviation(series, *row.oracle_series));
    }

    if (!opts.output_path.empty()) {
        write_table(opts.output_path, cfg, hist);
        std::printf("history written to %s\n", opts.output_path.c_str());
    }
    return 0;
}

int cmd_dump_matrices(const CommonOpts& opts, bool full) {
    const ttb::SimConfig cfg = ttb::load_config(opts.config_path, opts.merged_overrides());
    ttb::GlobalSystem sys = ttb::assemble_rail_bridge(cfg.mesh);
    if (!full) sys = ttb::apply_constraints(sys, cfg.mesh.n);

    const std::filesystem::path dir = opts.output_path.empty() ? "." : opts.output_path;
    std::filesystem::create_directories(dir);
    const struct {
        const char* name;
        const Eigen::MatrixXd* matrix;
    } files[] = {{"M.txt", &sys.m}, {"C.txt", &sys.c}, {"K.txt", &sys.k}};
    for (const auto& fspec : files) {
        std::ofstream out(dir / fspec.name, std::ios::binary);
        if (!out) throw ttb::ConfigError("cannot open output file: " + (dir / fspec.name).string());
        ttb::dump_matrix_coordinate(*fspec.matrix, out);
    }
    std::printf("wrote %dx%d matrices to %s\n", sys.size(), sys.size(), dir.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ttbsim - sprung-mass crossing of a rail-on-bridge structure"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool dump_full = false;

    auto* run = app.add_subcommand("run", "Run a simulation from a config file");
    run->add_option("--config", opts.config_path, "Config file path")->required();
    run->add_option("--output", opts.output_path, "Output table path (default: stdout)");
    run->add_option("--set", opts.overrides, "Override a config key (section.key=value)");
    add_tuning_flags(run, opts);

    auto* bench = app.add_subcommand("benchmark", "Run the built-in benchmark crossing");
    bench->add_option("--output", opts.output_path, "Also write the history table here");
    add_tuning_flags(bench, opts);

    auto* verify = app.add_subcommand("verify", "Run the built-in verification checks");

    auto* dump = app.add_subcommand("dump-matrices", "Write assembled M/C/K as sparse text");
    dump->add_option("--config", opts.config_path, "Config file path")->required();
    dump->add_option("--output", opts.output_path, "Output directory (default: .)");
    dump->add_option("--set", opts.overrides, "Override a config key (section.key=value)");
    dump->add_flag("--full", dump_full, "Dump before support constraints are applied");
    add_tuning_flags(dump, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(opts);
        if (bench->parsed()) return cmd_benchmark(opts);
        if (verify->parsed()) return cmd_verify();
        if (dump->parsed()) return cmd_dump_matrices(opts, dump_full);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
