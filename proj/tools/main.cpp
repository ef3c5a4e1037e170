// Command-line front end: zero tables, shell search, packet construction,
// time evolution, density grids and PGM rendering, plus the full pipeline.
// Exit codes: 0 success, 2 usage, 3 numeric domain, 4 I/O.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scars/bessel.hpp"
#include "scars/evolution.hpp"
#include "scars/grid.hpp"
#include "scars/orbit.hpp"
#include "scars/scar.hpp"
#include "scars/spectrum.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite numbers pass through; inf/nan become JSON null (documented sentinel).
ojson jnum(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw scars::IoError("cannot open " + path.string());
    f << text;
    f.flush();
    if (!f.good()) throw scars::IoError("write failed for " + path.string());
}

void emit(const fs::path& path, const ojson& doc) {
    write_text(path, doc.dump(2) + "\n");
    std::cout << "wrote " << path.string() << "\n";
}

ojson shell_json(const scars::Shell& shell) {
    ojson members = ojson::array();
    for (const auto& m : shell.members)
        members.push_back(ojson{{"l", m.l}, {"n", m.n}, {"rho", m.rho}});
    return ojson{{"format_version", 1}, {"p", shell.p},         {"q", shell.q},
                 {"l0", shell.l0},      {"n0", shell.n0},       {"beta0", shell.beta0},
                 {"rho_bar", shell.rho_bar},                    {"members", members}};
}

ojson lifetime_json(const scars::LifetimeReport& rep) {
    return ojson{{"e_mean", rep.e_mean},
                 {"delta_e", rep.delta_e},
                 {"tau_q", jnum(rep.tau_q)},
                 {"t_classical", rep.t_classical},
                 {"ratio", jnum(rep.ratio)},
                 {"g_factor", rep.g_factor},
                 {"eq5_estimate", rep.eq5_estimate}};
}

// All knobs of every subcommand; pipeline configs use exactly these key names.
struct Options {
    double radius = 1.0, mass = 1.0, hbar = 1.0;
    int l = 0, count = 1;
    int p = 1, q = 3, l0 = 120, half_width = 3, l0_window = 0, members = 0;
    double delta_phi = 0.25;
    double t_max_over_T = 40.0;
    int steps = 2048;
    int grid = 512, levels = 10, threads = 0;
    std::string out_dir = ".";
    std::string grid_file, out_file;
    std::string config_file;
};

scars::BilliardConfig billiard_of(const Options& o) { return {o.radius, o.mass, o.hbar}; }

fs::path prep_out_dir(const Options& o) {
    fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw scars::IoError("cannot create output directory " + dir.string());
    return dir;
}

// Shell members ranked by (|j|, positive j first): --members 6 keeps j = -2..3.
scars::Shell trim_members(const scars::Shell& shell, int keep) {
    const int total = static_cast<int>(shell.members.size());
    if (keep <= 0 || keep == total) return shell;
    if (keep > total)
        throw std::domain_error("members: requested more members than the shell holds");
    const int half = total / 2;  // members are j = -half..half
    std::vector<int> order;
    order.push_back(0);
    for (int a = 1; a <= half && static_cast<int>(order.size()) < keep; ++a) {
        order.push_back(a);
        if (static_cast<int>(order.size()) < keep) order.push_back(-a);
    }
    std::sort(order.begin(), order.end());
    scars::Shell out = shell;
    out.members.clear();
    for (int j : order) out.members.push_back(shell.members[j + half]);
    double sum = 0.0;
    for (const auto& m : out.members) sum += m.rho;
    out.rho_bar = sum / static_cast<double>(out.members.size());
    return out;
}

scars::ScarPacket packet_of(const Options& o) {
    const auto cfg = billiard_of(o);
    const scars::Shell shell =
        trim_members(scars::find_shell(cfg, o.p, o.q, o.l0, o.half_width, o.l0_window),
                     o.members);
    return scars::build_packet(cfg, shell, o.delta_phi);
}

ojson scar_json(const scars::ScarPacket& pk) {
    ojson doc{{"format_version", 1},
              {"shell", shell_json(pk.shell)},
              {"delta_phi", pk.delta_phi},
              {"delta_l", pk.delta_l},
              {"coeffs", pk.coeffs},
              {"lifetime", lifetime_json(scars::lifetime_report(pk))}};
    doc["shell"].erase("format_version");  // nested document, version lives at top level
    return doc;
}

void run_zeros(const Options& o) {
    if (o.count < 1) throw std::domain_error("zeros: count must be >= 1");
    ojson zeros = ojson::array();
    for (int i = 1; i <= o.count; ++i) zeros.push_back(scars::bessel_zero(o.l, i));
    emit(prep_out_dir(o) / "zeros.json",
         ojson{{"format_version", 1}, {"l", o.l}, {"count", o.count}, {"zeros", zeros}});
}

void run_shell(const Options& o) {
    const scars::Shell shell =
        scars::find_shell(billiard_of(o), o.p, o.q, o.l0, o.half_width, o.l0_window);
    emit(prep_out_dir(o) / "shell.json", shell_json(shell));
}

void run_scar(const Options& o) {
    emit(prep_out_dir(o) / "scar.json", scar_json(packet_of(o)));
}

void write_evolution(const scars::ScarPacket& pk, const Options& o, const fs::path& dir) {
    const auto curve = scars::survival_curve(pk, o.t_max_over_T, o.steps);
    const auto consistency = scars::lifetime_consistency(pk, o.t_max_over_T, o.steps);

    std::ostringstream csv;
    csv << "format_version=1\nt_over_T,survival\n";
    char buf[80];
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", curve.times[i], curve.values[i]);
        csv << buf;
    }
    write_text(dir / "survival.csv", csv.str());
    std::cout << "wrote " << (dir / "survival.csv").string() << "\n";

    emit(dir / "evolve.json",
         ojson{{"format_version", 1},
               {"tau_numeric", jnum(consistency.tau_numeric)},  // units of T
               {"tau_q", jnum(consistency.tau_q)},              // units of T
               {"ratio", jnum(consistency.ratio_of_estimates)},
               {"consistent", consistency.consistent},
               {"t_classical", scars::lifetime_report(pk).t_classical},
               {"t_max_over_T", o.t_max_over_T},
               {"steps", o.steps}});
}

void run_evolve(const Options& o) {
    write_evolution(packet_of(o), o, prep_out_dir(o));
}

void run_render(const Options& o) {
    const scars::DensityGrid grid = scars::read_csv(o.grid_file);
    scars::render_pgm(grid, o.out_file, o.levels);
    std::cout << "wrote " << o.out_file << "\n";
}

ojson orbit_json(const scars::OrbitPath& path, double tube_frac, double tube_half_width) {
    ojson vertices = ojson::array();
    for (double a : path.vertex_angles)
        vertices.push_back(ojson::array(
            {path.radius * std::cos(a), path.radius * std::sin(a)}));
    ojson polyline = vertices;
    polyline.push_back(vertices[0]);  // closed polyline, first vertex repeated
    return ojson{{"format_version", 1},
                 {"p", path.p},
                 {"q", path.q},
                 {"phi0", path.phi0},
                 {"bounces", path.bounces},
                 {"m_product", path.m_product},
                 {"caustic_radius", path.caustic_radius},
                 {"vertices", vertices},
                 {"polyline", polyline},
                 {"tube_half_width", tube_half_width},
                 {"tube_fraction", tube_frac}};
}

void run_pipeline(const Options& o) {
    const fs::path dir = prep_out_dir(o);
    const auto cfg = billiard_of(o);
    const scars::Shell shell =
        trim_members(scars::find_shell(cfg, o.p, o.q, o.l0, o.half_width, o.l0_window),
                     o.members);
    emit(dir / "shell.json", shell_json(shell));

    const auto pk = scars::build_packet(cfg, shell, o.delta_phi);
    emit(dir / "scar.json", scar_json(pk));

    write_evolution(pk, o, dir);

    const scars::DensityGrid exact = scars::eval_grid(pk, o.grid, o.threads);
    scars::write_csv(exact, (dir / "grid_exact.csv").string());
    std::cout << "wrote " << (dir / "grid_exact.csv").string() << "\n";

    const double tube_w = 0.15 * cfg.radius;
    const double phi0 = scars::fit_orbit_phase(exact, o.p, o.q, tube_w);
    const auto orbit = scars::classical_orbit(o.p, o.q, phi0, cfg.radius);
    emit(dir / "orbit.json", orbit_json(orbit, scars::tube_fraction(exact, orbit, tube_w), tube_w));

    const scars::DensityGrid asym =
        scars::eval_grid_asymptotic(shell, o.delta_phi, phi0, o.grid, o.threads);
    scars::write_csv(asym, (dir / "grid_asymptotic.csv").string());
    std::cout << "wrote " << (dir / "grid_asymptotic.csv").string() << "\n";

    scars::render_pgm(exact, (dir / "density_exact.pgm").string(), o.levels);
    std::cout << "wrote " << (dir / "density_exact.pgm").string() << "\n";
    scars::render_pgm(asym, (dir / "density_asymptotic.pgm").string(), o.levels);
    std::cout << "wrote " << (dir / "density_asymptotic.pgm").string() << "\n";
}

void apply_config(Options& o, const std::string& path, const CLI::App* pipeline) {
    std::ifstream f(path);
    if (!f) throw scars::IoError("cannot open config file " + path);
    ojson doc;
    try {
        doc = ojson::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw scars::IoError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw scars::IoError("config file " + path + " must hold a JSON object");

    auto overridden = [&](const std::string& flag) {
        const CLI::Option* opt = pipeline->get_option_no_throw("--" + flag);
        return opt != nullptr && opt->count() > 0;  // explicit flags beat the file
    };
    try {
        for (const auto& [key, value] : doc.items()) {
            if (overridden(key)) continue;
            if (key == "radius") o.radius = value.get<double>();
            else if (key == "mass") o.mass = value.get<double>();
            else if (key == "hbar") o.hbar = value.get<double>();
            else if (key == "p") o.p = value.get<int>();
            else if (key == "q") o.q = value.get<int>();
            else if (key == "l0") o.l0 = value.get<int>();
            else if (key == "half-width") o.half_width = value.get<int>();
            else if (key == "l0-window") o.l0_window = value.get<int>();
            else if (key == "members") o.members = value.get<int>();
            else if (key == "delta-phi") o.delta_phi = value.get<double>();
            else if (key == "t-max-over-T") o.t_max_over_T = value.get<double>();
            else if (key == "steps") o.steps = value.get<int>();
            else if (key == "grid") o.grid = value.get<int>();
            else if (key == "levels") o.levels = value.get<int>();
            else if (key == "threads") o.threads = value.get<int>();
            else if (key == "out-dir") o.out_dir = value.get<std::string>();
            else throw UsageError("config file: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config file: bad value type: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circular-billiard scarred wave packets: spectra, lifetimes, densities"};
    app.require_subcommand(1);
    Options o;

    auto add_units = [&](CLI::App* cmd) {
        cmd->add_option("--radius", o.radius, "Disk radius R");
        cmd->add_option("--mass", o.mass, "Particle mass M");
        cmd->add_option("--hbar", o.hbar, "Reduced Planck constant");
        cmd->add_option("--out-dir", o.out_dir, "Output directory");
    };
    auto add_shell_flags = [&](CLI::App* cmd) {
        cmd->add_option("--p", o.p, "Winding number p");
        cmd->add_option("--q", o.q, "Bounce number q");
        cmd->add_option("--l0", o.l0, "Central angular momentum hint");
        cmd->add_option("--half-width", o.half_width, "Members on each side of l0");
        cmd->add_option("--l0-window", o.l0_window, "Search width around the l0 hint");
    };
    auto add_packet_flags = [&](CLI::App* cmd) {
        add_shell_flags(cmd);
        cmd->add_option("--delta-phi", o.delta_phi, "Angular width of the packet");
        cmd->add_option("--members", o.members, "Keep only this many members (0 = all)");
    };

    CLI::App* zeros = app.add_subcommand("zeros", "Positive zeros of J_l");
    zeros->add_option("--l", o.l, "Bessel order")->required();
    zeros->add_option("--count", o.count, "How many zeros")->required();
    add_units(zeros);

    CLI::App* shell = app.add_subcommand("shell", "Locate a nearly degenerate energy shell");
    add_shell_flags(shell);
    add_units(shell);

    CLI::App* scar = app.add_subcommand("scar", "Build a packet and its lifetime report");
    add_packet_flags(scar);
    add_units(scar);

    CLI::App* evolve = app.add_subcommand("evolve", "Survival probability of the packet");
    add_packet_flags(evolve);
    evolve->add_option("--t-max-over-T", o.t_max_over_T, "Time horizon in units of T");
    evolve->add_option("--steps", o.steps, "Sample intervals on [0, t_max]");
    add_units(evolve);

    CLI::App* render = app.add_subcommand("render", "Banded PGM image of a grid CSV");
    render->add_option("--grid", o.grid_file, "Input grid CSV")->required();
    render->add_option("--levels", o.levels, "Contour bands");
    render->add_option("--out", o.out_file, "Output PGM path")->required();

    CLI::App* pipeline = app.add_subcommand("pipeline", "shell -> scar -> evolve -> render");
    pipeline->add_option("--config", o.config_file, "Flat JSON config (flags override)");
    add_packet_flags(pipeline);
    pipeline->add_option("--t-max-over-T", o.t_max_over_T, "Time horizon in units of T");
    pipeline->add_option("--steps", o.steps, "Sample intervals on [0, t_max]");
    pipeline->add_option("--grid", o.grid, "Grid resolution per axis");
    pipeline->add_option("--levels", o.levels, "Contour bands");
    pipeline->add_option("--threads", o.threads, "Grid workers (0 = auto)");
    add_units(pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (zeros->parsed()) run_zeros(o);
        else if (shell->parsed()) run_shell(o);
        else if (scar->parsed()) run_scar(o);
        else if (evolve->parsed()) run_evolve(o);
        else if (render->parsed()) run_render(o);
        else if (pipeline->parsed()) {
            if (!o.config_file.empty()) apply_config(o, o.config_file, pipeline);
            run_pipeline(o);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const scars::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const scars::ShellNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
