#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torustrace/conformal.hpp"
#include "torustrace/errors.hpp"
#include "torustrace/flat_trace.hpp"
#include "torustrace/greens.hpp"
#include "torustrace/hideseek.hpp"
#include "torustrace/lattice.hpp"
#include "torustrace/version.hpp"

namespace tt = torustrace;
using nlohmann::json;

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Tolerances {
    int quad_panels = 1 << 14;
    double series_abs_tol = 1e-14;
    long long series_max_terms = 1'000'000;
    double class_tol = 1e-9;
};

Tolerances load_config(const std::string& path) {
    Tolerances t;
    if (path.empty()) return t;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not readable: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) continue;
        if (key == "quad_panels") t.quad_panels = std::stoi(val);
        else if (key == "series_abs_tol") t.series_abs_tol = std::stod(val);
        else if (key == "series_max_terms") t.series_max_terms = std::stoll(val);
        else if (key == "class_tol") t.class_tol = std::stod(val);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return t;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tc = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tc, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::map<std::string, std::string>& params, const Tolerances& tol) {
    json m;
    m["command"] = command;
    m["parameters"] = params;
    m["tolerances"] = {{"quad_panels", tol.quad_panels},
                       {"series_abs_tol", tol.series_abs_tol},
                       {"series_max_terms", tol.series_max_terms},
                       {"class_tol", tol.class_tol}};
    m["library_version"] = tt::kVersion;
    m["timestamp"] = iso_timestamp();
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write manifest: " + out_path);
    out << m.dump(2) << "\n";
}

struct ShapeArgs {
    std::vector<double> tau;
    double rect = 0.0;
    bool hex = false;

    tt::lattice::TorusShape build() const {
        if (hex) return tt::lattice::make_torus(0.5, std::sqrt(3.0) / 2.0);
        if (rect > 0.0) return tt::lattice::make_rect_torus(rect);
        if (tau.size() == 2) return tt::lattice::make_torus(tau[0], tau[1]);
        throw std::invalid_argument("specify a torus via --tau RE IM, --rect A, or --hex");
    }

    void attach(CLI::App* cmd, bool with_hex = true) {
        cmd->add_option("--tau", tau, "modulus tau = RE IM")->expected(2);
        cmd->add_option("--rect", rect, "rectangle parameter a (tau = i pi / a)");
        if (with_hex) cmd->add_flag("--hex", hex, "hexagonal torus tau = 1/2 + i sqrt(3)/2");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"torustrace: regularized traces of the inverse Laplacian on flat and bubbled tori"};
    app.require_subcommand(1);

    bool as_json = false;
    std::string config_path;
    app.add_flag("--json", as_json, "emit machine-readable JSON");
    app.add_option("--config", config_path, "tolerance file (key = value per line)");

    // flat ------------------------------------------------------------------
    auto* flat = app.add_subcommand("flat", "spectral report of a flat torus");
    ShapeArgs flat_shape;
    flat_shape.attach(flat);

    // sweep -----------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "bubble sweep over the rectangle parameter a");
    double a_min = 5.0, a_max = 40.0;
    int steps = 8;
    std::string out_path;
    sweep->add_option("--a-min", a_min, "smallest a")->required();
    sweep->add_option("--a-max", a_max, "largest a")->required();
    sweep->add_option("--steps", steps, "number of rows (inclusive endpoints)")->required();
    sweep->add_option("--out", out_path, "CSV output path")->required();

    // bubble ----------------------------------------------------------------
    auto* bubble = app.add_subcommand("bubble", "bubble conformal factor on a rectangle torus");
    double bubble_a = 20.0;
    double smooth_width = 0.0;
    int panels_override = 0;
    bubble->add_option("--a", bubble_a, "rectangle parameter a")->required();
    bubble->add_option("--smooth", smooth_width, "smoothing width (0 = exact bubble)");
    bubble->add_option("--panels", panels_override, "quadrature panel count");

    // green -----------------------------------------------------------------
    auto* green = app.add_subcommand("green", "Green's function between two points");
    ShapeArgs green_shape;
    green_shape.attach(green);
    std::vector<double> px, py;
    green->add_option("--x", px, "first point X1 X2")->expected(2)->required();
    green->add_option("--y", py, "second point Y1 Y2")->expected(2)->required();

    // mass ------------------------------------------------------------------
    auto* mass = app.add_subcommand("mass", "Robin's mass field report");
    ShapeArgs mass_shape;
    mass_shape.attach(mass);
    int mass_points = 5;
    mass->add_option("--points", mass_points, "number of sample points");

    // twist -----------------------------------------------------------------
    auto* twist = app.add_subcommand("twist", "flat trace along the twist family x + iy");
    double twist_y = 10.0;
    std::vector<double> twist_xs;
    twist->add_option("--y", twist_y, "imaginary part (skinny regime, y > 1)")->required();
    twist->add_option("--x-list", twist_xs, "twist values in [0, 1/2]")->required()->delimiter(',');

    // variation -------------------------------------------------------------
    auto* variation = app.add_subcommand("variation", "first/second variation along a longitudinal mode");
    double var_a = 10.0;
    int var_mode = 1;
    variation->add_option("--a", var_a, "rectangle parameter a")->required();
    variation->add_option("--mode", var_mode, "longitudinal mode index k >= 1")->required();

    // mc --------------------------------------------------------------------
    auto* mc = app.add_subcommand("mc", "Monte Carlo hitting-time estimate");
    ShapeArgs mc_shape;
    mc_shape.attach(mc);
    double mc_eps = 0.05;
    long long mc_trials = 10'000;
    std::uint64_t mc_seed = 1;
    double mc_dt = 0.0;
    mc->add_option("--eps", mc_eps, "target-ball radius")->required();
    mc->add_option("--trials", mc_trials, "trial count");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--dt", mc_dt, "time step (default epsilon^2/10)");

    CLI11_PARSE(app, argc, argv);

    const Tolerances tol = load_config(config_path);
    tt::specfun::SeriesConfig series{tol.series_abs_tol, tol.series_max_terms};
    tt::quadrature::QuadratureConfig quad;
    quad.n = tol.quad_panels;

    if (flat->parsed()) {
        const auto shape = flat_shape.build();
        const auto rep = tt::flat_trace::spectral_report(shape, series);
        if (as_json) {
            json j{{"lambda1", rep.lambda1},
                   {"class", tt::lattice::to_string(rep.shape_class)},
                   {"ztilde1", rep.ztilde1},
                   {"logdet", rep.logdet},
                   {"modulus", {rep.modulus_re, rep.modulus_im}},
                   {"library_version", tt::kVersion}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "reduced modulus : " << fmt12(rep.modulus_re) << " + " << fmt12(rep.modulus_im) << " i\n"
                      << "lambda1         : " << fmt12(rep.lambda1) << "\n"
                      << "class           : " << tt::lattice::to_string(rep.shape_class) << "\n"
                      << "ztilde(1)       : " << fmt12(rep.ztilde1) << "\n"
                      << "log det         : " << fmt12(rep.logdet) << "\n";
        }
        return 0;
    }

    if (sweep->parsed()) {
        if (!(a_min > 0.0) || !(a_max >= a_min) || steps < 1)
            throw std::invalid_argument("sweep: need 0 < a-min <= a-max and steps >= 1");
        std::vector<double> avals(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i)
            avals[static_cast<std::size_t>(i)] =
                (steps == 1) ? a_min : a_min + (a_max - a_min) * i / (steps - 1);

        struct Row { double a, zt, f, ztb, sphere, gap; };
        const double sphere = tt::flat_trace::sphere_constant();
        std::vector<std::future<Row>> futures;
        futures.reserve(avals.size());
        for (double a : avals) {
            futures.push_back(std::async(std::launch::async, [a, sphere, &series, &quad] {
                const auto shape = tt::lattice::make_rect_torus(a);
                const double zt = tt::flat_trace::ztilde_flat(shape, series);
                const double f = tt::conformal::conformal_change_functional(tt::conformal::bubble_factor(a), quad);
                const double ztb = zt + f;
                return Row{a, zt, f, ztb, sphere, ztb - sphere};
            }));
        }
        std::vector<Row> rows;
        rows.reserve(futures.size());
        for (auto& fu : futures) rows.push_back(fu.get());

        std::ostringstream csv;
        csv << "# torustrace sweep\n"
            << "# version: " << tt::kVersion << "\n"
            << "# parameters: a-min=" << fmt12(a_min) << " a-max=" << fmt12(a_max)
            << " steps=" << steps << " panels=" << quad.n << "\n"
            << "a,ztilde_flat,F_phi,ztilde_bubble,sphere_constant,gap\n";
        for (const Row& r : rows)
            csv << fmt12(r.a) << ',' << fmt12(r.zt) << ',' << fmt12(r.f) << ',' << fmt12(r.ztb)
                << ',' << fmt12(r.sphere) << ',' << fmt12(r.gap) << "\n";

        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("sweep: cannot write " + out_path);
        out << csv.str();
        out.close();
        write_manifest(out_path + ".manifest.json", "sweep",
                       {{"a-min", fmt12(a_min)}, {"a-max", fmt12(a_max)},
                        {"steps", std::to_string(steps)}, {"out", out_path}},
                       tol);
        if (as_json) {
            json j = json::array();
            for (const Row& r : rows)
                j.push_back({{"a", r.a}, {"ztilde_flat", r.zt}, {"F_phi", r.f},
                             {"ztilde_bubble", r.ztb}, {"sphere_constant", r.sphere}, {"gap", r.gap}});
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
        }
        return 0;
    }

    if (bubble->parsed()) {
        if (panels_override > 0) quad.n = panels_override;
        const auto factor = (smooth_width > 0.0) ? tt::conformal::smoothed_bubble(bubble_a, smooth_width)
                                                 : tt::conformal::bubble_factor(bubble_a);
        const auto shape = tt::lattice::make_rect_torus(bubble_a);
        const auto pot = tt::conformal::solve_potential(factor, quad);
        const double f = tt::conformal::conformal_change_functional(factor, quad);
        const double ztb = f + tt::flat_trace::ztilde_flat(shape, series);
        const double area = factor.area(quad);
        const double sphere = tt::flat_trace::sphere_constant();
        if (as_json) {
            json j{{"a", bubble_a},
                   {"smooth_width", smooth_width},
                   {"F_phi", f},
                   {"ztilde_bubble", ztb},
                   {"sphere_constant", sphere},
                   {"gap", ztb - sphere},
                   {"potential_residual", pot.residual},
                   {"area", area},
                   {"panels", quad.n},
                   {"library_version", tt::kVersion}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "a                  : " << fmt12(bubble_a) << "\n"
                      << "F[phi]             : " << fmt12(f) << "\n"
                      << "ztilde_bubble      : " << fmt12(ztb) << "\n"
                      << "sphere constant    : " << fmt12(sphere) << "\n"
                      << "gap to sphere      : " << fmt12(ztb - sphere) << "\n"
                      << "potential residual : " << fmt12(pot.residual) << "\n"
                      << "area residual      : " << fmt12(area - 1.0) << "\n";
        }
        return 0;
    }

    if (green->parsed()) {
        const auto shape = green_shape.build();
        const auto ev = tt::greens::greens_flat(shape, {px[0], px[1]}, {py[0], py[1]}, series);
        if (as_json) {
            json j{{"g", ev.g}, {"log_part", ev.log_part}, {"h", ev.h}, {"dist", ev.dist}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "G(x,y)   : " << fmt12(ev.g) << "\n"
                      << "log part : " << fmt12(ev.log_part) << "\n"
                      << "H(x,y)   : " << fmt12(ev.h) << "\n"
                      << "distance : " << fmt12(ev.dist) << "\n";
        }
        return 0;
    }

    if (mass->parsed()) {
        const auto shape = mass_shape.build();
        std::vector<tt::lattice::Vec2> pts;
        const auto u = shape.basis_u();
        const auto v = shape.basis_v();
        for (int i = 0; i < mass_points; ++i) {
            const double t = static_cast<double>(i) / std::max(1, mass_points);
            pts.push_back({t * u.x + t * t * v.x, t * u.y + t * t * v.y});
        }
        const auto field = tt::greens::robin_mass_field(shape, pts, series);
        const double residual = tt::greens::mass_trace_check(shape);
        if (as_json) {
            json j;
            j["mass"] = field.mass;
            j["mass_trace_residual"] = residual;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "Robin mass (constant on a flat torus):\n";
            for (std::size_t i = 0; i < field.mass.size(); ++i)
                std::cout << "  m(p" << i << ") = " << fmt12(field.mass[i]) << "\n";
            std::cout << "mass-trace residual : " << fmt12(residual) << "\n";
        }
        return 0;
    }

    if (twist->parsed()) {
        const auto table = tt::flat_trace::twist_comparison(twist_y, twist_xs);
        if (as_json) {
            json rows = json::array();
            for (const auto& r : table.rows) rows.push_back({{"x", r.x}, {"ztilde", r.ztilde}});
            json j{{"rows", rows}, {"monotone_decrease", table.monotone_decrease}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "x, ztilde\n";
            for (const auto& r : table.rows)
                std::cout << fmt12(r.x) << ", " << fmt12(r.ztilde) << "\n";
            std::cout << "monotone decrease vs x=0: " << (table.monotone_decrease ? "yes" : "no") << "\n";
        }
        return 0;
    }

    if (variation->parsed()) {
        const auto shape = tt::lattice::make_rect_torus(var_a);
        const auto psi = tt::conformal::longitudinal_mode(var_a, var_mode);
        const double lam = tt::conformal::longitudinal_mode_eigenvalue(var_a, var_mode);
        const double fv = tt::conformal::first_variation(shape, psi, quad);
        const double sv = tt::conformal::second_variation(shape, psi, quad);
        const double closed = 1.0 / (4.0 * M_PI) - 2.0 / lam;
        if (as_json) {
            json j{{"a", var_a}, {"mode", var_mode}, {"eigenvalue", lam},
                   {"first_variation", fv}, {"second_variation", sv},
                   {"second_variation_closed_form", closed}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "mode eigenvalue      : " << fmt12(lam) << "\n"
                      << "first variation      : " << fmt12(fv) << "\n"
                      << "second variation     : " << fmt12(sv) << "\n"
                      << "closed form (1/4pi - 2/lambda): " << fmt12(closed) << "\n";
        }
        return 0;
    }

    if (mc->parsed()) {
        const auto shape = mc_shape.build();
        tt::hideseek::McConfig cfg;
        cfg.epsilon = mc_eps;
        cfg.n_trials = mc_trials;
        cfg.seed = mc_seed;
        cfg.step_dt = (mc_dt > 0.0) ? mc_dt : mc_eps * mc_eps / 10.0;
        const auto est = tt::hideseek::simulate_hitting(shape, cfg);
        const double trace = est.mean + std::log(cfg.epsilon) / (2.0 * M_PI) +
                             tt::hideseek::calibration_offset();
        if (as_json) {
            json j{{"mean", est.mean}, {"std_err", est.std_err}, {"n", est.n},
                   {"trace_estimate", trace}, {"seed", mc_seed}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "mean hitting time : " << fmt12(est.mean) << "\n"
                      << "std error         : " << fmt12(est.std_err) << "\n"
                      << "trials            : " << est.n << "\n"
                      << "trace estimate    : " << fmt12(trace) << "\n";
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tt::convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const tt::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
