#include "sosforge/bounds.hpp"
#include "sosforge/decompose.hpp"
#include "sosforge/halton.hpp"
#include "sosforge/oddvand.hpp"
#include "sosforge/trace.hpp"
#include "sosforge/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace sosforge;
namespace fs = std::filesystem;

struct RunConfig {
    Field field;
    SmoothnessClass smoothness;
    Box box;
    DecomposeConfig dec;
    int grid_samples = 4096;
    std::string seed_label = "default";
};

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    RunConfig cfg;
    auto [poly, s] = Polynomial::from_json(j.at("field").dump());
    cfg.smoothness = s;
    cfg.field = polynomial_field(poly, s);
    cfg.box.lo = j.at("box").at("lo").get<std::vector<double>>();
    cfg.box.hi = j.at("box").at("hi").get<std::vector<double>>();
    cfg.box.validate();
    if (cfg.box.dim() != s.n) throw std::runtime_error("config: box/field dim mismatch");
    cfg.dec.nu = j.value("nu", 0.05);
    cfg.dec.lambda = j.value("lambda", 1.25);
    cfg.dec.omega = j.value("omega", 0.0);
    cfg.dec.max_level = j.value("max_level", 20);
    cfg.dec.delta_cut = j.value("delta_cut", -1.0);
    cfg.grid_samples = j.value("grid_samples", 4096);
    cfg.seed_label = j.value("seed_label", std::string("default"));
    cfg.dec.seed = seed_from_label(cfg.seed_label);
    if (!(cfg.dec.lambda > 1.0 && cfg.dec.lambda < 1.5))
        throw std::runtime_error("config: lambda must lie in (1, 3/2)");
    return cfg;
}

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    out << content;
}

int run_decompose(const std::string& config_path, const std::string& out_dir, bool svg) {
    RunConfig cfg = load_config(config_path);
    Decomposition dec = decompose(cfg.field, cfg.box, cfg.dec);
    fs::path out(out_dir);
    write_file(out / "manifest.json", dec.manifest_json());
    write_file(out / "samples.csv", dec.samples_csv(256, cfg.dec.seed));
    if (svg && cfg.smoothness.n == 2 && dec.partition) {
        std::vector<int> colors;
        for (int c : dec.cube_colors.color) colors.push_back(c);
        write_file(out / "partition.svg", partition_svg(*dec.partition, &colors));
    }
    std::vector<CheckReport> reports;
    reports.push_back(
        check_reconstruction(dec, cfg.field, cfg.grid_samples, cfg.dec.seed));
    write_file(out / "verify.json", reports_to_json(reports));
    std::cout << "classes: " << dec.classes.size() << ", terms: " << dec.terms.size()
              << ", residual: " << reports[0].worst << "\n";
    return reports[0].pass ? 0 : 1;
}

int run_partition(const std::string& config_path, const std::string& out_dir, bool svg) {
    RunConfig cfg = load_config(config_path);
    ControlFunction r{cfg.field, cfg.dec.nu, cfg.dec.omega > 0 ? cfg.dec.omega : 1.0};
    double delta = cfg.dec.delta_cut >= 0 ? cfg.dec.delta_cut
                                          : 1e-6 * cfg.box.max_side();
    Partition p = build_partition(r, cfg.box, cfg.dec.nu, cfg.dec.lambda,
                                  cfg.dec.max_level, delta);
    fs::path out(out_dir);
    write_file(out / "partition.json", p.to_json());
    if (svg && cfg.smoothness.n == 2) write_file(out / "partition.svg", partition_svg(p));
    std::cout << "cubes: " << p.cubes().size()
              << ", uncovered: " << p.uncovered_volume() << "\n";
    return 0;
}

int run_color(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_config(config_path);
    ControlFunction r{cfg.field, cfg.dec.nu, cfg.dec.omega > 0 ? cfg.dec.omega : 1.0};
    double delta = cfg.dec.delta_cut >= 0 ? cfg.dec.delta_cut
                                          : 1e-6 * cfg.box.max_side();
    Partition p = build_partition(r, cfg.box, cfg.dec.nu, cfg.dec.lambda,
                                  cfg.dec.max_level, delta);
    CubeGraph g = adjacency_graph(p);
    Coloring c = welsh_powell_color(g);
    write_file(fs::path(out_dir) / "graph.json", graph_to_json(g, &c));
    std::cout << "vertices: " << g.vertices << ", edges: " << g.edges.size()
              << ", classes: " << c.classes << "\n";
    bool ok = degree_certificate(g, cfg.smoothness.n);
    return ok ? 0 : 1;
}

int run_verify(const std::string& config_path, const std::string& manifest_path,
               const std::string& out_dir) {
    RunConfig cfg = load_config(config_path);
    Decomposition dec = decompose(cfg.field, cfg.box, cfg.dec);
    if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path);
        std::string stored((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
        if (nlohmann::json::parse(stored) !=
            nlohmann::json::parse(dec.manifest_json())) {
            std::cerr << "manifest mismatch against a fresh run\n";
            return 1;
        }
    }
    std::vector<CheckReport> reports;
    reports.push_back(
        check_reconstruction(dec, cfg.field, cfg.grid_samples, cfg.dec.seed));
    write_file(fs::path(out_dir) / "verify.json", reports_to_json(reports));
    bool all = true;
    for (const auto& r : reports) {
        std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int run_lemma(int ell) {
    RationalWeights w = odd_moment_weights(ell);
    std::cout << "eta = (";
    for (int i = 0; i < w.s; ++i)
        std::cout << rational_to_string(w.etas[i]) << (i + 1 < w.s ? ", " : ")\n");
    std::cout << "q = (";
    for (int i = 0; i < w.s; ++i)
        std::cout << rational_to_string(w.qs[i]) << (i + 1 < w.s ? ", " : ")\n");
    bool ok = verify_odd_moments(w) && solve_moment_system(w.etas) == w.qs;
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_bounds(int n_lo, int n_hi, int k_lo, int k_hi, bool csv) {
    auto rows = bounds_table(n_lo, n_hi, k_lo, k_hi);
    std::cout << (csv ? bounds_table_csv(rows) : bounds_table_markdown(rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive sum-of-squares decomposition toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", manifest_path;
    bool svg = false;
    int threads = 0;
    if (const char* env = std::getenv("SOSFORGE_THREADS")) threads = std::atoi(env);
    app.add_option("--threads", threads, "worker pool size (0 = auto)");

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "run configuration JSON");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_flag("--svg", svg, "emit a 2-D partition drawing");
    };

    auto* cmd_dec = app.add_subcommand("decompose", "run the full pipeline");
    add_common(cmd_dec, true);
    auto* cmd_part = app.add_subcommand("partition", "build the cube family only");
    add_common(cmd_part, true);
    auto* cmd_color = app.add_subcommand("color", "build and color the cube graph");
    add_common(cmd_color, true);
    auto* cmd_verify = app.add_subcommand("verify", "re-run checks for a manifest");
    add_common(cmd_verify, true);
    cmd_verify->add_option("--manifest", manifest_path, "manifest to compare against");

    int ell = 5;
    auto* cmd_lemma = app.add_subcommand("lemma", "odd-power moment weights");
    cmd_lemma->add_option("--ell", ell, "odd order")->required();

    int n_lo = 1, n_hi = 4, k_lo = 2, k_hi = 3;
    bool csv = false;
    auto* cmd_bounds = app.add_subcommand("bounds", "counting table");
    cmd_bounds->add_option("--n-lo", n_lo);
    cmd_bounds->add_option("--n-hi", n_hi);
    cmd_bounds->add_option("--k-lo", k_lo);
    cmd_bounds->add_option("--k-hi", k_hi);
    cmd_bounds->add_flag("--csv", csv, "CSV instead of Markdown");

    auto* cmd_trace = app.add_subcommand("trace", "claims-to-tests matrix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_dec->parsed()) return run_decompose(config_path, out_dir, svg);
        if (cmd_part->parsed()) return run_partition(config_path, out_dir, svg);
        if (cmd_color->parsed()) return run_color(config_path, out_dir);
        if (cmd_verify->parsed())
            return run_verify(config_path, manifest_path, out_dir);
        if (cmd_lemma->parsed()) return run_lemma(ell);
        if (cmd_bounds->parsed()) return run_bounds(n_lo, n_hi, k_lo, k_hi, csv);
        if (cmd_trace->parsed()) {
            std::cout << emit_trace_matrix();
            return 0;
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
