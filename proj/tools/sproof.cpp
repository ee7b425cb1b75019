// Command-line front end: run the verification pipeline, compare runs, export constants.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sproof/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sproof::ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Flags {
    std::string config_file;
    sproof::RunConfig cfg;
};

void add_run_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config_file, "flat JSON run configuration; flags override it");
    app->add_option("--problem", f.cfg.problem, "emden | poly:c0,c1,c2");
    app->add_option("--n", f.cfg.n, "Legendre degree N");
    app->add_option("--method", f.cfg.method, "fixed-point | kantorovich | in-classic | all");
    app->add_option("--variant", f.cfg.variant, "schur | schur-alt");
    app->add_option("--constants", f.cfg.constants_file, "constant override table (JSON)");
    app->add_option("--out", f.cfg.out_dir, "output directory");
    app->add_option("--grid", f.cfg.grid, "grid points per direction for the sample of u_hat");
    app->add_option("--seed", f.cfg.seed, "random seed recorded in the configuration");
    app->add_option("--newton-seed", f.cfg.newton_seed, "default | zero | positive");
    app->add_option("--box-conversion", f.cfg.box_conversion, "functional | cauchy-schwarz");
}

// File values first, then every flag given on the command line.
sproof::RunConfig merge(const CLI::App* app, const Flags& f) {
    if (f.config_file.empty()) return f.cfg;
    sproof::RunConfig c = sproof::RunConfig::from_json(read_file(f.config_file));
    const auto given = [app](const char* name) { return app->count(name) > 0; };
    if (given("--problem")) c.problem = f.cfg.problem;
    if (given("--n")) c.n = f.cfg.n;
    if (given("--method")) c.method = f.cfg.method;
    if (given("--variant")) c.variant = f.cfg.variant;
    if (given("--constants")) c.constants_file = f.cfg.constants_file;
    if (given("--out")) c.out_dir = f.cfg.out_dir;
    if (given("--grid")) c.grid = f.cfg.grid;
    if (given("--seed")) c.seed = f.cfg.seed;
    if (given("--newton-seed")) c.newton_seed = f.cfg.newton_seed;
    if (given("--box-conversion")) c.box_conversion = f.cfg.box_conversion;
    return c;
}

int do_run(const sproof::RunConfig& cfg) {
    const sproof::PipelineResult r = sproof::run_pipeline(cfg);
    sproof::write_artifacts(r, cfg.out_dir);
    std::cout << sproof::summary_table(r);
    for (const auto& run : r.runs)
        if (!run.cert.verified()) std::cerr << run.cert.method << ": " << run.cert.status << ": " << run.cert.message << "\n";
    return r.all_verified() ? kExitOk : kExitInconclusive;
}

int do_compare(const sproof::RunConfig& base, const std::vector<int>& ns, const std::vector<std::string>& methods,
               const std::string& csv_path) {
    std::vector<sproof::RunConfig> configs;
    for (int n : ns)
        for (const auto& m : methods) {
            sproof::RunConfig c = base;
            c.n = n;
            c.method = m;
            c.validate();
            configs.push_back(c);
        }
    if (configs.size() < 2) throw sproof::ConfigError("compare needs at least two configurations");
    std::string csv = sproof::compare_header();
    bool ok = true;
    for (const auto& c : configs) {
        const sproof::PipelineResult r = sproof::run_pipeline(c);
        csv += sproof::compare_rows(r);
        ok = ok && r.all_verified();
    }
    if (csv_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        out << csv;
    }
    return ok ? kExitOk : kExitInconclusive;
}

int do_constants(int n_max, const std::string& path) {
    if (n_max < 1 || n_max > sproof::ConstantProvider::kMaxTableN)
        throw sproof::ConfigError("--n-max must be in 1.." + std::to_string(sproof::ConstantProvider::kMaxTableN));
    sproof::ConstantProvider p;
    nlohmann::json j;
    j["source"] = p.C_N(1).source;
    j["C_P"] = {sproof::to_hex(p.C_P().value.lo()), sproof::to_hex(p.C_P().value.hi())};
    j["C_4"] = {sproof::to_hex(p.C_4().value.lo()), sproof::to_hex(p.C_4().value.hi())};
    for (int n = 1; n <= n_max; ++n) {
        const sproof::Interval v = p.C_N(n).value;
        j["C_N"][std::to_string(n)] = {sproof::to_hex(v.lo()), sproof::to_hex(v.hi())};
    }
    const std::string text = j.dump(1) + "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << text;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sproof: computer-assisted existence proofs for -Delta u = f(u) on the unit square"};
    app.require_subcommand(0, 1);

    Flags top;
    add_run_flags(&app, top);

    CLI::App* run = app.add_subcommand("run", "run the verification pipeline (default)");
    Flags run_flags;
    add_run_flags(run, run_flags);

    CLI::App* compare = app.add_subcommand("compare", "one CSV row per (N, method) run");
    Flags cmp_flags;
    std::vector<int> cmp_ns;
    std::vector<std::string> cmp_methods;
    std::string cmp_csv;
    compare->add_option("--problem", cmp_flags.cfg.problem, "emden | poly:c0,c1,c2");
    compare->add_option("--n", cmp_ns, "degrees (repeatable)")->required();
    compare->add_option("--method", cmp_methods, "methods (repeatable)");
    compare->add_option("--variant", cmp_flags.cfg.variant, "schur | schur-alt");
    compare->add_option("--constants", cmp_flags.cfg.constants_file, "constant override table (JSON)");
    compare->add_option("--csv", cmp_csv, "output CSV path (default stdout)");

    CLI::App* constants = app.add_subcommand("constants", "export the constant table");
    int n_max = 40;
    std::string const_out;
    constants->add_option("--n-max", n_max, "largest N to export");
    constants->add_option("--out", const_out, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kExitUsage;
    }

    try {
        if (*compare) {
            if (cmp_methods.empty()) cmp_methods.push_back("fixed-point");
            return do_compare(cmp_flags.cfg, cmp_ns, cmp_methods, cmp_csv);
        }
        if (*constants) return do_constants(n_max, const_out);
        const sproof::RunConfig cfg = *run ? merge(run, run_flags) : merge(&app, top);
        cfg.validate();
        return do_run(cfg);
    } catch (const sproof::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconclusive;
    }
}
