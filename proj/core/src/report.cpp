#include "sproof/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sproof/certificate.hpp"

namespace sproof {

namespace {

using nlohmann::json;

std::string dec(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

VerificationCertificate stopped(const RunConfig& cfg, const Nonlinearity& f, const std::string& method,
                                const std::string& msg) {
    VerificationCertificate c;
    c.method = method;
    c.status = "inconclusive";
    c.message = msg;
    c.n = cfg.n;
    c.f = f;
    c.u_hat = SpectralFn(cfg.n);
    c.W_h = SpectralFn(cfg.n);
    return c;
}

}  // namespace

void RunConfig::validate() const {
    if (n < 1) throw ConfigError("N must be >= 1");
    if (n > ConstantProvider::kMaxTableN) throw ConfigError("N exceeds the certified constant table");
    try {
        (void)Nonlinearity::parse(problem);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (method != "fixed-point" && method != "kantorovich" && method != "in-classic" && method != "all")
        throw ConfigError("unknown method: " + method);
    if (variant != "schur" && variant != "schur-alt") throw ConfigError("unknown variant: " + variant);
    if (grid < 2) throw ConfigError("grid must be >= 2");
    if (newton_seed != "default" && newton_seed != "zero" && newton_seed != "positive")
        throw ConfigError("unknown newton seed: " + newton_seed);
    if (box_conversion != "functional" && box_conversion != "cauchy-schwarz")
        throw ConfigError("unknown box conversion: " + box_conversion);
    if (out_dir.empty()) throw ConfigError("output directory must not be empty");
    if (!constants_file.empty()) {
        try {
            (void)ConstantProvider::from_json(read_file(constants_file));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("constants file: ") + e.what());
        }
    }
}

std::vector<std::string> RunConfig::methods() const {
    if (method == "all") return {"fixed-point", "kantorovich", "in-classic"};
    return {method};
}

std::string RunConfig::to_json() const {
    json j{{"problem", problem},     {"n", n},       {"method", method},          {"variant", variant},
           {"constants", constants_file}, {"out", out_dir}, {"grid", grid},         {"seed", seed},
           {"newton_seed", newton_seed},  {"box_conversion", box_conversion}};
    return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "problem") c.problem = v.get<std::string>();
            else if (key == "n") c.n = v.get<int>();
            else if (key == "method") c.method = v.get<std::string>();
            else if (key == "variant") c.variant = v.get<std::string>();
            else if (key == "constants") c.constants_file = v.get<std::string>();
            else if (key == "out") c.out_dir = v.get<std::string>();
            else if (key == "grid") c.grid = v.get<int>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "newton_seed") c.newton_seed = v.get<std::string>();
            else if (key == "box_conversion") c.box_conversion = v.get<std::string>();
            else throw ConfigError("config: unknown key " + key);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

bool PipelineResult::all_verified() const {
    if (runs.empty()) return false;
    for (const auto& r : runs)
        if (!r.cert.verified()) return false;
    return true;
}

ConstantProvider load_constants(const RunConfig& cfg) {
    if (cfg.constants_file.empty()) return ConstantProvider();
    return ConstantProvider::from_json(read_file(cfg.constants_file));
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    PipelineResult out;
    out.config = cfg;
    const Nonlinearity f = Nonlinearity::parse(cfg.problem);
    const ConstantProvider constants = load_constants(cfg);
    const auto fail_all = [&](const std::string& msg) {
        out.error = msg;
        for (const auto& m : cfg.methods()) out.runs.push_back({stopped(cfg, f, m, msg), 0.0});
        return out;
    };

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<SpectralFn> seed;
    if (cfg.newton_seed == "zero") seed = SpectralFn(cfg.n);
    if (cfg.newton_seed == "positive") seed = default_seed(Nonlinearity::emden(), cfg.n);

    SpectralFn u_hat(cfg.n);
    LinearizedProblem p;
    try {
        u_hat = enclose_approx(f, galerkin_approx(f, cfg.n, seed));
        p = assemble_linearization(u_hat, f, constants);
    } catch (const std::exception& e) {
        return fail_all(e.what());
    }
    const Interval delta = residual_tail(u_hat, f, p.C_N);

    BlockNormBounds primary;
    std::vector<BlockNormBounds> extra;
    std::string bound_error;
    const auto try_bounds = [&](const std::string& variant) -> std::optional<BlockNormBounds> {
        try {
            return variant == "schur" ? schur_bounds(p) : schur_bounds_alt(p);
        } catch (const std::exception& e) {
            bound_error += (bound_error.empty() ? "" : "; ") + std::string(e.what());
            return std::nullopt;
        }
    };
    const std::string other = cfg.variant == "schur" ? "schur-alt" : "schur";
    auto first = try_bounds(cfg.variant);
    auto second = try_bounds(other);
    if (first) {
        primary = *first;
        if (second) extra.push_back(*second);
    } else if (second) {
        primary = *second;
    } else {
        return fail_all(bound_error);
    }
    const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const auto& m : cfg.methods()) {
        const auto t1 = std::chrono::steady_clock::now();
        VerificationCertificate c;
        if (m == "fixed-point") {
            FixedPointOptions opt;
            opt.box_conversion = cfg.box_conversion;
            c = fixed_point_verify(p, primary, delta, opt);
        } else {
            c = kantorovich_verify(p, primary, delta,
                                   m == "kantorovich" ? KantorovichMode::Block : KantorovichMode::InClassic);
        }
        c.extra_bounds = extra;
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
        out.runs.push_back({std::move(c), setup + t});
    }
    return out;
}

std::string summary_table(const PipelineResult& r) {
    std::ostringstream os;
    os << "method,status,sup_Wh,alpha,rho,rho_hex\n";
    for (const auto& run : r.runs) {
        const auto& c = run.cert;
        const bool box = c.method == "fixed-point" && c.verified();
        os << c.method << ',' << c.status << ',' << (box ? dec(c.sup_wh.hi()) : "") << ','
           << (box ? dec(c.alpha.hi()) : "") << ',' << (c.verified() ? dec(c.rho.hi()) : "") << ','
           << (c.verified() ? to_hex(c.rho.hi()) : "") << '\n';
    }
    return os.str();
}

std::string grid_csv(const SpectralFn& u, int points) {
    std::ostringstream os;
    os << "x,y,u\n";
    for (int a = 0; a < points; ++a)
        for (int b = 0; b < points; ++b) {
            const double x = static_cast<double>(a) / (points - 1);
            const double y = static_cast<double>(b) / (points - 1);
            os << dec(x) << ',' << dec(y) << ',' << dec(u.eval_mid(x, y)) << '\n';
        }
    return os.str();
}

void write_artifacts(const PipelineResult& r, const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    const std::string cfg = r.config.to_json();
    for (const auto& run : r.runs) {
        write_file(dir / ("certificate-" + run.cert.method + ".json"), certificate_json(run.cert, cfg));
        if (run.cert.method == "fixed-point") write_file(dir / "wh.csv", coefficient_csv(run.cert.W_h));
    }
    if (!r.runs.empty()) {
        const SpectralFn& u = r.runs.front().cert.u_hat;
        write_file(dir / "uhat.csv", coefficient_csv(u));
        write_file(dir / "grid.csv", grid_csv(u, r.config.grid));
    }
    write_file(dir / "summary.csv", summary_table(r));
}

std::string compare_header() { return "N,method,kappa,K_T,delta_perp,alpha,rho,wall_time\n"; }

std::string compare_rows(const PipelineResult& r) {
    std::ostringstream os;
    for (const auto& run : r.runs) {
        const auto& c = run.cert;
        const bool ok = c.verified();
        const bool bounds = c.bounds.valid;
        os << c.n << ',' << c.method << ',' << (bounds ? dec(c.bounds.kappa.hi()) : "") << ','
           << (bounds ? dec(c.bounds.K_T.hi()) : "") << ',' << (bounds ? dec(c.delta_perp.hi()) : "") << ','
           << (ok && c.method == "fixed-point" ? dec(c.alpha.hi()) : "") << ',' << (ok ? dec(c.rho.hi()) : "")
           << ',' << dec(run.wall_seconds) << '\n';
    }
    return os.str();
}

}  // namespace sproof
