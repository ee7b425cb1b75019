#include "sproof/certificate.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace sproof {

namespace {

using nlohmann::json;

std::string dec(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json hex_pair(const Interval& x) { return json::array({to_hex(x.lo()), to_hex(x.hi())}); }
json dec_pair(const Interval& x) { return json::array({dec(x.lo()), dec(x.hi())}); }

struct Writer {
    json& hex;
    json& decimal;
    void put(const std::string& key, const Interval& x) {
        hex[key] = hex_pair(x);
        decimal[key] = dec_pair(x);
    }
};

json coefficients(const SpectralFn& u) {
    json arr = json::array();
    for (int i = 1; i <= u.n(); ++i)
        for (int j = 1; j <= u.n(); ++j) arr.push_back(json::array({i, j, hex_pair(u(i, j))}));
    return arr;
}

json bounds_json(const BlockNormBounds& b) {
    json j;
    json d;
    Writer w{j, d};
    j["variant"] = b.variant;
    j["valid"] = b.valid;
    w.put("K_T", b.K_T);
    w.put("tau_Y", b.tau_Y);
    w.put("tau_Z", b.tau_Z);
    w.put("kappa_pp", b.kappa_pp);
    w.put("kappa", b.kappa);
    w.put("tail_factor", b.tail_factor);
    w.put("h11", b.h11);
    w.put("h12", b.h12);
    w.put("h21", b.h21);
    w.put("h22", b.h22);
    if (b.variant == "schur-alt") {
        w.put("eta", b.eta);
        w.put("g_inv", b.g_inv);
        w.put("sh_inv", b.sh_inv);
    }
    j["decimal"] = d;
    j["chains"] = b.chains;
    return j;
}

json constant_json(const ConstantValue& c) {
    return json{{"value", hex_pair(c.value)}, {"decimal", dec_pair(c.value)}, {"source", c.source},
                {"overridden", c.overridden}};
}

}  // namespace

std::string certificate_json(const VerificationCertificate& c, const std::string& config_json) {
    json j;
    json d;
    Writer w{j, d};
    j["method"] = c.method;
    j["status"] = c.status;
    j["message"] = c.message;
    j["problem"] = {{"f", c.f.describe()}, {"c0", c.f.c0}, {"c1", c.f.c1}, {"c2", c.f.c2}, {"N", c.n}};
    w.put("rho", c.rho);
    w.put("delta_perp", c.delta_perp);
    w.put("residual_l2", c.residual_l2);
    w.put("K", c.K);
    w.put("ritz_C", c.ritz_C);
    if (c.method == "fixed-point") {
        w.put("alpha", c.alpha);
        w.put("sup_Wh", c.sup_wh);
        j["Wh"] = coefficients(c.W_h);
    } else {
        w.put("beta", c.beta);
    }
    w.put("omega", c.omega);
    j["decimal"] = d;
    j["u_hat"] = coefficients(c.u_hat);
    j["bounds"] = bounds_json(c.bounds);
    json extra = json::array();
    for (const auto& b : c.extra_bounds) extra.push_back(bounds_json(b));
    j["extra_bounds"] = extra;
    j["constants"] = {{"C_P", constant_json(c.C_P)}, {"C_4", constant_json(c.C_4)}, {"C_N", constant_json(c.C_N)}};
    j["rounding"] = rnd::strategy();
    json its = json::array();
    for (const auto& it : c.iterations)
        its.push_back({{"iteration", it.iteration}, {"wh_max_rad", to_hex(it.wh_max_rad)},
                       {"alpha", to_hex(it.alpha)}, {"included", it.included}});
    j["iterations"] = its;
    if (!config_json.empty()) j["config"] = json::parse(config_json);
    return j.dump(1) + "\n";
}

std::string coefficient_csv(const SpectralFn& u) {
    std::ostringstream os;
    os << "i,j,lo_hex,hi_hex,lo,hi\n";
    for (int i = 1; i <= u.n(); ++i)
        for (int j = 1; j <= u.n(); ++j)
            os << i << ',' << j << ',' << to_hex(u(i, j).lo()) << ',' << to_hex(u(i, j).hi()) << ','
               << dec(u(i, j).lo()) << ',' << dec(u(i, j).hi()) << '\n';
    return os.str();
}

}  // namespace sproof
