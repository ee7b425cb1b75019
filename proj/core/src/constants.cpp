#include "sproof/constants.hpp"

#include <algorithm>
#include <vector>

#include "json.hpp"
#include "sproof/interval_matrix.hpp"
#include "sproof/linalg.hpp"

namespace sproof {

namespace {

const char* kPoincareSource = "closed form 1/sqrt(lambda_1), lambda_1 = 2 pi^2 on (0,1)^2";
const char* kL4Source =
    "Ladyzhenskaya inequality ||u||_4^4 <= (1/2)||u||_2^2 ||grad u||_2^2 on H^1_0 of plane domains, "
    "combined with C_P: C_4 = (C_P^2/2)^(1/4)";
const char* kProjectionSource =
    "computed: sqrt of verified upper bound of the 1D tail mass operator in the normalized "
    "integrated-Legendre basis (finite block eigenvalue bounds + Schur test remainder)";

void require_square(const std::string& domain) {
    if (domain != "unit-square") throw std::invalid_argument("unsupported domain: " + domain);
}

Interval I(double x) { return Interval(x); }

// Entries of the tail operator in the basis sqrt(2k+1) psi_k.
Interval tail_diag(long k) { return I(1.0) / (I(2.0) * I(2.0 * k - 1) * I(2.0 * k + 3)); }
Interval tail_off(long k) {  // (k, k+2), negative
    return -(I(1.0) / (I(4.0) * I(2.0 * k + 3) * sqrt(I(2.0 * k + 1) * I(2.0 * k + 5))));
}

constexpr int kBlock = 64;

double tail_lambda_max_ub(int n) {
    const long k0 = n + 1;
    IMatrix f(kBlock, kBlock);
    for (int a = 0; a < kBlock; ++a) {
        f(a, a) = tail_diag(k0 + a);
        if (a + 2 < kBlock) {
            f(a, a + 2) = tail_off(k0 + a);
            f(a + 2, a) = f(a, a + 2);
        }
    }
    const double lf = gen_eig_bounds(f, IMatrix::identity(kBlock)).lambda_max_ub();
    // Remainder rows k >= k1: absolute row sums decrease in k.
    const long k1 = k0 + kBlock;
    const Interval r = tail_diag(k1) + abs(tail_off(k1 - 2)) + abs(tail_off(k1));
    // Coupling: entries (k1-2, k1) and (k1-1, k1+1), disjoint rows and columns.
    const Interval e = max(abs(tail_off(k1 - 2)), abs(tail_off(k1 - 1)));
    const Interval a = I(std::max(lf, 0.0));
    const Interval half = I(0.5);
    const Interval lmax = half * (a + r) + sqrt(sqr(half * (a - r)) + sqr(e));
    return lmax.hi();
}

Interval parse_pair(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("constants: expected [lo, hi]");
    return Interval(from_hex(j.at(0).get<std::string>()), from_hex(j.at(1).get<std::string>()));
}

}  // namespace

Interval poincare_constant(const std::string& domain) {
    require_square(domain);
    return I(1.0) / (sqrt(I(2.0)) * pi());
}

Interval embedding_L4(const std::string& domain) {
    require_square(domain);
    return sqrt(sqrt(sqr(poincare_constant(domain)) / I(2.0)));
}

Interval projection_constant_computed(int n) {
    if (n < 1) throw std::invalid_argument("projection constant: N must be >= 1");
    return sqrt(Interval(tail_lambda_max_ub(n)));
}

ConstantProvider::ConstantProvider()
    : cp_{poincare_constant(), kPoincareSource, false}, c4_{embedding_L4(), kL4Source, false} {}

ConstantProvider::ConstantProvider(const ConstantProvider& other) {
    std::lock_guard<std::mutex> lock(other.mu_);
    cp_ = other.cp_;
    c4_ = other.c4_;
    cn_override_ = other.cn_override_;
    cn_cache_ = other.cn_cache_;
}

ConstantProvider& ConstantProvider::operator=(const ConstantProvider& other) {
    if (this == &other) return *this;
    std::scoped_lock lock(mu_, other.mu_);
    cp_ = other.cp_;
    c4_ = other.c4_;
    cn_override_ = other.cn_override_;
    cn_cache_ = other.cn_cache_;
    return *this;
}

void ConstantProvider::check_override(const Interval& v, const std::string& source) {
    if (source.empty()) throw std::invalid_argument("constant override requires a source string");
    if (!(v.lo() > 0.0) || !std::isfinite(v.hi())) throw std::invalid_argument("constant override must be positive");
}

void ConstantProvider::override_C_P(const Interval& v, const std::string& source) {
    check_override(v, source);
    cp_ = {v, source, true};
}

void ConstantProvider::override_C_4(const Interval& v, const std::string& source) {
    check_override(v, source);
    c4_ = {v, source, true};
}

void ConstantProvider::override_C_N(int n, const Interval& v, const std::string& source) {
    if (n < 1) throw std::invalid_argument("projection constant: N must be >= 1");
    check_override(v, source);
    std::lock_guard<std::mutex> lock(mu_);
    cn_override_[n] = {v, source, true};
    // Overridden entries must stay non-increasing among themselves.
    double prev = INFINITY;
    for (const auto& [k, c] : cn_override_) {
        if (c.value.hi() > prev) {
            cn_override_.erase(n);
            throw std::invalid_argument("projection constant override breaks monotonicity in N");
        }
        prev = c.value.hi();
    }
}

bool ConstantProvider::any_overridden() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cp_.overridden || c4_.overridden || !cn_override_.empty();
}

ConstantValue ConstantProvider::C_N(int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cn_override_.find(n); it != cn_override_.end()) return it->second;
    if (n < 1 || n > kMaxTableN)
        throw std::out_of_range("projection constant: N = " + std::to_string(n) + " outside certified table 1.." +
                                std::to_string(kMaxTableN));
    // Every bound for N' <= N also bounds C_N; the running minimum is monotone.
    double best = INFINITY;
    for (int k = 1; k <= n; ++k) {
        auto it = cn_cache_.find(k);
        if (it == cn_cache_.end()) it = cn_cache_.emplace(k, projection_constant_computed(k)).first;
        best = std::min(best, it->second.hi());
    }
    return {Interval(best), kProjectionSource, false};
}

ConstantProvider ConstantProvider::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("source") || !j.at("source").is_string() || j.at("source").get<std::string>().empty())
        throw std::invalid_argument("constants file requires a non-empty \"source\"");
    const std::string src = j.at("source").get<std::string>();
    ConstantProvider p;
    if (j.contains("C_P")) p.override_C_P(parse_pair(j.at("C_P")), src);
    if (j.contains("C_4")) p.override_C_4(parse_pair(j.at("C_4")), src);
    if (j.contains("C_N")) {
        for (const auto& [key, val] : j.at("C_N").items()) p.override_C_N(std::stoi(key), parse_pair(val), src);
    }
    return p;
}

}  // namespace sproof
