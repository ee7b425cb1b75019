#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "sproof/interval.hpp"

namespace sproof {

// Poincare constant of H^1_0((0,1)^2): 1/(sqrt(2) pi). Only "unit-square" is supported.
Interval poincare_constant(const std::string& domain = "unit-square");
// L4 embedding constant of H^1_0((0,1)^2) from Ladyzhenskaya's inequality.
Interval embedding_L4(const std::string& domain = "unit-square");
// Upper bound of sup_{k>N} lambda of the one-dimensional tail mass operator,
// square-rooted: the projection error constant for V_h^N on the unit square.
Interval projection_constant_computed(int n);

struct ConstantValue {
    Interval value;
    std::string source;
    bool overridden = false;
};

// Rigorous constants with provenance. Thread-safe; computed values are cached.
class ConstantProvider {
public:
    static constexpr int kMaxTableN = 200;

    ConstantProvider();
    // JSON document: {"source": str, "C_P": [lo, hi], "C_4": [lo, hi],
    // "C_N": {"<N>": [lo, hi], ...}} with hex-float strings; every key optional
    // except "source".
    static ConstantProvider from_json(const std::string& text);

    ConstantProvider(const ConstantProvider& other);
    ConstantProvider& operator=(const ConstantProvider& other);

    ConstantValue C_P() const { return cp_; }
    ConstantValue C_4() const { return c4_; }
    ConstantValue C_N(int n) const;

    void override_C_P(const Interval& v, const std::string& source);
    void override_C_4(const Interval& v, const std::string& source);
    void override_C_N(int n, const Interval& v, const std::string& source);

    bool any_overridden() const;

private:
    static void check_override(const Interval& v, const std::string& source);
    ConstantValue cp_;
    ConstantValue c4_;
    std::map<int, ConstantValue> cn_override_;
    mutable std::map<int, Interval> cn_cache_;
    mutable std::mutex mu_;
};

}  // namespace sproof
