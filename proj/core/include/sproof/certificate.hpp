#pragma once

#include <string>

#include "sproof/verifier.hpp"

namespace sproof {

// Deterministic JSON rendering of a certificate. Interval fields are written as
// [lo, hi] hex-float pairs, mirrored in decimal under "decimal". `config_json`
// is embedded verbatim as the "config" object when not empty.
std::string certificate_json(const VerificationCertificate& c, const std::string& config_json = "");

// W_h or u_hat coefficient table: i,j,lo_hex,hi_hex,lo,hi.
std::string coefficient_csv(const SpectralFn& u);

}  // namespace sproof
