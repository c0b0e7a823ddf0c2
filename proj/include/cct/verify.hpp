#pragma once
#include "cct/json_io.hpp"

namespace cct {

struct VerifyOptions {
    int order = 0;         // 0: pick max(2*step, step) after frame selection
    int max_step = 6;
    double tol = 1e-6;     // numeric sup-norm tolerance
    double rk4_step = 1e-3;
    int jobs = 1;
    unsigned long seed = 0x5eed5eedUL;
    bool with_curves = true;
};

struct CheckResult {
    std::string name;
    std::string status;    // "pass" | "fail" | "skipped"
    bool exact = true;     // exact identity vs numeric residual
    double residual = 0;   // 0 for exact checks
    std::string citation;  // which statement the check instantiates
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

VerificationReport run_verification(const CCStructure& input, const VerifyOptions& opt);

Json report_to_json(const VerificationReport& rep);
std::string report_table(const VerificationReport& rep);

}  // namespace cct
