#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmc/decreasing_set.hpp"
#include "dmc/design.hpp"
#include "dmc/error.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/profile.hpp"
#include "dmc/type1.hpp"

namespace dmc {

// Malformed interchange input.
class FormatError : public Error {
public:
    using Error::Error;
};

struct CodeSpecRead {
    DecreasingSet code;
    std::optional<std::string> warning;  // set when a non-decreasing set was let through
};

// {"m": m, "monomials": [mask, ...]}, masks ascending.
std::string write_code_spec(const DecreasingSet& I);
// Throws FormatError, or NotDecreasing unless allow_non_decreasing.
CodeSpecRead read_code_spec(std::string_view text, bool allow_non_decreasing = false);

std::string distribution_json(const WeightDistribution& d);
std::string distribution_csv(const WeightDistribution& d);
// Inverse of distribution_json.
WeightDistribution read_distribution_json(std::string_view text);

// with_ledger adds a top-level "ledger" array of Type I cases.
std::string profile_json(const WeightProfile& p, bool with_ledger = false);
std::string profile_csv(const WeightProfile& p);
std::string ledger_json(const std::vector<Type1Case>& ledger);
std::string verify_json(const VerifyReport& report);
std::string design_json(const DesignReport& report);

}  // namespace dmc
