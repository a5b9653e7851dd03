#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmc/big_count.hpp"
#include "dmc/decreasing_set.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/lta.hpp"
#include "dmc/type1.hpp"

namespace dmc {

BigCount count_min_weight(const DecreasingSet& I);

enum class Type2Mode {
    // Deduplicate the sums S per common factor h, then multiply by |LTA_h·h|.
    Factored,
    // Materialize every H·S and deduplicate globally.
    Exact,
};

struct Type2Options {
    CensusOptions census;
    Type2Mode mode = Type2Mode::Factored;
    // Nonzero: shuffle the tuple processing order with this seed.
    std::uint64_t shuffle_seed = 0;
};

struct Type2Result {
    std::optional<BigCount> count;
    std::string unavailable;  // reason when count is empty
    std::uint64_t tuples = 0;
    std::uint64_t pair_ops = 0;

    bool available() const { return count.has_value(); }
};

// Type II codewords of weight w_mu. mu = 1 gives count_min_weight.
Type2Result count_type2_census(const DecreasingSet& I, int mu, const Type2Options& options = {});

enum class Method { Formula, Census, FullEnumeration, Excluded };
std::string method_name(Method m);

struct CountCell {
    std::optional<BigCount> value;
    std::string unavailable;
    Method method = Method::Formula;

    bool available() const { return value.has_value(); }
};

struct ProfileEntry {
    std::uint64_t weight = 0;
    int mu = 0;
    CountCell type1;
    CountCell type2;

    // Both components known.
    std::optional<BigCount> combined() const;
};

struct WeightProfile {
    int m = 0;
    int r = -1;
    std::size_t K = 0;
    std::uint64_t w_min = 0;
    std::vector<ProfileEntry> entries;
    std::vector<Type1Case> ledger;
};

struct ProfileOptions {
    Type2Options type2;
    B1Variant b1 = kDefaultB1Variant;
    int mu_max = 0;              // 0: no limit
    bool type2_census = true;    // false: report Type II as unavailable without trying
};

// Largest mu with a Type I or Type II weight below 2 w_min.
int profile_mu_limit(int m, int r);
WeightProfile build_profile(const DecreasingSet& I, const ProfileOptions& options = {});

enum class Oracle { Full, Census, Both };

struct VerifyLine {
    std::uint64_t weight = 0;
    int mu = 0;
    std::string what;    // "combined", "type1", "type2", "min-weight", "unexpected"
    std::string oracle;  // "full" or "census"
    std::optional<BigCount> expected;
    std::optional<BigCount> observed;
    bool compared = true;
    bool match = false;  // true when not compared
    std::string note;
};

struct VerifyReport {
    std::vector<VerifyLine> lines;
    bool all_match() const;
};

struct VerifyOptions {
    ProfileOptions profile;
    std::size_t cap_K = kDefaultCapK;
};

VerifyReport verify_profile(const DecreasingSet& I, Oracle oracle, const VerifyOptions& options = {});

// Union of the minimum-weight orbits, deduplicated: an oracle for count_min_weight.
std::uint64_t min_weight_census(const DecreasingSet& I, const CensusOptions& options = {});

}  // namespace dmc
