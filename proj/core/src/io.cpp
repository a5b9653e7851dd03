#include "dmc/io.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

#include "dmc/error.hpp"

namespace dmc {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

json count_cell(const CountCell& c) {
    if (c.value) return to_decimal(*c.value);
    return json{{"unavailable", c.unavailable.empty() ? std::string("unknown") : c.unavailable}};
}

std::string optional_count(const std::optional<BigCount>& v) { return v ? to_decimal(*v) : ""; }

json profile_object(const WeightProfile& p) {
    json entries = json::array();
    for (const auto& e : p.entries) {
        json item{{"weight", e.weight},
                  {"mu", e.mu},
                  {"type1", count_cell(e.type1)},
                  {"type2", count_cell(e.type2)},
                  {"method", {{"type1", method_name(e.type1.method)}, {"type2", method_name(e.type2.method)}}}};
        if (auto c = e.combined()) item["combined"] = to_decimal(*c);
        entries.push_back(std::move(item));
    }
    return json{{"m", p.m}, {"r", p.r}, {"K", p.K}, {"w_min", p.w_min}, {"entries", std::move(entries)}};
}

json ledger_array(const std::vector<Type1Case>& ledger) {
    json out = json::array();
    for (const auto& c : ledger) {
        json item{{"variant", variant_name(c.variant)}, {"mu", c.mu}, {"f", c.f.to_string()}};
        if (c.g) item["g"] = c.g->to_string();
        item["h"] = c.h.to_string();
        if (c.h_star) item["h_star"] = c.h_star->to_string();
        if (c.witness) item["witness"] = c.witness->to_string();
        item["count"] = to_decimal(c.count);
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace

std::string write_code_spec(const DecreasingSet& I) {
    json masks = json::array();
    for (const auto& f : I.monomials()) masks.push_back(f.mask());
    return json{{"m", I.vars()}, {"monomials", std::move(masks)}}.dump() + "\n";
}

CodeSpecRead read_code_spec(std::string_view text, bool allow_non_decreasing) {
    json j = parse(text);
    if (!j.is_object() || !j.contains("m") || !j.contains("monomials"))
        throw FormatError("code spec needs the keys \"m\" and \"monomials\"");
    if (!j["m"].is_number_integer()) throw FormatError("\"m\" must be an integer");
    int m = j["m"].get<int>();
    if (m < 1 || m > kMaxVars) throw FormatError("\"m\" must lie in [1, 32]");
    if (!j["monomials"].is_array()) throw FormatError("\"monomials\" must be an array");
    std::vector<Monomial> members;
    for (const auto& v : j["monomials"]) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw FormatError("monomial masks must be non-negative integers");
        std::uint64_t mask = v.get<std::uint64_t>();
        if (m < 64 && (mask >> m) != 0)
            throw FormatError("mask " + std::to_string(mask) + " uses variables beyond m=" + std::to_string(m));
        members.emplace_back(m, static_cast<IndexMask>(mask));
    }
    CodeSpecRead out;
    if (allow_non_decreasing) {
        out.code = DecreasingSet::unchecked(m, std::move(members));
        if (!out.code.is_verified()) {
            auto bad = find_violation(m, out.code.monomials());
            out.warning = NotDecreasing(bad->first, bad->second).what();
        }
    } else {
        out.code = DecreasingSet::from_monomials(m, std::move(members));
    }
    return out;
}

std::string distribution_json(const WeightDistribution& d) {
    json counts = json::array();
    for (const auto& [w, c] : d.counts) counts.push_back({{"weight", w}, {"count", to_decimal(c)}});
    return json{{"m", d.m}, {"K", d.K}, {"counts", std::move(counts)}}.dump(2) + "\n";
}

std::string distribution_csv(const WeightDistribution& d) {
    std::ostringstream out;
    out << "weight,count\n";
    for (const auto& [w, c] : d.counts) out << w << ',' << to_decimal(c) << '\n';
    return out.str();
}

WeightDistribution read_distribution_json(std::string_view text) {
    json j = parse(text);
    WeightDistribution d;
    try {
        d.m = j.at("m").get<int>();
        d.K = j.at("K").get<std::size_t>();
        for (const auto& item : j.at("counts"))
            d.counts[item.at("weight").get<std::uint64_t>()] = BigCount(item.at("count").get<std::string>());
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad distribution: ") + e.what());
    }
    return d;
}

std::string profile_json(const WeightProfile& p, bool with_ledger) {
    json j = profile_object(p);
    if (with_ledger) j["ledger"] = ledger_array(p.ledger);
    return j.dump(2) + "\n";
}

std::string profile_csv(const WeightProfile& p) {
    std::ostringstream out;
    out << "weight,mu,type1,type2,combined,method_type1,method_type2\n";
    auto cell = [](const CountCell& c) { return c.value ? to_decimal(*c.value) : "unavailable"; };
    for (const auto& e : p.entries)
        out << e.weight << ',' << e.mu << ',' << cell(e.type1) << ',' << cell(e.type2) << ','
            << optional_count(e.combined()) << ',' << method_name(e.type1.method) << ','
            << method_name(e.type2.method) << '\n';
    return out.str();
}

std::string ledger_json(const std::vector<Type1Case>& ledger) { return ledger_array(ledger).dump(2) + "\n"; }

std::string verify_json(const VerifyReport& report) {
    json lines = json::array();
    for (const auto& l : report.lines) {
        json item{{"weight", l.weight}, {"mu", l.mu},         {"what", l.what},
                  {"oracle", l.oracle}, {"compared", l.compared}, {"match", l.match}};
        item["expected"] = l.expected ? json(to_decimal(*l.expected)) : json(nullptr);
        item["observed"] = l.observed ? json(to_decimal(*l.observed)) : json(nullptr);
        if (!l.note.empty()) item["note"] = l.note;
        lines.push_back(std::move(item));
    }
    return json{{"all_match", report.all_match()}, {"lines", std::move(lines)}}.dump(2) + "\n";
}

std::string design_json(const DesignReport& report) {
    json cands = json::array();
    for (const auto& c : report.candidates) {
        json item{{"f_max", c.f_max.to_string()},
                  {"top_stratum", c.top_stratum},
                  {"K", c.code.size()},
                  {"lambda", c.lambda_total},
                  {"score", to_decimal(c.score)},
                  {"profile", profile_object(c.profile)}};
        if (!c.error.empty()) item["error"] = c.error;
        cands.push_back(std::move(item));
    }
    json ranking = json::array();
    for (auto i : report.ranking) ranking.push_back(report.candidates[i].f_max.to_string());
    return json{{"m", report.m}, {"candidates", std::move(cands)}, {"ranking", std::move(ranking)},
                {"notes", report.notes}}
               .dump(2) +
           "\n";
}

}  // namespace dmc
