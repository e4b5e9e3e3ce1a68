#include "primlat/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace primlat {

using nlohmann::json;

std::string format_decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string format_rational(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

json estimate_json(const EstimateResult& r) {
    json j;
    j["d"] = r.d;
    j["m"] = r.m;
    j["n"] = r.n;
    j["box"] = r.box_kind;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["successes"] = r.successes;
    j["estimate"] = r.estimate;
    j["std_error"] = r.std_error;
    j["target_lo"] = format_rational(r.target.lo);
    j["target_hi"] = format_rational(r.target.hi);
    j["target_lo_dec"] = format_decimal(r.target.lo.get_d());
    j["target_hi_dec"] = format_decimal(r.target.hi.get_d());
    j["gap"] = r.gap;
    return j;
}

}  // namespace

std::string estimate_to_json(const EstimateResult& r) {
    json j = estimate_json(r);
    j["schema_version"] = kSchemaVersion;
    j["version"] = kToolVersion;
    j["command"] = "estimate";
    return j.dump();
}

std::string convergence_to_json(const std::vector<EstimateResult>& rows) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["version"] = kToolVersion;
    j["command"] = "converge";
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back(estimate_json(r));
    return j.dump();
}

std::string convergence_csv_header() {
    return "n,trials,estimate,std_error,target_lo,target_hi,gap";
}

std::string convergence_csv_row(const EstimateResult& r) {
    return std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
           format_decimal(r.estimate) + "," + format_decimal(r.std_error) + "," +
           format_decimal(r.target.lo.get_d()) + "," +
           format_decimal(r.target.hi.get_d()) + "," + format_decimal(r.gap);
}

}  // namespace primlat
