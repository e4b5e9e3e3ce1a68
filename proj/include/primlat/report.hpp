#pragma once

#include <string>
#include <vector>

#include "primlat/experiments.hpp"

namespace primlat {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "1.0.0";

// 10 significant digits, the CSV/decimal output precision.
std::string format_decimal(double x);
std::string format_rational(const mpq_class& q);

// Deterministic JSON payloads: no timestamps, no worker counts, keys sorted.
std::string estimate_to_json(const EstimateResult& r);
std::string convergence_to_json(const std::vector<EstimateResult>& rows);

std::string convergence_csv_header();
std::string convergence_csv_row(const EstimateResult& r);

}  // namespace primlat
