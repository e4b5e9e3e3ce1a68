#pragma once

#include <stdexcept>
#include <string>

namespace primlat {

// Error hierarchy; the CLI maps these onto its exit codes.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct shape_error : std::runtime_error {
    explicit shape_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct rank_error : std::runtime_error {
    rank_error(const std::string& msg, int rank_found)
        : std::runtime_error(msg), rank(rank_found) {}
    int rank;
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct size_guard_error : std::runtime_error {
    size_guard_error(const std::string& msg, unsigned long long limit)
        : std::runtime_error(msg), guard_limit(limit) {}
    unsigned long long guard_limit;
};

}  // namespace primlat
